import pathlib
from setuptools import setup
import re

HERE = pathlib.Path(__file__).parent
README_PATH = (HERE / "README.md")
README = README_PATH.read_text()

# Find version without importing it
re_version = r'__version__ = \'([0-9]{1,3}.[0-9]{1,3}.[0-9]{1,3})\''
_version = re.search(re_version, (HERE / "relator_census/__init__.py").read_text())

if _version is None:
  raise RuntimeError("Version is not set")

version = _version.group(1)

requirements = [
  'tqdm',
  'numpy',
  'scipy',
]


extras_require = {
  'docs': [
    'sphinx',
    'furo'
  ],
  'speed': [
    'uvloop'
  ],
  'test': [
    'pytest',
    'sympy'
  ]
}

packages = [
  'relator_census',
  'relator_census.cli'
]

setup(
  name = 'relator-census',
  packages = packages,
  version = version,
  license='MIT',
  description = 'Count, sample and test generic one-relator group presentations',
  long_description= README,
  long_description_content_type= 'text/markdown',
  author = 'relator-census developers',
  entry_points= {
    'console_scripts': [
      'census=relator_census.__main__:main',
      'relator-census=relator_census.__main__:main'
    ]
  },
  keywords = ['combinatorial group theory', 'free group', 'one-relator group', 'small cancellation'],
  extras_require = extras_require,
  install_requires=requirements,
  classifiers=[
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Topic :: Scientific/Engineering :: Mathematics'
  ],
  python_requires='>=3.8'
)
