from .process import main
