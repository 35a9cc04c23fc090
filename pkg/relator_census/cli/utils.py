import argparse
import csv
import io
import json
import logging
import sys
from typing import Dict, List, NamedTuple, Optional, Sequence

from relator_census import (
    __version__,
    __description__,
    __author__,
    __license__
)
from relator_census.utils import parse_fraction
from relator_census.words import DEFAULT_ENUMERATION_CAP
from relator_census.genericity import DEFAULT_EXACT_CAP, PREDICATES
from relator_census.symmetry import METHODS

log = logging.getLogger(__name__)

class InvalidParameter(Exception):
    """Raised when invalid parameter found"""
    pass


class RunConfig(NamedTuple):
    k: int
    seed: Optional[int]
    enumeration_cap: int
    exact_cap: int
    output_format: str
    output: Optional[str]
    workers: Optional[int]
    async_process: bool


SUBCOMMANDS = (
    'count', 'rivin', 'orbits', 'generic-fraction', 'cprime', 'encode',
    'tietze', 'dehn', 'search', 'recover', 'kolmogorov', 'verify',
)

# Reported on its own line of the metadata header
_COMMAND_FLAG = 'command'

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')

def _fraction(value):
    try:
        return parse_fraction(value)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError('"%s" is not a rational number (use p/q)' % value) from None

def _positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError('"%s" is not an integer' % value) from None
    if number < 1:
        raise argparse.ArgumentTypeError('expected a positive integer, got %s' % number)
    return number

def _non_negative_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError('"%s" is not an integer' % value) from None
    if number < 0:
        raise argparse.ArgumentTypeError('expected a non-negative integer, got %s' % number)
    return number

def _build_argparse_description():
    return "{description}, created by {author} ({license} license).".format(
        description=__description__,
        author=__author__,
        license=__license__
    )

def load_config(path) -> Dict[str, object]:
    """Read ``key = value`` lines; ``#`` comments and blank lines are ignored.

    Keys are flag names with dashes or underscores; the values become
    argparse defaults so explicit flags still win.
    """
    values = {}
    try:
        with open(path, 'r', encoding='utf-8') as opener:
            lines = opener.read().splitlines()
    except OSError as e:
        raise InvalidParameter('cannot read config file "%s": %s' % (path, e)) from None
    for number, line in enumerate(lines, start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        if not sep:
            raise InvalidParameter('%s:%s: expected "key = value"' % (path, number))
        key = key.strip().lstrip('-').replace('-', '_')
        value = value.strip().strip('"').strip("'")
        if value.lower() in _TRUE:
            value = True
        elif value.lower() in _FALSE:
            value = False
        values[key] = value
    return values

def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)

    # Alphabet size
    parser.add_argument(
        '--k',
        type=_positive_int,
        default=2,
        help='Number of generators, default to 2'
    )

    # Seed for every randomized subcommand
    parser.add_argument(
        '--seed',
        type=int,
        help='Run seed, required by randomized subcommands'
    )

    parser.add_argument(
        '--enumeration-cap',
        type=_positive_int,
        default=DEFAULT_ENUMERATION_CAP,
        help='Largest enumeration allowed, default to 10^8 words',
        metavar='N'
    )

    parser.add_argument(
        '--exact-cap',
        type=_non_negative_int,
        default=DEFAULT_EXACT_CAP,
        help='Enumerate instead of sampling when gamma(n, CR) is at most this, default to 10^5',
        metavar='N'
    )

    # JSON output format
    parser.add_argument(
        '--json',
        help='Print out results in JSON format. NOTE: logging will be disabled.',
        action='store_true'
    )

    parser.add_argument(
        '--output',
        '-o',
        help='Write the result to FILE instead of stdout',
        metavar='FILE'
    )

    parser.add_argument(
        '--config',
        help='Read default flag values from a key = value file',
        metavar='FILE'
    )

    parser.add_argument(
        '--numeric',
        action='store_true',
        help='Print words in the numeric x1 X1 form'
    )

    parser.add_argument(
        '--reduce',
        action='store_true',
        help='Freely reduce input words instead of refusing them'
    )

    # Verbose output
    parser.add_argument(
        '--verbose',
        '-v',
        action='store_true',
        help='Enable verbose output'
    )

    # No Output
    parser.add_argument(
        '--silent',
        '-s',
        action='store_true',
        help='No log output and no progress bars'
    )

    # Async process
    parser.add_argument(
        '--async',
        help='Run sharded work in a process pool driven by asyncio',
        action='store_true',
        dest='async_process'
    )

    parser.add_argument(
        '--workers',
        type=_positive_int,
        help='Number of worker processes (only with --async)',
        metavar='N'
    )
    return parser

def _lambda_argument(parser, default='1/6'):
    parser.add_argument(
        '--lambda',
        type=_fraction,
        default=default,
        dest='lam',
        help='Overlap ratio as p/q, default to %s' % default,
        metavar='P/Q'
    )

def _budget_arguments(parser):
    parser.add_argument('--class-lambda', type=_fraction, default='1/6', metavar='P/Q',
                        help='Overlap ratio of the searched class, default to 1/6')
    parser.add_argument('--max-len', type=_positive_int, default=64, metavar='L',
                        help='Longest relator of the searched class, default to 64')
    parser.add_argument('--map-len', type=_positive_int, default=1, metavar='L',
                        help='Longest generator image tried, default to 1')
    parser.add_argument('--depth', type=_positive_int, default=2, metavar='D',
                        help='Conjugates per product on the input side, default to 2')
    parser.add_argument('--conj-len', type=_non_negative_int, default=2, metavar='L',
                        help='Longest conjugator on the input side, default to 2')
    parser.add_argument('--max-tuples', type=_positive_int, default=100000, metavar='N',
                        help='Examined tuples before giving up, default to 100000')
    parser.add_argument('--exhaustive', action='store_true',
                        help='Try every relator of the class, not only images of the input relators')

def _build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog='census', description=_build_argparse_description())
    parser.add_argument(
        '--version',
        '-V',
        help='Print relator-census version',
        action='version',
        version=__version__
    )
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True
    subparsers = {}

    def add(name, help_text):
        sub = commands.add_parser(name, parents=[common], help=help_text, description=help_text)
        subparsers[name] = sub
        return sub

    sub = add('count', 'Tabulate gamma and rho for free and cyclically reduced words')
    sub.add_argument('--n-min', type=_non_negative_int, default=0, metavar='N')
    sub.add_argument('--n-max', type=_non_negative_int, required=True, metavar='N')
    sub.add_argument('--brute-force', action='store_true', help='Add enumeration counts next to the formulas')

    sub = add('rivin', 'Compare closed-form counts with brute-force enumeration')
    sub.add_argument('--n-min', type=_positive_int, default=1, metavar='N')
    sub.add_argument('--n-max', type=_positive_int, required=True, metavar='N')

    sub = add('orbits', 'Count orbits under relabelings, rotations and inversion')
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument('--n', type=_positive_int, metavar='N', help='A single length')
    group.add_argument('--n-max', type=_positive_int, metavar='N', help='Every length 1..N')
    sub.add_argument('--method', choices=METHODS + ('both',), default='burnside')

    sub = add('generic-fraction', 'Estimate the density of a genericity predicate')
    sub.add_argument('--predicate', choices=PREDICATES, default='e-set')
    _lambda_argument(sub)
    sub.add_argument('--tau', help='Relabeling, e.g. "1:2+,2:1-"', metavar='SPEC')
    sub.add_argument('--n', type=_positive_int, nargs='+', required=True, metavar='N')
    sub.add_argument('--samples', type=_positive_int, default=10000, metavar='N')
    sub.add_argument('--complement', action='store_true', help='Estimate the density of the complement')
    sub.add_argument('--fit', action='store_true', help='Fit log-density against n')

    sub = add('cprime', 'Check C\'(lambda) for a word, or estimate its density')
    _lambda_argument(sub)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument('--word', metavar='WORD')
    group.add_argument('--n', type=_positive_int, nargs='+', metavar='N')
    sub.add_argument('--samples', type=_positive_int, default=10000, metavar='N')

    sub = add('encode', 'Encode a presentation over the six-letter alphabet')
    sub.add_argument('presentation', metavar='FILE', help='Presentation file (gens: / rel: lines)')

    sub = add('tietze', 'Remove relators of length at most two')
    sub.add_argument('presentation', metavar='FILE')
    sub.add_argument('--no-order-two', action='store_true',
                     help='Assert the group has no elements of order two')

    sub = add('dehn', 'Run Dehn\'s algorithm for a C\'(1/6) relator')
    sub.add_argument('--relator', required=True, metavar='WORD')
    sub.add_argument('--word', required=True, metavar='WORD')

    sub = add('search', 'Search a one-relator presentation of the generic class')
    sub.add_argument('presentation', metavar='FILE')
    _budget_arguments(sub)

    sub = add('recover', 'Recover a generic relator from its prefix')
    sub.add_argument('presentation', metavar='FILE')
    sub.add_argument('--prefix', required=True, metavar='WORD')
    _lambda_argument(sub)
    sub.add_argument('--orbit-mate', metavar='WORD', help='Skip the search and use this relator')
    _budget_arguments(sub)

    sub = add('kolmogorov', 'Run the incompressibility experiment')
    sub.add_argument('--n', type=_positive_int, required=True, metavar='N')
    sub.add_argument('--c', type=_non_negative_int, required=True, metavar='C')
    sub.add_argument('--samples', type=_positive_int, default=2000, metavar='N')

    sub = add('verify', 'Run every acceptance check')
    sub.add_argument('--quick', action='store_true', help='Use reduced sample sizes and lengths')

    return parser, subparsers

def setup_args(argv: Optional[Sequence[str]]=None):
    argv = list(sys.argv[1:] if argv is None else argv)

    # Config file values become defaults, explicit flags override them
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument('--config')
    known, _ = pre.parse_known_args(argv)

    parser, subparsers = _build_parser()
    if known.config:
        config = load_config(known.config)
        for sub in subparsers.values():
            dests = {action.dest for action in sub._actions}
            sub.set_defaults(**{key: value for key, value in config.items() if key in dests})
        unknown = sorted(set(config) - {a.dest for s in subparsers.values() for a in s._actions})
        if unknown:
            log.warning('Ignoring unknown config keys: %s' % ', '.join(unknown))

    args = parser.parse_args(argv)
    if args.k < 2:
        parser.error('--k must be at least 2')
    if args.workers and not args.async_process:
        log.warning('--workers is set without --async. Ignoring --workers')
    return args

def setup_logging(name_module, verbose=False):
    log = logging.getLogger(name_module)
    handler = logging.StreamHandler()
    fmt = logging.Formatter('[%(levelname)s] %(message)s')
    handler.setFormatter(fmt)
    log.addHandler(handler)
    if verbose:
        log.setLevel(logging.DEBUG)
    else:
        log.setLevel(logging.INFO)
    return log

def build_config(args) -> RunConfig:
    return RunConfig(
        k=args.k,
        seed=args.seed,
        enumeration_cap=args.enumeration_cap,
        exact_cap=args.exact_cap,
        output_format='json' if args.json else 'csv',
        output=args.output,
        workers=args.workers,
        async_process=args.async_process
    )

def build_kwargs(args) -> dict:
    if args.json:
        progress_bar = False
    else:
        progress_bar = not args.silent

    kwargs = {
        key: value for key, value in vars(args).items()
        if key not in ('command', 'config', 'json', 'output', 'verbose', 'silent')
    }
    kwargs['progress_bar'] = progress_bar
    kwargs['config'] = build_config(args)
    return kwargs

def require_seed(config: RunConfig, command: str):
    if config.seed is None:
        log.error('%s needs --seed' % command)
        raise InvalidParameter('"%s" is randomized and needs an explicit --seed' % command)

def _flag_value(value):
    if isinstance(value, (list, tuple)):
        return ' '.join(_flag_value(v) for v in value)
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return ''
    return str(value)

def metadata(args) -> Dict[str, object]:
    """Tool version, the full flag set (sorted, unset flags included) and the seed of this run"""
    flags = {
        key: _flag_value(value) for key, value in sorted(vars(args).items())
        if key != _COMMAND_FLAG
    }
    return {
        'tool': 'relator-census %s' % __version__,
        'command': args.command,
        'flags': flags,
        'seed': args.seed,
    }

def _csv_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, dict):
        return ';'.join('%s=%s' % item for item in sorted(value.items()))
    if value is None:
        return ''
    return str(value)

def _json_value(value):
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float)) or value is None:
        return value
    return str(value)

def emit(rows: List[dict], columns: Sequence[str], args, extra: dict=None) -> None:
    """Write ``rows`` as CSV (with ``#`` metadata lines) or as one JSON document"""
    meta = metadata(args)
    if args.json:
        document = {'metadata': meta, 'rows': [_json_value(row) for row in rows]}
        if extra:
            document.update(_json_value(extra))
        text = json.dumps(document, indent=2) + '\n'
    else:
        lines = [
            '# %s' % meta['tool'],
            '# command: %s' % meta['command'],
            '# flags: %s' % ' '.join('%s=%s' % item for item in meta['flags'].items()),
            '# seed: %s' % ('' if meta['seed'] is None else meta['seed']),
        ]
        if extra:
            lines.extend('# %s: %s' % (key, _csv_value(value)) for key, value in extra.items())
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_csv_value(row.get(column)) for column in columns])
        text = '\n'.join(lines) + '\n' + buffer.getvalue()
    if args.output:
        with open(args.output, 'w', encoding='utf-8', newline='') as writer_file:
            writer_file.write(text)
        log.info('Wrote %s' % args.output)
    else:
        sys.stdout.write(text)

