import sys
import asyncio
import logging
from relator_census.cli.utils import (
    setup_args,
    setup_logging,
    build_kwargs,
    require_seed,
    emit,
    InvalidParameter
)
from relator_census.errors import (
    BelowResolution,
    BudgetExceeded,
    CensusError,
    EncodingError,
    InvalidLambda,
    InvalidRelabeling,
    PresentationError,
    ProperPowerError,
    RecoveryError,
    SmallCancellationError,
    TietzeRefusal,
    WordError
)
from relator_census.words import (
    CountTable,
    Word,
    FREE,
    CYCLICALLY_REDUCED,
    count_words,
    count_words_coro
)
from relator_census.symmetry import (
    Relabeling,
    BURNSIDE,
    CANONICALIZE,
    census_ratio,
    count_orbits,
    count_orbits_coro,
    asymptotic_orbit_estimate
)
from relator_census.genericity import (
    DensitySeries,
    check_lambda,
    density_estimate,
    density_estimate_coro,
    is_exponentially_negligible_fit,
    make_predicate,
    satisfies_c_prime
)
from relator_census.presentations import Presentation, encode, encoding_bound, t_bounds
from relator_census.dehn import dehn_reduce
from relator_census.search import ClassParams, SearchBudget, recover_relator, search_isomorphic
from relator_census.complexity import incompressibility_experiment, incompressibility_experiment_coro
from relator_census.utils import build_pretty_list_log, overlap_threshold

__all__ = (
    'main',
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

class Compute:
    """Run a sharded computation either directly or through its coroutine variant"""

    def __init__(self, async_process=False, workers=None, progress_bar=False):
        self.workers = workers
        self.progress_bar = progress_bar
        self.loop = None
        if async_process:
            # Using uvloop if installed
            # for faster operations
            try:
                import uvloop # type: ignore
            except ImportError:
                pass
            else:
                uvloop.install()
            self.loop = asyncio.new_event_loop()

    def __call__(self, function, coroutine_function, *args, **kwargs):
        if self.loop is None:
            return function(*args, progress_bar=self.progress_bar, **kwargs)
        coroutine = coroutine_function(*args, workers=self.workers, progress_bar=self.progress_bar, **kwargs)
        return self.loop.run_until_complete(coroutine)

    def close(self):
        if self.loop is not None:
            self.loop.close()


def _text(word, args):
    return word.to_text(args.numeric)

def _read_presentation(args):
    try:
        return Presentation.from_file(args.presentation, reduce=args.reduce)
    except OSError as e:
        raise InvalidParameter('cannot read presentation "%s": %s' % (args.presentation, e)) from None

def run_count(args, config, compute):
    table = CountTable(config.k)
    columns = ['n', 'gamma_f', 'gamma_cr', 'rho_f', 'rho_cr', 'lower_bound', 'upper_bound']
    if args.brute_force:
        columns += ['brute_f', 'brute_cr']
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        row = {
            'n': n,
            'gamma_f': table.gamma(n, FREE),
            'gamma_cr': table.gamma(n, CYCLICALLY_REDUCED),
            'rho_f': table.rho(n, FREE),
            'rho_cr': table.rho(n, CYCLICALLY_REDUCED),
            'lower_bound': table.lower_bound(n),
            'upper_bound': table.upper_bound(n),
        }
        if args.brute_force:
            for kind, column in ((FREE, 'brute_f'), (CYCLICALLY_REDUCED, 'brute_cr')):
                row[column] = compute(count_words, count_words_coro, n, config.k, kind, cap=config.enumeration_cap)
        rows.append(row)
    emit(rows, columns, args)
    return EXIT_OK

def run_rivin(args, config, compute):
    table = CountTable(config.k)
    columns = ['n', 'formula_cr', 'brute_cr', 'formula_f', 'brute_f', 'equal']
    rows = []
    status = EXIT_OK
    for n in range(args.n_min, args.n_max + 1):
        log.info('Counting words of length %s over %s generators' % (n, config.k))
        row = {
            'n': n,
            'formula_cr': table.gamma(n, CYCLICALLY_REDUCED),
            'brute_cr': compute(count_words, count_words_coro, n, config.k, CYCLICALLY_REDUCED, cap=config.enumeration_cap),
            'formula_f': table.gamma(n, FREE),
            'brute_f': compute(count_words, count_words_coro, n, config.k, FREE, cap=config.enumeration_cap),
        }
        row['equal'] = row['formula_cr'] == row['brute_cr'] and row['formula_f'] == row['brute_f']
        if not row['equal']:
            log.error('Closed form and enumeration disagree at n=%s' % n)
            status = EXIT_CHECK_FAILED
        rows.append(row)
    emit(rows, columns, args)
    return status

def run_orbits(args, config, compute):
    lengths = [args.n] if args.n else list(range(1, args.n_max + 1))
    methods = (BURNSIDE, CANONICALIZE) if args.method == 'both' else (args.method,)
    columns = ['n', 'gamma_cr', 'orbit_count', 'ratio_numerator', 'ratio_denominator', 'asymptotic_orbit_estimate']
    rows = []
    status = EXIT_OK
    for n in lengths:
        log.info('Orbit census at n=%s' % n)
        counts = [
            compute(count_orbits, count_orbits_coro, n, config.k, method, config.enumeration_cap)
            for method in methods
        ]
        if len(set(counts)) != 1:
            log.error('Orbit counts disagree at n=%s: %s' % (n, dict(zip(methods, counts))))
            status = EXIT_CHECK_FAILED
        ratio = census_ratio(n, config.k, orbit_count=counts[0])
        rows.append({
            'n': n,
            'gamma_cr': CountTable(config.k).gamma(n),
            'orbit_count': counts[0],
            'ratio_numerator': ratio.numerator,
            'ratio_denominator': ratio.denominator,
            'asymptotic_orbit_estimate': float(asymptotic_orbit_estimate(n, config.k)),
        })
    emit(rows, columns, args)
    return status

def _density_rows(args, config, compute, predicate, lengths):
    points = []
    for n in lengths:
        log.info('Estimating density at n=%s' % n)
        points.append(compute(
            density_estimate, density_estimate_coro,
            predicate, n, config.k, args.samples, config.seed,
            exact_cap=config.exact_cap, cap=config.enumeration_cap
        ))
    return points

def run_generic_fraction(args, config, compute):
    require_seed(config, args.command)
    check_lambda(args.lam)
    tau = Relabeling.from_spec(args.tau, config.k) if args.tau else None
    if tau is not None and args.predicate in ('e-set', 'cprime'):
        log.warning('--tau is set but the %s predicate does not use it. Ignoring --tau' % args.predicate)
    predicate = make_predicate(args.predicate, args.lam, config.k, tau, args.complement)
    points = _density_rows(args, config, compute, predicate, sorted(set(args.n)))
    extra = {}
    if args.fit:
        try:
            fit = is_exponentially_negligible_fit(DensitySeries(tuple(points), config.seed))
        except BelowResolution as e:
            log.warning(str(e))
            extra['fit'] = 'below resolution'
        except ValueError as e:
            raise InvalidParameter(str(e)) from None
        else:
            extra.update({'slope': fit.slope, 'sigma': fit.sigma})
    columns = ['n', 'samples', 'hits', 'density', 'ci_halfwidth']
    emit([p.to_dict() for p in points], columns, args, extra)
    return EXIT_OK

def run_cprime(args, config, compute):
    if args.word is not None:
        word = Word.parse(args.word, reduce=args.reduce)
        holds, piece = satisfies_c_prime(word, args.lam)
        row = {
            'word': _text(word, args),
            'lambda': args.lam,
            'threshold': overlap_threshold(args.lam, len(word)),
            'max_piece': piece,
            'holds': holds,
        }
        emit([row], list(row), args)
        return EXIT_OK
    require_seed(config, args.command)
    predicate = make_predicate('cprime', args.lam, config.k)
    points = _density_rows(args, config, compute, predicate, sorted(set(args.n)))
    emit([p.to_dict() for p in points], ['n', 'samples', 'hits', 'density', 'ci_halfwidth'], args)
    return EXIT_OK

def run_encode(args, config, compute):
    presentation = _read_presentation(args)
    encoded = encode(presentation)
    row = encoded.to_dict()
    row['bound'] = encoding_bound(presentation)
    emit([row], ['six_letter', 'binary', 'six_letter_length', 'bit_length', 'bound'], args)
    return EXIT_OK

def run_tietze(args, config, compute):
    presentation = _read_presentation(args)
    bounds = t_bounds(presentation, args.no_order_two)
    rows = []
    for stage, item in (('input', presentation), ('output', bounds.cleaned)):
        rows.append({
            'stage': stage,
            'generator_count': item.generator_count,
            'relators': ' '.join(_text(r, args) for r in item.relators),
            'ell': item.ell,
            'ell_1': item.ell_1,
        })
    extra = {'t_upper': bounds.t_upper, 't1_upper': bounds.t1_upper}
    emit(rows, ['stage', 'generator_count', 'relators', 'ell', 'ell_1'], args, extra)
    return EXIT_OK

def run_dehn(args, config, compute):
    relator = Word.parse(args.relator, reduce=args.reduce)
    word = Word.parse(args.word, reduce=args.reduce)
    residue, trace = dehn_reduce(relator, word)
    row = {
        'relator': _text(relator, args),
        'word': _text(word, args),
        'residue': _text(residue, args),
        'member': not residue,
        'steps': len(trace.steps),
    }
    emit([row], list(row), args, {'trace': trace.to_dict()['steps']} if args.json else None)
    return EXIT_OK

def _class_and_budget(args, config):
    params = ClassParams(config.k, args.class_lambda, args.max_len, args.exhaustive)
    budget = SearchBudget(args.map_len, args.depth, args.conj_len, args.max_tuples)
    check_lambda(params.lam)
    return params, budget

def run_search(args, config, compute):
    presentation = _read_presentation(args)
    params, budget = _class_and_budget(args, config)
    result = search_isomorphic(presentation, params, budget)
    if result is None:
        log.error('No presentation found within the budget')
        return EXIT_REFUSED
    row = {
        'relator': _text(result.relator, args),
        'generator_count': result.presentation.generator_count,
        'forward': ' '.join(_text(w, args) for w in result.forward),
        'backward': ' '.join(_text(w, args) for w in result.backward),
        'tuples_examined': result.tuples_examined,
        'size': result.size,
    }
    emit([row], list(row), args)
    return EXIT_OK

def run_recover(args, config, compute):
    presentation = _read_presentation(args)
    params, budget = _class_and_budget(args, config)
    prefix = Word.parse(args.prefix, reduce=args.reduce)
    mate = Word.parse(args.orbit_mate, reduce=args.reduce) if args.orbit_mate else None
    relator = recover_relator(presentation, prefix, args.lam, budget, params, mate)
    row = {'prefix': _text(prefix, args), 'relator': _text(relator, args), 'length': len(relator)}
    emit([row], list(row), args)
    return EXIT_OK

def run_kolmogorov(args, config, compute):
    require_seed(config, args.command)
    report = compute(
        incompressibility_experiment, incompressibility_experiment_coro,
        config.k, args.n, args.c, args.samples, config.seed
    )
    row = report.to_dict()
    emit([row], list(row), args)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED

def run_verify(args, config, compute):
    from relator_census.cli.verify import run_checks
    require_seed(config, args.command)
    results = run_checks(config, compute, quick=args.quick)
    rows = [result.to_dict() for result in results]
    emit(rows, ['criterion', 'name', 'passed', 'detail'], args)
    failed = [r for r in results if not r.passed]
    if failed:
        log.error('%s of %s checks failed' % (len(failed), len(results)))
        log.error(build_pretty_list_log((r.name for r in failed), 'failed'))
        return EXIT_CHECK_FAILED
    log.info('All %s checks passed' % len(results))
    return EXIT_OK

COMMANDS = {
    'count': run_count,
    'rivin': run_rivin,
    'orbits': run_orbits,
    'generic-fraction': run_generic_fraction,
    'cprime': run_cprime,
    'encode': run_encode,
    'tietze': run_tietze,
    'dehn': run_dehn,
    'search': run_search,
    'recover': run_recover,
    'kolmogorov': run_kolmogorov,
    'verify': run_verify,
}

def process(args, **kwargs) -> int:
    config = kwargs.pop('config')
    compute = Compute(config.async_process, config.workers, kwargs.pop('progress_bar'))
    try:
        return COMMANDS[args.command](args, config, compute)
    finally:
        compute.close()

def main(argv=None):
    global log

    # Parse parameters
    try:
        args = setup_args(argv)
    except InvalidParameter as e:
        sys.stderr.write('census: error: %s\n' % e)
        sys.exit(EXIT_USAGE)
    kwargs = build_kwargs(args)

    # Disable logging if "--json" or "--silent" is present
    if not args.json and not args.silent:
        log = setup_logging('relator_census', args.verbose)

    try:
        status = process(args, **kwargs)
    except (
        InvalidParameter, WordError, PresentationError, InvalidLambda, InvalidRelabeling,
        EncodingError, ProperPowerError, SmallCancellationError, TietzeRefusal
    ) as e:
        sys.stderr.write('census: error: %s\n' % e)
        status = EXIT_USAGE
    except (BudgetExceeded, RecoveryError) as e:
        sys.stderr.write('census: refused: %s\n' % e)
        status = EXIT_REFUSED
    except (CensusError, ValueError) as e:
        sys.stderr.write('census: error: %s\n' % e)
        status = EXIT_USAGE
    sys.exit(status)
