# relator-census
# cli/verify.py

import logging
from fractions import Fraction
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

from relator_census.complexity import (
    PrefixCode,
    c_est,
    kraft_sum,
    incompressibility_experiment,
    incompressibility_experiment_coro
)
from relator_census.dehn import SymmetrizedRelator, dehn_reduce
from relator_census.errors import PrefixViolation
from relator_census.genericity import (
    DensitySeries,
    decay_fit,
    density_estimate,
    density_estimate_coro,
    in_E,
    make_predicate,
    satisfies_c_prime
)
from relator_census.presentations import (
    Presentation,
    decode,
    encode,
    encoding_bound,
    tietze_cleanup
)
from relator_census.search import ClassParams, recover_relator
from relator_census.symmetry import (
    BURNSIDE,
    CANONICALIZE,
    all_relabelings,
    census_ratio,
    count_orbits,
    count_orbits_coro,
    orbit_record,
    y_set
)
from relator_census.utils import derive_rng
from relator_census.words import (
    Word,
    CYCLICALLY_REDUCED,
    FREE,
    count_words,
    count_words_coro,
    free_reduce,
    free_count,
    invert,
    random_reduced_word,
    rivin_count,
    rotate,
    sample_cyclically_reduced,
    sample_words
)

log = logging.getLogger(__name__)

__all__ = (
    'CheckResult', 'CHECKS', 'run_checks',
)

SIXTH = Fraction(1, 6)

# Every check draws from its own stream of the run seed
_STREAMS = {name: index for index, name in enumerate((
    'y-set', 'dehn', 'recover', 'encoding', 'tietze', 'kraft', 'control'
))}

class CheckResult(NamedTuple):
    criterion: int
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {
            'criterion': self.criterion,
            'name': self.name,
            'passed': self.passed,
            'detail': self.detail,
        }


def _rng(config, stream, index):
    return derive_rng(config.seed * len(_STREAMS) + _STREAMS[stream], index)

def _generic_word(n, k, rng, small_cancellation=False) -> Word:
    # Rejection sampling until the word lies in E(1/6) (and C'(1/6) if asked)
    while True:
        word = sample_cyclically_reduced(n, k, rng=rng)
        if not in_E(word, SIXTH, k):
            continue
        if small_cancellation and not satisfies_c_prime(word, SIXTH)[0]:
            continue
        return word

def check_rivin(config, compute, quick) -> Tuple[bool, str]:
    ranges = ((2, 10), (3, 6)) if quick else ((2, 13), (3, 8))
    bad = []
    for k, n_max in ranges:
        for n in range(1, n_max + 1):
            counted = compute(count_words, count_words_coro, n, k, CYCLICALLY_REDUCED, cap=config.enumeration_cap)
            if counted != rivin_count(n, k):
                bad.append((k, n, counted, rivin_count(n, k)))
    ranges_text = ', '.join('k=%s n<=%s' % item for item in ranges)
    return not bad, 'mismatches %s' % bad if bad else 'exact for %s' % ranges_text

def check_free_count(config, compute, quick) -> Tuple[bool, str]:
    ranges = ((2, 10), (3, 6)) if quick else ((2, 13), (3, 8))
    bad = []
    for k, n_max in ranges:
        for n in range(1, n_max + 1):
            counted = compute(count_words, count_words_coro, n, k, FREE, cap=config.enumeration_cap)
            if counted != free_count(n, k):
                bad.append((k, n, counted, free_count(n, k)))
    ranges_text = ', '.join('k=%s n<=%s' % item for item in ranges)
    return not bad, 'mismatches %s' % bad if bad else 'exact for %s' % ranges_text

def check_orbits(config, compute, quick) -> Tuple[bool, str]:
    small = [count_orbits(n, 2) for n in (1, 2, 3)]
    if small != [1, 2, 2]:
        return False, 'orbit counts at n=1,2,3 are %s' % small
    agree_up_to = 7 if quick else 10
    for n in range(1, agree_up_to + 1):
        canonical = compute(count_orbits, count_orbits_coro, n, 2, CANONICALIZE, config.enumeration_cap)
        if canonical != count_orbits(n, 2, BURNSIDE):
            return False, 'methods disagree at n=%s' % n
    ratios = {n: census_ratio(n, 2) for n in range(1, 14)}
    low = [n for n, ratio in ratios.items() if ratio < 1]
    if low:
        return False, 'ratio below 1 at n=%s' % low
    tail = [ratios[7], ratios[10], ratios[13]]
    if not tail[0] > tail[1] > tail[2]:
        return False, 'ratios at 7, 10, 13 do not decrease: %s' % [float(r) for r in tail]
    if ratios[13] > Fraction(5, 4):
        return False, 'ratio(13) = %.4f exceeds 1.25' % float(ratios[13])
    return True, 'methods agree for n<=%s, ratio(13) = %.4f' % (agree_up_to, float(ratios[13]))

def check_y_set(config, compute, quick) -> Tuple[bool, str]:
    trials = 20 if quick else 100
    for index in range(trials):
        word = _generic_word(60, 2, _rng(config, 'y-set', index))
        size = len(y_set(word, 2))
        orbit_size = orbit_record(word, 2).orbit_size
        if size != 959 or orbit_size != 960:
            return False, 'word "%s" has |Y| = %s and orbit size %s' % (word, size, orbit_size)
    return True, '%s words with |Y| = 959 and orbit size 960' % trials

def check_genericity(config, compute, quick) -> Tuple[bool, str]:
    samples = 2000 if quick else 20000
    predicate = make_predicate('e-set', SIXTH, 2, complement=True)

    def estimate(n):
        return compute(
            density_estimate, density_estimate_coro, predicate, n, 2, samples, config.seed,
            exact_cap=config.exact_cap, cap=config.enumeration_cap
        )

    at_60, at_120 = estimate(60), estimate(120)
    slope = decay_fit(DensitySeries(tuple(estimate(n) for n in (30, 40, 50, 60)), config.seed))
    passed = at_120.density <= 0.05 and at_120.density < at_60.density and slope < 0
    return passed, 'complement density %.4f at n=60, %.4f at n=120, slope %.4f' % (
        at_60.density, at_120.density, slope
    )

def check_small_cancellation(config, compute, quick) -> Tuple[bool, str]:
    samples = 1000 if quick else 10000
    point = compute(
        density_estimate, density_estimate_coro, make_predicate('cprime', SIXTH, 2),
        100, 2, samples, config.seed, exact_cap=config.exact_cap, cap=config.enumeration_cap
    )
    return point.density >= 0.9, 'C\'(1/6) density %.4f at n=100' % point.density

def check_dehn(config, compute, quick) -> Tuple[bool, str]:
    trials = 20 if quick else 100
    generator = Word._make((0,))
    for index in range(trials):
        rng = _rng(config, 'dehn', index)
        relator = _generic_word(60, 2, rng, small_cancellation=True)
        symmetrized = SymmetrizedRelator(relator)
        raw = []
        for _ in range(int(rng.integers(1, 6))):
            conjugator = random_reduced_word(int(rng.integers(0, 6)), 2, rng)
            factor = relator if rng.integers(2) else invert(relator)
            raw.extend(conjugator + factor + invert(conjugator))
        product = free_reduce(raw)
        if dehn_reduce(relator, product, symmetrized)[0]:
            return False, 'product of conjugates of "%s" did not reduce to the empty word' % (relator,)
        if not dehn_reduce(relator, generator, symmetrized)[0]:
            return False, 'a1 reduced to the empty word for "%s"' % (relator,)
    return True, '%s relators decided correctly' % trials

def check_recovery(config, compute, quick) -> Tuple[bool, str]:
    trials = 20 if quick else 100
    relabelings = all_relabelings(2)
    for index in range(trials):
        rng = _rng(config, 'recover', index)
        relator = _generic_word(60, 2, rng, small_cancellation=True)
        mate = relabelings[int(rng.integers(len(relabelings)))].apply(relator)
        if rng.integers(2):
            mate = invert(mate)
        mate = rotate(mate, int(rng.integers(len(mate))))
        recovered = recover_relator(
            Presentation(2, [mate]), relator[:10], SIXTH, class_params=ClassParams(k=2), v=mate
        )
        if recovered != relator:
            return False, 'recovered "%s" instead of "%s"' % (recovered, relator)
    return True, '%s relators recovered from 10-letter prefixes' % trials

def _random_presentation(rng) -> Presentation:
    m = int(rng.integers(1, 9))
    relators = [
        random_reduced_word(int(rng.integers(1, 13)), m, rng)
        for _ in range(int(rng.integers(0, 5)))
    ]
    return Presentation(m, relators)

def check_encoding(config, compute, quick) -> Tuple[bool, str]:
    trials = 1000 if quick else 10000
    for index in range(trials):
        presentation = _random_presentation(_rng(config, 'encoding', index))
        encoded = encode(presentation)
        if decode(encoded) != presentation or decode(encoded.binary) != presentation:
            return False, 'round trip failed for %r' % presentation
        if len(encoded.six_letter) > encoding_bound(presentation):
            return False, 'length bound fails for %r' % presentation
    # Fixed relator shape: commutator of the two highest generators
    ratios = []
    for j in range(2, 11):
        m = 2 ** j
        high, low = 2 * (m - 1), 2 * (m - 2)
        presentation = Presentation(m, [Word._make((high, low, high ^ 1, low ^ 1))])
        ratios.append(len(encode(presentation).six_letter) / (presentation.ell_1 * j))
    spread = max(ratios) / min(ratios)
    return spread <= 2, '%s round trips, growth ratio spread %.3f over m = 4..1024' % (trials, spread)

def _planted_presentation(rng) -> Presentation:
    m = int(rng.integers(2, 6))
    relators = [
        sample_cyclically_reduced(int(rng.integers(3, 9)), m, rng=rng)
        for _ in range(int(rng.integers(1, 4)))
    ]
    for _ in range(int(rng.integers(1, 4))):
        relators.append(random_reduced_word(int(rng.integers(1, 3)), m, rng))
    order = rng.permutation(len(relators)).tolist()
    return Presentation(m, [relators[i] for i in order])

def check_tietze(config, compute, quick) -> Tuple[bool, str]:
    for index in range(50):
        presentation = _planted_presentation(_rng(config, 'tietze', index))
        cleaned = tietze_cleanup(presentation, no_order_two=True)
        if any(len(r) < 3 for r in cleaned.relators):
            return False, 'short relator left in %r' % cleaned
        if cleaned.ell > presentation.ell:
            return False, 'ell grew from %s to %s' % (presentation.ell, cleaned.ell)
    expected = Presentation(1, [])
    cleaned = tietze_cleanup(Presentation.parse('gens: 2\nrel: ab'))
    if cleaned != expected:
        return False, '<a,b|ab> cleaned to %r' % cleaned
    return True, '50 planted presentations cleaned, <a,b|ab> -> <a|>'

def _random_code(rng) -> List[str]:
    leaves = ['']
    for _ in range(int(rng.integers(1, 12))):
        leaf = leaves.pop(int(rng.integers(len(leaves))))
        leaves.extend((leaf + '0', leaf + '1'))
    # Any subset of a prefix-free code is prefix-free
    kept = [leaf for leaf in leaves if rng.random() < 0.8]
    return kept or leaves[:1]

def check_kraft(config, compute, quick) -> Tuple[bool, str]:
    for index in range(1000):
        rng = _rng(config, 'kraft', index)
        code = _random_code(rng)
        if kraft_sum(code) > 1:
            return False, 'Kraft sum above 1 for %s' % code
        victim = code[int(rng.integers(len(code)))]
        tail = ''.join(str(bit) for bit in rng.integers(2, size=int(rng.integers(1, 4))).tolist())
        corrupted = code + [victim + tail]
        try:
            kraft_sum(corrupted)
        except PrefixViolation as e:
            shorter, longer = e.witness
            members = PrefixCode(corrupted).members
            if not (shorter in members and longer in members and shorter != longer and longer.startswith(shorter)):
                return False, 'bad witness %s for %s' % (e.witness, corrupted)
        else:
            return False, 'no violation found in %s' % corrupted
    return True, '1000 codes summed, 1000 violations witnessed'

def check_incompressibility(config, compute, quick) -> Tuple[bool, str]:
    samples = 500 if quick else 2000
    report = compute(
        incompressibility_experiment, incompressibility_experiment_coro, 2, 400, 4, samples, config.seed
    )
    stream = config.seed * len(_STREAMS) + _STREAMS['control']
    median = float(np.median([c_est(w, 2).bits for w in sample_words(400, 2, 200, stream)]))
    control = c_est(Word._make((0, 2) * 200), 2).bits
    passed = report.fraction >= 0.99 and report.passed and control < 0.25 * median
    return passed, 'incompressible fraction %.4f (bound %.4f), periodic control %s bits vs median %.1f' % (
        report.fraction, float(report.paper_bound), control, median
    )

CHECKS = (
    (1, 'rivin-exactness', check_rivin),
    (2, 'free-count-exactness', check_free_count),
    (3, 'orbit-census', check_orbits),
    (4, 'y-set-cardinality', check_y_set),
    (5, 'genericity-decay', check_genericity),
    (6, 'small-cancellation-density', check_small_cancellation),
    (7, 'dehn-oracle', check_dehn),
    (8, 'relator-recovery', check_recovery),
    (9, 'encoding', check_encoding),
    (10, 'tietze-cleanup', check_tietze),
    (11, 'kraft', check_kraft),
    (12, 'incompressibility', check_incompressibility),
)  # type: Tuple[Tuple[int, str, Callable], ...]

def run_checks(config, compute, quick=False, only=None) -> List[CheckResult]:
    """Run every acceptance check, or the criteria numbered in ``only``.

    A check that raises is reported as failed with the exception text.
    """
    results = []
    for criterion, name, check in CHECKS:
        if only is not None and criterion not in only:
            continue
        log.info('Checking %s (%s)' % (name, criterion))
        try:
            passed, detail = check(config, compute, quick)
        except Exception as e:
            log.exception('Check %s raised' % name)
            passed, detail = False, '%s: %s' % (type(e).__name__, e)
        if passed:
            log.info('%s passed: %s' % (name, detail))
        else:
            log.error('%s failed: %s' % (name, detail))
        results.append(CheckResult(criterion, name, passed, detail))
    return results
