import math
import itertools
import pickle
from fractions import Fraction

import pytest

from relator_census.errors import BelowResolution, InvalidLambda, InvalidRelabeling
from relator_census.genericity import (
    DensitySeries,
    check_lambda,
    decay_fit,
    density_estimate,
    in_E,
    in_S,
    in_S_prime,
    is_exponentially_negligible_fit,
    lcp,
    make_predicate,
    max_overlap,
    satisfies_c_prime,
    wilson_interval
)
from relator_census.symmetry import Relabeling, all_relabelings
from relator_census.utils import overlap_threshold
from relator_census.words import (
    CYCLICALLY_REDUCED, Word, count_words, gamma, invert, is_proper_power, rotate, sample_words
)

SWAP = Relabeling.from_spec('1:2+,2:1+', 2)


def test_check_lambda():
    assert check_lambda('1/6') == Fraction(1, 6)
    for bad in ('0', '1/3', '1/2', '-1/6'):
        with pytest.raises(InvalidLambda):
            check_lambda(bad)
    with pytest.raises(TypeError):
        check_lambda(0.1)

def test_overlap_threshold():
    assert overlap_threshold(Fraction(1, 6), 60) == 10
    assert overlap_threshold(Fraction(1, 6), 5) == 1

def test_lcp():
    assert lcp((0, 2, 1), (0, 2, 3)) == 2
    assert lcp((), (0,)) == 0

def test_in_S():
    holds, report = in_S(Word.parse('ab'), '1/6', SWAP)
    assert holds
    assert report.lcp_length == 2
    assert report.witness == Word.parse('ab')
    with pytest.raises(InvalidRelabeling):
        in_S(Word.parse('ab'), '1/6', Relabeling.identity(2))

def test_in_S_prime():
    holds, report = in_S_prime(Word.parse('aab'), '1/6')
    assert not holds
    assert report.lcp_length == 0
    assert report.threshold == 1

def test_short_and_periodic_words_are_not_generic():
    assert not in_E(Word.parse('aab'), '1/6', 2)
    assert not in_E(Word.parse('abab'), '1/6', 2)

def test_periodic_words():
    for m in (2, 5, 12):
        word = Word.parse('ab' * m)
        assert in_S(word, '1/6', SWAP)[0]
        assert not in_E(word, '1/6', 2)

def test_in_E_agrees_with_max_overlap():
    for word in sample_words(60, 2, 5, seed=5):
        if is_proper_power(word):
            continue
        overlaps = [max_overlap(rotate(word, s), 2, '1/6') for s in range(len(word))]
        assert in_E(word, '1/6', 2) == all(r.lcp_length < r.threshold for r in overlaps)

def test_in_E_invariance():
    outcomes = set()
    for word in sample_words(60, 2, 60, seed=3):
        member = in_E(word, '1/6', 2)
        outcomes.add(member)
        assert in_E(invert(word), '1/6', 2) == member
        for shift in (1, 7, 59):
            assert in_E(rotate(word, shift), '1/6', 2) == member
        for tau in all_relabelings(2):
            assert in_E(tau.apply(word), '1/6', 2) == member
            assert in_E(tau.apply(invert(word)), '1/6', 2) == member
    assert outcomes == {True, False}

def test_satisfies_c_prime():
    commutator = Word.parse('abAB')
    assert satisfies_c_prime(commutator, '1/6') == (False, 1)
    assert satisfies_c_prime(commutator, '1/2') == (True, 1)
    assert not satisfies_c_prime(Word.parse('abab'), '1/2')[0]
    with pytest.raises(InvalidLambda):
        satisfies_c_prime(commutator, 0)

def test_satisfies_c_prime_is_monotone_in_lambda():
    ratios = ('1/8', '1/6', '1/5', '1/4', '1/3', '1/2')
    for word in sample_words(40, 2, 30, seed=11):
        verdicts = [satisfies_c_prime(word, lam)[0] for lam in ratios]
        assert verdicts == sorted(verdicts)
        assert len({satisfies_c_prime(word, lam)[1] for lam in ratios}) == 1

def test_wilson_interval():
    low, high = wilson_interval(0, 100)
    assert low == pytest.approx(0.0, abs=1e-12)
    assert 0 < high < 0.05
    low, high = wilson_interval(50, 100)
    assert low + high == pytest.approx(1.0)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)

def test_make_predicate():
    with pytest.raises(InvalidRelabeling):
        make_predicate('s-set', '1/6', 2)
    with pytest.raises(ValueError):
        make_predicate('nope', '1/6', 2)
    predicate = make_predicate('e-set', '1/6', 2, complement=True)
    assert predicate(Word.parse('abab'))
    assert pickle.loads(pickle.dumps(predicate))(Word.parse('abab'))

def test_exact_density():
    point = density_estimate(make_predicate('all', '1/6', 2), 3, 2, 100, seed=1)
    assert point.exact
    assert point.samples == gamma(3, 2)
    assert point.density == 1.0

    predicate = make_predicate('e-set', '1/6', 2, complement=True)
    point = density_estimate(predicate, 6, 2, 100, seed=1)
    assert point.hits == count_words(6, 2, CYCLICALLY_REDUCED, predicate)
    assert point.ci_halfwidth == 0.0

def _brute_force(n, predicate):
    total = hits = 0
    for codes in itertools.product(range(4), repeat=n):
        if any(a ^ 1 == b for a, b in zip(codes, codes[1:] + codes[:1])):
            continue
        total += 1
        hits += bool(predicate(Word(codes)))
    return total, hits

@pytest.mark.parametrize('n', [7, 8])
def test_exact_density_against_brute_force(n):
    for complement in (False, True):
        predicate = make_predicate('s-prime', '1/6', 2, complement=complement)
        point = density_estimate(predicate, n, 2, 100, seed=1)
        assert point.exact
        assert (point.samples, point.hits) == _brute_force(n, predicate)

def test_monte_carlo_density_is_reproducible():
    predicate = make_predicate('cprime', '1/6', 2)
    first = density_estimate(predicate, 60, 2, 600, seed=9, exact_cap=0)
    second = density_estimate(predicate, 60, 2, 600, seed=9, exact_cap=0)
    assert first == second
    assert not first.exact
    assert first.samples == 600
    assert 0 < first.hits < 600
    assert 0 < first.ci_halfwidth < 0.1

def test_monte_carlo_needs_a_seed():
    with pytest.raises(ValueError):
        density_estimate(make_predicate('all', '1/6', 2), 40, 2, 100, seed=None, exact_cap=0)

def test_decay_fit():
    series = DensitySeries.from_values([10, 20, 30], [0.5, 0.25, 0.125])
    assert decay_fit(series) == pytest.approx(math.log(0.5) / 10)
    fit = is_exponentially_negligible_fit(series)
    assert fit.negligible
    assert fit.sigma == pytest.approx(0.5 ** 0.1)
    assert fit.constant == pytest.approx(1.0)

def test_decay_fit_of_constant_series():
    series = DensitySeries.from_values([30, 40, 50, 60], [0.25, 0.25, 0.25, 0.25])
    assert decay_fit(series) == pytest.approx(0.0, abs=1e-9)
    fit = is_exponentially_negligible_fit(series)
    assert fit.sigma == pytest.approx(1.0)
    assert fit.constant == pytest.approx(0.25)

def test_decay_fit_refusals():
    with pytest.raises(BelowResolution):
        decay_fit(DensitySeries.from_values([1, 2, 3], [0.5, 0.25, 0]))
    with pytest.raises(ValueError):
        decay_fit(DensitySeries.from_values([1, 2], [0.5, 0.25]))

@pytest.mark.slow
def test_complement_of_E_decays():
    predicate = make_predicate('e-set', '1/6', 2, complement=True)
    at_60 = density_estimate(predicate, 60, 2, 20000, seed=2024)
    at_120 = density_estimate(predicate, 120, 2, 20000, seed=2024)
    assert at_120.density <= 0.05
    assert at_120.density < at_60.density
