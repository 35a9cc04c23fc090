from fractions import Fraction

import pytest

from relator_census.errors import BudgetExceeded, InvalidRelabeling, ProperPowerError, WordError
from relator_census.genericity import in_E
from relator_census.symmetry import (
    BURNSIDE,
    CANONICALIZE,
    Relabeling,
    SymmetryElement,
    all_relabelings,
    apply_relabeling,
    asymptotic_orbit_estimate,
    canonical_form,
    census_ratio,
    count_orbits,
    orbit,
    orbit_record,
    symmetry_order,
    y_set
)
from relator_census.words import Word, sample_words


def _generic_word(n, k=2, seed=3):
    for word in sample_words(n, k, 1000, seed):
        if in_E(word, '1/6', k):
            return word
    raise AssertionError('no generic word sampled')


def test_relabeling_from_spec():
    tau = Relabeling.from_spec('1:2+,2:1-', 2)
    assert tau.apply(Word.parse('ab')) == Word.parse('bA')
    assert apply_relabeling(tau, Word.parse('aB')) == Word.parse('ba')
    assert str(tau) == '1:2+,2:1-'
    assert Relabeling.from_spec('id', 2).is_identity()
    assert Relabeling.from_spec('', 3) == Relabeling.identity(3)

@pytest.mark.parametrize('spec', ['1:3+', '1:2', '1:2+', 'a:b+'])
def test_relabeling_from_spec_refuses_bad_input(spec):
    with pytest.raises(InvalidRelabeling):
        Relabeling.from_spec(spec, 2)

def test_relabeling_group_operations():
    tau = Relabeling.from_spec('1:2+,2:1-', 2)
    assert tau.compose(tau.inverse()).is_identity()
    assert tau.power(4).is_identity()
    assert not tau.power(2).is_identity()
    assert tau.power(-1) == tau.inverse()
    assert Relabeling.from_table(tau.table) == tau

def test_relabeling_refuses_larger_alphabet():
    with pytest.raises(WordError):
        Relabeling.identity(2).apply(Word.parse('c'))

def test_all_relabelings():
    assert len(all_relabelings(2)) == 8
    assert len(all_relabelings(3)) == 48
    assert all_relabelings(2)[0].is_identity()
    assert len(set(all_relabelings(3))) == 48
    with pytest.raises(BudgetExceeded):
        all_relabelings(9)

@pytest.mark.parametrize('k', [2, 3])
def test_relabelings_form_a_group(k):
    group = set(all_relabelings(k))
    assert Relabeling.identity(k) in group
    for tau in group:
        assert tau.inverse() in group
        assert tau.compose(tau.inverse()).is_identity()
        for sigma in group:
            assert tau.compose(sigma) in group

def test_symmetry_element():
    element = SymmetryElement(Relabeling.from_spec('1:2+,2:1+', 2), 1, inverted=True)
    # (ab)^-1 = BA, swapped to AB, rotated to BA
    assert element.apply(Word.parse('ab')) == Word.parse('BA')

def test_orbit_record():
    record = orbit_record(Word.parse('aab'), 2)
    assert symmetry_order(3, 2) == 48
    assert record.orbit_size == 24
    assert record.stabilizer_order == 2
    assert len(orbit(Word.parse('aab'), 2)) == 24

def test_canonical_form_is_orbit_invariant():
    x = Word.parse('aabAb')
    expected = canonical_form(x, 2)
    for y in orbit(x, 2):
        assert canonical_form(y, 2) == expected

@pytest.mark.parametrize('n, expected', [(1, 1), (2, 2), (3, 2)])
def test_small_orbit_counts(n, expected):
    assert count_orbits(n, 2, BURNSIDE) == expected
    assert count_orbits(n, 2, CANONICALIZE) == expected

@pytest.mark.parametrize('k, n', [(2, n) for n in range(1, 8)] + [(3, n) for n in range(1, 5)])
def test_burnside_matches_canonicalization(k, n):
    assert count_orbits(n, k, BURNSIDE) == count_orbits(n, k, CANONICALIZE)

def test_census_ratio():
    assert census_ratio(3, 2) == Fraction(24, 7)
    assert all(census_ratio(n, 2) >= 1 for n in range(1, 14))

def test_census_ratio_decreases():
    ratios = [census_ratio(n, 2) for n in (7, 10, 13)]
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] <= Fraction(5, 4)

@pytest.mark.slow
def test_census_ratio_by_canonical_forms():
    for n in (7, 10, 13):
        assert census_ratio(n, 2, CANONICALIZE) == census_ratio(n, 2, BURNSIDE)

def test_asymptotic_orbit_estimate():
    assert asymptotic_orbit_estimate(5, 2) == Fraction(3 ** 5, 5 * 2 * 8)

def test_canonicalize_cap():
    with pytest.raises(BudgetExceeded):
        count_orbits(10, 2, CANONICALIZE, cap=10)

def test_y_set_of_generic_word():
    x = _generic_word(60)
    assert len(y_set(x, 2)) == 2 * 8 * 60 - 1
    assert orbit_record(x, 2).orbit_size == 2 * 8 * 60

def test_y_set_refuses_proper_powers():
    with pytest.raises(ProperPowerError):
        y_set(Word.parse('abab'), 2)
    with pytest.raises(WordError):
        y_set(Word.parse(''), 2)
