from collections import Counter

import pytest
from scipy import stats

from relator_census.errors import BudgetExceeded, WordError
from relator_census.utils import derive_rng
from relator_census.words import (
    CountTable,
    CyclicWord,
    EMPTY,
    FREE,
    CYCLICALLY_REDUCED,
    Word,
    as_word,
    count_words,
    cyclic_reduce,
    enumerate_words,
    free_count,
    free_reduce,
    gamma,
    invert,
    is_proper_power,
    least_rotation,
    primitive_period,
    rho,
    rivin_count,
    rotate,
    sample_cyclically_reduced,
    sample_words,
    shard_prefixes
)


def test_parse_letter_form():
    assert Word.parse('abAB') == Word((0, 2, 1, 3))
    assert str(Word((0, 2, 1, 3))) == 'abAB'
    assert Word.parse('') == EMPTY
    assert Word.parse('1') == EMPTY

def test_parse_numeric_form():
    assert Word.parse('x1 X2') == Word((0, 3))
    assert Word((0, 2, 1, 3)).to_text(numeric=True) == 'x1 x2 X1 X2'
    with pytest.raises(WordError):
        Word.parse('x0')

def test_unreduced_input_is_refused_unless_asked():
    with pytest.raises(WordError):
        Word.parse('abBa')
    assert Word.parse('abBa', reduce=True) == Word.parse('aa')
    assert Word.parse('aA', reduce=True) == EMPTY

def test_free_reduce_and_invert():
    assert free_reduce([0, 2, 3, 1, 2]) == Word((2,))
    assert invert(Word.parse('ab')) == Word.parse('BA')
    assert invert(invert(Word.parse('abC'))) == Word.parse('abC')

def test_rank():
    assert Word.parse('abc').rank == 3
    assert EMPTY.rank == 0

def test_cyclic_reduce_splits_off_conjugator():
    core, conjugator = cyclic_reduce(Word.parse('abcA'))
    assert core == Word.parse('bc')
    assert conjugator == Word.parse('a')
    assert cyclic_reduce(Word.parse('aA', reduce=True)) == (EMPTY, EMPTY)

def test_rotations():
    assert rotate(Word.parse('abc'), 1) == Word.parse('bca')
    assert least_rotation(Word.parse('ba')) == 1
    assert CyclicWord(Word.parse('ab')) == CyclicWord(Word.parse('ba'))
    assert CyclicWord(Word.parse('abB', reduce=True)).representative == Word.parse('a')

def test_proper_powers():
    assert primitive_period(Word.parse('abab')) == 2
    assert is_proper_power(Word.parse('abab'))
    assert not is_proper_power(Word.parse('aab'))
    with pytest.raises(WordError):
        is_proper_power(EMPTY)

def test_as_word_refuses_non_cyclically_reduced():
    with pytest.raises(WordError):
        as_word(Word.parse('abA'))

def test_enumeration_is_lexicographic_and_complete():
    words = list(enumerate_words(3, 2, CYCLICALLY_REDUCED))
    assert words == sorted(words)
    assert len(words) == len(set(words)) == 28
    assert all(w.is_cyclically_reduced() for w in words)
    assert len(list(enumerate_words(3, 2, FREE))) == 36

def test_shards_partition_the_enumeration():
    whole = set(enumerate_words(5, 2, CYCLICALLY_REDUCED))
    parts = [set(enumerate_words(5, 2, CYCLICALLY_REDUCED, prefix)) for prefix in shard_prefixes(5, 2)]
    assert sum(len(p) for p in parts) == len(whole)
    assert set().union(*parts) == whole

def test_enumeration_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_words(20, 2, cap=1000)

@pytest.mark.parametrize('k, n', [(2, n) for n in range(0, 9)] + [(3, n) for n in range(0, 6)])
def test_rivin_formula_matches_enumeration(k, n):
    assert count_words(n, k, CYCLICALLY_REDUCED) == rivin_count(n, k)
    assert count_words(n, k, FREE) == free_count(n, k)

def test_known_counts():
    assert rivin_count(2, 2) == 12
    assert rivin_count(2, 3) == 30
    assert rivin_count(3, 2) == 28
    assert free_count(3, 2) == 36
    assert gamma(0, 2) == 1
    assert rho(1, 2) == 5

def test_count_with_predicate():
    assert gamma(3, 2, CYCLICALLY_REDUCED, predicate=lambda w: w[0] == 0) == 7

def test_count_table():
    table = CountTable(2)
    assert table.rho(3) == 1 + 4 + 12 + 28
    for n in range(1, 12):
        assert table.lower_bound(n) <= table.gamma(n) <= table.upper_bound(n)
    assert table.entries[(CYCLICALLY_REDUCED, 3)] == 28
    assert table.to_dict()['k'] == 2

def test_sampling_is_reproducible():
    first = list(sample_words(20, 2, 10, seed=7))
    second = list(sample_words(20, 2, 10, seed=7))
    assert first == second
    assert all(len(w) == 20 and w.is_cyclically_reduced() for w in first)
    assert list(sample_words(20, 2, 5, seed=7, start=5)) == first[5:]

def test_sampling_is_uniform():
    rng = derive_rng(11, 0)
    counts = Counter(sample_cyclically_reduced(2, 2, rng=rng) for _ in range(12000))
    assert set(counts) == set(enumerate_words(2, 2, CYCLICALLY_REDUCED))
    assert stats.chisquare(list(counts.values())).pvalue > 0.001

def test_sampling_needs_positive_length():
    with pytest.raises(ValueError):
        sample_cyclically_reduced(0, 2, seed=1)
