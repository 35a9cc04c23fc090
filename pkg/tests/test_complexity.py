from fractions import Fraction

import numpy as np
import pytest

from relator_census.complexity import (
    DIRECT,
    PERIOD,
    PrefixCode,
    binary_bijection,
    c_est,
    counting_threshold,
    decode_estimate,
    decode_elias_gamma,
    decode_stream,
    elias_gamma,
    from_binary_bijection,
    incompressibility_experiment,
    incompressibility_threshold,
    kraft_sum,
    markov_bound
)
from relator_census.errors import EncodingError, PrefixViolation
from relator_census.words import EMPTY, CyclicWord, Word, enumerate_words, FREE, sample_words

PERIODIC = Word._make((0, 2) * 200)


def test_kraft_sum():
    assert kraft_sum(['0', '10', '110']) == Fraction(7, 8)
    assert kraft_sum(['0', '1']) == 1
    assert kraft_sum([]) == 0
    assert PrefixCode(['00', '01', '1']).kraft_sum() == 1

def test_kraft_violation_witness():
    with pytest.raises(PrefixViolation) as info:
        kraft_sum(['0', '01'])
    assert info.value.witness == ('0', '01')
    assert PrefixCode(['11', '0', '110']).violation() == ('11', '110')
    assert not PrefixCode(['11', '0', '110']).is_prefix_free()

def test_prefix_code_refuses_non_binary():
    with pytest.raises(ValueError):
        PrefixCode(['012'])

def test_elias_gamma():
    assert elias_gamma(1) == '1'
    assert elias_gamma(2) == '010'
    assert elias_gamma(5) == '00101'
    assert decode_elias_gamma('00101') == (5, 5)
    assert decode_elias_gamma('1010', 1) == (2, 4)
    with pytest.raises(ValueError):
        elias_gamma(0)
    with pytest.raises(EncodingError):
        decode_elias_gamma('001')

def test_c_est_round_trip():
    words = [EMPTY, Word.parse('a'), Word.parse('abAB'), PERIODIC] + list(sample_words(30, 2, 20, seed=4))
    for word in words:
        estimate = c_est(word, 2)
        assert estimate.bits == len(estimate.codeword)
        assert decode_estimate(estimate.codeword, 2) == word

def test_c_est_codes_are_prefix_free():
    codewords = [c_est(w, 2).codeword for n in range(0, 5) for w in enumerate_words(n, 2, FREE)]
    assert len(set(codewords)) == len(codewords)
    assert kraft_sum(codewords) <= 1

def test_c_est_stream():
    words = [Word.parse('ab'), PERIODIC, EMPTY, Word.parse('aBBa')]
    bits = ''.join(c_est(w, 2).codeword for w in words)
    assert decode_stream(bits, 2) == words

def test_c_est_schemes():
    assert c_est(EMPTY, 2).bits == 2
    periodic = c_est(PERIODIC, 2)
    assert periodic.scheme == PERIOD
    assert periodic.bits == 25
    assert c_est(Word.parse('ab'), 2).scheme == DIRECT
    assert c_est(CyclicWord(Word.parse('ba')), 2).word == Word.parse('ab')

def _length_bound(n, k):
    # 3 + 2 ceil(log2 n) + ceil(log2 (2k (2k - 1)^(n - 1)))
    return 3 + 2 * (n - 1).bit_length() + (2 * k * (2 * k - 1) ** (n - 1) - 1).bit_length()

def test_c_est_bound():
    assert c_est(Word.parse('a'), 2).bits == 5 == _length_bound(1, 2)
    words = [w for n in range(1, 7) for w in enumerate_words(n, 2, FREE)]
    words += list(sample_words(100, 2, 20, seed=8)) + list(sample_words(128, 2, 20, seed=8))
    for word in words:
        assert c_est(word, 2).bits <= _length_bound(len(word), 2)
    for word in enumerate_words(3, 3, FREE):
        assert c_est(word, 3).bits <= _length_bound(3, 3)

def test_periodic_word_compresses():
    median = float(np.median([c_est(w, 2).bits for w in sample_words(400, 2, 50, seed=12)]))
    assert c_est(PERIODIC, 2).bits < 0.25 * median

def test_c_est_refuses_larger_alphabet():
    with pytest.raises(EncodingError):
        c_est(Word.parse('c'), 2)

def test_decode_refusals():
    with pytest.raises(EncodingError):
        decode_estimate('', 2)
    with pytest.raises(EncodingError):
        decode_estimate(c_est(Word.parse('ab'), 2).codeword + '1', 2)

def test_markov_bound():
    assert markov_bound(1, 8) == Fraction(1, 8)
    assert markov_bound(0, 3) == 0
    assert markov_bound(5, 2) == 1
    with pytest.raises(ValueError):
        markov_bound(1, 0)

def test_thresholds():
    assert incompressibility_threshold(2, 400, 4) == 314
    assert counting_threshold(Fraction(1, 1024), 4) == pytest.approx(8.0)

def test_incompressibility_experiment():
    report = incompressibility_experiment(2, 50, 4, 300, seed=6)
    assert report.threshold_bits == incompressibility_threshold(2, 50, 4)
    assert report.fraction == 1.0
    assert report.passed
    assert report.paper_bound == Fraction(15, 16)
    assert sum(report.scheme_histogram.values()) == 300
    assert report == incompressibility_experiment(2, 50, 4, 300, seed=6)
    fields = report.to_dict()
    assert {'threshold_bits', 'fraction', 'paper_bound', 'scheme_histogram'} <= set(fields)
    assert fields['paper_bound'] == 0.9375

def test_incompressibility_experiment_refusals():
    with pytest.raises(ValueError):
        incompressibility_experiment(2, 1, 4, 10, seed=1)
    with pytest.raises(ValueError):
        incompressibility_experiment(2, 50, 4, 10, seed=None)

@pytest.mark.slow
def test_incompressibility_at_acceptance_scale():
    report = incompressibility_experiment(2, 400, 4, 2000, seed=2024)
    assert report.fraction >= 0.99

def test_binary_bijection():
    assert binary_bijection((), 1) == ''
    assert binary_bijection((0,), 1) == '0'
    assert binary_bijection((1,), 1) == '1'
    assert binary_bijection((0, 0), 1) == '00'
    for word in list(enumerate_words(3, 2, FREE))[:20]:
        assert from_binary_bijection(binary_bijection(word, 2), 2) == tuple(word)
    with pytest.raises(EncodingError):
        from_binary_bijection('012', 2)
