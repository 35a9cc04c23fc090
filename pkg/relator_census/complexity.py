# relator-census
# complexity.py

import math
import logging
from collections import Counter
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .errors import EncodingError, PrefixViolation
from .words import CyclicWord, Word, CYCLICALLY_REDUCED, free_count, gamma, sample_words
from .shards import run_shards, run_shards_coro
from .utils import ceil_log2, parse_fraction

log = logging.getLogger(__name__)

__all__ = (
    'PrefixCode', 'ComplexityEstimate', 'IncompressibilityReport',
    'kraft_sum', 'elias_gamma', 'decode_elias_gamma',
    'c_est', 'decode_estimate', 'decode_stream',
    'markov_bound', 'counting_threshold', 'incompressibility_threshold',
    'incompressibility_experiment', 'incompressibility_experiment_coro',
    'binary_bijection', 'from_binary_bijection',
    'DIRECT', 'PERIOD',
)

DIRECT = 'direct'
PERIOD = 'period'
SHARD_TRIALS = 500

class PrefixCode:
    """A finite set of binary strings"""
    __slots__ = ('members',)

    def __init__(self, members: Iterable[str]) -> None:
        members = frozenset(members)
        for member in members:
            if set(member) - {'0', '1'}:
                raise ValueError('"%s" is not a binary string' % member)
        self.members = members

    def violation(self) -> Optional[Tuple[str, str]]:
        """Return a pair ``(p, q)`` with ``p`` a proper prefix of ``q``, or ``None``.

        In sorted order a member that prefixes another also prefixes its
        successor, so neighbours are enough.
        """
        ordered = sorted(self.members)
        for shorter, longer in zip(ordered, ordered[1:]):
            if longer.startswith(shorter):
                return shorter, longer
        return None

    def is_prefix_free(self) -> bool:
        return self.violation() is None

    def kraft_sum(self) -> Fraction:
        return kraft_sum(self)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return '<PrefixCode members=%s>' % len(self.members)


def kraft_sum(code) -> Fraction:
    """Return the exact sum of ``2^-|p|`` over a prefix-free code.

    Raises
    -------
    PrefixViolation
        The code is not prefix-free; the exception carries a violating pair.
    """
    code = code if isinstance(code, PrefixCode) else PrefixCode(code)
    witness = code.violation()
    if witness is not None:
        raise PrefixViolation(witness)
    return sum((Fraction(1, 2 ** len(p)) for p in code.members), Fraction(0))


def elias_gamma(value: int) -> str:
    """Self-delimiting code of a positive integer: ``len - 1`` zeros, then its binary form"""
    if value < 1:
        raise ValueError('Elias gamma codes positive integers only, got %s' % value)
    digits = bin(value)[2:]
    return '0' * (len(digits) - 1) + digits

def decode_elias_gamma(bits: str, position: int=0) -> Tuple[int, int]:
    """Read one Elias gamma integer at ``position``, return ``(value, next_position)``"""
    zeros = 0
    while position + zeros < len(bits) and bits[position + zeros] == '0':
        zeros += 1
    end = position + 2 * zeros + 1
    if end > len(bits):
        raise EncodingError('truncated Elias gamma code at bit %s' % position)
    return int(bits[position + zeros:end], 2), end


def _width(n, k) -> int:
    return ceil_log2(free_count(n, k))

def _rank(w, k) -> int:
    # Mixed radix: 2k choices for the first letter, 2k - 1 for the others
    if not w:
        return 0
    rank = w[0]
    for previous, c in zip(w, w[1:]):
        rank = rank * (2 * k - 1) + (c if c < previous ^ 1 else c - 1)
    return rank

def _unrank(rank, n, k) -> Word:
    if n == 0:
        return Word._make(())
    digits = []
    for _ in range(n - 1):
        rank, digit = divmod(rank, 2 * k - 1)
        digits.append(digit)
    if rank >= 2 * k:
        raise EncodingError('rank out of range for length %s' % n)
    codes = [rank]
    for digit in reversed(digits):
        forbidden = codes[-1] ^ 1
        codes.append(digit if digit < forbidden else digit + 1)
    return Word._make(codes)

def _fixed(value, width) -> str:
    return format(value, '0%sb' % width) if width else ''

def _smallest_period(w) -> int:
    # Prefix function: n - border is the smallest linear period
    n = len(w)
    border = [0] * n
    for i in range(1, n):
        j = border[i - 1]
        while j and w[i] != w[j]:
            j = border[j - 1]
        if w[i] == w[j]:
            j += 1
        border[i] = j
    return n - border[-1] if n else 0


class ComplexityEstimate(NamedTuple):
    """Length of a self-delimiting codeword for ``word``, an upper estimate of its complexity"""
    word: Word
    bits: int
    scheme: str
    codeword: str

    def to_dict(self) -> dict:
        return {
            'word': str(self.word),
            'bits': self.bits,
            'scheme': self.scheme,
        }


def _length_field(n) -> str:
    return '1' if n == 0 else '0' + elias_gamma(n)

def _direct_body(w, k) -> str:
    n = len(w)
    return _length_field(n) + _fixed(_rank(w, k), _width(n, k))

def _period_body(w, k) -> Optional[str]:
    n = len(w)
    period = _smallest_period(w)
    if not 0 < period < n:
        return None
    unit = w[:period]
    return elias_gamma(period) + _fixed(_rank(unit, k), _width(period, k)) + elias_gamma(n)

def c_est(x, k: int) -> ComplexityEstimate:
    """Encode ``x`` with the shorter of two self-delimiting schemes.

    ``direct``: ``0``, then ``1`` for the empty word or ``0`` and the Elias
    gamma code of ``|x|``, then the rank of ``x`` among reduced words of its
    length in ``ceil(log2 gamma(|x|, F))`` bits. ``period``: ``1``, the
    smallest period ``p < |x|`` and the rank of ``x[:p]``, then ``|x|``. Ties
    go to ``direct``.
    """
    word = x.representative if isinstance(x, CyclicWord) else x if isinstance(x, Word) else Word(x)
    if word.rank > k:
        raise EncodingError('"%s" uses more than %s generators' % (word, k))
    codeword, scheme = '0' + _direct_body(word, k), DIRECT
    body = _period_body(word, k)
    if body is not None and len(body) + 1 < len(codeword):
        codeword, scheme = '1' + body, PERIOD
    return ComplexityEstimate(word, len(codeword), scheme, codeword)

def _read_fixed(bits, position, width) -> Tuple[int, int]:
    end = position + width
    if end > len(bits):
        raise EncodingError('truncated codeword at bit %s' % position)
    return (int(bits[position:end], 2) if width else 0), end

def _read_length(bits, position) -> Tuple[int, int]:
    if position >= len(bits):
        raise EncodingError('truncated codeword at bit %s' % position)
    if bits[position] == '1':
        return 0, position + 1
    return decode_elias_gamma(bits, position + 1)

def _decode_one(bits: str, position: int, k: int) -> Tuple[Word, int]:
    if position >= len(bits):
        raise EncodingError('no codeword at bit %s' % position)
    flag = bits[position]
    position += 1
    if flag == '0':
        n, position = _read_length(bits, position)
        rank, position = _read_fixed(bits, position, _width(n, k))
        return _unrank(rank, n, k), position
    period, position = decode_elias_gamma(bits, position)
    rank, position = _read_fixed(bits, position, _width(period, k))
    unit = _unrank(rank, period, k)
    n, position = decode_elias_gamma(bits, position)
    return Word._make(unit[i % period] for i in range(n)), position

def decode_estimate(codeword: str, k: int) -> Word:
    """Decode a single :meth:`c_est` codeword"""
    word, position = _decode_one(codeword, 0, k)
    if position != len(codeword):
        raise EncodingError('%s trailing bits after the codeword' % (len(codeword) - position))
    return word

def decode_stream(bits: str, k: int) -> List[Word]:
    """Decode a concatenation of :meth:`c_est` codewords"""
    words = []
    position = 0
    while position < len(bits):
        word, position = _decode_one(bits, position, k)
        words.append(word)
    return words


def markov_bound(mean, delta) -> Fraction:
    """``P(X >= delta) <= min(1, E(X) / delta)`` for a non-negative ``X``"""
    mean = parse_fraction(mean)
    delta = parse_fraction(delta)
    if mean < 0:
        raise ValueError('mean must be non-negative, got %s' % mean)
    if delta <= 0:
        raise ValueError('delta must be positive, got %s' % delta)
    return min(Fraction(1), mean / delta)

def counting_threshold(mu, delta) -> float:
    """``-log2(mu) - log2(delta)``, computed on numerators and denominators so large counts do not underflow"""
    mu = parse_fraction(mu)
    delta = parse_fraction(delta)
    return (
        math.log2(mu.denominator) - math.log2(mu.numerator)
        - math.log2(delta.numerator) + math.log2(delta.denominator)
    )

def incompressibility_threshold(k: int, n: int, c) -> int:
    """``floor(-c/2 + n log2(2k - 1) / 2)``"""
    return math.floor(-c / 2 + n * math.log2(2 * k - 1) / 2)


class IncompressibilityReport(NamedTuple):
    k: int
    n: int
    c: int
    samples: int
    seed: int
    threshold_bits: int
    hits: int
    paper_bound: Fraction
    mu: Fraction
    delta: int
    counting_threshold: float
    scheme_histogram: dict

    @property
    def fraction(self) -> float:
        return self.hits / self.samples

    @property
    def passed(self) -> bool:
        """One-sided check: the measured fraction reaches ``1 - 2^-c``"""
        return Fraction(self.hits, self.samples) >= self.paper_bound

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'n': self.n,
            'c': self.c,
            'samples': self.samples,
            'seed': self.seed,
            'estimator': 'c_est (upper estimate, not the true complexity)',
            'threshold_bits': self.threshold_bits,
            'hits': self.hits,
            'fraction': self.fraction,
            'paper_bound': float(self.paper_bound),
            'mu': str(self.mu),
            'delta': self.delta,
            'counting_threshold': self.counting_threshold,
            'scheme_histogram': dict(sorted(self.scheme_histogram.items())),
            'passed': self.passed,
        }


def experiment_shard(k, n, threshold, seed, start, count) -> Tuple[int, Counter]:
    """Hits and scheme counts of trials ``start .. start + count - 1``"""
    hits = 0
    schemes = Counter()
    for word in sample_words(n, k, count, seed, start):
        estimate = c_est(word, k)
        schemes[estimate.scheme] += 1
        if estimate.bits >= threshold:
            hits += 1
    return hits, schemes

def _experiment_plan(k, n, c, samples, seed):
    if n < 2:
        raise ValueError('the experiment needs n >= 2, got %s' % n)
    if samples < 1:
        raise ValueError('samples must be at least 1, got %s' % samples)
    if seed is None:
        raise ValueError('the experiment needs an explicit seed')
    threshold = incompressibility_threshold(k, n, c)
    log.info('Sampling %s words of length %s, threshold %s bits' % (samples, n, threshold))
    shards = [
        (k, n, threshold, seed, start, min(SHARD_TRIALS, samples - start))
        for start in range(0, samples, SHARD_TRIALS)
    ]
    return threshold, shards

def _report(k, n, c, samples, seed, threshold, results):
    hits = sum(r[0] for r in results)
    histogram = Counter({DIRECT: 0, PERIOD: 0})
    for _, schemes in results:
        histogram.update(schemes)
    mu = Fraction(1, gamma(n, k, CYCLICALLY_REDUCED))
    delta = 2 ** c
    return IncompressibilityReport(
        k, n, c, samples, seed, threshold, hits,
        1 - Fraction(1, delta), mu, delta, counting_threshold(mu, delta), dict(histogram)
    )

def incompressibility_experiment(
    k: int,
    n: int,
    c: int,
    samples: int,
    seed: int,
    progress_bar: bool=False
) -> IncompressibilityReport:
    """Measure how many uniform cyclically reduced words of length ``n`` need at
    least ``floor(-c/2 + n log2(2k - 1) / 2)`` bits under :meth:`c_est`.

    The report carries the bound ``1 - 2^-c`` the fraction is compared with,
    and the ``mu = 1 / gamma(n, CR)`` and ``delta = 2^c`` of the counting
    threshold ``-log2(mu) - log2(delta)``.
    """
    threshold, shards = _experiment_plan(k, n, c, samples, seed)
    results = run_shards(experiment_shard, shards, progress_bar, 'c_est n=%s' % n)
    return _report(k, n, c, samples, seed, threshold, results)

async def incompressibility_experiment_coro(
    k: int,
    n: int,
    c: int,
    samples: int,
    seed: int,
    workers: Optional[int]=None,
    progress_bar: bool=False
) -> IncompressibilityReport:
    """
    "Coroutine function"

    Same as :meth:`incompressibility_experiment`, sample shards run in a process pool.
    """
    threshold, shards = _experiment_plan(k, n, c, samples, seed)
    results = await run_shards_coro(experiment_shard, shards, workers, progress_bar, 'c_est n=%s' % n)
    return _report(k, n, c, samples, seed, threshold, results)


def _shorter_count(n, size) -> int:
    # Number of strings of length < n over `size` letters
    return n if size == 1 else (size ** n - 1) // (size - 1)

def binary_bijection(w, k: int) -> str:
    """Map a string over the ``2k`` letters to a bit string, both ordered by length then lexicographically"""
    size = 2 * k
    lex = 0
    for c in w:
        if not 0 <= c < size:
            raise EncodingError('letter code %s is outside the alphabet of %s letters' % (c, size))
        lex = lex * size + c
    index = _shorter_count(len(w), size) + lex
    return bin(index + 1)[3:]

def from_binary_bijection(bits: str, k: int) -> Tuple[int, ...]:
    """Inverse of :meth:`binary_bijection`; returns letter codes (not necessarily reduced)"""
    if set(bits) - {'0', '1'}:
        raise EncodingError('"%s" is not a bit string' % bits)
    size = 2 * k
    index = int('1' + bits, 2) - 1
    n = 0
    while _shorter_count(n + 1, size) <= index:
        n += 1
    lex = index - _shorter_count(n, size)
    codes = []
    for _ in range(n):
        lex, digit = divmod(lex, size)
        codes.append(digit)
    return tuple(reversed(codes))
