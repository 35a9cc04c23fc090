# relator-census
# genericity.py

import math
import logging
from fractions import Fraction
from functools import partial
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .errors import BelowResolution, InvalidLambda, InvalidRelabeling
from .words import (
    Word, CYCLICALLY_REDUCED, DEFAULT_ENUMERATION_CAP,
    as_word, count_words, gamma, invert, is_proper_power, rotate,
    sample_words
)
from .symmetry import Relabeling, all_relabelings, y_set
from .shards import run_shards, run_shards_coro
from .utils import overlap_threshold, parse_fraction

log = logging.getLogger(__name__)

__all__ = (
    'OverlapReport', 'DensityPoint', 'DensitySeries', 'DecayFit',
    'lcp', 'check_lambda', 'in_S', 'in_S_prime', 'in_E', 'max_overlap', 'satisfies_c_prime',
    'wilson_interval', 'density_estimate', 'density_estimate_coro',
    'density_series', 'decay_fit', 'is_exponentially_negligible_fit',
    'make_predicate', 'PREDICATES', 'DEFAULT_EXACT_CAP',
)

DEFAULT_EXACT_CAP = 10 ** 5
SHARD_TRIALS = 2000

PREDICATES = ('e-set', 's-set', 's-prime', 'cprime')

class OverlapReport(NamedTuple):
    """Largest common prefix found between ``x`` and a candidate word"""
    witness: Optional[Word]
    lcp_length: int
    threshold: int

    def to_dict(self) -> dict:
        return {
            'witness': None if self.witness is None else str(self.witness),
            'lcp_length': self.lcp_length,
            'threshold': self.threshold,
        }


def lcp(x: Sequence[int], y: Sequence[int]) -> int:
    """Length of the longest common prefix"""
    length = 0
    for a, b in zip(x, y):
        if a != b:
            break
        length += 1
    return length

def check_lambda(lam) -> Fraction:
    """Parse ``lam`` and check ``0 < lam < 1/3``"""
    lam = parse_fraction(lam)
    if not 0 < lam < Fraction(1, 3):
        raise InvalidLambda('lambda must satisfy 0 < lambda < 1/3, got %s' % lam)
    return lam

def _best_rotation(x, image) -> Tuple[Optional[Word], int]:
    best, best_length = None, -1
    for shift in range(len(image)):
        candidate = rotate(image, shift)
        length = lcp(x, candidate)
        if length > best_length:
            best, best_length = candidate, length
    return best, max(best_length, 0)

def in_S(x, lam, tau: Relabeling) -> Tuple[bool, OverlapReport]:
    """Test whether some rotation of ``tau(x)`` shares a prefix of length ``max(1, floor(lam |x|))`` with ``x``.

    Parameters
    ------------
    x: :class:`Word` or :class:`CyclicWord`
        A nonempty cyclically reduced word.
    lam: :class:`fractions.Fraction` or :class:`str`
        Overlap ratio, ``0 < lam < 1/3``.
    tau: :class:`Relabeling`
        A nontrivial relabeling.

    Raises
    -------
    InvalidLambda
        ``lam`` is out of range.
    InvalidRelabeling
        ``tau`` is the identity.
    """
    lam = check_lambda(lam)
    if tau.is_identity():
        raise InvalidRelabeling('the relabeling must be nontrivial')
    word = as_word(x)
    threshold = overlap_threshold(lam, len(word))
    witness, length = _best_rotation(word, tau.apply(word))
    return length >= threshold, OverlapReport(witness, length, threshold)

def in_S_prime(x, lam, tau: Optional[Relabeling]=None) -> Tuple[bool, OverlapReport]:
    """Same as :meth:`in_S` with ``tau(x^-1)``; ``tau`` may be trivial (the default)"""
    lam = check_lambda(lam)
    word = as_word(x)
    if tau is None:
        tau = Relabeling.identity(max(word.rank, 1))
    threshold = overlap_threshold(lam, len(word))
    witness, length = _best_rotation(word, tau.apply(invert(word)))
    return length >= threshold, OverlapReport(witness, length, threshold)

def _cyclic_windows(w, t: int):
    doubled = tuple(w) + tuple(w[:t - 1])
    return (doubled[p:p + t] for p in range(len(w)))

def in_E(x, lam, k: int) -> bool:
    """Test whether no rotation of ``x`` shares ``max(1, floor(lam |x|))`` initial letters
    with a member of its own y-set. Proper powers are never members.

    Equivalently, the length-``t`` cyclic subwords of the ``2 * k! * 2^k`` words
    ``tau(x)`` and ``tau(x^-1)`` are pairwise distinct, position by position.
    The answer is therefore the same for every rotation, the inverse and every
    relabeling of ``x``.
    """
    lam = check_lambda(lam)
    word = as_word(x)
    if not word or is_proper_power(word):
        return False
    t = overlap_threshold(lam, len(word))
    inverse = invert(word)
    seen = set()
    for tau in all_relabelings(k):
        for image in (tau.apply(word), tau.apply(inverse)):
            for window in _cyclic_windows(image, t):
                if window in seen:
                    return False
                seen.add(window)
    return True

def max_overlap(x, k: int, lam=Fraction(1, 6)) -> OverlapReport:
    """Return the member of the y-set of ``x`` with the longest common prefix with ``x``.

    Ties keep the least word.
    """
    word = as_word(x)
    threshold = overlap_threshold(parse_fraction(lam), len(word))
    best, best_length = None, -1
    for candidate in sorted(y_set(word, k)):
        length = lcp(word, candidate)
        if length > best_length:
            best, best_length = candidate, length
    return OverlapReport(best, max(best_length, 0), threshold)

def satisfies_c_prime(x, lam) -> Tuple[bool, int]:
    """Check the C'(lam) small cancellation condition for the single relator ``x``.

    The symmetrized set is every rotation of ``x`` and of ``x^-1``. A piece is
    a common prefix of two distinct members; after sorting, the longest one
    lies between neighbours.

    Returns
    --------
    Tuple[:class:`bool`, :class:`int`]
        ``(holds, max_piece)``; ``holds`` is false for proper powers.
    """
    lam = parse_fraction(lam)
    if lam <= 0:
        raise InvalidLambda('lambda must be positive, got %s' % lam)
    word = as_word(x)
    if not word:
        raise ValueError('the empty word has no symmetrized set')
    n = len(word)
    inverse = invert(word)
    members = sorted({rotate(word, s) for s in range(n)} | {rotate(inverse, s) for s in range(n)})
    max_piece = max((lcp(a, b) for a, b in zip(members, members[1:])), default=0)
    holds = not is_proper_power(word) and max_piece < overlap_threshold(lam, n)
    return holds, max_piece


def _e_member(x, lam, k) -> bool:
    return in_E(x, lam, k)

def _s_member(x, lam, tau) -> bool:
    return in_S(x, lam, tau)[0]

def _s_prime_member(x, lam, tau) -> bool:
    return in_S_prime(x, lam, tau)[0]

def _c_prime_member(x, lam) -> bool:
    return satisfies_c_prime(x, lam)[0]

def _negated(x, predicate) -> bool:
    return not predicate(x)

def _always(x) -> bool:
    return True

def make_predicate(
    name: str,
    lam,
    k: int,
    tau: Optional[Relabeling]=None,
    complement: bool=False
) -> Callable[[Word], bool]:
    """Build a picklable membership predicate by name.

    Parameters
    ------------
    name: :class:`str`
        One of ``"e-set"``, ``"s-set"``, ``"s-prime"``, ``"cprime"`` or ``"all"``.
    lam: :class:`fractions.Fraction` or :class:`str`
        Overlap ratio.
    k: :class:`int`
        Number of generators.
    tau: :class:`Relabeling`
        Relabeling for ``"s-set"`` (required) and ``"s-prime"``.
    complement: :class:`bool`
        Negate the predicate.
    """
    lam = parse_fraction(lam)
    if name == 'e-set':
        predicate = partial(_e_member, lam=lam, k=k)
    elif name == 's-set':
        if tau is None:
            raise InvalidRelabeling('the s-set predicate needs a nontrivial relabeling')
        predicate = partial(_s_member, lam=lam, tau=tau)
    elif name == 's-prime':
        predicate = partial(_s_prime_member, lam=lam, tau=tau or Relabeling.identity(k))
    elif name == 'cprime':
        predicate = partial(_c_prime_member, lam=lam)
    elif name == 'all':
        predicate = _always
    else:
        raise ValueError('unknown predicate "%s", expected one of %s' % (name, ', '.join(PREDICATES)))
    if complement:
        predicate = partial(_negated, predicate=predicate)
    return predicate


def wilson_interval(hits: int, samples: int, confidence: float=0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion"""
    if samples < 1:
        raise ValueError('samples must be at least 1, got %s' % samples)
    z = float(stats.norm.ppf(1 - (1 - confidence) / 2))
    p = hits / samples
    denominator = 1 + z * z / samples
    center = (p + z * z / (2 * samples)) / denominator
    spread = z * math.sqrt(p * (1 - p) / samples + z * z / (4 * samples * samples)) / denominator
    return max(0.0, center - spread), min(1.0, center + spread)


class DensityPoint(NamedTuple):
    """Estimated density of a predicate among length-``n`` cyclically reduced words"""
    n: int
    samples: int
    hits: int
    ci_halfwidth: float
    exact: bool

    @property
    def density(self) -> float:
        return self.hits / self.samples

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'samples': self.samples,
            'hits': self.hits,
            'density': self.density,
            'ci_halfwidth': self.ci_halfwidth,
            'exact': self.exact,
        }


def count_hits(predicate, n, k, seed, start, count) -> int:
    """Number of hits among trials ``start .. start + count - 1`` of ``seed``"""
    return sum(1 for word in sample_words(n, k, count, seed, start) if predicate(word))

def _density_plan(samples, seed):
    if samples < 1:
        raise ValueError('samples must be at least 1, got %s' % samples)
    if seed is None:
        raise ValueError('Monte Carlo estimation needs an explicit seed')
    return [
        (start, min(SHARD_TRIALS, samples - start))
        for start in range(0, samples, SHARD_TRIALS)
    ]

def _exact_point(predicate, n, k, cap):
    total = gamma(n, k, CYCLICALLY_REDUCED)
    log.debug('Enumerating all %s words of length %s for an exact density' % (total, n))
    hits = count_words(n, k, CYCLICALLY_REDUCED, predicate, cap)
    return DensityPoint(n, total, hits, 0.0, True)

def _sampled_point(n, samples, hits, confidence):
    low, high = wilson_interval(hits, samples, confidence)
    return DensityPoint(n, samples, hits, (high - low) / 2, False)

def density_estimate(
    predicate: Callable[[Word], bool],
    n: int,
    k: int,
    samples: int,
    seed: int,
    exact_cap: int=DEFAULT_EXACT_CAP,
    cap: int=DEFAULT_ENUMERATION_CAP,
    confidence: float=0.95,
    progress_bar: bool=False
) -> DensityPoint:
    """Estimate ``gamma(n, {x : predicate(x)}) / gamma(n, CR)``.

    When ``gamma(n, CR) <= exact_cap`` every word is enumerated and the result
    is exact. Otherwise ``samples`` uniform words are drawn, trial ``i`` from
    ``derive_rng(seed, i)``, and a Wilson half-width is attached.

    Parameters
    ------------
    predicate: Callable[[:class:`Word`], :class:`bool`]
        Membership test, see :meth:`make_predicate`.
    n: :class:`int`
        Word length, at least 1.
    k: :class:`int`
        Number of generators.
    samples: :class:`int`
        Monte Carlo trials, at least 1.
    seed: :class:`int`
        Run seed.
    """
    if n < 1:
        raise ValueError('word length must be at least 1, got %s' % n)
    if gamma(n, k, CYCLICALLY_REDUCED) <= exact_cap:
        return _exact_point(predicate, n, k, cap)
    plan = _density_plan(samples, seed)
    log.debug('Sampling %s words of length %s in %s shards' % (samples, n, len(plan)))
    shards = [(predicate, n, k, seed, start, count) for start, count in plan]
    hits = sum(run_shards(count_hits, shards, progress_bar, 'n=%s' % n))
    return _sampled_point(n, samples, hits, confidence)

async def density_estimate_coro(
    predicate: Callable[[Word], bool],
    n: int,
    k: int,
    samples: int,
    seed: int,
    exact_cap: int=DEFAULT_EXACT_CAP,
    cap: int=DEFAULT_ENUMERATION_CAP,
    confidence: float=0.95,
    workers: Optional[int]=None,
    progress_bar: bool=False
) -> DensityPoint:
    """
    "Coroutine function"

    Same as :meth:`density_estimate`, sample shards run in a process pool.
    The result is identical to the synchronous one for the same seed.
    """
    if n < 1:
        raise ValueError('word length must be at least 1, got %s' % n)
    if gamma(n, k, CYCLICALLY_REDUCED) <= exact_cap:
        return _exact_point(predicate, n, k, cap)
    plan = _density_plan(samples, seed)
    shards = [(predicate, n, k, seed, start, count) for start, count in plan]
    hits = sum(await run_shards_coro(count_hits, shards, workers, progress_bar, 'n=%s' % n))
    return _sampled_point(n, samples, hits, confidence)


class DensitySeries(NamedTuple):
    """Density estimates along increasing lengths, all drawn under one seed"""
    points: Tuple[DensityPoint, ...]
    seed: Optional[int]

    @property
    def lengths(self) -> List[int]:
        return [p.n for p in self.points]

    @property
    def fractions(self) -> List[float]:
        return [p.density for p in self.points]

    @property
    def sample_counts(self) -> List[int]:
        return [p.samples for p in self.points]

    @property
    def halfwidths(self) -> List[float]:
        return [p.ci_halfwidth for p in self.points]

    @classmethod
    def from_values(cls, lengths: Sequence[int], fractions: Sequence[float], seed=None) -> 'DensitySeries':
        """Build a series from known densities (treated as exact)"""
        points = []
        for n, value in zip(lengths, fractions):
            value = Fraction(value)
            points.append(DensityPoint(n, value.denominator, value.numerator, 0.0, True))
        return cls(tuple(points), seed)

    def to_dict(self) -> dict:
        return {'seed': self.seed, 'points': [p.to_dict() for p in self.points]}


def density_series(
    predicate: Callable[[Word], bool],
    lengths: Sequence[int],
    k: int,
    samples: int,
    seed: int,
    **kwargs
) -> DensitySeries:
    """Run :meth:`density_estimate` at every length, keyword arguments are passed through"""
    lengths = sorted(set(lengths))
    points = []
    for n in lengths:
        log.info('Estimating density at n=%s' % n)
        points.append(density_estimate(predicate, n, k, samples, seed, **kwargs))
    return DensitySeries(tuple(points), seed)


class DecayFit(NamedTuple):
    """Least squares fit ``log(density) = intercept + slope * n``"""
    slope: float
    intercept: float

    @property
    def sigma(self) -> float:
        """:class:`float`: Return the base ``e^slope`` of the fitted ``C * sigma^n``"""
        return math.exp(self.slope)

    @property
    def constant(self) -> float:
        return math.exp(self.intercept)

    @property
    def negligible(self) -> bool:
        return self.slope < 0

    def to_dict(self) -> dict:
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'sigma': self.sigma,
            'constant': self.constant,
        }


def _fit(series: DensitySeries) -> DecayFit:
    if len(series.points) < 3:
        raise ValueError('a decay fit needs at least 3 points, got %s' % len(series.points))
    fractions = series.fractions
    if any(value <= 0 for value in fractions):
        zeros = [p.n for p in series.points if p.hits == 0]
        log.error('Densities at n=%s are below the sampling resolution' % zeros)
        raise BelowResolution('densities reached zero at n=%s, below resolution' % zeros)
    slope, intercept = np.polyfit(np.array(series.lengths, dtype=float), np.log(fractions), 1)
    return DecayFit(float(slope), float(intercept))

def decay_fit(series: DensitySeries) -> float:
    """Return the slope of ``log(density)`` against ``n``; negative means empirical exponential decay.

    Raises
    -------
    BelowResolution
        Some density is zero.
    """
    return _fit(series).slope

def is_exponentially_negligible_fit(series: DensitySeries) -> DecayFit:
    """Return the full fit, including ``sigma``, for reporting"""
    return _fit(series)
