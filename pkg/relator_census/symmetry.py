# relator-census
# symmetry.py

import math
import logging
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

from .errors import BudgetExceeded, InvalidRelabeling, ProperPowerError, WordError
from .words import (
    CyclicWord, Word, CYCLICALLY_REDUCED, DEFAULT_ENUMERATION_CAP,
    as_word, enumerate_words, gamma, invert, least_rotation,
    is_proper_power, rotate, shard_prefixes
)
from .shards import run_shards, run_shards_coro

log = logging.getLogger(__name__)

__all__ = (
    'Relabeling', 'SymmetryElement', 'OrbitRecord',
    'all_relabelings', 'apply_relabeling', 'symmetry_order',
    'orbit', 'orbit_record', 'y_set', 'canonical_form',
    'count_orbits', 'count_orbits_coro', 'census_ratio',
    'asymptotic_orbit_estimate', 'BURNSIDE', 'CANONICALIZE',
)

BURNSIDE = 'burnside'
CANONICALIZE = 'canonicalize'
METHODS = (BURNSIDE, CANONICALIZE)

MAX_RELABELING_RANK = 8

class Relabeling:
    """A relabeling automorphism ``a_i -> a_{perm(i)}^{signs(i)}`` of the free group of rank ``k``.

    Parameters
    ------------
    perm: Sequence[:class:`int`]
        ``perm[i - 1]`` is the image generator of ``a_i`` (1-based).
    signs: Sequence[:class:`int`]
        ``signs[i - 1]`` is the exponent, ``+1`` or ``-1``, of that image.
    """
    __slots__ = ('perm', 'signs', '_table')

    def __init__(self, perm: Sequence[int], signs: Sequence[int]=None) -> None:
        perm = tuple(int(p) for p in perm)
        k = len(perm)
        signs = tuple(int(s) for s in signs) if signs is not None else (1,) * k
        if sorted(perm) != list(range(1, k + 1)):
            raise InvalidRelabeling('%s is not a permutation of 1..%s' % (perm, k))
        if len(signs) != k or any(s not in (1, -1) for s in signs):
            raise InvalidRelabeling('signs must be %s values of +1 or -1, got %s' % (k, signs))
        self.perm = perm
        self.signs = signs
        table = []
        for image, sign in zip(perm, signs):
            code = 2 * (image - 1) + (sign < 0)
            table.extend((code, code ^ 1))
        self._table = tuple(table)

    @classmethod
    def identity(cls, k: int) -> 'Relabeling':
        return cls(range(1, k + 1))

    @classmethod
    def from_table(cls, table: Sequence[int]) -> 'Relabeling':
        """Build a relabeling from its action on letter codes"""
        images = table[0::2]
        return cls([c // 2 + 1 for c in images], [-1 if c & 1 else 1 for c in images])

    @classmethod
    def from_spec(cls, spec: str, k: int) -> 'Relabeling':
        """Parse ``"1:2+,2:1-"`` (``a1 -> a2``, ``a2 -> a1^-1``).

        Generators not listed are fixed. ``"id"`` and the empty string give the
        identity.
        """
        perm = list(range(1, k + 1))
        signs = [1] * k
        spec = spec.strip()
        if spec in ('', 'id'):
            return cls(perm, signs)
        for item in spec.split(','):
            try:
                source, target = item.strip().split(':')
                sign = target.strip()[-1]
                if sign not in '+-':
                    raise ValueError
                source = int(source)
                target = int(target.strip()[:-1])
            except ValueError:
                raise InvalidRelabeling(
                    '"%s" is not a relabeling entry (expected <i>:<j>+ or <i>:<j>-)' % item
                ) from None
            if not 1 <= source <= k or not 1 <= target <= k:
                raise InvalidRelabeling('"%s" uses a generator outside 1..%s' % (item, k))
            perm[source - 1] = target
            signs[source - 1] = 1 if sign == '+' else -1
        return cls(perm, signs)

    @property
    def k(self) -> int:
        return len(self.perm)

    @property
    def table(self) -> Tuple[int, ...]:
        """Tuple[:class:`int`]: Return the image of every letter code"""
        return self._table

    def is_identity(self) -> bool:
        return self._table == tuple(range(2 * self.k))

    def apply(self, w) -> Word:
        """Return the letterwise image of ``w``"""
        table = self._table
        try:
            return Word._make(table[c] for c in w)
        except IndexError:
            raise WordError('"%s" uses more than %s generators' % (Word._make(w), self.k)) from None

    __call__ = apply

    def compose(self, other: 'Relabeling') -> 'Relabeling':
        """Return ``self o other`` (apply ``other`` first)"""
        return Relabeling.from_table([self._table[c] for c in other._table])

    def inverse(self) -> 'Relabeling':
        table = [0] * len(self._table)
        for code, image in enumerate(self._table):
            table[image] = code
        return Relabeling.from_table(table)

    def power(self, exponent: int) -> 'Relabeling':
        base = self if exponent >= 0 else self.inverse()
        table = list(range(2 * self.k))
        for _ in range(abs(exponent)):
            table = [base._table[c] for c in table]
        return Relabeling.from_table(table)

    def fixed_letters(self) -> Set[int]:
        return {c for c, image in enumerate(self._table) if c == image}

    def __eq__(self, other) -> bool:
        return isinstance(other, Relabeling) and self._table == other._table

    def __hash__(self) -> int:
        return hash(self._table)

    def __str__(self) -> str:
        return ','.join(
            '%s:%s%s' % (i, image, '+' if sign > 0 else '-')
            for i, (image, sign) in enumerate(zip(self.perm, self.signs), start=1)
        )

    def __repr__(self) -> str:
        return '<Relabeling "%s">' % self


@lru_cache(maxsize=None)
def _relabelings(k):
    items = []
    for perm in itertools.permutations(range(1, k + 1)):
        for signs in itertools.product((1, -1), repeat=k):
            items.append(Relabeling(perm, signs))
    return tuple(items)

def all_relabelings(k: int) -> Tuple[Relabeling, ...]:
    """Return the ``k! 2^k`` relabeling automorphisms, the identity first.

    Refuses ``k`` above 8 with :class:`BudgetExceeded`.
    """
    if int(k) != k or k < 1:
        raise ValueError('the number of generators must be a positive integer, got %s' % k)
    if k > MAX_RELABELING_RANK:
        log.error('Refusing to list %s! * 2^%s relabelings' % (k, k))
        raise BudgetExceeded('listing relabelings is limited to k <= %s, got %s' % (MAX_RELABELING_RANK, k))
    return _relabelings(k)

def apply_relabeling(tau: Relabeling, w) -> Word:
    return tau.apply(w)

def symmetry_order(n: int, k: int) -> int:
    """Order ``2 * k! * 2^k * n`` of the group generated by relabelings, rotations and inversion"""
    return 2 * math.factorial(k) * 2 ** k * n


class SymmetryElement(NamedTuple):
    """``x -> rotate(relabeling(x^e), rotation)`` with ``e = -1`` when ``inverted``"""
    relabeling: Relabeling
    rotation: int
    inverted: bool = False

    def apply(self, x) -> Word:
        word = as_word(x)
        if self.inverted:
            word = invert(word)
        return rotate(self.relabeling.apply(word), self.rotation)

    __call__ = apply


class OrbitRecord(NamedTuple):
    canonical: CyclicWord
    orbit_size: int
    stabilizer_order: int

    def to_dict(self) -> dict:
        return {
            'canonical': str(self.canonical),
            'orbit_size': self.orbit_size,
            'stabilizer_order': self.stabilizer_order,
        }


def _check_rank(word, k):
    if word.rank > k:
        raise WordError('"%s" uses more than %s generators' % (word, k))

def _images(word, k):
    for tau in all_relabelings(k):
        for base in (tau.apply(word), tau.apply(invert(word))):
            for shift in range(len(base)):
                yield Word._make(base[shift:] + base[:shift])

def orbit(x, k: int) -> Set[Word]:
    """Return every image of ``x`` under the ``2 * M * |x|`` symmetry elements, as a set of words"""
    word = as_word(x)
    _check_rank(word, k)
    if not word:
        return {word}
    return set(_images(word, k))

def orbit_record(x, k: int) -> OrbitRecord:
    """Return the canonical form, orbit size and stabilizer order of ``x``"""
    word = as_word(x)
    images = orbit(word, k)
    order = symmetry_order(len(word), k)
    size = len(images)
    assert order % size == 0, 'orbit size %s does not divide %s' % (size, order)
    return OrbitRecord(CyclicWord(min(images)), size, order // size)

def y_set(x, k: int) -> Set[Word]:
    """Return the set of rotations of ``tau(x)`` for nontrivial ``tau``,
    rotations of ``tau(x^-1)`` for every ``tau`` and nontrivial rotations of ``x``.

    Membership does not depend on the overlap ratio, only the later overlap
    test does.

    Raises
    -------
    ProperPowerError
        ``x`` is a proper power.
    """
    word = as_word(x)
    if not word:
        raise WordError('the y-set of the empty word is undefined')
    if is_proper_power(word):
        raise ProperPowerError('"%s" is a proper power' % (word,))
    _check_rank(word, k)
    n = len(word)
    inverse = invert(word)
    result = set()
    for tau in all_relabelings(k):
        image = tau.apply(word)
        start = 1 if tau.is_identity() else 0
        result.update(rotate(image, shift) for shift in range(start, n))
        image = tau.apply(inverse)
        result.update(rotate(image, shift) for shift in range(n))
    return result

def canonical_form(x, k: int) -> Word:
    """Return the least word among the ``2 * M * |x|`` images of ``x``.

    Two cyclic words lie in one orbit iff their canonical forms are equal.
    """
    word = as_word(x)
    _check_rank(word, k)
    if not word:
        return word
    inverse = invert(word)
    best = None
    for tau in all_relabelings(k):
        for base in (tau.apply(word), tau.apply(inverse)):
            candidate = rotate(base, least_rotation(base))
            if best is None or candidate < best:
                best = candidate
    return best


def orbit_shard(n: int, k: int, prefix: Sequence[int], cap: int=DEFAULT_ENUMERATION_CAP) -> Set[Tuple[int, ...]]:
    """Return the canonical forms of every orbit meeting the shard of words starting with ``prefix``"""
    prefix = tuple(prefix)
    depth = len(prefix)
    seen = set()
    canonical = set()
    for word in enumerate_words(n, k, CYCLICALLY_REDUCED, prefix, cap):
        if word in seen:
            continue
        images = orbit(word, k)
        seen.update(y for y in images if y[:depth] == prefix)
        canonical.add(tuple(min(images)))
    return canonical

def _orbit_plan(n, k, cap):
    # Every orbit holds a word starting with a1, so only those shards are walked
    if n < 1:
        raise ValueError('orbit census needs n >= 1, got %s' % n)
    all_relabelings(k)
    estimate = (2 * k - 1) ** (n - 1)
    if estimate > cap:
        log.error('Refusing to canonicalize about %s words (cap is %s)' % (estimate, cap))
        raise BudgetExceeded('orbit census at n=%s over %s generators needs about %s words, cap is %s' % (
            n, k, estimate, cap
        ))
    return [(n, k, tuple(prefix), cap) for prefix in shard_prefixes(n, k) if prefix[0] == 0]

def _walks(starts, allowed, ends, steps) -> int:
    # Non-cancelling letter paths a_0 .. a_steps with a_0 in starts,
    # every a_i in allowed and a_steps in ends
    counts = {a: 1 for a in starts}
    for _ in range(steps):
        total = sum(counts.values())
        counts = {a: total - counts.get(a ^ 1, 0) for a in allowed}
    return sum(value for a, value in counts.items() if a in ends)

def _rotation_fixed_points(table, n, r) -> int:
    # Words with x_i = tau(x_{i+r}) are B psi(B) ... psi^{m-1}(B), |B| = gcd(r, n)
    d = math.gcd(r, n)
    m = n // d
    letters = range(len(table))
    power = list(letters)
    for _ in range(m):
        power = [table[c] for c in power]
    allowed = {c for c in letters if power[c] == c}
    if not allowed:
        return 0
    if m == 1:
        psi = list(letters)
    else:
        inverse = [0] * len(table)
        for code, image in enumerate(table):
            inverse[image] = code
        psi = list(letters)
        for _ in range(pow(r // d, -1, m)):
            psi = [inverse[c] for c in psi]
    total = 0
    for first in allowed:
        forbidden = psi[first] ^ 1
        total += _walks((first,), allowed, allowed - {forbidden}, d - 1)
    return total

def _reflection_fixed_points(table, n, r) -> int:
    # Words with x_i = sigma(x_{c-i}), sigma(a) = tau(a)^-1, c = n - 1 - r
    sigma = [image ^ 1 for image in table]
    letters = range(len(table))
    fixed = {a for a in letters if sigma[a] == a}
    involutive = {a for a in letters if sigma[sigma[a]] == a}
    turning = {a for a in involutive if sigma[a] != a ^ 1}
    c = (n - 1 - r) % n
    if n % 2:
        return _walks(fixed, involutive, turning, (n - 1) // 2)
    if c % 2:
        return _walks(turning, involutive, turning, n // 2 - 1)
    return _walks(fixed, involutive, fixed, n // 2)

def _burnside(n, k) -> int:
    total = 0
    for tau in all_relabelings(k):
        table = tau.table
        for r in range(n):
            total += _rotation_fixed_points(table, n, r)
            total += _reflection_fixed_points(table, n, r)
    order = symmetry_order(n, k)
    assert total % order == 0, 'fixed point sum %s is not divisible by %s' % (total, order)
    return total // order

def _check_method(method):
    if method not in METHODS:
        raise ValueError('unknown orbit census method "%s", expected one of %s' % (method, ', '.join(METHODS)))

def count_orbits(
    n: int,
    k: int,
    method: str=BURNSIDE,
    cap: int=DEFAULT_ENUMERATION_CAP,
    progress_bar: bool=False
) -> int:
    """Count orbits of length-``n`` cyclically reduced words under relabelings, rotations and inversion.

    Parameters
    ------------
    n: :class:`int`
        Word length, at least 1.
    k: :class:`int`
        Number of generators.
    method: :class:`str`
        ``"burnside"`` averages fixed points over the ``2 * M * n`` group
        elements without enumerating words. ``"canonicalize"`` enumerates
        words shard by shard and collects distinct canonical forms; it is
        refused with :class:`BudgetExceeded` above ``cap``.
    """
    _check_method(method)
    if method == BURNSIDE:
        if n < 1:
            raise ValueError('orbit census needs n >= 1, got %s' % n)
        log.debug('Burnside census at n=%s over %s generators' % (n, k))
        return _burnside(n, k)
    log.debug('Canonical form census at n=%s over %s generators' % (n, k))
    results = run_shards(orbit_shard, _orbit_plan(n, k, cap), progress_bar, 'orbits n=%s' % n)
    return len(set().union(*results))

async def count_orbits_coro(
    n: int,
    k: int,
    method: str=BURNSIDE,
    cap: int=DEFAULT_ENUMERATION_CAP,
    workers: Optional[int]=None,
    progress_bar: bool=False
) -> int:
    """
    "Coroutine function"

    Same as :meth:`count_orbits`, canonical form shards run in a process pool.
    """
    _check_method(method)
    if method == BURNSIDE:
        return count_orbits(n, k, method, cap)
    shards = _orbit_plan(n, k, cap)
    results = await run_shards_coro(orbit_shard, shards, workers, progress_bar, 'orbits n=%s' % n)
    return len(set().union(*results))

def census_ratio(
    n: int,
    k: int,
    method: str=BURNSIDE,
    cap: int=DEFAULT_ENUMERATION_CAP,
    orbit_count: Optional[int]=None
) -> Fraction:
    """Return ``O_n * 2Mn / gamma(n, CR)`` exactly; it is at least 1 since no orbit exceeds ``2Mn`` words"""
    if orbit_count is None:
        orbit_count = count_orbits(n, k, method, cap)
    return Fraction(orbit_count * symmetry_order(n, k), gamma(n, k, CYCLICALLY_REDUCED))

def asymptotic_orbit_estimate(n: int, k: int) -> Fraction:
    """Asymptotic number of orbits ``(2k-1)^n / (n * k! * 2^(k+1))``"""
    return Fraction((2 * k - 1) ** n, n * math.factorial(k) * 2 ** (k + 1))
