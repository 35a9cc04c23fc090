# relator-census
# words.py

import re
import logging
import string
from typing import Callable, Iterable, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import WordError, BudgetExceeded
from .utils import derive_rng
from .shards import run_shards, run_shards_coro

log = logging.getLogger(__name__)

__all__ = (
    'Letter', 'Word', 'CyclicWord', 'CountTable',
    'FREE', 'CYCLICALLY_REDUCED', 'DEFAULT_ENUMERATION_CAP',
    'free_reduce', 'cyclic_reduce', 'invert', 'rotate',
    'is_cyclically_reduced', 'least_rotation', 'primitive_period',
    'is_proper_power', 'enumerate_words', 'shard_prefixes',
    'count_words', 'count_words_coro', 'count_shard', 'free_count', 'rivin_count',
    'gamma', 'rho', 'random_reduced_word', 'sample_cyclically_reduced',
    'sample_words',
)

FREE = 'F'
CYCLICALLY_REDUCED = 'CR'
KINDS = (FREE, CYCLICALLY_REDUCED)

DEFAULT_ENUMERATION_CAP = 10 ** 8

_NUMERIC_TOKEN = re.compile(r'^([xX])([0-9]+)$')

# Letters are stored as integer codes: a_i -> 2(i-1), a_i^-1 -> 2(i-1)+1.
# Code order is the fixed letter order a1 < a1^-1 < a2 < a2^-1 < ...,
# and the inverse of a code is ``code ^ 1``.

class Letter(NamedTuple):
    """A signed generator ``a_i^{+1}`` or ``a_i^{-1}``"""
    generator: int
    sign: int

    @property
    def code(self) -> int:
        if self.generator < 1 or self.sign not in (1, -1):
            raise WordError('invalid letter %r' % (self,))
        return 2 * (self.generator - 1) + (1 if self.sign < 0 else 0)

    @classmethod
    def from_code(cls, code: int) -> 'Letter':
        if code < 0:
            raise WordError('invalid letter code %s' % code)
        return cls(code // 2 + 1, -1 if code & 1 else 1)

    def inverse(self) -> 'Letter':
        return Letter(self.generator, -self.sign)

    def __str__(self) -> str:
        return _code_text(self.code, self.generator > 26)


def _code_text(code, numeric=False):
    generator = code // 2 + 1
    if numeric or generator > 26:
        return ('X%d' if code & 1 else 'x%d') % generator
    char = string.ascii_lowercase[generator - 1]
    return char.upper() if code & 1 else char

def _as_code(letter) -> int:
    if isinstance(letter, Letter):
        return letter.code
    code = int(letter)
    if code < 0:
        raise WordError('invalid letter code %s' % code)
    return code


class Word(tuple):
    """A freely reduced word over ``A_{2k}``, stored as a tuple of letter codes.

    Construct from codes (``Word((0, 2, 1, 3))`` is ``abAB``), from text with
    :meth:`Word.parse`, or from arbitrary letter sequences with
    :func:`free_reduce`. The constructor refuses words that are not freely
    reduced.
    """
    __slots__ = ()

    def __new__(cls, codes=()):
        codes = tuple(_as_code(c) for c in codes)
        for position in range(len(codes) - 1):
            if codes[position] ^ 1 == codes[position + 1]:
                raise WordError('word is not freely reduced at position %s' % position)
        return tuple.__new__(cls, codes)

    @classmethod
    def _make(cls, codes) -> 'Word':
        # Trusted constructor, the caller guarantees free reduction
        return tuple.__new__(cls, codes)

    @classmethod
    def parse(cls, text: str, reduce: bool=False) -> 'Word':
        """Parse the text format.

        Letter form (``k <= 26``): generator ``i`` is the i-th lowercase letter,
        its inverse the uppercase one, e.g. ``"abAB"``. Numeric form: space
        separated tokens ``x3``/``X3`` (``X`` = inverse). ``"1"`` and the empty
        string are the empty word.

        Parameters
        ------------
        text: :class:`str`
            The word.
        reduce: :class:`bool`
            Freely reduce the input instead of refusing it, default to ``False``.
        """
        text = text.strip()
        if text in ('', '1'):
            return EMPTY
        codes = []
        if any(ch.isdigit() for ch in text):
            for token in text.replace(',', ' ').split():
                match = _NUMERIC_TOKEN.match(token)
                if match is None or int(match.group(2)) < 1:
                    raise WordError('"%s" is not a numeric letter (expected x<i> or X<i>)' % token)
                codes.append(2 * (int(match.group(2)) - 1) + (match.group(1) == 'X'))
        else:
            for char in text:
                if char.isspace():
                    continue
                if char not in string.ascii_letters:
                    raise WordError('"%s" is not a letter' % char)
                codes.append(2 * string.ascii_lowercase.index(char.lower()) + char.isupper())
        if reduce:
            return free_reduce(codes)
        return cls(codes)

    @property
    def letters(self) -> Tuple[Letter, ...]:
        """Tuple[:class:`Letter`]: Return the letters of this word"""
        return tuple(Letter.from_code(c) for c in self)

    @property
    def rank(self) -> int:
        """:class:`int`: Return the largest generator index used, ``0`` for the empty word"""
        return max(self) // 2 + 1 if self else 0

    def inverse(self) -> 'Word':
        return invert(self)

    def is_cyclically_reduced(self) -> bool:
        return is_cyclically_reduced(self)

    def to_text(self, numeric: bool=False) -> str:
        """Return the text format of this word, ``"1"`` for the empty word"""
        if not self:
            return '1'
        numeric = numeric or self.rank > 26
        separator = ' ' if numeric else ''
        return separator.join(_code_text(c, numeric) for c in self)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return '<Word "%s">' % self.to_text()

EMPTY = Word._make(())


def free_reduce(raw: Iterable) -> Word:
    """Return the unique freely reduced form of a sequence of letters (codes or :class:`Letter`)"""
    stack = []
    for letter in raw:
        code = _as_code(letter)
        if stack and stack[-1] == code ^ 1:
            stack.pop()
        else:
            stack.append(code)
    return Word._make(stack)

def invert(w: Iterable) -> Word:
    """Return ``w^-1``: the reversed word with every letter inverted"""
    return Word._make(c ^ 1 for c in reversed(tuple(w)))

def rotate(w: Word, shift: int) -> Word:
    """Return the cyclic permutation of ``w`` starting at position ``shift``"""
    if not w:
        return w
    shift %= len(w)
    return Word._make(w[shift:] + w[:shift])

def is_cyclically_reduced(w: Word) -> bool:
    return len(w) < 2 or w[0] ^ 1 != w[-1]

def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``.

    Returns
    --------
    Tuple[:class:`Word`, :class:`Word`]
        ``(core, conjugator)``, the core is cyclically reduced (possibly empty).
    """
    w = w if isinstance(w, Word) else Word(w)
    n = len(w)
    depth = 0
    while depth < n - 1 - depth and w[depth] ^ 1 == w[n - 1 - depth]:
        depth += 1
    return Word._make(w[depth:n - depth]), Word._make(w[:depth])

def least_rotation(w) -> int:
    """Return the start index of the lexicographically least rotation of ``w``.

    Two-pointer minimum-representation scan, linear in ``len(w)``.
    """
    n = len(w)
    i, j, offset = 0, 1, 0
    while i < n and j < n and offset < n:
        a = w[(i + offset) % n]
        b = w[(j + offset) % n]
        if a == b:
            offset += 1
            continue
        if a > b:
            i += offset + 1
        else:
            j += offset + 1
        if i == j:
            j += 1
        offset = 0
    return min(i, j) if n else 0

def _text(w) -> str:
    return ''.join(map(chr, w))

def primitive_period(w) -> int:
    """Return the smallest ``p`` such that rotating ``w`` by ``p`` gives ``w`` back.

    ``p`` always divides ``len(w)``; ``p == len(w)`` means ``w`` is not a
    proper power as a cyclic word.
    """
    if not w:
        return 0
    text = _text(w)
    return (text + text).find(text, 1)

def is_proper_power(c) -> bool:
    """Return ``True`` iff ``c = u^m`` as a cyclic word for some ``m >= 2``"""
    word = c.representative if isinstance(c, CyclicWord) else c
    if not word:
        raise WordError('the empty word is not a cyclic word of positive length')
    return primitive_period(word) < len(word)


class CyclicWord:
    """A rotation class of cyclically reduced words.

    The class is stored by its canonical rotation, the least rotation under the
    fixed letter order, so two instances compare equal iff their words are
    cyclic permutations of each other.
    """
    __slots__ = ('_representative',)

    def __init__(self, word) -> None:
        word = word if isinstance(word, Word) else Word(word)
        if not is_cyclically_reduced(word):
            raise WordError('"%s" is not cyclically reduced' % (word,))
        self._representative = rotate(word, least_rotation(word))

    @property
    def representative(self) -> Word:
        """:class:`Word`: Return the least rotation"""
        return self._representative

    @property
    def period(self) -> int:
        """:class:`int`: Return the primitive period of this cyclic word"""
        return primitive_period(self._representative)

    def is_proper_power(self) -> bool:
        return is_proper_power(self._representative)

    def rotations(self) -> List[Word]:
        """Return every rotation, in rotation order starting at the representative"""
        word = self._representative
        return [rotate(word, shift) for shift in range(len(word))] if word else [word]

    def inverse(self) -> 'CyclicWord':
        # Inversion reverses the letters, so the representative is recomputed
        return CyclicWord(invert(self._representative))

    def __len__(self) -> int:
        return len(self._representative)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self._representative == other._representative

    def __hash__(self) -> int:
        return hash(('cyclic', self._representative))

    def __str__(self) -> str:
        return str(self._representative)

    def __repr__(self) -> str:
        return '<CyclicWord "%s">' % self._representative


def as_word(x) -> Word:
    """Return ``x`` as a cyclically reduced :class:`Word` (the representative of a :class:`CyclicWord`)"""
    if isinstance(x, CyclicWord):
        return x.representative
    word = x if isinstance(x, Word) else Word(x)
    if not is_cyclically_reduced(word):
        raise WordError('"%s" is not cyclically reduced' % (word,))
    return word


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError('unknown word set "%s", expected one of %s' % (kind, ', '.join(KINDS)))

def _check_k(k):
    if int(k) != k or k < 1:
        raise ValueError('the number of generators must be a positive integer, got %s' % k)

def _successors(k):
    size = 2 * k
    return [tuple(c for c in range(size) if c != last ^ 1) for last in range(size)]

def enumerate_words(
    n: int,
    k: int,
    kind: str=CYCLICALLY_REDUCED,
    prefix: Iterable=(),
    cap: int=DEFAULT_ENUMERATION_CAP
) -> Iterator[Word]:
    """Enumerate every word of length ``n`` in ``F`` or ``CR``, in the fixed lexicographic order.

    Parameters
    ------------
    n: :class:`int`
        Word length.
    k: :class:`int`
        Number of generators.
    kind: :class:`str`
        ``"F"`` (freely reduced) or ``"CR"`` (cyclically reduced).
    prefix: Iterable
        Restrict to words starting with this reduced prefix. Prefixes of one
        length partition the set into disjoint shards.
    cap: :class:`int`
        Refuse with :class:`BudgetExceeded` when ``(2k-1)^(n - len(prefix))``
        is larger than this.
    """
    _check_k(k)
    _check_kind(kind)
    if n < 0:
        raise ValueError('word length must be non-negative, got %s' % n)
    prefix = Word(prefix)
    if prefix and prefix.rank > k:
        raise WordError('prefix "%s" uses more than %s generators' % (prefix, k))
    estimate = (2 * k - 1) ** max(0, n - len(prefix))
    if estimate > cap:
        log.error('Refusing to enumerate about %s words (cap is %s)' % (estimate, cap))
        raise BudgetExceeded('enumerating length-%s words over %s generators needs about %s words, cap is %s' % (
            n, k, estimate, cap
        ))
    return _walk(n, k, kind == CYCLICALLY_REDUCED, prefix)

def _walk(n, k, cyclic, prefix):
    if len(prefix) > n:
        return
    if len(prefix) == n:
        if not cyclic or is_cyclically_reduced(prefix):
            yield prefix
        return
    successors = _successors(k)
    letters = tuple(range(2 * k))
    stack = [tuple(prefix)]
    while stack:
        w = stack.pop()
        depth = len(w)
        choices = successors[w[-1]] if depth else letters
        if depth == n - 1:
            if cyclic and depth:
                forbidden = w[0] ^ 1
                for c in choices:
                    if c != forbidden:
                        yield Word._make(w + (c,))
            else:
                for c in choices:
                    yield Word._make(w + (c,))
        else:
            for c in reversed(choices):
                stack.append(w + (c,))

def shard_prefixes(n: int, k: int, depth: int=2) -> List[Word]:
    """Return the reduced prefixes of length ``min(depth, n)`` in lexicographic order.

    Enumerating every returned prefix covers each word of length ``n`` exactly once.
    """
    return list(enumerate_words(min(depth, n), k, FREE))

def count_shard(n, k, kind=CYCLICALLY_REDUCED, prefix=(), predicate=None, cap=DEFAULT_ENUMERATION_CAP) -> int:
    """Brute-force count of one shard, optionally filtered by ``predicate``"""
    words = enumerate_words(n, k, kind, prefix, cap)
    if predicate is None:
        return sum(1 for _ in words)
    return sum(1 for w in words if predicate(w))

def count_words(
    n: int,
    k: int,
    kind: str=CYCLICALLY_REDUCED,
    predicate: Optional[Callable[[Word], bool]]=None,
    cap: int=DEFAULT_ENUMERATION_CAP,
    progress_bar: bool=False
) -> int:
    """Count words of length ``n`` by enumeration, shard by shard"""
    shards = _count_plan(n, k, kind, predicate, cap)
    return sum(run_shards(count_shard, shards, progress_bar, 'n=%s' % n))

async def count_words_coro(
    n: int,
    k: int,
    kind: str=CYCLICALLY_REDUCED,
    predicate: Optional[Callable[[Word], bool]]=None,
    cap: int=DEFAULT_ENUMERATION_CAP,
    workers: Optional[int]=None,
    progress_bar: bool=False
) -> int:
    """
    "Coroutine function"

    Same as :meth:`count_words` but the shards are counted in a process pool.
    ``predicate`` must be picklable (a module level function or a
    :func:`functools.partial` of one).
    """
    shards = _count_plan(n, k, kind, predicate, cap)
    return sum(await run_shards_coro(count_shard, shards, workers, progress_bar, 'n=%s' % n))

def _count_plan(n, k, kind, predicate, cap):
    _check_k(k)
    _check_kind(kind)
    if (2 * k - 1) ** n > cap:
        log.error('Refusing to count length-%s words by enumeration (cap is %s)' % (n, cap))
        raise BudgetExceeded('counting length-%s words over %s generators exceeds the cap %s' % (n, k, cap))
    log.debug('Counting %s words of length %s over %s generators by enumeration' % (kind, n, k))
    return [(n, k, kind, prefix, predicate, cap) for prefix in shard_prefixes(n, k)]

def free_count(n: int, k: int) -> int:
    """``gamma(n, F) = 2k(2k-1)^(n-1)``, and 1 for the empty word"""
    if n < 0:
        raise ValueError('word length must be non-negative, got %s' % n)
    if n == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (n - 1)

def rivin_count(n: int, k: int) -> int:
    """``gamma(n, CR) = (2k-1)^n + 1 + (k-1)(1 + (-1)^n)`` for ``n >= 1``, and 1 for ``n = 0``"""
    if n < 0:
        raise ValueError('word length must be non-negative, got %s' % n)
    if n == 0:
        return 1
    return (2 * k - 1) ** n + 1 + (k - 1) * (1 + (-1) ** n)

def gamma(
    n: int,
    k: int,
    kind: str=CYCLICALLY_REDUCED,
    predicate: Optional[Callable[[Word], bool]]=None,
    cap: int=DEFAULT_ENUMERATION_CAP
) -> int:
    """Number of words of length ``n`` in ``F``, ``CR`` or a predicate-filtered subset of either.

    The unfiltered sets use the closed formulas; filtered sets are counted by
    enumeration and are subject to ``cap``.
    """
    _check_k(k)
    _check_kind(kind)
    if predicate is not None:
        return count_words(n, k, kind, predicate, cap)
    if kind == FREE:
        return free_count(n, k)
    return rivin_count(n, k)

def rho(
    n: int,
    k: int,
    kind: str=CYCLICALLY_REDUCED,
    predicate: Optional[Callable[[Word], bool]]=None,
    cap: int=DEFAULT_ENUMERATION_CAP
) -> int:
    """Number of words of length at most ``n``: the running sum of :func:`gamma`"""
    return sum(gamma(length, k, kind, predicate, cap) for length in range(n + 1))


class CountTable:
    """Exact cache of ``gamma(n, S)`` and ``rho(n, S)`` for ``S`` in ``F``, ``CR``"""

    def __init__(self, k: int) -> None:
        _check_k(k)
        self.k = k
        self._entries = {}

    def __repr__(self) -> str:
        return '<CountTable k=%s entries=%s>' % (self.k, len(self._entries))

    def gamma(self, n: int, kind: str=CYCLICALLY_REDUCED) -> int:
        key = ('gamma', kind, n)
        if key not in self._entries:
            self._entries[key] = gamma(n, self.k, kind)
        return self._entries[key]

    def rho(self, n: int, kind: str=CYCLICALLY_REDUCED) -> int:
        key = ('rho', kind, n)
        if key not in self._entries:
            previous = self.rho(n - 1, kind) if n > 0 else 0
            self._entries[key] = previous + self.gamma(n, kind)
        return self._entries[key]

    def lower_bound(self, n: int) -> int:
        """``(2k-1)^n``, a lower bound for ``gamma(n, CR)`` when ``n >= 1``"""
        return (2 * self.k - 1) ** n

    def upper_bound(self, n: int) -> int:
        """``2k(2k-1)^n``, an upper bound for ``gamma(n, CR)``"""
        return 2 * self.k * (2 * self.k - 1) ** n

    @property
    def entries(self) -> dict:
        """:class:`dict`: Return the cached ``(set-tag, n) -> count`` entries"""
        return {(kind, n) if tag == 'gamma' else ('rho-' + kind, n): value
                for (tag, kind, n), value in self._entries.items()}

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'entries': [
                {'set': key[0], 'n': key[1], 'count': value}
                for key, value in sorted(self.entries.items())
            ]
        }


def random_reduced_word(n: int, k: int, rng: np.random.Generator) -> Word:
    """Draw a uniformly random freely reduced word of length ``n``"""
    if n == 0:
        return EMPTY
    size = 2 * k
    previous = int(rng.integers(size))
    codes = [previous]
    for choice in rng.integers(size - 1, size=n - 1).tolist():
        # Skip the one letter that would cancel
        forbidden = previous ^ 1
        previous = choice if choice < forbidden else choice + 1
        codes.append(previous)
    return Word._make(codes)

def sample_cyclically_reduced(
    n: int,
    k: int,
    seed: Optional[int]=None,
    rng: Optional[np.random.Generator]=None
) -> Word:
    """Draw a word uniformly from the cyclically reduced words of length ``n``.

    Draws uniform freely reduced words and keeps the first whose last letter
    does not cancel the first one; the acceptance rate is at least
    ``(2k-2)/(2k-1)``.

    Parameters
    ------------
    n: :class:`int`
        Word length, at least 1.
    k: :class:`int`
        Number of generators.
    seed: :class:`int`
        Seed for a fresh generator, ignored when ``rng`` is given.
    rng: :class:`numpy.random.Generator`
        Generator to draw from.
    """
    if n < 1:
        raise ValueError('sampled words must have positive length, got %s' % n)
    _check_k(k)
    if rng is None:
        rng = np.random.default_rng(seed)
    while True:
        word = random_reduced_word(n, k, rng)
        if is_cyclically_reduced(word):
            return word

def sample_words(n: int, k: int, samples: int, seed: int, start: int=0) -> Iterator[Word]:
    """Yield ``samples`` uniform cyclically reduced words, trial ``i`` drawn from ``derive_rng(seed, i)``"""
    for index in range(start, start + samples):
        yield sample_cyclically_reduced(n, k, rng=derive_rng(seed, index))
