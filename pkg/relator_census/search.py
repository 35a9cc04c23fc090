# relator-census
# search.py

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Set, Tuple

from .dehn import SymmetrizedRelator, is_in_normal_closure
from .errors import AmbiguousRecovery, RecoveryNotFound, SmallCancellationError
from .genericity import check_lambda, in_E, satisfies_c_prime
from .presentations import Presentation
from .symmetry import all_relabelings
from .utils import overlap_threshold
from .words import (
    Word, CYCLICALLY_REDUCED, FREE, as_word, cyclic_reduce, enumerate_words,
    free_reduce, invert, least_rotation, rotate
)

log = logging.getLogger(__name__)

__all__ = (
    'ClassParams', 'SearchBudget', 'SearchResult', 'NormalClosureBall',
    'apply_map', 'in_generic_class', 'search_isomorphic', 'recover_relator',
)

class ClassParams(NamedTuple):
    """The searched class: one-relator presentations on ``k`` generators whose
    relator lies in ``E(lam)`` and satisfies C'(1/6), of length at most ``max_len``.

    With ``exhaustive`` every such relator is a candidate; otherwise only the
    relators suggested by the images of the input relators are tried.
    """
    k: int = 2
    lam: Fraction = Fraction(1, 6)
    max_len: int = 64
    exhaustive: bool = False


class SearchBudget(NamedTuple):
    """Limits of the bounded search.

    ``map_len`` caps each generator image, ``depth`` and ``conj_len`` bound the
    conjugate products enumerated on the input side, ``max_tuples`` caps the
    number of examined tuples.
    """
    map_len: int = 1
    depth: int = 2
    conj_len: int = 2
    max_tuples: int = 100000


class SearchResult(NamedTuple):
    presentation: Presentation
    relator: Word
    forward: Tuple[Word, ...]
    backward: Tuple[Word, ...]
    tuples_examined: int
    size: int

    def to_dict(self) -> dict:
        return {
            'presentation': self.presentation.to_dict(),
            'relator': str(self.relator),
            'forward': [str(w) for w in self.forward],
            'backward': [str(w) for w in self.backward],
            'tuples_examined': self.tuples_examined,
            'size': self.size,
        }


def apply_map(images: Sequence[Word], w) -> Word:
    """Apply the homomorphism ``a_i -> images[i - 1]`` to ``w``"""
    raw = []
    for c in w:
        image = images[c // 2]
        raw.extend(invert(image) if c & 1 else image)
    return free_reduce(raw)

def _cyclic_key(w) -> Word:
    core = cyclic_reduce(w)[0]
    return rotate(core, least_rotation(core))


class NormalClosureBall:
    """Cyclic normal forms of products of at most ``depth`` conjugates
    ``u r^{+-1} u^-1`` with ``|u| <= conj_len``.

    Membership is a one-sided test: a hit proves the word lies in the normal
    closure, a miss proves nothing. A single C'(1/6) relator is decided exactly
    by Dehn's algorithm instead.
    """

    def __init__(self, presentation: Presentation, depth: int, conj_len: int) -> None:
        self.presentation = presentation
        self._symmetrized = None
        self._keys = {Word._make(())}  # type: Set[Word]
        relators = presentation.relators
        if len(relators) == 1:
            try:
                self._symmetrized = SymmetrizedRelator(_cyclic_key(relators[0]))
            except SmallCancellationError:
                pass
        if self._symmetrized is not None or not relators:
            return
        m = presentation.generator_count
        conjugators = [w for length in range(conj_len + 1) for w in enumerate_words(length, m, FREE)]
        base = []
        for r in relators:
            for relator in (r, invert(r)):
                for u in conjugators:
                    base.append(free_reduce(tuple(u) + tuple(relator) + tuple(invert(u))))
        level = set(base)
        self._keys.update(_cyclic_key(w) for w in level)
        for _ in range(depth - 1):
            level = {free_reduce(tuple(w) + tuple(b)) for w in level for b in base}
            self._keys.update(_cyclic_key(w) for w in level)
        log.debug('Normal closure ball holds %s cyclic words' % len(self._keys))

    def __len__(self) -> int:
        return len(self._keys)

    def __contains__(self, w) -> bool:
        if self._symmetrized is not None:
            return is_in_normal_closure(None, w, self._symmetrized)
        return _cyclic_key(w) in self._keys


def in_generic_class(v, params: ClassParams) -> bool:
    """Whether ``v`` is a relator of the searched class"""
    word = as_word(v)
    if not word or len(word) > params.max_len or word.rank > params.k:
        return False
    return in_E(word, params.lam, params.k) and satisfies_c_prime(word, Fraction(1, 6))[0]

def _class_members(params) -> List[Word]:
    # One least rotation per cyclic word, by length then lexicographically
    found = []
    for length in range(1, params.max_len + 1):
        for w in enumerate_words(length, params.k, CYCLICALLY_REDUCED):
            if least_rotation(w) == 0 and in_generic_class(w, params):
                found.append(w)
    return found

def _candidates(presentation, forward, params) -> Set[Word]:
    found = set()
    for r in presentation.relators:
        image = _cyclic_key(apply_map(forward, r))
        for v in (image, _cyclic_key(invert(image))):
            if v and in_generic_class(v, params):
                found.add(v)
    return found

def _all_maps(source: int, target: int, map_len: int) -> List[Tuple[Word, ...]]:
    words = [w for length in range(1, map_len + 1) for w in enumerate_words(length, target, FREE)]
    return sorted(itertools.product(words, repeat=source))

def _map_size(images) -> int:
    return sum(len(w) for w in images)

def search_isomorphic(
    presentation: Presentation,
    class_params: ClassParams=ClassParams(),
    budget: SearchBudget=SearchBudget()
) -> Optional[SearchResult]:
    """Search for a one-relator presentation of the searched class defining the same group.

    Tuples ``(v, h, h')`` with maps ``h: X -> F(X')`` and ``h': X' -> F(X)``
    are enumerated by size ``|v| + |h| + |h'| + depth``, then lexicographically.
    Every tuple of a size is examined before the next size starts, until
    ``budget.max_tuples`` is reached. A tuple is accepted when

    - ``h(h'(x')) x'^-1`` and ``h(r)`` lie in the normal closure of ``v``
      (Dehn's algorithm),
    - ``h'(h(x)) x^-1`` and ``h'(v)`` lie in the normal closure of the input
      relators (see :class:`NormalClosureBall`).

    Returns
    --------
    Optional[:class:`SearchResult`]
        The first accepted tuple, ``None`` when the budget ran out.
    """
    m = presentation.generator_count
    k = class_params.k
    if m < 1:
        log.warning('Presentations without generators define the trivial group, nothing to search')
        return None
    ball = NormalClosureBall(presentation, budget.depth, budget.conj_len)
    forward_maps = _all_maps(m, k, budget.map_len)
    backward_maps = {}  # type: Dict[int, List[Tuple[Word, ...]]]
    for backward in _all_maps(k, m, budget.map_len):
        backward_maps.setdefault(_map_size(backward), []).append(backward)
    if class_params.exhaustive:
        pool = sorted(_class_members(class_params))
    else:
        pool = sorted(set().union(*(_candidates(presentation, forward, class_params) for forward in forward_maps)))
    if not pool:
        log.info('No relator of the searched class to try')
        return None
    own_generators = [Word._make((2 * i,)) for i in range(m)]
    candidate_generators = [Word._make((2 * i,)) for i in range(k)]
    symmetrized = {}
    relators_map = {}
    examined = 0
    log.info('Searching %s relators of class k=%s, max_len=%s with map_len=%s, depth=%s' % (
        len(pool), k, class_params.max_len, budget.map_len, budget.depth
    ))
    smallest = min(len(v) for v in pool) + m + k + budget.depth
    largest = max(len(v) for v in pool) + budget.map_len * (m + k) + budget.depth
    for size in range(smallest, largest + 1):
        for v in pool:
            rest = size - budget.depth - len(v)
            if rest < m + k:
                continue
            for forward in forward_maps:
                backwards = backward_maps.get(rest - _map_size(forward))
                if not backwards:
                    continue
                if v not in symmetrized:
                    symmetrized[v] = SymmetrizedRelator(v)
                closure = symmetrized[v]
                if (v, forward) not in relators_map:
                    relators_map[v, forward] = all(
                        is_in_normal_closure(v, apply_map(forward, r), closure) for r in presentation.relators
                    )
                for backward in backwards:
                    examined += 1
                    if examined > budget.max_tuples:
                        log.info('Search budget of %s tuples exhausted' % budget.max_tuples)
                        return None
                    if not relators_map[v, forward]:
                        continue
                    if not all(
                        is_in_normal_closure(v, apply_map(forward, apply_map(backward, x)) + invert(x), closure)
                        for x in candidate_generators
                    ):
                        continue
                    if not all(
                        free_reduce(apply_map(backward, apply_map(forward, x)) + invert(x)) in ball
                        for x in own_generators
                    ):
                        continue
                    if apply_map(backward, v) not in ball:
                        continue
                    log.info('Found relator "%s" at size %s after %s tuples' % (v, size, examined))
                    return SearchResult(Presentation(k, [v]), v, tuple(forward), tuple(backward), examined, size)
    log.info('No presentation found within map length %s (%s tuples)' % (budget.map_len, examined))
    return None

def recover_relator(
    presentation: Presentation,
    prefix,
    lam,
    budget: SearchBudget=SearchBudget(),
    class_params: ClassParams=ClassParams(),
    v=None
) -> Word:
    """Recover the relator ``r`` of a generic one-relator group from its prefix.

    Runs :meth:`search_isomorphic` (skipped when ``v`` is given), then lists
    every rotation of ``tau(v)`` and ``tau(v)^-1`` over all relabelings ``tau``
    and keeps those starting with ``prefix``.

    Raises
    -------
    RecoveryNotFound
        The search failed or no listed word starts with ``prefix``.
    AmbiguousRecovery
        More than one listed word starts with ``prefix``.
    """
    lam = check_lambda(lam)
    prefix = Word(prefix) if not isinstance(prefix, Word) else prefix
    if v is None:
        result = search_isomorphic(presentation, class_params, budget)
        if result is None:
            raise RecoveryNotFound('no presentation of the searched class was found within the budget')
        v = result.relator
    v = as_word(v)
    k = max(class_params.k, v.rank)
    if len(prefix) < overlap_threshold(lam, len(v)):
        log.warning('Prefix has %s letters, fewer than the %s the overlap ratio asks for' % (
            len(prefix), overlap_threshold(lam, len(v))
        ))
    depth = len(prefix)
    matches = []
    for tau in all_relabelings(k):
        image = tau.apply(v)
        for base in (image, invert(image)):
            for shift in range(len(base)):
                candidate = rotate(base, shift)
                if candidate[:depth] == prefix:
                    matches.append(candidate)
    if not matches:
        raise RecoveryNotFound('no image of "%s" starts with "%s"' % (v, prefix))
    if len(matches) > 1:
        log.error('%s images of "%s" start with "%s"' % (len(matches), v, prefix))
        raise AmbiguousRecovery(matches)
    return matches[0]
