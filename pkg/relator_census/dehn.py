# relator-census
# dehn.py

import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from .errors import PresentationError, SmallCancellationError
from .genericity import satisfies_c_prime
from .words import Word, as_word, cyclic_reduce, free_reduce, invert, rotate

log = logging.getLogger(__name__)

__all__ = (
    'DehnStep', 'DehnTrace', 'SymmetrizedRelator',
    'dehn_reduce', 'is_in_normal_closure',
)

class DehnStep(NamedTuple):
    position: int
    fragment: Word
    length_before: int
    length_after: int

    def to_dict(self) -> dict:
        return {
            'position': self.position,
            'fragment': str(self.fragment),
            'length_before': self.length_before,
            'length_after': self.length_after,
        }


class DehnTrace(NamedTuple):
    steps: Tuple[DehnStep, ...]

    def to_dict(self) -> dict:
        return {'steps': [step.to_dict() for step in self.steps]}


class SymmetrizedRelator:
    """Every rotation of ``r`` followed by every rotation of ``r^-1``, duplicates removed.

    Raises :class:`SmallCancellationError` unless ``r`` satisfies C'(1/6).
    """

    def __init__(self, r) -> None:
        relator = as_word(r)
        if not relator:
            raise SmallCancellationError('the empty relator has no symmetrized set')
        holds, piece = satisfies_c_prime(relator, Fraction(1, 6))
        if not holds:
            log.error('Relator "%s" fails C\'(1/6) (max piece %s)' % (relator, piece))
            raise SmallCancellationError('relator "%s" does not satisfy C\'(1/6), max piece is %s' % (relator, piece))
        n = len(relator)
        members = []
        for base in (relator, invert(relator)):
            for shift in range(n):
                candidate = rotate(base, shift)
                if candidate not in members:
                    members.append(candidate)
        self.relator = relator
        self.members = members
        self._member_set = frozenset(members)
        self._by_letter = {}  # type: Dict[int, List[Word]]
        for member in members:
            self._by_letter.setdefault(member[0], []).append(member)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w) -> bool:
        return w in self._member_set

    def __repr__(self) -> str:
        return '<SymmetrizedRelator "%s" members=%s>' % (self.relator, len(self.members))

    def longest_match(self, word: Word):
        """Return ``(position, member, length)`` of the leftmost cyclic subword of ``word``
        covering more than half of a member, or ``None``.

        At one position the longest match wins, then the earlier member.
        """
        n = len(self.relator)
        size = len(word)
        for position in range(size):
            best, best_length = None, 0
            for member in self._by_letter.get(word[position], ()):
                length = 0
                limit = min(size, n)
                while length < limit and word[(position + length) % size] == member[length]:
                    length += 1
                if 2 * length > n and length > best_length:
                    best, best_length = member, length
            if best is not None:
                return position, best, best_length
        return None


def dehn_reduce(r, w, symmetrized: SymmetrizedRelator=None) -> Tuple[Word, DehnTrace]:
    """Run Dehn's algorithm for the single relator ``r`` on ``w``.

    ``w`` is freely and cyclically reduced first. While a cyclic subword matches more than
    half of a member ``s = u v`` of the symmetrized set (``u`` the match), it
    is replaced by ``v^-1`` and the word is freely and cyclically reduced
    again. The result is empty iff ``w`` lies in the normal closure of ``r``.

    Parameters
    ------------
    r: :class:`Word` or :class:`CyclicWord`
        Relator satisfying C'(1/6).
    w: :class:`Word`
        Word to reduce.
    symmetrized: :class:`SymmetrizedRelator`
        Prebuilt symmetrized set of ``r``, reused across calls. With ``r`` set to
        ``None`` the set is used as given.

    Raises
    -------
    SmallCancellationError
        ``r`` does not satisfy C'(1/6).
    PresentationError
        ``symmetrized`` was built from a relator other than ``r``, a rotation
        of ``r`` or of ``r^-1``.
    """
    if symmetrized is None:
        symmetrized = SymmetrizedRelator(r)
    elif r is not None and as_word(r) not in symmetrized:
        log.error('Symmetrized set of "%s" passed for relator "%s"' % (symmetrized.relator, as_word(r)))
        raise PresentationError('the symmetrized set of "%s" does not contain "%s"' % (symmetrized.relator, as_word(r)))
    word = cyclic_reduce(free_reduce(w))[0]
    steps = []
    while word:
        match = symmetrized.longest_match(word)
        if match is None:
            break
        position, member, length = match
        fragment = Word._make(member[:length])
        rest = rotate(word, position)[length:]
        before = len(word)
        word = cyclic_reduce(free_reduce(invert(member[length:]) + rest))[0]
        steps.append(DehnStep(position, fragment, before, len(word)))
        log.debug('Replaced "%s" at %s, length %s -> %s' % (fragment, position, before, len(word)))
    return word, DehnTrace(tuple(steps))

def is_in_normal_closure(r, w, symmetrized: SymmetrizedRelator=None) -> bool:
    """Decide whether ``w`` lies in the normal closure of the C'(1/6) relator ``r``"""
    return not dehn_reduce(r, w, symmetrized)[0]
