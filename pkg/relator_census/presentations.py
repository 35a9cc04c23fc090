# relator-census
# presentations.py

import re
import logging
from typing import Iterable, List, NamedTuple, Sequence, Union

from .errors import EncodingError, PresentationError, TietzeRefusal, WordError
from .words import Word, cyclic_reduce, free_reduce, invert
from .utils import floor_log2

log = logging.getLogger(__name__)

__all__ = (
    'Presentation', 'EncodedPresentation', 'TBounds',
    'ell', 'ell_1', 'tietze_cleanup', 't_bounds',
    'encode', 'decode', 'encoding_bound',
    'BLOCK_CODE',
)

class Presentation:
    """A finite presentation ``<a_1, ..., a_m | r_1, ..., r_t>``.

    Parameters
    ------------
    generator_count: :class:`int`
        Number of generators ``m``, may be zero.
    relators: Iterable[:class:`Word`]
        Freely reduced relators using generators ``1..m`` only.
    """
    __slots__ = ('generator_count', 'relators')

    def __init__(self, generator_count: int, relators: Iterable=()) -> None:
        if int(generator_count) != generator_count or generator_count < 0:
            raise PresentationError('generator count must be a non-negative integer, got %s' % generator_count)
        relators = tuple(r if isinstance(r, Word) else Word(r) for r in relators)
        for r in relators:
            if r.rank > generator_count:
                raise PresentationError('relator "%s" uses more than %s generators' % (r, generator_count))
        self.generator_count = int(generator_count)
        self.relators = relators

    @property
    def t(self) -> int:
        """:class:`int`: Return the number of relators"""
        return len(self.relators)

    @property
    def ell(self) -> int:
        return ell(self)

    @property
    def ell_1(self) -> int:
        return ell_1(self)

    @classmethod
    def parse(cls, text: str, reduce: bool=False) -> 'Presentation':
        """Parse the text format: a ``gens: <m>`` line, then one ``rel: <word>`` line per relator.

        Blank lines and ``#`` comments are ignored.
        """
        generator_count = None
        relators = []
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(':')
            key = key.strip().lower()
            if key == 'gens':
                if generator_count is not None:
                    raise PresentationError('line %s: "gens" given twice' % number)
                try:
                    generator_count = int(value)
                except ValueError:
                    raise PresentationError('line %s: "%s" is not a generator count' % (number, value.strip())) from None
            elif key == 'rel':
                try:
                    relators.append(Word.parse(value, reduce=reduce))
                except WordError as e:
                    raise PresentationError('line %s: %s' % (number, e)) from None
            else:
                raise PresentationError('line %s: expected "gens:" or "rel:", got "%s"' % (number, line))
        if generator_count is None:
            raise PresentationError('missing "gens: <m>" line')
        return cls(generator_count, relators)

    @classmethod
    def from_file(cls, path, reduce: bool=False) -> 'Presentation':
        with open(path, 'r', encoding='utf-8') as f:
            return cls.parse(f.read(), reduce=reduce)

    def dump(self, numeric: bool=False) -> str:
        """Return the text format of this presentation"""
        lines = ['gens: %s' % self.generator_count]
        lines.extend('rel: %s' % r.to_text(numeric) for r in self.relators)
        return '\n'.join(lines) + '\n'

    def to_dict(self) -> dict:
        return {
            'generator_count': self.generator_count,
            'relators': [str(r) for r in self.relators],
            'ell': self.ell,
            'ell_1': self.ell_1,
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presentation)
            and self.generator_count == other.generator_count
            and self.relators == other.relators
        )

    def __hash__(self) -> int:
        return hash((self.generator_count, self.relators))

    def __repr__(self) -> str:
        return '<Presentation gens=%s relators=[%s]>' % (
            self.generator_count,
            ', '.join(str(r) for r in self.relators)
        )


def ell(presentation: Presentation) -> int:
    """Sum of ``max(|r| - 2, 0)`` over the relators"""
    return sum(max(len(r) - 2, 0) for r in presentation.relators)

def ell_1(presentation: Presentation) -> int:
    """Sum of ``|r|`` over the relators"""
    return sum(len(r) for r in presentation.relators)


def _substitute(relators, generator, image) -> List[Word]:
    # generator is 0-based; image is the word replacing a_{generator+1}
    image = tuple(image)
    inverse = tuple(invert(image))
    result = []
    for r in relators:
        raw = []
        for c in r:
            g = c // 2
            if g == generator:
                raw.extend(inverse if c & 1 else image)
            else:
                # Close the gap left by the removed generator
                raw.append(c - 2 if g > generator else c)
        result.append(free_reduce(raw))
    return result

def tietze_cleanup(presentation: Presentation, no_order_two: bool=False) -> Presentation:
    """Remove every relator of length at most 2 with Tietze moves.

    Relators are cyclically reduced and empty ones dropped. A relator ``x`` of
    length 1 kills its generator. A relator ``xy`` with ``x != y`` is used to
    substitute ``y := x^-1`` and delete ``y``'s generator. A square ``xx``
    deletes its generator, which is only valid in a group without elements of
    order two.

    Parameters
    ------------
    presentation: :class:`Presentation`
        Input presentation.
    no_order_two: :class:`bool`
        The caller asserts the group has no elements of order two, default to
        ``False``.

    Raises
    -------
    TietzeRefusal
        A square relator is present and ``no_order_two`` is not set.
    """
    m = presentation.generator_count
    relators = list(presentation.relators)
    while True:
        relators = [core for core in (cyclic_reduce(r)[0] for r in relators) if core]
        short = next((r for r in relators if len(r) <= 2), None)
        if short is None:
            break
        relators.remove(short)
        if len(short) == 1:
            generator, image = short[0] // 2, ()
            log.debug('Relator "%s" kills generator %s' % (short, generator + 1))
        elif short[0] != short[1]:
            x, y = short
            generator = y // 2
            # xy = 1 gives y = x^-1
            image = (x,) if y & 1 else (x ^ 1,)
            log.debug('Relator "%s" substitutes generator %s' % (short, generator + 1))
        else:
            if not no_order_two:
                log.error('Square relator "%s" needs the no-order-two assumption' % (short,))
                raise TietzeRefusal('relator "%s" is a square; pass no_order_two=True if the group has no 2-torsion' % (short,))
            generator, image = short[0] // 2, ()
            log.debug('Square relator "%s" deletes generator %s' % (short, generator + 1))
        if image and image[0] // 2 > generator:
            image = (image[0] - 2,)
        relators = _substitute(relators, generator, image)
        m -= 1
    return Presentation(m, relators)


class TBounds(NamedTuple):
    """Computable upper bounds for the presentation length invariants"""
    cleaned: Presentation
    t_upper: int
    t1_upper: int

    def to_dict(self) -> dict:
        return {
            'cleaned': self.cleaned.to_dict(),
            't_upper': self.t_upper,
            't1_upper': self.t1_upper,
            'three_t_upper': 3 * self.t_upper,
        }


def t_bounds(presentation: Presentation, no_order_two: bool=False) -> TBounds:
    """Clean the presentation and report ``ell`` and ``ell_1`` of the result.

    For the cleaned presentation ``ell <= ell_1 <= 3 ell``, and they bound the
    invariants of the group from above; the invariants themselves are not
    computable.
    """
    cleaned = tietze_cleanup(presentation, no_order_two)
    bounds = TBounds(cleaned, ell(cleaned), ell_1(cleaned))
    assert bounds.t_upper <= bounds.t1_upper <= 3 * bounds.t_upper
    return bounds


BLOCK_CODE = {
    'b': '000',
    '0': '001',
    '1': '010',
    '-': '011',
    ',': '100',
    '|': '101',
}
_BLOCK_DECODE = {bits: symbol for symbol, bits in BLOCK_CODE.items()}
_LETTER = re.compile(r'(-?)b(1[01]*)')

class EncodedPresentation(NamedTuple):
    six_letter: str
    binary: str

    @property
    def bit_length(self) -> int:
        return len(self.binary)

    def to_dict(self) -> dict:
        return {
            'six_letter': self.six_letter,
            'binary': self.binary,
            'six_letter_length': len(self.six_letter),
            'bit_length': self.bit_length,
        }


def encoding_bound(presentation: Presentation) -> int:
    """``2 + floor(log2 m) + (ell_1 + t)(floor(log2 m) + 3)``, the largest possible six-letter length"""
    log_m = floor_log2(presentation.generator_count)
    return 2 + log_m + (ell_1(presentation) + presentation.t) * (log_m + 3)

def encode(presentation: Presentation) -> EncodedPresentation:
    """Encode a presentation over the alphabet ``b 0 1 - , |``.

    The generator count in binary, ``|``, then the relators separated by
    ``,``. Letter ``a_i`` is written ``b`` followed by ``i`` in binary (most
    significant bit first), ``a_i^-1`` gets a leading ``-``. The binary form
    replaces each symbol by its 3-bit block.
    """
    m = presentation.generator_count
    if m < 1:
        raise EncodingError('only presentations with at least one generator can be encoded')
    if any(not r for r in presentation.relators):
        raise EncodingError('empty relators cannot be encoded')
    relators = []
    for r in presentation.relators:
        relators.append(''.join('%sb%s' % ('-' if c & 1 else '', bin(c // 2 + 1)[2:]) for c in r))
    six_letter = '%s|%s' % (bin(m)[2:], ','.join(relators))
    return EncodedPresentation(six_letter, ''.join(BLOCK_CODE[s] for s in six_letter))

def _from_binary(bits: str) -> str:
    if len(bits) % 3 or set(bits) - {'0', '1'}:
        raise EncodingError('binary form must be a bit string whose length is a multiple of 3')
    symbols = []
    for position in range(0, len(bits), 3):
        block = bits[position:position + 3]
        if block not in _BLOCK_DECODE:
            raise EncodingError('unused block "%s" at bit %s' % (block, position))
        symbols.append(_BLOCK_DECODE[block])
    return ''.join(symbols)

def decode(encoded: Union[EncodedPresentation, str]) -> Presentation:
    """Inverse of :meth:`encode`; accepts an :class:`EncodedPresentation`, a six-letter string or a bit string"""
    if isinstance(encoded, EncodedPresentation):
        text = encoded.six_letter
    elif '|' not in encoded:
        # Six-letter strings always hold "|", bit strings never do
        text = _from_binary(encoded)
    else:
        text = encoded
    head, bar, body = text.partition('|')
    if not bar or not re.fullmatch(r'1[01]*', head):
        raise EncodingError('"%s" does not start with a binary generator count and "|"' % text)
    m = int(head, 2)
    relators = []
    if body:
        for chunk in body.split(','):
            codes = []
            position = 0
            while position < len(chunk):
                match = _LETTER.match(chunk, position)
                if match is None:
                    raise EncodingError('malformed letter at "%s"' % chunk[position:])
                index = int(match.group(2), 2)
                if index > m:
                    raise EncodingError('generator %s exceeds the count %s' % (index, m))
                codes.append(2 * (index - 1) + (match.group(1) == '-'))
                position = match.end()
            if not codes:
                raise EncodingError('empty relator in "%s"' % text)
            try:
                relators.append(Word(codes))
            except WordError as e:
                raise EncodingError(str(e)) from None
    return Presentation(m, relators)
