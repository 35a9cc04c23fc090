# relator-census
# utils.py

import math
import logging
from fractions import Fraction

import numpy as np

log = logging.getLogger(__name__)

def parse_fraction(value) -> Fraction:
    """Parse ``p/q``, a decimal string, an int or a Fraction into an exact :class:`fractions.Fraction`."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError('floats are not exact, pass "p/q" or a Fraction instead (got %r)' % value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError('"%s" is not a rational number' % value) from None

def overlap_threshold(lam, n) -> int:
    """Return ``max(1, floor(lam * n))``.

    Fractional lengths are floored, and a floor of zero is lifted to one so
    that tiny words are not rejected vacuously.
    """
    return max(1, math.floor(parse_fraction(lam) * n))

def derive_rng(seed, index) -> np.random.Generator:
    """Return the generator of trial ``index`` under the run seed ``seed``.

    Trials never share a stream, so results do not depend on the order
    (or the process) in which trials are evaluated.
    """
    return np.random.default_rng([int(seed), int(index)])

def ceil_log2(n) -> int:
    """Exact ``ceil(log2(n))`` for a positive integer"""
    if n < 1:
        raise ValueError('log2 is undefined for %s' % n)
    return (n - 1).bit_length()

def floor_log2(n) -> int:
    """Exact ``floor(log2(n))`` for a positive integer"""
    if n < 1:
        raise ValueError('log2 is undefined for %s' % n)
    return n.bit_length() - 1

def build_pretty_list_log(iterable, word, spacing=4):
    word = '%s = [\n' % word
    for context in iterable:
        word += ' ' * spacing
        word += '"%s",\n' % context
    word += ']'
    return word
