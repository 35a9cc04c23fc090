import pytest

from relator_census.errors import EncodingError, PresentationError, TietzeRefusal
from relator_census.presentations import (
    BLOCK_CODE,
    Presentation,
    decode,
    encode,
    encoding_bound,
    ell,
    ell_1,
    t_bounds,
    tietze_cleanup
)
from relator_census.utils import derive_rng
from relator_census.words import Word, random_reduced_word

COMMUTATOR = Presentation.parse('gens: 2\nrel: abAB\n')


def test_parse():
    assert COMMUTATOR.generator_count == 2
    assert COMMUTATOR.relators == (Word.parse('abAB'),)
    assert COMMUTATOR.t == 1
    assert ell(COMMUTATOR) == COMMUTATOR.ell == 2
    assert ell_1(COMMUTATOR) == COMMUTATOR.ell_1 == 4

def test_parse_comments_and_numeric_words():
    text = '# torus knot\ngens: 2\n\nrel: x1 x1 X2 X2 X2  # a^2 b^-3\n'
    presentation = Presentation.parse(text)
    assert presentation.relators == (Word.parse('aaBBB'),)

@pytest.mark.parametrize('text', [
    'rel: ab\n',
    'gens: 2\ngens: 3\n',
    'gens: two\n',
    'gens: 2\nrel: abc\n',
    'gens: 2\nrel: aA\n',
    'gens: 2\nrelator: ab\n',
])
def test_parse_refuses_bad_input(text):
    with pytest.raises(PresentationError):
        Presentation.parse(text)

def test_parse_reduce():
    presentation = Presentation.parse('gens: 2\nrel: abBa\n', reduce=True)
    assert presentation.relators == (Word.parse('aa'),)

def test_dump_round_trip():
    assert Presentation.parse(COMMUTATOR.dump()) == COMMUTATOR
    assert Presentation.parse(COMMUTATOR.dump(numeric=True)) == COMMUTATOR

def test_from_file(tmp_path):
    path = tmp_path / 'commutator.txt'
    path.write_text(COMMUTATOR.dump())
    assert Presentation.from_file(str(path)) == COMMUTATOR

def test_tietze_removes_a_product_relator():
    cleaned = tietze_cleanup(Presentation.parse('gens: 2\nrel: ab\n'))
    assert cleaned == Presentation(1, [])

def test_tietze_kills_a_generator():
    assert tietze_cleanup(Presentation.parse('gens: 1\nrel: a\n')) == Presentation(0, [])

def test_tietze_renumbers_generators():
    # a = c^-1 turns abbbc into a conjugate of b^3; old b, c become a, b
    cleaned = tietze_cleanup(Presentation.parse('gens: 3\nrel: ca\nrel: abbbc\n'))
    assert cleaned == Presentation(2, [Word.parse('aaa')])

def test_tietze_squares_need_no_order_two():
    presentation = Presentation.parse('gens: 2\nrel: aa\nrel: abab\n')
    with pytest.raises(TietzeRefusal):
        tietze_cleanup(presentation)
    # Deleting a turns abab into the square bb, which deletes b as well
    assert tietze_cleanup(presentation, no_order_two=True) == Presentation(0, [])

def test_tietze_keeps_long_relators():
    assert tietze_cleanup(COMMUTATOR) == COMMUTATOR

def test_tietze_never_grows_ell():
    for index in range(30):
        rng = derive_rng(17, index)
        m = int(rng.integers(2, 5))
        relators = [random_reduced_word(int(rng.integers(1, 8)), m, rng) for _ in range(4)]
        presentation = Presentation(m, relators)
        cleaned = tietze_cleanup(presentation, no_order_two=True)
        assert all(len(r) >= 3 for r in cleaned.relators)
        assert cleaned.ell <= presentation.ell

def test_t_bounds():
    bounds = t_bounds(COMMUTATOR)
    assert bounds.t_upper == 2
    assert bounds.t1_upper == 4
    assert bounds.to_dict()['three_t_upper'] == 6

def test_encode_commutator():
    encoded = encode(COMMUTATOR)
    assert encoded.six_letter == '10|b1b10-b1-b10'
    assert encoded.binary[:9] == BLOCK_CODE['1'] + BLOCK_CODE['0'] + BLOCK_CODE['|']
    assert encoded.bit_length == 3 * len(encoded.six_letter)
    assert len(encoded.six_letter) <= encoding_bound(COMMUTATOR)

def test_encoding_round_trip():
    for index in range(200):
        rng = derive_rng(23, index)
        m = int(rng.integers(1, 9))
        relators = [random_reduced_word(int(rng.integers(1, 10)), m, rng) for _ in range(int(rng.integers(0, 4)))]
        presentation = Presentation(m, relators)
        encoded = encode(presentation)
        assert decode(encoded) == presentation
        assert decode(encoded.six_letter) == presentation
        assert decode(encoded.binary) == presentation
        assert len(encoded.six_letter) <= encoding_bound(presentation)

def test_encode_refusals():
    with pytest.raises(EncodingError):
        encode(Presentation(0, []))
    with pytest.raises(EncodingError):
        encode(Presentation(2, [Word.parse('')]))

@pytest.mark.parametrize('text', ['abc', '1|b10', '10|b1,', '0101', '|b1'])
def test_decode_refuses_bad_input(text):
    with pytest.raises(EncodingError):
        decode(text)

def _fp_group(presentation):
    free_groups = pytest.importorskip('sympy.combinatorics.free_groups')
    fp_groups = pytest.importorskip('sympy.combinatorics.fp_groups')
    names = ', '.join('x%s' % i for i in range(presentation.generator_count))
    free, *generators = free_groups.free_group(names)
    relators = []
    for r in presentation.relators:
        element = free.identity
        for c in r:
            element *= generators[c // 2] ** (-1 if c & 1 else 1)
        relators.append(element)
    return fp_groups.FpGroup(free, relators)

@pytest.mark.parametrize('text, order', [
    ('gens: 2\nrel: ab\nrel: aaa\n', 3),
    ('gens: 2\nrel: a\nrel: bbbb\n', 4),
    ('gens: 2\nrel: aB\nrel: aaaaaa\n', 6),
    ('gens: 3\nrel: ab\nrel: aaaa\nrel: ccc\nrel: acAC\n', 12),
    ('gens: 3\nrel: cB\nrel: aaa\nrel: bbbbb\nrel: abAB\n', 15),
])
def test_tietze_preserves_the_group(text, order):
    presentation = Presentation.parse(text)
    cleaned = tietze_cleanup(presentation)
    assert all(len(r) >= 3 for r in cleaned.relators)
    assert cleaned.ell_1 < presentation.ell_1
    assert _fp_group(presentation).order() == _fp_group(cleaned).order() == order
