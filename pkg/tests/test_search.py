from fractions import Fraction

import pytest

from relator_census.errors import AmbiguousRecovery, RecoveryNotFound
from relator_census.genericity import in_E, satisfies_c_prime
from relator_census.presentations import Presentation
from relator_census.search import (
    ClassParams,
    NormalClosureBall,
    SearchBudget,
    apply_map,
    in_generic_class,
    recover_relator,
    search_isomorphic
)
from relator_census.symmetry import Relabeling, canonical_form
from relator_census.words import Word, invert, least_rotation, rotate, sample_words

SIXTH = Fraction(1, 6)


def _generic_relator(seed, n=60):
    for word in sample_words(n, 2, 500, seed):
        if in_E(word, SIXTH, 2) and satisfies_c_prime(word, SIXTH)[0]:
            return word
    raise AssertionError('no generic relator sampled')


def test_apply_map():
    images = (Word.parse('ab'), Word.parse('B'))
    assert apply_map(images, Word.parse('aB')) == Word.parse('abb')
    assert apply_map(images, Word.parse('ab')) == Word.parse('a')

def test_in_generic_class():
    r = _generic_relator(1)
    assert in_generic_class(r, ClassParams())
    assert not in_generic_class(r, ClassParams(max_len=30))
    assert not in_generic_class(Word.parse('abAB'), ClassParams())

def test_normal_closure_ball_enumerates_products():
    ball = NormalClosureBall(Presentation.parse('gens: 2\nrel: aa\nrel: bb\n'), depth=2, conj_len=2)
    assert Word.parse('aa') in ball
    assert Word.parse('baaB') in ball
    assert Word.parse('aabb') in ball
    assert Word.parse('') in ball
    assert Word.parse('ab') not in ball

def test_normal_closure_ball_uses_dehn_for_small_cancellation():
    r = _generic_relator(2)
    ball = NormalClosureBall(Presentation(2, [r]), depth=1, conj_len=0)
    assert len(ball) == 1
    u = Word.parse('abb')
    assert tuple(u) + tuple(r) + tuple(invert(u)) + tuple(r) in ball
    assert Word.parse('ab') not in ball

def test_search_finds_the_relator_itself():
    r = _generic_relator(3)
    result = search_isomorphic(Presentation(2, [r]), ClassParams(), SearchBudget(map_len=1))
    assert result is not None
    assert canonical_form(result.relator, 2) == canonical_form(r, 2)
    assert result.presentation.generator_count == 2
    assert result.tuples_examined >= 1
    assert result.to_dict()['relator'] == str(result.relator)

def test_search_through_a_relabeled_presentation():
    r = _generic_relator(4)
    tau = Relabeling.from_spec('1:2-,2:1+', 2)
    result = search_isomorphic(Presentation(2, [tau.apply(r)]))
    assert result is not None
    assert canonical_form(result.relator, 2) == canonical_form(r, 2)

def test_search_returns_least_tuple_of_least_size():
    for seed in range(10, 20):
        r = _generic_relator(seed)
        own = {rotate(w, least_rotation(w)) for w in (r, invert(r))}
        if canonical_form(r, 2) not in own:
            break
    result = search_isomorphic(Presentation(2, [r]), ClassParams(), SearchBudget(map_len=1))
    assert result.relator == canonical_form(r, 2)
    assert result.relator not in own
    assert result.size == len(r) + 4 + SearchBudget().depth
    assert all(len(w) == 1 for w in result.forward + result.backward)
    assert apply_map(result.backward, apply_map(result.forward, Word.parse('a'))) == Word.parse('a')

def test_search_budget_exhaustion():
    r = _generic_relator(5)
    assert search_isomorphic(Presentation(2, [r]), budget=SearchBudget(max_tuples=1)) is None
    assert search_isomorphic(Presentation(0, [])) is None

def test_recover_from_orbit_mate():
    r = _generic_relator(6)
    mate = rotate(invert(Relabeling.from_spec('1:2+,2:1-', 2).apply(r)), 17)
    recovered = recover_relator(Presentation(2, [mate]), r[:10], SIXTH, v=mate)
    assert recovered == r

def test_recover_through_search():
    r = _generic_relator(7)
    assert recover_relator(Presentation(2, [rotate(r, 5)]), r[:10], SIXTH) == r

def test_recover_refusals():
    r = _generic_relator(8)
    with pytest.raises(AmbiguousRecovery) as info:
        recover_relator(Presentation(2, [r]), r[:1], SIXTH, v=r)
    assert len(info.value.matches) > 1
    with pytest.raises(RecoveryNotFound):
        recover_relator(Presentation(2, [r]), tuple(r) + tuple(r[:1]), SIXTH, v=r)
