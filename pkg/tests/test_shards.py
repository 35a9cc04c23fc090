import asyncio

from relator_census.genericity import density_estimate, density_estimate_coro, make_predicate
from relator_census.shards import run_shards, run_shards_coro
from relator_census.symmetry import CANONICALIZE, count_orbits, count_orbits_coro
from relator_census.words import count_words_coro, rivin_count


def test_run_shards_keeps_order():
    assert run_shards(pow, [(2, 3), (3, 2), (5, 0)]) == [8, 9, 1]
    assert run_shards(pow, []) == []

def test_run_shards_coro_keeps_order():
    results = asyncio.run(run_shards_coro(pow, [(2, n) for n in range(10)], workers=2))
    assert results == [2 ** n for n in range(10)]

def test_pooled_counting_matches_the_formula():
    assert asyncio.run(count_words_coro(7, 2, workers=2)) == rivin_count(7, 2)

def test_pooled_orbit_census_matches():
    assert asyncio.run(count_orbits_coro(6, 2, CANONICALIZE, workers=2)) == count_orbits(6, 2, CANONICALIZE)

def test_pooled_density_matches_sequential():
    predicate = make_predicate('e-set', '1/6', 2, complement=True)
    sequential = density_estimate(predicate, 24, 2, 3000, seed=13, exact_cap=0)
    pooled = asyncio.run(density_estimate_coro(predicate, 24, 2, 3000, seed=13, exact_cap=0, workers=2))
    assert pooled == sequential
