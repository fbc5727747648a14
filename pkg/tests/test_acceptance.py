"""Acceptance criteria, each at its stated tolerance and time limit."""

import random
import time
from contextlib import contextmanager

import pytest

from mapchains.chains import reduced_homology
from mapchains.exactlin import quasi_iso_check
from mapchains.models import (MappingModels, check_composition_square, check_order_independence, diagonal,
                              expected_rank, induced_G_chain_map, stabilization)
from mapchains.simplicial import circle_triangle, delta_plus, identity_map, smash_power, sphere_min
from mapchains.surj import (boundary_naturality_failures, naturality_failures, random_morphism,
                            universal_property_failures)

from .helpers import bz2, circle_collapse

S0, S1 = sphere_min(0), sphere_min(1)
PAIRS = [(S1, S1), (S1, bz2()), (S0, bz2())]
WINDOW = [(p, q) for p in range(4) for q in range(4)]

# largest diagonal degree the map-space consistency check may build; a
# window this size is about the most that finishes inside five minutes
MAX_DIAGONAL_RANK = 2_000_000


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


@pytest.mark.criterion(1, "epsilon and xi are inverse; bidegree rank census")
def test_epsilon_xi_inverse_and_rank_census():
    with within(60):
        for x, y in PAIRS:
            m = MappingModels(x, y, 2)
            for p, q in WINDOW:
                want = expected_rank(x, y, p, q)
                assert m.D.rank(p, q) == m.G.rank(p, q) == want, (x.name, y.name, p, q)
                assert m.check_epsilon_inverse(p, q) == [], (x.name, y.name, p, q)


@pytest.mark.criterion(2, "bicomplex identities and diagonal d^2 = 0")
def test_bicomplex_and_diagonal_identities():
    with within(30):
        for x, y in PAIRS:
            m = MappingModels(x, y, 2)
            for w in (m.D, m.G):
                assert w.check_identities(3, 3) == [], (x.name, y.name)
                assert diagonal(w, 3, 3).complex.check_square_zero() is None, (x.name, y.name)


@pytest.mark.criterion(3, "epsilon is a bicomplex homomorphism")
def test_epsilon_commutes_with_both_differentials():
    for x, y in PAIRS:
        assert MappingModels(x, y, 2).check_epsilon_bicomplex_map(3, 3) == [], (x.name, y.name)


@pytest.mark.criterion(4, "eps o mu = lambda on every generator, n <= 1")
def test_commuting_triangle():
    with within(120):
        m = MappingModels(S1, bz2(), 2)
        assert m.check_triangle([0, 1], 3, 3) == []


@pytest.mark.criterion(5, "lambda and mu are chain maps, n <= 1")
def test_lambda_and_mu_chain_maps():
    m = MappingModels(S1, bz2(), 2)
    assert m.check_lambda_chain_map([0, 1], 3, 3) == []
    assert m.check_mu_chain_map([0, 1], 3, 3) == []


@pytest.mark.criterion(6, "reduced homology oracles")
def test_homology_oracles():
    with within(60):
        wanted = [
            ("S1", reduced_homology(S1, range(4), 2), {0: 0, 1: 1, 2: 0, 3: 0}),
            ("S1^S1", reduced_homology(smash_power(S1, 2), range(4), 2), {0: 0, 1: 0, 2: 1, 3: 0}),
            ("BZ2", reduced_homology(bz2(), range(1, 6), 2), {n: 1 for n in range(1, 6)}),
        ]
        for p in range(4):
            got = reduced_homology(delta_plus(p), range(p + 2), 2)
            wanted.append((f"Delta{p}+", got, {n: 0 for n in range(p + 2)}))
        mismatches = [(name, got, want) for name, got, want in wanted if got != want]
        assert mismatches == []


@pytest.mark.criterion(7, "map-space H0 = 1, truncated D stable between (4,5) and (5,6)")
def test_map_space_consistency():
    with within(300):
        m = MappingModels(S1, bz2(), 2)
        assert reduced_homology(m.maps, [0], 2) == {0: 1}
        out = stabilization(m.D, [(4, 5), (5, 6)], [0], max_rank=MAX_DIAGONAL_RANK)
        assert [row["homology"][0] for row in out["truncations"]] == [1, 1]
        assert out["stable"] and out["value"] == {0: 1}


@pytest.mark.criterion(8, "universal property, surjection naturality, order independence")
def test_universal_property_and_naturality():
    rng = random.Random(0)
    for x, y in ((S1, bz2()), (S0, S1)):
        m = MappingModels(x, y, 2)
        for p, q in WINDOW:
            if not m.G.rank(p, q):
                continue
            t = random_morphism(x, y, p, q, rng, 2)
            assert universal_property_failures(t, t.values) == [], (x.name, y.name, p, q)
            assert naturality_failures(t, 3) == [], (x.name, y.name, p, q)
        for n in range(1, 4):
            assert boundary_naturality_failures(x, n, 3) == []
        for z in m.generators(0):
            for p in range(4):
                assert m.check_lambda_naturality(z, p, 3) == []
        assert check_order_independence(m, 3, 3) == []


@pytest.mark.criterion(9, "composition square on degree-0 classes")
def test_composition_square():
    s0 = MappingModels(S0, S0, 2)
    assert check_composition_square(s0, s0, s0, range(4)) == []
    xy, yz = MappingModels(S1, bz2(), 2), MappingModels(bz2(), bz2(), 2)
    assert check_composition_square(xy, yz, xy, range(4)) == []


@pytest.mark.criterion(10, "circle weak equivalence induces a quasi-isomorphism of G")
def test_weak_equivalence_quasi_isomorphism():
    # the zero-dimensional sphere is the only nontrivial target whose G window
    # for the three-vertex circle is buildable
    e = circle_collapse()
    src = diagonal(MappingModels(S1, S0, 2).G, 3, 3)
    tgt = diagonal(MappingModels(circle_triangle(), S0, 2).G, 3, 3)
    maps = induced_G_chain_map(e, identity_map(S0), src, tgt)
    assert quasi_iso_check(maps, src.complex, tgt.complex, [0, 1]) == {0: True, 1: True}
