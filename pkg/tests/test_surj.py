import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapchains.chains import Chain
from mapchains.simplicial import Simplex, Surjection, all_surjections, circle_triangle, sphere_min
from mapchains.surj import (boundary_naturality_failures, canonical_order, compose_morphisms, d_prime,
                            d_prime_matrix, d_second, d_second_matrix, enumerate_basis, evaluate,
                            from_assignment, hom_module, identity_morphism, naturality_failures, powers,
                            random_morphism, reversed_order, support_decompose, universal_property_failures)

from .helpers import bz2

S1 = sphere_min(1)
SIGMA = Simplex("e1", 1, ())


def test_surjection_counts():
    # Stirling numbers of the second kind times s!
    assert [len(all_surjections(3, s)) for s in (1, 2, 3)] == [1, 6, 6]
    assert len(all_surjections(4, 2)) == 14


def test_enumerate_basis_by_length_then_lex():
    a, b = S1.reduced_basis(2)
    assert enumerate_basis(S1, 2) == [(a,), (b,), (a, b)]
    assert enumerate_basis(S1, 2, reversed_order(S1, 2)) == [(b,), (a,), (b, a)]
    assert enumerate_basis(S1, 1) == [(SIGMA,)]
    assert enumerate_basis(S1, 0) == []


def test_support_decompose():
    a, b = S1.reduced_basis(2)
    order = canonical_order(S1, 2)
    assert support_decompose((b, a, b), order) == ((a, b), Surjection((2, 1, 2), 2))
    assert support_decompose((a, a), order) == ((a,), Surjection((1, 1), 1))


def test_evaluate_extends_by_naturality():
    t = identity_morphism(S1, 1, 3)
    diag = evaluate(t, 2, (SIGMA, SIGMA))
    assert diag == Chain.of(powers(S1, 2), (SIGMA, SIGMA), 1, 3)
    with pytest.raises(ValueError):
        evaluate(t, 3, (SIGMA, SIGMA))
    assert not evaluate(t, 2, (SIGMA, S1.basepoint(1)))


def test_hom_module_ranks():
    assert hom_module(S1, S1, 1, 1).rank == 1
    assert hom_module(S1, S1, 2, 1).rank == 3
    for p in range(3):
        for q in range(3):
            m = len(S1.reduced_basis(p))
            assert hom_module(S1, bz2(), p, q).rank == len(bz2().simplices(q)) ** m - 1


def test_vector_round_trip():
    rng = random.Random(1)
    t = random_morphism(S1, bz2(), 2, 2, rng, 3)
    mod = hom_module(S1, bz2(), 2, 2, 3)
    assert mod.from_vector(mod.to_vector(t)) == t


@pytest.mark.parametrize("ell", [2, 3, 5])
def test_matrices_agree_with_morphism_operations(ell):
    rng = random.Random(ell)
    for p, q in ((1, 2), (2, 2), (2, 3)):
        t = random_morphism(S1, bz2(), p, q, rng, ell)
        src = hom_module(S1, bz2(), p, q, ell)
        assert hom_module(S1, bz2(), p + 1, q, ell).to_vector(d_prime(t)) == \
            d_prime_matrix(S1, bz2(), p + 1, q, ell).apply(src.to_vector(t))
        assert hom_module(S1, bz2(), p, q - 1, ell).to_vector(d_second(t)) == \
            d_second_matrix(S1, bz2(), p, q, ell).apply(src.to_vector(t))


@pytest.mark.parametrize("ell", [2, 3])
def test_differentials_square_to_zero_and_commute(ell):
    x, y = S1, circle_triangle()
    for p in range(1, 3):
        for q in range(1, 3):
            dp = lambda a, b: d_prime_matrix(x, y, a, b, ell)
            ds = lambda a, b: d_second_matrix(x, y, a, b, ell)
            assert (dp(p + 1, q) @ dp(p, q)).is_zero()
            assert (ds(p, q) @ ds(p, q + 1)).is_zero()
            assert ds(p, q) @ dp(p, q) == dp(p, q - 1) @ ds(p - 1, q)


def test_composition_with_identity():
    rng = random.Random(7)
    t = random_morphism(S1, circle_triangle(), 1, 1, rng, 3)
    assert compose_morphisms(t, identity_morphism(S1, 1, 3)) == t
    assert compose_morphisms(identity_morphism(circle_triangle(), 1, 3), t) == t
    with pytest.raises(ValueError):
        compose_morphisms(t, identity_morphism(S1, 2, 3))


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    ell = 3
    t1 = random_morphism(S1, circle_triangle(), 1, 1, rng, ell)
    t2 = random_morphism(circle_triangle(), bz2(), 1, 1, rng, ell)
    t3 = random_morphism(bz2(), S1, 1, 1, rng, ell)
    assert compose_morphisms(t3, compose_morphisms(t2, t1)) == compose_morphisms(compose_morphisms(t3, t2), t1)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_boundary_is_compatible_with_composition(seed):
    rng = random.Random(seed)
    t1 = random_morphism(S1, circle_triangle(), 1, 2, rng, 2)
    t2 = random_morphism(circle_triangle(), S1, 2, 2, rng, 2)
    # T2 o T1 followed by d equals (d o T2) o T1
    assert d_second(compose_morphisms(t2, t1)) == compose_morphisms(d_second(t2), t1)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6), ell=st.sampled_from([2, 3, 5]))
def test_universal_property(seed, ell):
    rng = random.Random(seed)
    values = random_morphism(S1, bz2(), 2, 1, rng, ell).nonzero()
    t = from_assignment(S1, bz2(), 2, 1, values, ell)
    assert universal_property_failures(t, values) == []


@pytest.mark.parametrize("ell", [2, 3])
def test_extended_morphisms_are_natural(ell):
    rng = random.Random(11)
    t = random_morphism(S1, bz2(), 2, 1, rng, ell)
    assert naturality_failures(t, 3) == []
    assert naturality_failures(t, 3, reversed_order(S1, 2)) == []


def test_boundary_commutes_with_surjections():
    for x in (S1, circle_triangle()):
        for n in (1, 2):
            assert boundary_naturality_failures(x, n, 3) == []
