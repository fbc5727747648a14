import random

from hypothesis import given, settings
from hypothesis import strategies as st

from mapchains.chains import Chain, boundary, chain_complex, cross, induced, shuffles
from mapchains.exactlin import SparseMatrix
from mapchains.simplicial import (FunctionSpace, PointedMap, Simplex, Smash, SimplicialMap, circle_triangle,
                                  constant_map, identity_map, simplices_as_set, smash_power, sphere_min)

from .helpers import bz2, circle_collapse

S1 = sphere_min(1)
SIGMA = Simplex("e1", 1, ())


def test_boundary_of_circle_generator_vanishes():
    assert not Chain.of(S1, SIGMA).boundary()
    assert boundary(S1, 1).is_zero()


def test_boundary_squares_to_zero_on_bz2():
    d3, d4 = boundary(bz2(), 3, 3), boundary(bz2(), 4, 3)
    assert (d3 @ d4).is_zero()
    c = Chain(bz2(), 3, {(1, 1, 1): 1, (1, 0, 1): 2}, 3)
    assert not c.boundary().boundary()


def test_boundary_of_degenerate_vertices_on_s0():
    s0 = sphere_min(0)
    x = s0.reduced_basis(0)[0]
    for n in range(1, 6):
        y = x
        for _ in range(n):
            y = s0.degen(y, 0)
        d = Chain.of(s0, y, 1, 5).boundary()
        lower = s0.face(y, 0)
        # n + 1 equal faces with alternating signs
        assert d == (Chain.of(s0, lower, 1, 5) if n % 2 == 0 else Chain(s0, n - 1, None, 5))


def test_reduced_chain_ranks():
    for z in (S1, circle_triangle(), bz2(), smash_power(S1, 2)):
        for q in range(5):
            assert len(z.reduced_basis(q)) == len(z.simplices(q)) - 1


def test_induced_identity_and_constant():
    for n in range(4):
        t = circle_triangle()
        assert induced(identity_map(t), n) == SparseMatrix.identity(len(t.reduced_basis(n)))
        assert induced(constant_map(circle_triangle(), bz2()), n).is_zero()


def test_induced_is_functorial():
    e = circle_collapse()
    classify = PointedMap(S1, bz2(), {"*": (), "e1": (1,)}, name="classify")
    both = e.then(classify)
    for n in range(1, 3):
        assert induced(both, n, 3) == induced(classify, n, 3) @ induced(e, n, 3)


def test_function_space_boundary_is_valuewise():
    fs = FunctionSpace(bz2(), simplices_as_set(S1, 2))
    for v in fs.reduced_basis(2):
        direct = Chain.from_items(fs, 1, ((tuple(bz2().face(c, i) for c in v), (-1) ** i) for i in range(3)), 3)
        assert Chain.of(fs, v, 1, 3).boundary() == direct


# cross product -------------------------------------------------------------


def test_shuffle_count_and_signs():
    assert len(shuffles(2, 1)) == 3
    assert sorted(s for _, _, s in shuffles(1, 1)) == [-1, 1]


def test_cross_with_a_vertex_has_one_term():
    s0 = sphere_min(0)
    v = Chain.of(s0, s0.reduced_basis(0)[0], 1, 3)
    u = Chain.of(S1, SIGMA, 2, 3)
    out = cross(v, u)
    assert len(out.terms) == 1
    assert list(out.terms.values()) == [2]


def test_cross_with_basepoint_is_zero():
    z = Chain.of(S1, S1.basepoint(1), 1, 3)
    assert not cross(z, Chain.of(S1, SIGMA, 1, 3))


def _random_chain(rng, space, n, ell):
    basis = space.reduced_basis(n)
    return Chain.from_items(space, n, [(rng.choice(basis), rng.randrange(1, ell)) for _ in range(3)], ell)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), ell=st.sampled_from([3, 5]))
def test_cross_leibniz(seed, ell):
    rng = random.Random(seed)
    a = smash_power(S1, 2)
    b = circle_triangle()
    target = Smash([a, b])
    for m, n in ((1, 1), (2, 1), (1, 2)):
        z, u = _random_chain(rng, a, m, ell), _random_chain(rng, b, n, ell)
        lhs = cross(z, u, target).boundary()
        rhs = cross(z.boundary(), u, target) + cross(z, u.boundary(), target) * (-1) ** m
        assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_cross_is_bilinear(seed):
    rng = random.Random(seed)
    ell = 5
    z1, z2 = _random_chain(rng, S1, 2, ell), _random_chain(rng, S1, 2, ell)
    u = _random_chain(rng, circle_triangle(), 1, ell)
    assert cross(z1 + z2 * 3, u) == cross(z1, u) + cross(z2, u) * 3


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_cross_is_associative(seed):
    rng = random.Random(seed)
    ell = 3
    a, b, c = S1, circle_triangle(), circle_triangle()
    z, u, w = _random_chain(rng, a, 1, ell), _random_chain(rng, b, 1, ell), _random_chain(rng, c, 0, ell)
    ab, bc = Smash([a, b]), Smash([b, c])
    left = cross(cross(z, u, ab), w, Smash([ab, c]))
    right = cross(z, cross(u, w, bc), Smash([a, bc]))
    flat = Smash([a, b, c])
    lflat = left.map(lambda t: flat.klass((t[0][0], t[0][1], t[1])), flat)
    rflat = right.map(lambda t: flat.klass((t[0], t[1][0], t[1][1])), flat)
    assert lflat == rflat


def test_chain_records():
    c = Chain(S1, 1, {SIGMA: 1}, 2)
    assert c.to_records() == [(SIGMA, 1)]
    assert Chain.from_vector(S1, 1, c.to_vector(), 2) == c


def test_segment_of_bz2_matches_known_homology():
    from mapchains.exactlin import homology_ranks
    assert homology_ranks(chain_complex(bz2(), 6), range(1, 6)) == {n: 1 for n in range(1, 6)}


def test_simplicial_map_check_catches_bad_maps():
    import pytest
    t = circle_triangle()
    bad = SimplicialMap(t, t, lambda x: t.basepoint(0) if x == Simplex("a", 0, ()) else x)
    with pytest.raises(ValueError):
        bad.check(2)
