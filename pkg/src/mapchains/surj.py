"""Functors on the category of finite sets and surjections.

``M_n(X)`` sends ``<s>`` to ``C~_n(X^s)`` (reduced chains of the smash
power) and a surjection ``h: <t> -> <s>`` to ``C_n(h#)``.  The elements
``e_i = [x_1 ... x_s]`` for strictly increasing tuples ``i`` of nonbasepoint
``n``-simplices form a basis: a morphism out of ``M_n(X)`` is the same thing
as a free choice of values on the ``e_i``.  :class:`FunctorMorphism` stores
exactly those values and derives everything else.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .chains import Chain
from .exactlin import SparseMatrix, Vector
from .simplicial import PointedSpace, SimplicialMap, Smash, Surjection, all_surjections, smash_power

__all__ = [
    "Surjection", "all_surjections", "powers", "canonical_order", "enumerate_basis",
    "support_decompose", "FunctorMorphism", "HomModule", "hom_module", "evaluate",
    "d_prime", "d_second", "compose_morphisms", "identity_morphism", "d_prime_matrix",
    "d_second_matrix", "random_morphism", "naturality_failures", "universal_property_failures",
]

BasisIndex = Tuple[Any, ...]


def powers(y: PointedSpace, s: int) -> Smash:
    """The smash power ``Y^s``, shared per space so simplex indices are reused."""
    return y._cached(("smash_power", s), lambda: smash_power(y, s))


def canonical_order(x: PointedSpace, p: int) -> Dict[Any, int]:
    """Rank of each nonbasepoint ``p``-simplex in the fixed linear order."""
    return x.index(p)


def reversed_order(x: PointedSpace, p: int) -> Dict[Any, int]:
    basis = x.reduced_basis(p)
    return {v: len(basis) - 1 - k for k, v in enumerate(basis)}


def enumerate_basis(x: PointedSpace, p: int, order: Optional[Mapping[Any, int]] = None) -> List[BasisIndex]:
    """All strictly increasing tuples over ``X_p`` minus the basepoint, by length then lexicographically."""
    if order is None:
        return x._cached(("basis_I", p), lambda: _increasing_tuples(x.reduced_basis(p)))
    elems = sorted(x.reduced_basis(p), key=order.__getitem__)
    return _increasing_tuples(elems)


def _increasing_tuples(elems):
    return [c for s in range(1, len(elems) + 1) for c in itertools.combinations(elems, s)]


def support_decompose(gen: Sequence[Any], order: Mapping[Any, int]) -> Tuple[BasisIndex, Surjection]:
    """Write ``[x_1 ... x_s]`` as ``C(h#)(e_i)``.

    ``i`` is the sorted support of the tuple and ``h(k)`` is the position
    (1-based) of ``x_k`` in ``i``.
    """
    i = tuple(sorted(set(gen), key=order.__getitem__))
    pos = {v: k + 1 for k, v in enumerate(i)}
    return i, Surjection(tuple(pos[v] for v in gen), len(i))


class FunctorMorphism:
    """A morphism ``T: M_p(X) -> M_q(Y)`` stored by its values ``T(e_i)``.

    ``values`` maps a basis index to a chain on ``Y^{|i|}``; missing indices
    are zero unless a ``factory`` is given, in which case they are computed
    on first use (for morphisms whose source basis is too large to fill).
    """

    def __init__(self, x: PointedSpace, y: PointedSpace, p: int, q: int,
                 values: Optional[Mapping[BasisIndex, Chain]] = None, ell: int = 2,
                 factory: Optional[Callable[[BasisIndex], Chain]] = None):
        self.x, self.y, self.p, self.q, self.ell = x, y, p, q, ell
        self.values: Dict[BasisIndex, Chain] = {}
        self.factory = factory
        for i, c in (values or {}).items():
            if c:
                self.values[i] = c

    def value(self, i: BasisIndex) -> Chain:
        c = self.values.get(i)
        if c is None:
            if self.factory is not None:
                c = self.factory(i)
                self.values[i] = c
            else:
                c = Chain(powers(self.y, len(i)), self.q, None, self.ell)
        return c

    def evaluate(self, gen: Sequence[Any], order: Optional[Mapping[Any, int]] = None) -> Chain:
        return evaluate(self, len(gen), gen, order)

    def nonzero(self) -> Dict[BasisIndex, Chain]:
        return {i: c for i, c in self.values.items() if c}

    def __eq__(self, other):
        if not isinstance(other, FunctorMorphism):
            return NotImplemented
        return (self.p, self.q) == (other.p, other.q) and self.nonzero() == other.nonzero()

    __hash__ = None

    def __repr__(self):
        return f"FunctorMorphism(M_{self.p}({self.x.name}) -> M_{self.q}({self.y.name}), {len(self.nonzero())} values)"

    def to_records(self) -> List[Tuple[BasisIndex, List[Tuple[Any, int]]]]:
        return [(i, c.items()) for i, c in sorted(self.nonzero().items(), key=lambda kv: (len(kv[0]), kv[0]))]


def evaluate(t: FunctorMorphism, s: int, gen: Sequence[Any], order: Optional[Mapping[Any, int]] = None) -> Chain:
    """``^sT([x_1 ... x_s])``, extended from the basis values by naturality."""
    gen = tuple(gen)
    target = powers(t.y, s)
    if len(gen) != s:
        raise ValueError(f"generator has {len(gen)} coordinates, expected {s}")
    if any(t.x.degree(v) != t.p for v in gen):
        raise ValueError(f"generator is not of degree {t.p}")
    if any(t.x.is_basepoint(v) for v in gen):
        return Chain(target, t.q, None, t.ell)
    i, h = support_decompose(gen, order if order is not None else canonical_order(t.x, t.p))
    src = t.value(i)
    return Chain.from_items(target, t.q, ((tuple(y[k - 1] for k in h.values), c) for y, c in src.terms.items()),
                            t.ell)


def identity_morphism(x: PointedSpace, p: int, ell: int = 2) -> FunctorMorphism:
    """``e_i |-> [kappa_i]``."""
    return FunctorMorphism(x, x, p, p, {i: Chain.of(powers(x, len(i)), i, 1, ell)
                                       for i in enumerate_basis(x, p)}, ell)


def from_assignment(x: PointedSpace, y: PointedSpace, p: int, q: int,
                    assignment: Mapping[BasisIndex, Chain], ell: int = 2) -> FunctorMorphism:
    """The unique morphism with prescribed values on the basis."""
    return FunctorMorphism(x, y, p, q, assignment, ell)


# ----------------------------------------------------------------------
# Hom modules


class HomModule:
    """``Hom(M_p(X), M_q(Y))`` as a free module with basis ``(i, y)``.

    ``(i, y)`` is the morphism sending ``e_i`` to ``[y]`` and every other basis
    element to zero; ``y`` runs over nonbasepoint ``q``-simplices of ``Y^{|i|}``.
    """

    def __init__(self, x: PointedSpace, y: PointedSpace, p: int, q: int, ell: int = 2):
        self.x, self.y, self.p, self.q, self.ell = x, y, p, q, ell
        self.indices = enumerate_basis(x, p) if p >= 0 else []
        basis = []
        offsets = {}
        for i in self.indices:
            offsets[i] = len(basis)
            basis.extend((i, v) for v in (powers(y, len(i)).reduced_basis(q) if q >= 0 else []))
        self.basis = basis
        self.offsets = offsets
        self.index = {b: k for k, b in enumerate(basis)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def to_vector(self, t: FunctorMorphism) -> Vector:
        out: Vector = {}
        for i, c in t.nonzero().items():
            for v, coef in c.terms.items():
                out[self.index[i, v]] = coef
        return out

    def from_vector(self, vec: Mapping[int, int]) -> FunctorMorphism:
        grouped: Dict[BasisIndex, list] = {}
        for k, c in vec.items():
            i, v = self.basis[k]
            grouped.setdefault(i, []).append((v, c))
        values = {i: Chain.from_items(powers(self.y, len(i)), self.q, items, self.ell) for i, items in grouped.items()}
        return FunctorMorphism(self.x, self.y, self.p, self.q, values, self.ell)


def hom_module(x: PointedSpace, y: PointedSpace, p: int, q: int, ell: int = 2) -> HomModule:
    return x._cached(("hom", id(y), p, q, ell), lambda: HomModule(x, y, p, q, ell))


def _smash_faces(space: Smash, gen, n: int):
    """``(sign, face)`` for the boundary terms of a smash generator."""
    return [((1 if i % 2 == 0 else -1), space.face(gen, i)) for i in range(n + 1)]


def d_prime(t: FunctorMorphism) -> FunctorMorphism:
    """``T o d``: a morphism ``M_{p+1}(X) -> M_q(Y)``."""
    values = {}
    for i in enumerate_basis(t.x, t.p + 1):
        sp = powers(t.x, len(i))
        acc = Chain(powers(t.y, len(i)), t.q, None, t.ell)
        for sign, f in _smash_faces(sp, i, t.p + 1):
            if not sp.is_basepoint(f):
                acc = acc + evaluate(t, len(i), f) * sign
        values[i] = acc
    return FunctorMorphism(t.x, t.y, t.p + 1, t.q, values, t.ell)


def d_second(t: FunctorMorphism) -> FunctorMorphism:
    """``d o T``: a morphism ``M_p(X) -> M_{q-1}(Y)``."""
    return FunctorMorphism(t.x, t.y, t.p, t.q - 1, {i: c.boundary() for i, c in t.nonzero().items()}, t.ell)


def d_prime_matrix(x: PointedSpace, y: PointedSpace, p: int, q: int, ell: int = 2) -> SparseMatrix:
    """Matrix of ``T |-> T o d`` from ``Hom(M_{p-1}, M_q)`` to ``Hom(M_p, M_q)``."""
    src = hom_module(x, y, p - 1, q, ell)
    tgt = hom_module(x, y, p, q, ell)
    entries: Dict[Tuple[int, int], int] = {}
    if p >= 1 and src.rank and tgt.rank:
        order = canonical_order(x, p - 1)
        for i in tgt.indices:
            s = len(i)
            sp = powers(x, s)
            for sign, f in _smash_faces(sp, i, p):
                if sp.is_basepoint(f):
                    continue
                i0, h = support_decompose(f, order)
                ybasis0 = powers(y, len(i0)).reduced_basis(q)
                col0 = src.offsets[i0]
                for k, v in enumerate(ybasis0):
                    row = tgt.index[i, tuple(v[a - 1] for a in h.values)]
                    key = (row, col0 + k)
                    entries[key] = entries.get(key, 0) + sign
    return SparseMatrix(tgt.rank, src.rank, entries, ell)


def d_second_matrix(x: PointedSpace, y: PointedSpace, p: int, q: int, ell: int = 2) -> SparseMatrix:
    """Matrix of ``T |-> d o T`` from ``Hom(M_p, M_q)`` to ``Hom(M_p, M_{q-1})``."""
    src = hom_module(x, y, p, q, ell)
    tgt = hom_module(x, y, p, q - 1, ell)
    entries: Dict[Tuple[int, int], int] = {}
    if q >= 1:
        for col, (i, v) in enumerate(src.basis):
            sp = powers(y, len(i))
            for sign, f in _smash_faces(sp, v, q):
                if sp.is_basepoint(f):
                    continue
                key = (tgt.index[i, f], col)
                entries[key] = entries.get(key, 0) + sign
    return SparseMatrix(tgt.rank, src.rank, entries, ell)


def compose_morphisms(t2: FunctorMorphism, t1: FunctorMorphism) -> FunctorMorphism:
    """``T2 o T1`` for ``T1: M_p(X) -> M_q(Y)`` and ``T2: M_q(Y) -> M_r(Z)``."""
    if t1.q != t2.p:
        raise ValueError("middle degrees do not match")
    values = {}
    for i, c in t1.nonzero().items():
        s = len(i)
        acc = Chain(powers(t2.y, s), t2.q, None, t1.ell)
        for v, coef in c.terms.items():
            acc = acc + evaluate(t2, s, v) * coef
        values[i] = acc
    return FunctorMorphism(t1.x, t2.y, t1.p, t2.q, values, t1.ell)


def precompose_map(t: FunctorMorphism, e: SimplicialMap, source: PointedSpace) -> FunctorMorphism:
    """``T o M_p(e)`` for a map ``e: X' -> X``."""
    values = {}
    for i in enumerate_basis(source, t.p):
        img = tuple(e(v) for v in i)
        values[i] = evaluate(t, len(i), img)
    return FunctorMorphism(source, t.y, t.p, t.q, values, t.ell)


def postcompose_map(t: FunctorMorphism, f: SimplicialMap, target: PointedSpace) -> FunctorMorphism:
    """``M_q(f) o T`` for a map ``f: Y -> Y'``; acts as ``C_q(f^s)`` on each component."""
    values = {}
    for i, c in t.nonzero().items():
        tgt = powers(target, len(i))
        values[i] = c.map(lambda v: tgt.klass(f(a) for a in v), tgt)
    return FunctorMorphism(t.x, target, t.p, t.q, values, t.ell)


# ----------------------------------------------------------------------
# checks of the universal property


def random_morphism(x: PointedSpace, y: PointedSpace, p: int, q: int, rng, ell: int = 2,
                    density: float = 0.5) -> FunctorMorphism:
    """A morphism with independently random basis values (``rng`` is a ``random.Random``)."""
    values = {}
    for i in enumerate_basis(x, p):
        basis = powers(y, len(i)).reduced_basis(q)
        items = [(v, rng.randrange(1, ell)) for v in basis if rng.random() < density]
        values[i] = Chain.from_items(powers(y, len(i)), q, items, ell)
    return FunctorMorphism(x, y, p, q, values, ell)


def apply_h_sharp(gen: Sequence[Any], h: Surjection) -> tuple:
    return tuple(gen[k - 1] for k in h.values)


def push_h_sharp(c: Chain, h: Surjection, y: PointedSpace) -> Chain:
    """``C_q(h#)`` on a chain of ``Y^s``."""
    tgt = powers(y, h.t)
    return Chain.from_items(tgt, c.degree, ((apply_h_sharp(v, h), k) for v, k in c.terms.items()), c.ell)


def universal_property_failures(t: FunctorMorphism, assignment: Mapping[BasisIndex, Chain]) -> List[BasisIndex]:
    """Basis indices where ``evaluate(T, |i|, e_i)`` differs from the prescribed value."""
    bad = []
    for i in enumerate_basis(t.x, t.p):
        want = assignment.get(i) or Chain(powers(t.y, len(i)), t.q, None, t.ell)
        if evaluate(t, len(i), i) != want:
            bad.append(i)
    return bad


def naturality_failures(t: FunctorMorphism, smax: int, order: Optional[Mapping[Any, int]] = None) -> List[dict]:
    """Check ``T(h# gen) = C(h#)(T(gen))`` for every surjection ``h: <u> -> <s>`` with ``s, u <= smax``.

    ``gen`` runs over all ``s``-tuples of nonbasepoint ``p``-simplices, so
    the check includes the symmetric group actions.
    """
    elems = t.x.reduced_basis(t.p)
    bad = []
    for s in range(1, smax + 1):
        for gen in itertools.product(elems, repeat=s):
            base = evaluate(t, s, gen, order)
            for u in range(s, smax + 1):
                for h in all_surjections(u, s):
                    lhs = evaluate(t, u, apply_h_sharp(gen, h), order)
                    if lhs != push_h_sharp(base, h, t.y):
                        bad.append({"generator": gen, "surjection": h.values})
    return bad


def boundary_naturality_failures(x: PointedSpace, n: int, smax: int) -> List[dict]:
    """``C_{n-1}(h#) o d = d o C_n(h#)`` on every nonbasepoint generator of ``X^s``, ``s <= smax``."""
    bad = []
    for s in range(1, smax + 1):
        for v in powers(x, s).reduced_basis(n):
            c = Chain.of(powers(x, s), v)
            for u in range(s, smax + 1):
                for h in all_surjections(u, s):
                    if push_h_sharp(c.boundary(), h, x) != push_h_sharp(c, h, x).boundary():
                        bad.append({"generator": v, "surjection": h.values})
    return bad
