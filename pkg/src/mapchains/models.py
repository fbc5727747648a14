"""Chain models of a pointed mapping space ``Y^X`` and the maps between them.

Three complexes:

* ``C~_*(Y^X)`` -- reduced chains on the enumerated mapping space;
* ``D_*(X, Y)`` -- the diagonal of ``D^p_q = C~_q(Y^{X_p})``, built from
  the cosimplicial space ``p |-> Y^{X_p}``;
* ``G_*(X, Y)`` -- the diagonal of ``G^p_q = Hom(M_p(X), M_q(Y))``.

and the comparison maps ``mu: C -> D``, ``lam: C -> G``, ``eps: D -> G``
with its inverse ``xi``.

The diagonal of a bicomplex ``W`` has ``W_n = prod_{q-p=n} W^p_q`` and
differential ``(dw)^p_q = d''(w^p_{q+1}) - (-1)^n d'(w^{p-1}_q)``.  A finite
window keeps ``0 <= p <= P`` and ``0 <= q <= Q``: the part with ``q <= Q`` is
a subcomplex and the part with ``p > P`` is then a quotient, so the window is
an honest complex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .chains import Chain, boundary, shuffle_terms
from .exactlin import ComplexSegment, SparseMatrix, Vector, homology_ranks, vec_add
from .simplicial import (BudgetExceeded, FunctionSpace, MapSimplex, MapSpace, PointedSpace, SimplicialMap,
                         characteristic_map, fundamental_simplex, simplices_as_set)
from .surj import (FunctorMorphism, canonical_order, enumerate_basis, evaluate, hom_module, powers,
                   support_decompose)

Bidegree = Tuple[int, int]


# ----------------------------------------------------------------------
# the cosimplicial space hom(X, Y)


class CosimplicialHom:
    """``p |-> Y^{X_p}`` with cofaces ``v |-> v o d_i`` and codegeneracies ``v |-> v o s_i``."""

    def __init__(self, x: PointedSpace, y: PointedSpace):
        self.x = x
        self.y = y
        self._levels: Dict[int, FunctionSpace] = {}

    def level(self, p: int) -> FunctionSpace:
        if p not in self._levels:
            self._levels[p] = FunctionSpace(self.y, simplices_as_set(self.x, p), name=f"{self.y.name}^X{p}")
        return self._levels[p]

    def _precompose(self, src: FunctionSpace, tgt: FunctionSpace, op, v, q):
        if q is None:
            q = src.degree(v)
        out = []
        for x in tgt.s.nonbase:
            w = op(x)
            out.append(self.y.basepoint(q) if w == src.s.basepoint else src.value(v, w))
        return tuple(out)

    def coface(self, p: int, i: int, v, q: Optional[int] = None):
        """``delta^i: V^{p-1} -> V^p``; ``q`` is only needed when ``V^{p-1}`` is trivial."""
        return self._precompose(self.level(p - 1), self.level(p), lambda x: self.x.face(x, i), v, q)

    def codegeneracy(self, p: int, i: int, v, q: Optional[int] = None):
        """``sigma^i: V^{p+1} -> V^p``."""
        return self._precompose(self.level(p + 1), self.level(p), lambda x: self.x.degen(x, i), v, q)


def cosimplicial_hom(x: PointedSpace, y: PointedSpace) -> CosimplicialHom:
    return CosimplicialHom(x, y)


# ----------------------------------------------------------------------
# bicomplexes


class Bicomplex:
    """``W^p_q`` with ``d': W^{p-1}_q -> W^p_q`` and ``d'': W^p_q -> W^p_{q-1}``."""

    def __init__(self, ell: int = 2):
        self.ell = ell
        self._cache: Dict[Any, SparseMatrix] = {}

    def rank(self, p: int, q: int) -> int:
        raise NotImplementedError

    def size(self, p: int, q: int) -> int:
        """The rank at ``(p, q)`` counted without building a basis."""
        if p < 0 or q < 0:
            return 0
        return expected_rank(self.x, self.y, p, q)

    def _d_prime(self, p: int, q: int) -> SparseMatrix:
        raise NotImplementedError

    def _d_second(self, p: int, q: int) -> SparseMatrix:
        raise NotImplementedError

    def d_prime(self, p: int, q: int) -> SparseMatrix:
        """``d'`` from bidegree ``(p-1, q)`` to ``(p, q)``."""
        key = ("d'", p, q)
        if key not in self._cache:
            if p <= 0 or q < 0:
                m = SparseMatrix.zero(self.rank(p, q), self.rank(p - 1, q), self.ell)
            else:
                m = self._d_prime(p, q)
            self._cache[key] = m
        return self._cache[key]

    def d_second(self, p: int, q: int) -> SparseMatrix:
        """``d''`` from bidegree ``(p, q)`` to ``(p, q-1)``."""
        key = ("d''", p, q)
        if key not in self._cache:
            if q <= 0 or p < 0:
                m = SparseMatrix.zero(self.rank(p, q - 1), self.rank(p, q), self.ell)
            else:
                m = self._d_second(p, q)
            self._cache[key] = m
        return self._cache[key]

    def check_identities(self, P: int, Q: int) -> List[str]:
        """Failures of ``d'd' = 0``, ``d''d'' = 0``, ``d''d' = d'd''`` inside the window."""
        bad = []
        for p in range(P + 1):
            for q in range(Q + 1):
                if p >= 2 and not (self.d_prime(p, q) @ self.d_prime(p - 1, q)).is_zero():
                    bad.append(f"d'd' != 0 into ({p},{q})")
                if q >= 2 and not (self.d_second(p, q - 1) @ self.d_second(p, q)).is_zero():
                    bad.append(f"d''d'' != 0 from ({p},{q})")
                if p >= 1 and q >= 1:
                    a = self.d_second(p, q) @ self.d_prime(p, q)
                    b = self.d_prime(p, q - 1) @ self.d_second(p - 1, q)
                    if a != b:
                        bad.append(f"d''d' != d'd'' from ({p - 1},{q})")
        return bad


class DBicomplex(Bicomplex):
    """``D^p_q = C~_q(Y^{X_p})`` with ``d' = sum_i (-1)^i C_q(delta^i)`` and ``d''`` the boundary."""

    def __init__(self, x: PointedSpace, y: PointedSpace, ell: int = 2):
        super().__init__(ell)
        self.cos = CosimplicialHom(x, y)
        self.x, self.y = x, y

    def module(self, p: int) -> FunctionSpace:
        return self.cos.level(p)

    def basis(self, p: int, q: int) -> list:
        if p < 0 or q < 0:
            return []
        return self.module(p).reduced_basis(q)

    def rank(self, p: int, q: int) -> int:
        return len(self.basis(p, q))

    def _d_prime(self, p, q):
        src = self.basis(p - 1, q)
        tgt = self.module(p).index(q)
        entries: Dict[Tuple[int, int], int] = {}
        for c, v in enumerate(src):
            for i in range(p + 1):
                r = tgt.get(self.cos.coface(p, i, v, q))
                if r is not None:
                    entries[r, c] = entries.get((r, c), 0) + (1 if i % 2 == 0 else -1)
        return SparseMatrix(len(tgt), len(src), entries, self.ell)

    def _d_second(self, p, q):
        return boundary(self.module(p), q, self.ell)


class GBicomplex(Bicomplex):
    """``G^p_q = Hom(M_p(X), M_q(Y))`` with ``d' = - o d`` and ``d'' = d o -``."""

    def __init__(self, x: PointedSpace, y: PointedSpace, ell: int = 2):
        super().__init__(ell)
        self.x, self.y = x, y

    def module(self, p: int, q: int):
        return hom_module(self.x, self.y, p, q, self.ell)

    def basis(self, p: int, q: int) -> list:
        if p < 0 or q < 0:
            return []
        return self.module(p, q).basis

    def rank(self, p: int, q: int) -> int:
        return len(self.basis(p, q))

    def _d_prime(self, p, q):
        from .surj import d_prime_matrix
        return d_prime_matrix(self.x, self.y, p, q, self.ell)

    def _d_second(self, p, q):
        from .surj import d_second_matrix
        return d_second_matrix(self.x, self.y, p, q, self.ell)


# ----------------------------------------------------------------------
# diagonal totalization


@dataclass
class DiagSegment:
    """The window ``p <= P``, ``q <= Q`` of the diagonal complex of a bicomplex."""

    bicomplex: Bicomplex
    P: int
    Q: int
    blocks: Dict[int, List[Bidegree]] = field(default_factory=dict)
    offsets: Dict[int, Dict[Bidegree, int]] = field(default_factory=dict)
    complex: Optional[ComplexSegment] = None

    @property
    def ell(self):
        return self.bicomplex.ell

    def flatten(self, n: int, parts: Mapping[Bidegree, Mapping[int, int]]) -> Vector:
        out: Vector = {}
        for pq, vec in parts.items():
            off = self.offsets[n].get(pq)
            if off is None:
                continue
            for k, c in vec.items():
                out[off + k] = c
        return out

    def split(self, n: int, vec: Mapping[int, int]) -> Dict[Bidegree, Vector]:
        out: Dict[Bidegree, Vector] = {}
        for pq in self.blocks[n]:
            off = self.offsets[n][pq]
            size = self.bicomplex.rank(*pq)
            part = {k - off: c for k, c in vec.items() if off <= k < off + size}
            if part:
                out[pq] = part
        return out

    def homology(self, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
        return homology_ranks(self.complex, degrees)


def diagonal(w: Bicomplex, P: int, Q: int, max_rank: Optional[int] = None) -> DiagSegment:
    """Materialize the windowed diagonal complex, padded with zero degrees ``-P-1`` and ``Q+1``.

    With ``max_rank`` set, the window is refused up front (before any basis
    is enumerated) if some degree would exceed that many basis elements.
    """
    if max_rank is not None:
        check_window_size(w, P, Q, max_rank)
    seg = DiagSegment(w, P, Q)
    ranks = {}
    for n in range(-P - 1, Q + 2):
        blocks = [(p, p + n) for p in range(P + 1) if 0 <= p + n <= Q]
        seg.blocks[n] = blocks
        offs = {}
        total = 0
        for pq in blocks:
            offs[pq] = total
            total += w.rank(*pq)
        seg.offsets[n] = offs
        ranks[n] = total
    bounds = {}
    for n in range(-P, Q + 2):
        entries: Dict[Tuple[int, int], int] = {}
        sign = -1 if n % 2 == 0 else 1  # -(-1)^n
        for (p, q) in seg.blocks[n - 1]:
            roff = seg.offsets[n - 1][p, q]
            if (p, q + 1) in seg.offsets[n]:
                coff = seg.offsets[n][p, q + 1]
                for (r, c), v in w.d_second(p, q + 1).entries.items():
                    entries[roff + r, coff + c] = v
            if (p - 1, q) in seg.offsets[n]:
                coff = seg.offsets[n][p - 1, q]
                for (r, c), v in w.d_prime(p, q).entries.items():
                    entries[roff + r, coff + c] = sign * v
        bounds[n] = SparseMatrix(ranks[n - 1], ranks[n], entries, w.ell)
    seg.complex = ComplexSegment(-P - 1, Q + 1, ranks, bounds, w.ell)
    return seg


def window_sizes(w: Bicomplex, P: int, Q: int) -> Dict[int, int]:
    return {n: sum(w.size(p, p + n) for p in range(P + 1) if 0 <= p + n <= Q) for n in range(-P, Q + 1)}


def check_window_size(w: Bicomplex, P: int, Q: int, max_rank: int) -> None:
    for n, size in window_sizes(w, P, Q).items():
        if size > max_rank:
            raise BudgetExceeded(f"window ({P},{Q}) has {size} basis elements in degree {n}, budget {max_rank}")


def stabilization(w: Bicomplex, windows: Sequence[Tuple[int, int]], degrees: Sequence[int],
                  max_rank: Optional[int] = None) -> dict:
    """Homology ranks per truncation and whether the last two windows agree.

    Every window is size-checked before any is built, so an infeasible
    request fails at once.
    """
    if max_rank is not None:
        for P, Q in windows:
            check_window_size(w, P, Q, max_rank)
    rows = []
    for P, Q in windows:
        seg = diagonal(w, P, Q, max_rank)
        rows.append({"P": P, "Q": Q, "homology": seg.homology(degrees)})
    stable = len(rows) >= 2 and rows[-1]["homology"] == rows[-2]["homology"]
    return {"truncations": rows, "stable": stable,
            "value": rows[-1]["homology"] if stable else None}


def diag_boundary(w: Bicomplex, n: int, parts: Mapping[Bidegree, Mapping[int, int]],
                  targets: Iterable[Bidegree]) -> Dict[Bidegree, Vector]:
    """Components of ``d w`` at the requested bidegrees of degree ``n-1``.

    ``parts`` holds components of an element of degree ``n``; components not
    present are treated as zero, so supplying one extra row ``q = Q+1``
    gives the untruncated differential on the window.
    """
    out = {}
    sign = -1 if n % 2 == 0 else 1
    for (p, q) in targets:
        acc: Vector = {}
        above = parts.get((p, q + 1))
        if above:
            vec_add(acc, w.d_second(p, q + 1).apply(above), w.ell)
        left = parts.get((p - 1, q))
        if left and p >= 1:
            vec_add(acc, w.d_prime(p, q).apply(left), w.ell, sign)
        out[p, q] = acc
    return out


# ----------------------------------------------------------------------
# the models of one pair (X, Y)


class MappingModels:
    """All constructions for a fixed pair of spaces ``(X, Y)`` over F_l."""

    def __init__(self, x: PointedSpace, y: PointedSpace, ell: int = 2, budget: int = 200_000):
        self.x, self.y, self.ell = x, y, ell
        self.D = DBicomplex(x, y, ell)
        self.G = GBicomplex(x, y, ell)
        self.maps = MapSpace(x, y, budget)
        self._memo: Dict[Any, Any] = {}

    # eps and xi ---------------------------------------------------------

    def epsilon_vector(self, p: int, q: int, v) -> Vector:
        """``eps[v]``: at ``i = (x_1 < ... < x_s)`` the class ``[v(x_1) ... v(x_s)]``."""
        lvl = self.D.module(p)
        hom = self.G.module(p, q)
        out: Vector = {}
        for i in hom.indices:
            vals = tuple(lvl.value(v, x) for x in i)
            if any(self.y.is_basepoint(a) for a in vals):
                continue
            out[hom.index[i, vals]] = 1
        return out

    def epsilon(self, p: int, q: int) -> SparseMatrix:
        key = ("eps", p, q)
        if key not in self._memo:
            cols = [self.epsilon_vector(p, q, v) for v in self.D.basis(p, q)]
            self._memo[key] = SparseMatrix.from_columns(self.G.rank(p, q), cols, self.ell)
        return self._memo[key]

    def xi_apply(self, t: FunctorMorphism, order: Optional[Mapping[Any, int]] = None) -> Chain:
        """``xi(T) = sum_{E >= F != 0} (-1)^{|E|-|F|} Phi_E^F(T([kappa_E]))``.

        Only sets ``E`` carrying a nonzero value of ``T`` contribute, since
        ``T([kappa_E])`` is the value at the sorted support of ``kappa_E``.
        """
        p, q = t.p, t.q
        lvl = self.D.module(p)
        order = order if order is not None else canonical_order(self.x, p)
        items = []
        for i in t.nonzero():
            kappa = tuple(sorted(i, key=order.__getitem__))
            val = evaluate(t, len(kappa), kappa, None)
            s = len(kappa)
            for r in range(1, s + 1):
                sign = -1 if (s - r) % 2 else 1
                for chosen in itertools.combinations(range(s), r):
                    chosen = set(chosen)
                    for ys, c in val.terms.items():
                        assign = {kappa[k]: ys[k] for k in chosen}
                        func = tuple(assign.get(x, self.y.basepoint(q)) for x in lvl.s.nonbase)
                        items.append((func, sign * c))
        return Chain.from_items(lvl, q, items, self.ell)

    def xi(self, p: int, q: int, order: Optional[Mapping[Any, int]] = None) -> SparseMatrix:
        key = ("xi", p, q, None if order is None else tuple(sorted(order.items())))
        if key not in self._memo:
            hom = self.G.module(p, q)
            index = self.D.module(p).index(q)
            cols = [self.xi_apply(hom.from_vector({k: 1}), order).to_vector(index) for k in range(hom.rank)]
            self._memo[key] = SparseMatrix.from_columns(self.D.rank(p, q), cols, self.ell)
        return self._memo[key]

    # lambda and mu -------------------------------------------------------

    def eta_power(self, f: MapSimplex, gen: Sequence[Any]):
        """``^s eta(f, x_1 ... x_s) = f(x_1) ... f(x_s)`` as a simplex of ``Y^s`` (or its basepoint)."""
        target = powers(self.y, len(gen))
        return target.klass(self.maps.evaluate(f, x) for x in gen)

    def lambda_on_generator(self, z: MapSimplex, gen: Sequence[Any]) -> Chain:
        """``C_q(^s eta)(z x [x_1 ... x_s])`` straight from the cross product."""
        s = len(gen)
        target = powers(self.y, s)
        q = z.degree + self.x.degree(gen[0])
        src = powers(self.x, s)
        if src.is_basepoint(tuple(gen)):
            return Chain(target, q, None, self.ell)
        items = [(self.eta_power(sz, sg), sign)
                 for sz, sg, sign in shuffle_terms(self.maps, z, src, tuple(gen))]
        return Chain.from_items(target, q, items, self.ell)

    def lam_morphism(self, z: MapSimplex, p: int) -> FunctorMorphism:
        """The component ``lam^p_{p+n}(z)`` as a functor morphism (values filled lazily)."""
        q = p + z.degree
        return FunctorMorphism(self.x, self.y, p, q, None, self.ell,
                               factory=lambda i: self.lambda_on_generator(z, i))

    def lam(self, z: MapSimplex, p: int) -> Vector:
        key = ("lam", z, p)
        if key not in self._memo:
            q = p + z.degree
            hom = self.G.module(p, q)
            out: Vector = {}
            for i in hom.indices:
                for y, c in self.lambda_on_generator(z, i).terms.items():
                    out[hom.index[i, y]] = c
            self._memo[key] = out
        return self._memo[key]

    def theta(self, p: int, f: MapSimplex, alpha) -> tuple:
        """``theta^p(f, alpha)``: the function ``x |-> eta(f, xbar(alpha))`` on ``X_p``."""
        lvl = self.D.module(p)
        return tuple(self.maps.evaluate(f, self._char(x)(alpha)) for x in lvl.s.nonbase)

    def _char(self, x) -> SimplicialMap:
        key = ("char", x)
        if key not in self._memo:
            self._memo[key] = characteristic_map(self.x, x)
        return self._memo[key]

    def mu(self, z: MapSimplex, p: int) -> Vector:
        """``mu^p_q(z) = C_q(theta^p)(z x [iota_p])`` in the basis of ``D^p_q``."""
        key = ("mu", z, p)
        if key not in self._memo:
            from .simplicial import delta_plus
            dp = self._memo.setdefault(("delta", p), delta_plus(p))
            q = p + z.degree
            lvl = self.D.module(p)
            items = [(self.theta(p, sz, sa), sign)
                     for sz, sa, sign in shuffle_terms(self.maps, z, dp, fundamental_simplex(p))]
            self._memo[key] = Chain.from_items(lvl, q, items, self.ell).to_vector() if lvl.s.nonbase else {}
        return self._memo[key]

    # checks ---------------------------------------------------------------

    def generators(self, n: int) -> List[MapSimplex]:
        return self.maps.reduced_basis(n)

    def check_epsilon_inverse(self, p: int, q: int) -> List[str]:
        eps = self.epsilon(p, q)
        xi = self.xi(p, q)
        bad = []
        if xi @ eps != SparseMatrix.identity(self.D.rank(p, q), self.ell):
            bad.append(f"xi eps != id at ({p},{q})")
        if eps @ xi != SparseMatrix.identity(self.G.rank(p, q), self.ell):
            bad.append(f"eps xi != id at ({p},{q})")
        return bad

    def check_epsilon_bicomplex_map(self, P: int, Q: int) -> List[str]:
        bad = []
        for p in range(P + 1):
            for q in range(Q + 1):
                eps = self.epsilon(p, q)
                if p >= 1 and eps @ self.D.d_prime(p, q) != self.G.d_prime(p, q) @ self.epsilon(p - 1, q):
                    bad.append(f"eps d' != d' eps into ({p},{q})")
                if q >= 1 and self.epsilon(p, q - 1) @ self.D.d_second(p, q) != self.G.d_second(p, q) @ eps:
                    bad.append(f"eps d'' != d'' eps from ({p},{q})")
        return bad

    def check_triangle(self, ns: Iterable[int], P: int, Q: int) -> List[dict]:
        """Counterexamples to ``eps o mu = lam`` on every generator of the listed degrees."""
        bad = []
        for n in ns:
            for z in self.generators(n):
                for p in range(P + 1):
                    q = p + n
                    if not 0 <= q <= Q:
                        continue
                    via_mu = self.epsilon(p, q).apply(self.mu(z, p))
                    direct = self.lam(z, p)
                    if via_mu != direct:
                        bad.append({"generator": z, "bidegree": (p, q), "eps_mu": via_mu, "lambda": direct})
        return bad

    def _check_chain_map(self, w: Bicomplex, fn, ns, P, Q) -> List[dict]:
        bad = []
        for n in ns:
            for z in self.generators(n):
                parts = {(p, p + n): fn(z, p) for p in range(P + 1) if 0 <= p + n <= Q + 1}
                targets = [(p, p + n - 1) for p in range(P + 1) if 0 <= p + n - 1 <= Q]
                lhs = diag_boundary(w, n, parts, targets)
                dz = Chain.of(self.maps, z, 1, self.ell).boundary() if n > 0 else None
                for pq in targets:
                    rhs: Vector = {}
                    if dz is not None:
                        for y, c in dz.terms.items():
                            vec_add(rhs, fn(y, pq[0]), self.ell, c)
                    if lhs[pq] != rhs:
                        bad.append({"generator": z, "bidegree": pq, "d_map": lhs[pq], "map_d": rhs})
        return bad

    def check_lambda_chain_map(self, ns, P, Q) -> List[dict]:
        return self._check_chain_map(self.G, self.lam, ns, P, Q)

    def check_mu_chain_map(self, ns, P, Q) -> List[dict]:
        return self._check_chain_map(self.D, self.mu, ns, P, Q)

    def check_lambda_naturality(self, z: MapSimplex, p: int, smax: int) -> List[str]:
        """``lam(z)`` evaluated on arbitrary generators agrees with the direct formula."""
        t = self.lam_morphism(z, p)
        bad = []
        elems = self.x.reduced_basis(p)
        for s in range(1, smax + 1):
            for gen in itertools.product(elems, repeat=s):
                if evaluate(t, s, gen) != self.lambda_on_generator(z, gen):
                    bad.append(f"naturality fails at {gen!r}")
        return bad


# ----------------------------------------------------------------------
# functoriality of G and the composition pairing


def induced_G(e: SimplicialMap, f: SimplicialMap, p: int, q: int, ell: int = 2) -> SparseMatrix:
    """``G(e, f)``: ``T |-> M_q(f) o T o M_p(e)`` from ``G^p_q(X, Y)`` to ``G^p_q(X', Y')``.

    ``e: X' -> X`` and ``f: Y -> Y'``.
    """
    xs, x = e.source, e.target
    y, ys = f.source, f.target
    src = hom_module(x, y, p, q, ell)
    tgt = hom_module(xs, ys, p, q, ell)
    order = canonical_order(x, p)
    entries: Dict[Tuple[int, int], int] = {}
    for i2 in tgt.indices:
        img = tuple(e(v) for v in i2)
        if any(x.is_basepoint(v) for v in img):
            continue
        i0, h = support_decompose(img, order)
        off = src.offsets[i0]
        tpow = powers(ys, len(i2))
        for k, v in enumerate(powers(y, len(i0)).reduced_basis(q)):
            w = tpow.klass(f(v[a - 1]) for a in h.values)
            if tpow.is_basepoint(w):
                continue
            key = (tgt.index[i2, w], off + k)
            entries[key] = entries.get(key, 0) + 1
    return SparseMatrix(tgt.rank, src.rank, entries, ell)


def induced_G_chain_map(e: SimplicialMap, f: SimplicialMap, src: DiagSegment,
                        tgt: DiagSegment) -> Dict[int, SparseMatrix]:
    """Degreewise block-diagonal matrices of ``G(e, f)`` between two windows."""
    out = {}
    ell = src.ell
    for n, blocks in src.blocks.items():
        entries = {}
        for pq in blocks:
            m = induced_G(e, f, pq[0], pq[1], ell)
            ro, co = tgt.offsets[n][pq], src.offsets[n][pq]
            for (r, c), v in m.entries.items():
                entries[ro + r, co + c] = v
        out[n] = SparseMatrix(tgt.complex.ranks[n], src.complex.ranks[n], entries, ell)
    return out


def check_composition_square(xy: MappingModels, yz: MappingModels, xz: MappingModels,
                             degrees: Iterable[int]) -> List[dict]:
    """The composition square on degree-0 generators.

    For ``g`` in ``(Z^Y)_0`` and ``f`` in ``(Y^X)_0``: ``lam(X,Z)(g o f)`` must
    equal ``lam(Y,Z)(g) o lam(X,Y)(f)`` in every listed bidegree ``(p, p)``.
    The cross product of two 0-simplices is the pair itself.
    """
    from .surj import compose_morphisms
    bad = []
    for g in yz.generators(0):
        for f in xy.generators(0):
            gf = xy.maps.compose(yz.maps, g, f, xz.maps)
            for p in degrees:
                right = compose_morphisms(yz.lam_morphism(g, p), _fill(xy.lam_morphism(f, p)))
                hom = xz.G.module(p, p)
                lhs = {} if xz.maps.is_basepoint(gf) else xz.lam(gf, p)
                rhs = hom.to_vector(right)
                if lhs != rhs:
                    bad.append({"outer": g, "inner": f, "p": p, "lhs": lhs, "rhs": rhs})
    return bad


def _fill(t: FunctorMorphism) -> FunctorMorphism:
    for i in enumerate_basis(t.x, t.p):
        t.value(i)
    return t


# ----------------------------------------------------------------------
# reports


def bidegree_ranks(w: Bicomplex, P: int, Q: int) -> Dict[Bidegree, int]:
    return {(p, q): w.rank(p, q) for p in range(P + 1) for q in range(Q + 1)}


def expected_rank(x: PointedSpace, y: PointedSpace, p: int, q: int) -> int:
    return len(y.simplices(q)) ** len(x.reduced_basis(p)) - 1


# ----------------------------------------------------------------------
# verification suites


def check_order_independence(m: MappingModels, P: int, Q: int) -> List[str]:
    """``xi`` built with the reversed order on ``X_p`` equals ``xi`` with the canonical order."""
    from .surj import reversed_order
    bad = []
    for p in range(P + 1):
        rev = reversed_order(m.x, p)
        for q in range(Q + 1):
            if m.xi(p, q, rev) != m.xi(p, q):
                bad.append(f"xi depends on the order at ({p},{q})")
    return bad


def check_cosimplicial_identities(cos: CosimplicialHom, pmax: int, qmax: int) -> List[str]:
    """Cosimplicial identities on every simplex of the levels ``p <= pmax`` in degrees ``q <= qmax``."""
    bad = []
    for q in range(qmax + 1):
        for p in range(pmax):
            for v in cos.level(p).simplices(q):
                # d^j d^i = d^i d^{j-1} for i < j, from level p to p + 2
                if p + 2 <= pmax:
                    for j in range(p + 3):
                        for i in range(j):
                            lhs = cos.coface(p + 2, j, cos.coface(p + 1, i, v, q), q)
                            rhs = cos.coface(p + 2, i, cos.coface(p + 1, j - 1, v, q), q)
                            if lhs != rhs:
                                bad.append(f"d^{j} d^{i} at level {p}, degree {q}")
                # s^j d^i on level p
                for j in range(p + 1):
                    for i in range(p + 2):
                        lhs = cos.codegeneracy(p, j, cos.coface(p + 1, i, v, q), q)
                        if i < j:
                            rhs = cos.coface(p, i, cos.codegeneracy(p - 1, j - 1, v, q), q)
                        elif i in (j, j + 1):
                            rhs = v
                        else:
                            rhs = cos.coface(p, i - 1, cos.codegeneracy(p - 1, j, v, q), q)
                        if lhs != rhs:
                            bad.append(f"s^{j} d^{i} at level {p}, degree {q}")
    return bad


def _suite(name, fn):
    try:
        failures = fn()
    except BudgetExceeded as exc:
        return {"suite": name, "passed": False, "error": str(exc), "counterexamples": []}
    return {"suite": name, "passed": not failures, "failures": len(failures),
            "counterexamples": [_plain(f) for f in failures[:5]]}


def _plain(obj):
    """A JSON-friendly rendering of counterexample payloads."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)) and not hasattr(obj, "_fields"):
        return [_plain(v) for v in obj]
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return repr(obj)


def verify_pair(x: PointedSpace, y: PointedSpace, ell: int = 2, P: int = 3, Q: int = 3, smax: int = 3,
                degrees: Sequence[int] = (0, 1), budget: int = 200_000, seed: int = 0) -> List[dict]:
    """Run every identity suite for the pair ``(X, Y)``; one result record per suite."""
    import random

    from .surj import naturality_failures, random_morphism, universal_property_failures
    m = MappingModels(x, y, ell, budget)
    window = [(p, q) for p in range(P + 1) for q in range(Q + 1)]
    out = []

    def census():
        bad = []
        for p, q in window:
            want = expected_rank(x, y, p, q)
            if (m.D.rank(p, q), m.G.rank(p, q)) != (want, want):
                bad.append({"bidegree": (p, q), "D": m.D.rank(p, q), "G": m.G.rank(p, q), "expected": want})
        return bad

    def diag_square_zero():
        bad = []
        for name, w in (("D", m.D), ("G", m.G)):
            seg = diagonal(w, P, Q, budget)
            n = seg.complex.check_square_zero()
            if n is not None:
                bad.append(f"{name}: d d != 0 from degree {n}")
        return bad

    def universal():
        rng = random.Random(seed)
        bad = []
        for p, q in window:
            if not m.G.rank(p, q):
                continue
            t = random_morphism(x, y, p, q, rng, ell)
            bad += universal_property_failures(t, t.values)
            bad += naturality_failures(t, smax)
        return bad

    def lam_naturality():
        bad = []
        for n in degrees:
            for z in m.generators(n):
                for p in range(P + 1):
                    if 0 <= p + n <= Q:
                        bad += m.check_lambda_naturality(z, p, smax)
        return bad

    def composition_square():
        yy = MappingModels(y, y, ell, budget)
        return check_composition_square(m, yy, m, range(P + 1))

    out.append(_suite("rank_census", census))
    out.append(_suite("epsilon_xi_inverse", lambda: [b for p, q in window for b in m.check_epsilon_inverse(p, q)]))
    out.append(_suite("bicomplex_identities", lambda: m.D.check_identities(P, Q) + m.G.check_identities(P, Q)))
    out.append(_suite("diagonal_square_zero", diag_square_zero))
    out.append(_suite("epsilon_bicomplex_map", lambda: m.check_epsilon_bicomplex_map(P, Q)))
    out.append(_suite("cosimplicial_identities", lambda: check_cosimplicial_identities(m.D.cos, min(P, 3), min(Q, 2))))
    out.append(_suite("lambda_chain_map", lambda: m.check_lambda_chain_map(degrees, P, Q)))
    out.append(_suite("mu_chain_map", lambda: m.check_mu_chain_map(degrees, P, Q)))
    out.append(_suite("triangle", lambda: m.check_triangle(degrees, P, Q)))
    out.append(_suite("order_independence", lambda: check_order_independence(m, P, Q)))
    out.append(_suite("universal_property", universal))
    out.append(_suite("lambda_naturality", lam_naturality))
    out.append(_suite("composition_square", composition_square))
    return out
