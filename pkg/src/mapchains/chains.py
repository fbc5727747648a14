"""Reduced chains over F_l.

Chains are unnormalized: degenerate simplices are basis elements.  Only
the basepoint simplex is dropped, which is how reduced chains are realized
here (the basepoint subcomplex is a direct summand).
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactlin import ComplexSegment, SparseMatrix
from .simplicial import PointedSpace, SimplicialMap, Smash


class Chain:
    """A finitely supported combination of nonbasepoint simplices of one degree."""

    __slots__ = ("space", "degree", "ell", "terms")

    def __init__(self, space: PointedSpace, degree: int, terms: Optional[Mapping[Any, int]] = None,
                 ell: int = 2):
        self.space = space
        self.degree = degree
        self.ell = ell
        self.terms: Dict[Any, int] = {}
        if terms:
            self._accumulate(terms.items())

    def _accumulate(self, items: Iterable[Tuple[Any, int]]):
        ell = self.ell
        terms = self.terms
        for x, c in items:
            if self.space.is_basepoint(x):
                continue
            v = (terms.get(x, 0) + c) % ell
            if v:
                terms[x] = v
            else:
                terms.pop(x, None)

    @classmethod
    def of(cls, space: PointedSpace, x, coeff: int = 1, ell: int = 2) -> "Chain":
        """``[x]``: the chain with the single simplex ``x``."""
        return cls(space, space.degree(x), {x: coeff}, ell)

    @classmethod
    def from_items(cls, space, degree, items, ell=2) -> "Chain":
        c = cls(space, degree, None, ell)
        c._accumulate(items)
        return c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*{x!r}" for x, c in sorted(self.terms.items()))
        return f"Chain[{self.degree}]({body or '0'})"

    def _like(self, items=()) -> "Chain":
        return Chain.from_items(self.space, self.degree, items, self.ell)

    def __add__(self, other: "Chain") -> "Chain":
        return self._like(itertools.chain(self.terms.items(), other.terms.items()))

    def __neg__(self) -> "Chain":
        return self._like((x, -c) for x, c in self.terms.items())

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, k: int) -> "Chain":
        return self._like((x, k * c) for x, c in self.terms.items())

    __rmul__ = __mul__

    def items(self):
        return sorted(self.terms.items())

    def boundary(self) -> "Chain":
        n = self.degree
        if n == 0:
            return Chain(self.space, -1, None, self.ell)
        sp = self.space
        return Chain.from_items(sp, n - 1, (
            (sp.face(x, i), c if i % 2 == 0 else -c)
            for x, c in self.terms.items() for i in range(n + 1)), self.ell)

    def map(self, f: Callable[[Any], Any], target: PointedSpace) -> "Chain":
        """Push forward along a simplicial map given as a function on simplices."""
        return Chain.from_items(target, self.degree, ((f(x), c) for x, c in self.terms.items()), self.ell)

    def to_vector(self, index: Optional[Mapping[Any, int]] = None) -> Dict[int, int]:
        index = index if index is not None else self.space.index(self.degree)
        return {index[x]: c for x, c in self.terms.items()}

    @classmethod
    def from_vector(cls, space, degree, vec: Mapping[int, int], ell=2) -> "Chain":
        basis = space.reduced_basis(degree)
        return cls(space, degree, {basis[k]: c for k, c in vec.items()}, ell)

    def to_records(self) -> List[Tuple[Any, int]]:
        return [(x, c) for x, c in self.items()]


def boundary(z: PointedSpace, n: int, ell: int = 2) -> SparseMatrix:
    """The boundary ``C~_n(Z) -> C~_{n-1}(Z)`` in the reduced simplex bases."""
    src = z.reduced_basis(n)
    tgt_index = z.index(n - 1)
    entries: Dict[Tuple[int, int], int] = {}
    if n >= 1:
        for c, x in enumerate(src):
            for i in range(n + 1):
                y = z.face(x, i)
                r = tgt_index.get(y)
                if r is not None:
                    entries[r, c] = entries.get((r, c), 0) + (1 if i % 2 == 0 else -1)
    return SparseMatrix(len(tgt_index), len(src), entries, ell)


def chain_complex(z: PointedSpace, top: int, ell: int = 2) -> ComplexSegment:
    """Reduced chains of ``z`` in degrees ``-1..top`` (degree -1 is zero)."""
    ranks = {-1: 0}
    bounds = {}
    for n in range(0, top + 1):
        ranks[n] = len(z.reduced_basis(n))
        bounds[n] = boundary(z, n, ell)
    return ComplexSegment(-1, top, ranks, bounds, ell)


def reduced_homology(z: PointedSpace, degrees: Iterable[int], ell: int = 2) -> Dict[int, int]:
    from .exactlin import homology_ranks
    degrees = list(degrees)
    return homology_ranks(chain_complex(z, max(degrees) + 1, ell), degrees)


def induced(f: SimplicialMap, n: int, ell: int = 2) -> SparseMatrix:
    """``C~_n(f)``: ``[x] -> [f(x)]`` with basepoint images sent to 0."""
    src = f.source.reduced_basis(n)
    tgt = f.target.index(n)
    entries = {}
    for c, x in enumerate(src):
        r = tgt.get(f(x))
        if r is not None:
            entries[r, c] = 1
    return SparseMatrix(len(tgt), len(src), entries, ell)


def induced_chain_map(f: SimplicialMap, top: int, ell: int = 2) -> Dict[int, SparseMatrix]:
    out = {-1: SparseMatrix.zero(0, 0, ell)}
    for n in range(top + 1):
        out[n] = induced(f, n, ell)
    return out


# ----------------------------------------------------------------------
# Eilenberg-Zilber shuffle product


def shuffles(m: int, n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], int]]:
    """All ``(m, n)``-shuffles ``(mu, nu, sign)`` of ``{0, ..., m+n-1}``.

    ``mu`` has ``m`` entries and ``nu`` has ``n``; the sign is that of the
    permutation ``(mu_1, ..., mu_m, nu_1, ..., nu_n)``.
    """
    out = []
    total = m + n
    for mu in itertools.combinations(range(total), m):
        mus = set(mu)
        nu = tuple(k for k in range(total) if k not in mus)
        inversions = sum(1 for a in mu for b in nu if a > b)
        out.append((mu, nu, -1 if inversions % 2 else 1))
    return out


_SHUFFLES: Dict[Tuple[int, int], list] = {}


def _shuffles(m, n):
    key = (m, n)
    if key not in _SHUFFLES:
        _SHUFFLES[key] = shuffles(m, n)
    return _SHUFFLES[key]


def _apply_degens(space: PointedSpace, x, word: Sequence[int]):
    for j in sorted(word):
        x = space.degen(x, j)
    return x


def shuffle_terms(a_space: PointedSpace, a, b_space: PointedSpace, b):
    """Signed terms ``(s_nu a, s_mu b, sign)`` of the shuffle product of two simplices."""
    m = a_space.degree(a)
    n = b_space.degree(b)
    for mu, nu, sign in _shuffles(m, n):
        yield _apply_degens(a_space, a, nu), _apply_degens(b_space, b, mu), sign


def cross(z: Chain, u: Chain, target: Optional[Smash] = None) -> Chain:
    """Shuffle cross product ``C_m(A) x C_n(B) -> C_{m+n}(A ^ B)``."""
    if z.ell != u.ell:
        raise ValueError("chains over different fields")
    target = target or Smash([z.space, u.space])
    a_sp, b_sp = z.space, u.space
    items = []
    for a, ca in z.terms.items():
        for b, cb in u.terms.items():
            for sa, sb, sign in shuffle_terms(a_sp, a, b_sp, b):
                items.append((target.klass((sa, sb)), sign * ca * cb))
    return Chain.from_items(target, z.degree + u.degree, items, z.ell)
