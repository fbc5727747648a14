"""Exact linear algebra over prime fields.

Sparse matrices over F_l, ranks and kernels by Gaussian elimination,
finite windows of chain complexes, and homology ranks.  Over F_2 the
elimination runs on Python integers used as bit vectors; other primes use
dictionary columns.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, int]


class OutOfWindowError(ValueError):
    """A degree outside the materialized window was requested."""


class ChainMapError(ValueError):
    """A degreewise family of matrices does not commute with boundaries."""

    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"not a chain map in degree {degree}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z/l for a prime l."""

    ell: int = 2

    def __post_init__(self):
        if not is_prime(self.ell):
            raise ValueError(f"modulus {self.ell} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.ell

    def inv(self, value: int) -> int:
        value %= self.ell
        if value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(value, self.ell - 2, self.ell)


def vec_add(acc: Vector, other: Mapping[int, int], ell: int, scale: int = 1) -> Vector:
    """In-place ``acc += scale * other`` with zero pruning; returns ``acc``."""
    for k, v in other.items():
        x = (acc.get(k, 0) + scale * v) % ell
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)
    return acc


class SparseMatrix:
    """A ``rows x cols`` matrix over F_l stored as ``{(row, col): value}``.

    The matrix represents a map from a ``cols``-dimensional source to a
    ``rows``-dimensional target, so ``M @ v`` applies it to a column vector.
    Entries are reduced mod l on construction and zeros are dropped.
    """

    __slots__ = ("rows", "cols", "ell", "entries", "_columns")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], int]] = None,
                 ell: int = 2):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        self.ell = ell
        clean: Dict[Tuple[int, int], int] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v %= ell
            if v:
                clean[r, c] = v
        self.entries = clean
        self._columns: Optional[List[Vector]] = None

    # construction -----------------------------------------------------

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, int]], ell: int = 2) -> "SparseMatrix":
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries[r, c] = v
        return cls(rows, len(columns), entries, ell)

    @classmethod
    def identity(cls, n: int, ell: int = 2) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)}, ell)

    @classmethod
    def zero(cls, rows: int, cols: int, ell: int = 2) -> "SparseMatrix":
        return cls(rows, cols, {}, ell)

    # views --------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def columns(self) -> List[Vector]:
        if self._columns is None:
            cols: List[Vector] = [dict() for _ in range(self.cols)]
            for (r, c), v in self.entries.items():
                cols[c][r] = v
            self._columns = cols
        return self._columns

    def column(self, c: int) -> Vector:
        return dict(self.columns()[c])

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, ell={self.ell})"

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.ell == other.ell
                and self.entries == other.entries)

    __hash__ = None

    # arithmetic ---------------------------------------------------------

    def _check_field(self, other: "SparseMatrix"):
        if self.ell != other.ell:
            raise ValueError("matrices over different fields")

    def apply(self, vec: Mapping[int, int]) -> Vector:
        cols = self.columns()
        out: Vector = {}
        for c, v in vec.items():
            vec_add(out, cols[c], self.ell, v)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix.from_columns(self.rows, [self.apply(col) for col in other.columns()], self.ell)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries.get(k, 0) + v
        return SparseMatrix(self.rows, self.cols, entries, self.ell)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def scale(self, k: int) -> "SparseMatrix":
        return SparseMatrix(self.rows, self.cols, {rc: k * v for rc, v in self.entries.items()}, self.ell)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}, self.ell)

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "SparseMatrix":
        """Return the matrix with row ``r`` moved to ``row_perm[r]`` and likewise for columns."""
        return SparseMatrix(self.rows, self.cols,
                            {(row_perm[r], col_perm[c]): v for (r, c), v in self.entries.items()}, self.ell)

    @staticmethod
    def hstack(blocks: Sequence["SparseMatrix"], rows: Optional[int] = None, ell: int = 2) -> "SparseMatrix":
        if blocks:
            rows = blocks[0].rows
            ell = blocks[0].ell
        entries = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("row mismatch in hstack")
            for (r, c), v in b.entries.items():
                entries[r, c + off] = v
            off += b.cols
        return SparseMatrix(rows or 0, off, entries, ell)

    @staticmethod
    def vstack(blocks: Sequence["SparseMatrix"], cols: Optional[int] = None, ell: int = 2) -> "SparseMatrix":
        return SparseMatrix.hstack([b.transpose() for b in blocks], cols, ell).transpose()

    # elimination --------------------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> List[Vector]:
        return kernel_basis(self)

    # serialization -----------------------------------------------------------

    def to_triplets(self) -> str:
        """Text form: a header ``%%sparse-triplet rows cols modulus`` then ``row col value`` lines."""
        buf = io.StringIO()
        buf.write(f"%%sparse-triplet {self.rows} {self.cols} {self.ell}\n")
        for (r, c) in sorted(self.entries):
            buf.write(f"{r} {c} {self.entries[r, c]}\n")
        return buf.getvalue()

    @classmethod
    def from_triplets(cls, text: str) -> "SparseMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("%%sparse-triplet"):
            raise ValueError("missing %%sparse-triplet header")
        _, rows, cols, ell = lines[0].split()
        entries = {}
        for ln in lines[1:]:
            r, c, v = (int(t) for t in ln.split())
            if (r, c) in entries:
                raise ValueError(f"duplicate entry ({r}, {c})")
            if v % int(ell) == 0:
                raise ValueError(f"stored zero at ({r}, {c})")
            entries[r, c] = v
        return cls(int(rows), int(cols), entries, int(ell))


# ----------------------------------------------------------------------
# Gaussian elimination


def _bits(col: Mapping[int, int]) -> int:
    out = 0
    for r in col:
        out |= 1 << r
    return out


def rank(m: SparseMatrix) -> int:
    """Rank over F_l, eliminating columns in order."""
    if m.ell == 2:
        pivots: Dict[int, int] = {}
        for col in m.columns():
            v = _bits(col)
            while v:
                low = v & -v
                p = pivots.get(low)
                if p is None:
                    pivots[low] = v
                    break
                v ^= p
        return len(pivots)
    return len(_reduce_columns(m, track=False)[0])


def _reduce_columns(m: SparseMatrix, track: bool):
    """Column reduction for odd primes.

    Returns ``(pivots, kernel)``: ``pivots`` maps a pivot row to a reduced
    column whose largest row index is that pivot with coefficient 1;
    ``kernel`` holds combinations of input columns that reduce to zero
    (only when ``track``).
    """
    ell = m.ell
    pivots: Dict[int, Tuple[Vector, Vector]] = {}
    kernel: List[Vector] = []
    for c, col in enumerate(m.columns()):
        v = dict(col)
        combo: Vector = {c: 1} if track else {}
        while v:
            r = max(v)
            hit = pivots.get(r)
            if hit is None:
                inv = pow(v[r], ell - 2, ell)
                v = {k: x * inv % ell for k, x in v.items()}
                if track:
                    combo = {k: x * inv % ell for k, x in combo.items()}
                pivots[r] = (v, combo)
                break
            pv, pc = hit
            coef = -v[r]
            vec_add(v, pv, ell, coef)
            if track:
                vec_add(combo, pc, ell, coef)
        else:
            if track:
                kernel.append(combo)
    return pivots, kernel


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """A basis of the null space ``{v : M v = 0}`` as sparse vectors."""
    if m.ell == 2:
        pivots: Dict[int, Tuple[int, int]] = {}
        kernel = []
        for c, col in enumerate(m.columns()):
            v = _bits(col)
            combo = 1 << c
            while v:
                low = v & -v
                hit = pivots.get(low)
                if hit is None:
                    pivots[low] = (v, combo)
                    break
                v ^= hit[0]
                combo ^= hit[1]
            else:
                kernel.append({k: 1 for k in _bit_indices(combo)})
        return kernel
    return _reduce_columns(m, track=True)[1]


def _bit_indices(x: int) -> List[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def kernel_dim(m: SparseMatrix) -> int:
    return m.cols - rank(m)


def span_rank(vectors: Iterable[Mapping[int, int]], dim: int, ell: int = 2) -> int:
    return rank(SparseMatrix.from_columns(dim, list(vectors), ell))


# ----------------------------------------------------------------------
# Chain complex windows


@dataclass
class ComplexSegment:
    """Chain modules ``C_n`` for ``n_min <= n <= n_max`` with boundaries.

    ``boundaries[n]`` is the matrix ``C_n -> C_{n-1}`` and is stored for
    ``n_min < n <= n_max``.  Modules outside the window are unknown, not zero;
    pad with zero-rank degrees to express a bounded complex.
    """

    n_min: int
    n_max: int
    ranks: Dict[int, int]
    boundaries: Dict[int, SparseMatrix]
    ell: int = 2
    labels: Dict[int, list] = field(default_factory=dict)

    def __post_init__(self):
        for n in range(self.n_min, self.n_max + 1):
            if n not in self.ranks:
                raise ValueError(f"missing rank for degree {n}")
        for n in range(self.n_min + 1, self.n_max + 1):
            b = self.boundaries.get(n)
            if b is None:
                raise ValueError(f"missing boundary in degree {n}")
            if b.shape != (self.ranks[n - 1], self.ranks[n]):
                raise ValueError(f"boundary {n} has shape {b.shape}, expected "
                                 f"{(self.ranks[n - 1], self.ranks[n])}")

    def boundary(self, n: int) -> SparseMatrix:
        if not (self.n_min < n <= self.n_max):
            raise OutOfWindowError(f"boundary {n} outside window [{self.n_min}, {self.n_max}]")
        return self.boundaries[n]

    def check_square_zero(self) -> Optional[int]:
        """Return the first degree ``n`` with ``d_{n-1} d_n != 0``, or None."""
        for n in range(self.n_min + 2, self.n_max + 1):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                return n
        return None


def homology_rank(c: ComplexSegment, n: int) -> int:
    if not (c.n_min < n < c.n_max):
        raise OutOfWindowError(f"homology in degree {n} needs degrees {n - 1}..{n + 1} "
                               f"inside [{c.n_min}, {c.n_max}]")
    return kernel_dim(c.boundaries[n]) - rank(c.boundaries[n + 1])


def homology_ranks(c: ComplexSegment, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
    if degrees is None:
        degrees = range(c.n_min + 1, c.n_max)
    return {n: homology_rank(c, n) for n in degrees}


def check_chain_map(f: Mapping[int, SparseMatrix], a: ComplexSegment, b: ComplexSegment,
                    degrees: Iterable[int]) -> None:
    """Raise ChainMapError unless ``d f_n = f_{n-1} d`` for each listed ``n``."""
    for n in degrees:
        lhs = b.boundary(n) @ f[n]
        rhs = f[n - 1] @ a.boundary(n)
        if lhs != rhs:
            raise ChainMapError(n)


def quasi_iso_check(f: Mapping[int, SparseMatrix], a: ComplexSegment, b: ComplexSegment,
                    degrees: Iterable[int]) -> Dict[int, bool]:
    """Whether ``f`` induces isomorphisms ``H_n(a) -> H_n(b)`` for each degree.

    The chain-map condition is verified first on every boundary the
    computation touches.  ``f_*`` is an isomorphism at ``n`` iff both
    homologies have the same rank and the image of ``f_*`` has that rank;
    the image rank is ``rank[f Z_n(a) | B_n(b)] - rank B_n(b)``.
    """
    degrees = list(degrees)
    touched = sorted({k for n in degrees for k in (n, n + 1)})
    check_chain_map(f, a, b, touched)
    out = {}
    for n in degrees:
        ha = homology_rank(a, n)
        hb = homology_rank(b, n)
        if ha != hb:
            out[n] = False
            continue
        cycles = kernel_basis(a.boundary(n))
        fz = [f[n].apply(z) for z in cycles]
        bound = b.boundary(n + 1).columns()
        rb = span_rank(bound, b.ranks[n], b.ell)
        image = span_rank(fz + list(bound), b.ranks[n], b.ell) - rb
        out[n] = image == ha
    return out
