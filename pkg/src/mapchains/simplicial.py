"""Finite pointed simplicial sets and the spaces built from them.

Every space implements the same small interface (:class:`PointedSpace`):
the finite list of simplices in each degree, faces, degeneracies and the
basepoint.  Concrete spaces:

* :class:`PointedSimplicialSet` -- a finite presentation by nondegenerate
  generators; simplices are a generator plus a degeneracy word in normal
  form.
* :class:`Nerve` -- the nerve of a finite group.
* :class:`Smash` -- smash products of other spaces, simplices are tuples.
* :class:`FunctionSpace` -- ``Y^S`` for a finite pointed set ``S``.
* :class:`MapSpace` -- pointed maps ``X ^ D[n]_+ -> Y``, enumerated.
"""

from __future__ import annotations

import itertools
import json
from typing import (Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional,
                    Sequence, Tuple)


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured bound."""


class Simplex(NamedTuple):
    """``s_{j_k} ... s_{j_1} g`` with ``j_k > ... > j_1``, stored as ``degens = (j_k, ..., j_1)``."""

    gen: str
    gdim: int
    degens: Tuple[int, ...] = ()

    @property
    def degree(self) -> int:
        return self.gdim + len(self.degens)

    def __repr__(self):
        if not self.degens:
            return self.gen
        return "".join(f"s{j}" for j in self.degens) + f"({self.gen})"


def word_to_surjection(degens: Sequence[int], gdim: int) -> Tuple[int, ...]:
    n = gdim + len(degens)
    merged = set(degens)
    out = [0]
    for j in range(n):
        out.append(out[-1] + (0 if j in merged else 1))
    return tuple(out)


def surjection_to_word(eta: Sequence[int]) -> Tuple[int, ...]:
    return tuple(j for j in range(len(eta) - 2, -1, -1) if eta[j] == eta[j + 1])


def monotone_maps(k: int, n: int) -> List[Tuple[int, ...]]:
    """All order-preserving maps ``[k] -> [n]`` as tuples, lexicographically."""
    return [tuple(c) for c in itertools.combinations_with_replacement(range(n + 1), k + 1)]


def merged_positions(seq: Sequence[Any]) -> FrozenSet[int]:
    return frozenset(j for j in range(len(seq) - 1) if seq[j] == seq[j + 1])


class PointedSpace:
    """Interface shared by all pointed simplicial sets in this package.

    Subclasses implement ``_simplices``, ``face``, ``degen``, ``basepoint``
    and ``degree``.  Lists are memoized per degree; the memo only ever
    caches a deterministic function of the (immutable) space.
    """

    name = "space"
    #: dimension above which every simplex is degenerate, ``None`` if unbounded
    dim: Optional[int] = None
    #: ``c`` such that the space is c-coskeletal and supports ``from_faces``
    coskeletal_degree: Optional[int] = None

    def __init__(self):
        self._memo: Dict[Any, Any] = {}

    def _cached(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = fn()
            return value

    # to override ------------------------------------------------------

    def _simplices(self, n: int) -> List[Any]:
        raise NotImplementedError

    def face(self, x, i: int):
        raise NotImplementedError

    def degen(self, x, i: int):
        raise NotImplementedError

    def basepoint(self, n: int):
        raise NotImplementedError

    def degree(self, x) -> int:
        raise NotImplementedError

    def from_faces(self, faces: Sequence[Any]):
        raise NotImplementedError(f"{self.name} cannot fill simplices from faces")

    # derived ----------------------------------------------------------

    def simplices(self, n: int) -> List[Any]:
        """All degree-``n`` simplices in canonical (sorted) order, basepoint included."""
        if n < 0:
            return []
        return self._cached(("simplices", n), lambda: sorted(self._simplices(n)))

    def reduced_basis(self, n: int) -> List[Any]:
        """Nonbasepoint degree-``n`` simplices: the basis of reduced chains."""
        def build():
            b = self.basepoint(n) if n >= 0 else None
            return [x for x in self.simplices(n) if x != b]
        return self._cached(("reduced", n), build)

    def index(self, n: int) -> Dict[Any, int]:
        return self._cached(("index", n), lambda: {x: k for k, x in enumerate(self.reduced_basis(n))})

    def is_basepoint(self, x) -> bool:
        return x == self.basepoint(self.degree(x))

    def checked_face(self, x, i: int):
        n = self.degree(x)
        if not 0 <= i <= n or n == 0:
            raise IndexError(f"face index {i} out of range for degree {n}")
        return self.face(x, i)

    def degeneracy_set(self, x) -> FrozenSet[int]:
        """Indices ``j`` with ``x`` in the image of ``s_j``."""
        n = self.degree(x)
        return frozenset(j for j in range(n) if self.degen(self.face(x, j), j) == x)

    def is_degenerate(self, x) -> bool:
        return bool(self.degeneracy_set(x))

    def nondegenerate(self, n: int) -> List[Any]:
        return [x for x in self.simplices(n) if not self.is_degenerate(x)]

    def operator(self, x, theta: Sequence[int]):
        """Apply the simplicial operator of a monotone ``theta: [k] -> [n]`` to ``x``."""
        n = self.degree(x)
        image = sorted(set(theta))
        for m in range(n, -1, -1):
            if m not in image:
                x = self.face(x, m)
        pos = {v: k for k, v in enumerate(image)}
        tau = [pos[v] for v in theta]
        for j in range(len(tau) - 1):
            if tau[j] == tau[j + 1]:
                x = self.degen(x, j)
        return x

    def by_faces(self, k: int) -> Dict[Tuple[Any, ...], List[Any]]:
        """Degree-``k`` simplices grouped by their tuple of faces."""
        def build():
            table: Dict[Tuple[Any, ...], List[Any]] = {}
            for y in self.simplices(k):
                key = tuple(self.face(y, i) for i in range(k + 1)) if k > 0 else ()
                table.setdefault(key, []).append(y)
            return table
        return self._cached(("by_faces", k), build)

    def count(self, n: int) -> int:
        return len(self.simplices(n))

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ----------------------------------------------------------------------
# finite presentations


class PointedSimplicialSet(PointedSpace):
    """A pointed simplicial set generated by finitely many simplices.

    ``generators`` maps an id to ``(dim, faces)``; ``faces`` lists the
    ``dim + 1`` faces of the generator as :class:`Simplex` values (empty for
    vertices).  Face references and the identities ``d_i d_j = d_{j-1} d_i``
    are checked on construction.
    """

    def __init__(self, generators: Mapping[str, Tuple[int, Sequence[Simplex]]], basepoint: str = "*",
                 name: str = "X"):
        super().__init__()
        self.name = name
        self.base = basepoint
        self.generators: Dict[str, Tuple[int, Tuple[Simplex, ...]]] = {}
        for gid, (dim, faces) in generators.items():
            faces = tuple(Simplex(*f) for f in faces)
            self.generators[gid] = (dim, faces)
        if basepoint not in self.generators or self.generators[basepoint][0] != 0:
            raise ValueError("basepoint must be a 0-dimensional generator")
        self.dim = max(d for d, _ in self.generators.values())
        self._validate()

    def _validate(self):
        for gid, (dim, faces) in self.generators.items():
            if dim < 0:
                raise ValueError(f"generator {gid} has negative dimension")
            expected = dim + 1 if dim > 0 else 0
            if len(faces) != expected:
                raise ValueError(f"generator {gid} of dim {dim} needs {expected} faces")
            for f in faces:
                if f.gen not in self.generators:
                    raise ValueError(f"face {f!r} of {gid} references an unknown generator")
                if self.generators[f.gen][0] != f.gdim:
                    raise ValueError(f"face {f!r} of {gid} has the wrong generator dimension")
                if f.degree != dim - 1:
                    raise ValueError(f"face {f!r} of {gid} has degree {f.degree}, expected {dim - 1}")
                if list(f.degens) != sorted(set(f.degens), reverse=True) or \
                        any(j >= f.gdim + len(f.degens) - k for k, j in enumerate(f.degens)):
                    raise ValueError(f"face {f!r} of {gid} is not in normal form")
        for gid, (dim, _) in self.generators.items():
            if dim < 2:
                continue
            g = self.generator(gid)
            for j in range(1, dim + 1):
                for i in range(j):
                    lhs = self.face(self.face(g, j), i)
                    rhs = self.face(self.face(g, i), j - 1)
                    if lhs != rhs:
                        raise ValueError(f"generator {gid}: d{i} d{j} != d{j - 1} d{i}")

    def generator(self, gid: str) -> Simplex:
        return Simplex(gid, self.generators[gid][0], ())

    def basepoint(self, n: int) -> Simplex:
        return Simplex(self.base, 0, tuple(range(n - 1, -1, -1)))

    def degree(self, x: Simplex) -> int:
        return x.degree

    def _simplices(self, n: int) -> List[Simplex]:
        out = []
        for gid, (m, _) in self.generators.items():
            if m > n:
                continue
            for word in itertools.combinations(range(n - 1, -1, -1), n - m):
                out.append(Simplex(gid, m, tuple(word)))
        return out

    def face(self, x: Simplex, i: int) -> Simplex:
        eta = word_to_surjection(x.degens, x.gdim)
        rest = eta[:i] + eta[i + 1:]
        m = x.gdim
        if len(set(rest)) == m + 1:
            return Simplex(x.gen, m, surjection_to_word(rest))
        k = eta[i]
        lower = self.generators[x.gen][1][k]
        tau = tuple(v if v < k else v - 1 for v in rest)
        eta2 = word_to_surjection(lower.degens, lower.gdim)
        return Simplex(lower.gen, lower.gdim, surjection_to_word(tuple(eta2[v] for v in tau)))

    def degen(self, x: Simplex, i: int) -> Simplex:
        eta = word_to_surjection(x.degens, x.gdim)
        return Simplex(x.gen, x.gdim, surjection_to_word(eta[:i + 1] + eta[i:]))

    def degeneracy_set(self, x: Simplex) -> FrozenSet[int]:
        return frozenset(x.degens)

    def is_degenerate(self, x: Simplex) -> bool:
        return bool(x.degens)

    def apply_word(self, x: Simplex, degens: Sequence[int]) -> Simplex:
        """Apply ``s_{j_k} ... s_{j_1}`` (``degens`` decreasing) to ``x``."""
        for j in sorted(degens):
            x = self.degen(x, j)
        return x

    # interchange ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": "mapchains.simplicial-set",
            "version": 1,
            "name": self.name,
            "basepoint": self.base,
            "generators": [
                {"id": gid, "dim": dim, "faces": [[f.gen, list(f.degens)] for f in faces]}
                for gid, (dim, faces) in sorted(self.generators.items(), key=lambda kv: (kv[1][0], kv[0]))
            ],
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def __eq__(self, other):
        if not isinstance(other, PointedSimplicialSet):
            return NotImplemented
        return (self.name, self.base, self.generators) == (other.name, other.base, other.generators)

    __hash__ = object.__hash__


def from_dict(data: Mapping[str, Any]) -> PointedSimplicialSet:
    if data.get("format") != "mapchains.simplicial-set" or data.get("version") != 1:
        raise ValueError("not a mapchains.simplicial-set v1 document")
    dims = {g["id"]: int(g["dim"]) for g in data["generators"]}
    if len(dims) != len(data["generators"]):
        raise ValueError("duplicate generator ids")
    gens = {}
    for g in data["generators"]:
        faces = []
        for ref in g.get("faces", []):
            gid, word = ref
            if gid not in dims:
                raise ValueError(f"unknown generator {gid!r} in faces of {g['id']!r}")
            faces.append(Simplex(gid, dims[gid], tuple(int(j) for j in word)))
        gens[g["id"]] = (int(g["dim"]), faces)
    return PointedSimplicialSet(gens, data["basepoint"], data.get("name", "X"))


def from_text(text: str) -> PointedSimplicialSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed simplicial set file: {exc}") from None
    return from_dict(data)


def from_file(path) -> PointedSimplicialSet:
    with open(path) as fh:
        return from_text(fh.read())


def to_file(space: PointedSimplicialSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(space.to_text())


# ----------------------------------------------------------------------
# builders


def point() -> PointedSimplicialSet:
    return PointedSimplicialSet({"*": (0, [])}, name="pt")


def _bp(n: int) -> Simplex:
    return Simplex("*", 0, tuple(range(n - 1, -1, -1)))


def sphere_min(n: int) -> PointedSimplicialSet:
    """``D[n] / dD[n]``: a basepoint and one nondegenerate ``n``-simplex ``e{n}``."""
    if n < 0:
        raise ValueError("sphere dimension must be nonnegative")
    faces = [_bp(n - 1)] * (n + 1) if n > 0 else []
    return PointedSimplicialSet({"*": (0, []), f"e{n}": (n, faces)}, name=f"S{n}")


def _face_id(a: Sequence[int]) -> str:
    return "[" + ",".join(str(v) for v in a) + "]"


def delta_plus(p: int) -> PointedSimplicialSet:
    """The standard ``p``-simplex with a disjoint basepoint ``*``."""
    if p < 0:
        raise ValueError("simplex dimension must be nonnegative")
    gens: Dict[str, Tuple[int, List[Simplex]]] = {"*": (0, [])}
    for k in range(1, p + 2):
        for a in itertools.combinations(range(p + 1), k):
            faces = [Simplex(_face_id(a[:i] + a[i + 1:]), k - 2, ()) for i in range(k)] if k > 1 else []
            gens[_face_id(a)] = (k - 1, faces)
    return PointedSimplicialSet(gens, name=f"D{p}+")


def fundamental_simplex(p: int) -> Simplex:
    return Simplex(_face_id(range(p + 1)), p, ())


def circle_triangle() -> PointedSimplicialSet:
    """A circle with three vertices ``*, a, b`` and edges ``* -> a -> b -> *``."""
    v = lambda g: Simplex(g, 0, ())  # noqa: E731
    return PointedSimplicialSet({
        "*": (0, []), "a": (0, []), "b": (0, []),
        "e0": (1, [v("a"), v("*")]),
        "e1": (1, [v("b"), v("a")]),
        "e2": (1, [v("*"), v("b")]),
    }, name="S1_3")


def cyclic_group(k: int) -> List[List[int]]:
    return [[(a + b) % k for b in range(k)] for a in range(k)]


def nerve(table: Sequence[Sequence[int]], name: Optional[str] = None) -> "Nerve":
    return Nerve(table, name)


class Nerve(PointedSpace):
    """Nerve of a finite group given by its multiplication table.

    An ``n``-simplex is a tuple ``(g_1, ..., g_n)``; ``d_0`` drops ``g_1``,
    ``d_n`` drops ``g_n`` and inner faces multiply neighbours.  Nerves of
    groups are Kan complexes and are 2-coskeletal.
    """

    coskeletal_degree = 2

    def __init__(self, table: Sequence[Sequence[int]], name: Optional[str] = None):
        super().__init__()
        k = len(table)
        if k == 0 or any(len(row) != k for row in table):
            raise ValueError("group table must be square and nonempty")
        if any(not 0 <= v < k for row in table for v in row):
            raise ValueError("group table entries out of range")
        ids = [e for e in range(k) if all(table[e][g] == g and table[g][e] == g for g in range(k))]
        if not ids:
            raise ValueError("group table has no identity")
        for a, b, c in itertools.product(range(k), repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise ValueError("group table is not associative")
        e = ids[0]
        for a in range(k):
            if e not in table[a]:
                raise ValueError(f"element {a} has no inverse")
        self.table = [list(row) for row in table]
        self.order = k
        self.e = e
        self.name = name or f"BZ{k}"

    def basepoint(self, n: int):
        return (self.e,) * n

    def degree(self, x) -> int:
        return len(x)

    def _simplices(self, n: int):
        return list(itertools.product(range(self.order), repeat=n))

    def face(self, x, i: int):
        n = len(x)
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[:i - 1] + (self.table[x[i - 1]][x[i]],) + x[i + 1:]

    def degen(self, x, i: int):
        return x[:i] + (self.e,) + x[i:]

    def degeneracy_set(self, x) -> FrozenSet[int]:
        return frozenset(j for j, g in enumerate(x) if g == self.e)

    def from_faces(self, faces):
        # d_n gives (g_1..g_{n-1}), d_0 gives (g_2..g_n)
        n = len(faces) - 1
        x = tuple(faces[n]) + (faces[0][-1],)
        if any(self.face(x, i) != faces[i] for i in range(n + 1)):
            raise ValueError("faces are not compatible")
        return x


# ----------------------------------------------------------------------
# smash products


class Smash(PointedSpace):
    """Smash product of spaces: tuples, collapsed to the basepoint if any coordinate is."""

    def __init__(self, factors: Sequence[PointedSpace], name: Optional[str] = None):
        super().__init__()
        self.factors = tuple(factors)
        if not self.factors:
            raise ValueError("smash product needs at least one factor")
        self.name = name or "^".join(f.name for f in self.factors)
        dims = [f.dim for f in self.factors]
        self.dim = None if any(d is None for d in dims) else sum(dims)

    def basepoint(self, n: int):
        return tuple(f.basepoint(n) for f in self.factors)

    def degree(self, x) -> int:
        return self.factors[0].degree(x[0])

    def klass(self, coords: Sequence[Any]):
        """Image of a product simplex: the tuple itself or the basepoint."""
        coords = tuple(coords)
        if any(f.is_basepoint(c) for f, c in zip(self.factors, coords)):
            return self.basepoint(self.factors[0].degree(coords[0]))
        return coords

    def _simplices(self, n: int):
        parts = [f.reduced_basis(n) for f in self.factors]
        return [self.basepoint(n)] + list(itertools.product(*parts))

    def face(self, x, i: int):
        return self.klass(f.face(c, i) for f, c in zip(self.factors, x))

    def degen(self, x, i: int):
        return tuple(f.degen(c, i) for f, c in zip(self.factors, x))

    def degeneracy_set(self, x) -> FrozenSet[int]:
        out = None
        for f, c in zip(self.factors, x):
            d = f.degeneracy_set(c)
            out = d if out is None else out & d
        return out

    def presentation(self, max_degree: int) -> PointedSimplicialSet:
        """Finite presentation of the skeleton up to ``max_degree``.

        Generators are the nondegenerate tuples; their faces are written as
        ``s_J`` of a nondegenerate tuple (Eilenberg-Zilber decomposition).
        """
        ids: Dict[Any, str] = {}
        gens: Dict[str, Tuple[int, List[Simplex]]] = {"*": (0, [])}
        for n in range(max_degree + 1):
            for k, x in enumerate(self.nondegenerate(n)):
                if self.is_basepoint(x):
                    continue
                gid = f"n{n}_{k:04d}"
                ids[x] = gid
                faces = [self.ez_decompose(self.face(x, i), ids) for i in range(n + 1)] if n else []
                gens[gid] = (n, faces)
        return PointedSimplicialSet(gens, name=f"{self.name}<={max_degree}")

    def ez_decompose(self, x, ids: Mapping[Any, str]) -> Simplex:
        n = self.degree(x)
        if self.is_basepoint(x):
            return _bp(n)
        common = sorted(self.degeneracy_set(x), reverse=True)
        core = x
        for j in common:
            core = self.face(core, j)
        return Simplex(ids[core], n - len(common), tuple(common))


def smash_power(x: PointedSpace, s: int) -> Smash:
    if s < 1:
        raise ValueError("smash power needs s >= 1")
    return Smash([x] * s, name=f"{x.name}^{s}")


# ----------------------------------------------------------------------
# function spaces


class PointedFiniteSet:
    """A finite set with a distinguished basepoint, elements in a fixed order."""

    def __init__(self, elements: Iterable[Any], basepoint: Any):
        self.elements = tuple(elements)
        if basepoint not in self.elements:
            raise ValueError("basepoint must be an element")
        self.basepoint = basepoint
        self.nonbase = tuple(e for e in self.elements if e != basepoint)
        self.position = {e: k for k, e in enumerate(self.nonbase)}

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, PointedFiniteSet) and \
            (self.elements, self.basepoint) == (other.elements, other.basepoint)

    def __hash__(self):
        return hash((self.elements, self.basepoint))


def simplices_as_set(x: PointedSpace, p: int) -> PointedFiniteSet:
    """``X_p`` as a pointed set, nonbasepoint elements in canonical order."""
    return PointedFiniteSet(x.simplices(p), x.basepoint(p))


class FunctionSpace(PointedSpace):
    """``Y^S``: a ``q``-simplex is a pointed function ``S -> Y_q``.

    Stored as the tuple of values on ``S`` minus the basepoint, in the
    order of ``S.nonbase``; faces and degeneracies act valuewise.
    """

    def __init__(self, y: PointedSpace, s: PointedFiniteSet, name: Optional[str] = None):
        super().__init__()
        self.y = y
        self.s = s
        self.name = name or f"{y.name}^S{len(s.nonbase)}"
        self.dim = y.dim if s.nonbase else 0

    def basepoint(self, n: int):
        return (self.y.basepoint(n),) * len(self.s.nonbase)

    def degree(self, v) -> int:
        return self.y.degree(v[0]) if v else self._empty_degree(v)

    def _empty_degree(self, v):
        raise ValueError("degree of a simplex of Y^{*} is not recoverable; use basepoint(n)")

    def is_basepoint(self, v) -> bool:
        return all(self.y.is_basepoint(c) for c in v)

    def reduced_basis(self, n: int):
        if not self.s.nonbase:
            return []
        return super().reduced_basis(n)

    def _simplices(self, n: int):
        return list(itertools.product(self.y.simplices(n), repeat=len(self.s.nonbase)))

    def value(self, v, element):
        if element == self.s.basepoint:
            return None
        return v[self.s.position[element]]

    def face(self, v, i: int):
        return tuple(self.y.face(c, i) for c in v)

    def degen(self, v, i: int):
        return tuple(self.y.degen(c, i) for c in v)

    def degeneracy_set(self, v) -> FrozenSet[int]:
        out = None
        for c in v:
            d = self.y.degeneracy_set(c)
            out = d if out is None else out & d
        return out if out is not None else frozenset()


def function_space(y: PointedSpace, s: PointedFiniteSet) -> FunctionSpace:
    return FunctionSpace(y, s)


# ----------------------------------------------------------------------
# maps


class Surjection(NamedTuple):
    """A surjection ``<t> -> <s>``; ``values[k-1]`` is the image of ``k``."""

    values: Tuple[int, ...]
    s: int

    @property
    def t(self) -> int:
        return len(self.values)

    @classmethod
    def make(cls, values: Sequence[int], s: Optional[int] = None) -> "Surjection":
        values = tuple(int(v) for v in values)
        s = max(values) if s is None else s
        if s < 1 or not values or set(values) != set(range(1, s + 1)):
            raise ValueError(f"{values} is not a surjection onto <{s}>")
        return cls(values, s)

    @classmethod
    def identity(cls, s: int) -> "Surjection":
        return cls(tuple(range(1, s + 1)), s)

    def __call__(self, k: int) -> int:
        return self.values[k - 1]

    def then(self, other: "Surjection") -> "Surjection":
        """``other o self``."""
        if other.t != self.s:
            raise ValueError("surjections do not compose")
        return Surjection(tuple(other(v) for v in self.values), other.s)


def all_surjections(t: int, s: int) -> List[Surjection]:
    return [Surjection(v, s) for v in itertools.product(range(1, s + 1), repeat=t)
            if set(v) == set(range(1, s + 1))]


class SimplicialMap:
    """A pointed simplicial map given by a function on simplices."""

    def __init__(self, source: PointedSpace, target: PointedSpace, fn: Callable[[Any], Any],
                 name: str = "f"):
        self.source = source
        self.target = target
        self._fn = fn
        self.name = name

    def __call__(self, x):
        return self._fn(x)

    def then(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other o self``."""
        return SimplicialMap(self.source, other.target, lambda x: other(self(x)),
                             f"{other.name}.{self.name}")

    def check(self, max_degree: int) -> None:
        """Verify pointedness and face compatibility on all simplices up to a degree."""
        for n in range(max_degree + 1):
            if self(self.source.basepoint(n)) != self.target.basepoint(n):
                raise ValueError(f"{self.name} does not preserve the basepoint in degree {n}")
            for x in self.source.simplices(n):
                fx = self(x)
                if self.target.degree(fx) != n:
                    raise ValueError(f"{self.name} changes degree of {x!r}")
                for i in range(n + 1 if n else 0):
                    if self(self.source.face(x, i)) != self.target.face(fx, i):
                        raise ValueError(f"{self.name} does not commute with d{i} at {x!r}")


class PointedMap(SimplicialMap):
    """A pointed map out of a finite presentation, given on generators."""

    def __init__(self, source: PointedSimplicialSet, target: PointedSpace,
                 assignment: Mapping[str, Any], name: str = "f"):
        missing = set(source.generators) - set(assignment)
        if missing:
            raise ValueError(f"no image for generators {sorted(missing)}")
        self.assignment = dict(assignment)
        super().__init__(source, target, self._apply, name)
        if self.assignment[source.base] != target.basepoint(0):
            raise ValueError("map does not send the basepoint to the basepoint")
        for gid, (dim, faces) in source.generators.items():
            img = self.assignment[gid]
            if target.degree(img) != dim:
                raise ValueError(f"image of {gid} has the wrong degree")
            for i, f in enumerate(faces):
                if self._apply(f) != target.face(img, i):
                    raise ValueError(f"map does not commute with d{i} on generator {gid}")

    def _apply(self, x: Simplex):
        y = self.assignment[x.gen]
        for j in sorted(x.degens):
            y = self.target.degen(y, j)
        return y


def identity_map(x: PointedSpace) -> SimplicialMap:
    return SimplicialMap(x, x, lambda v: v, "id")


def constant_map(x: PointedSpace, y: PointedSpace) -> SimplicialMap:
    return SimplicialMap(x, y, lambda v: y.basepoint(x.degree(v)), "const")


def h_sharp(x: PointedSpace, h: Surjection, source: Optional[Smash] = None,
            target: Optional[Smash] = None) -> SimplicialMap:
    """``h#: X^s -> X^t``, ``x_1...x_s |-> x_{h(1)}...x_{h(t)}``."""
    if not isinstance(h, Surjection):
        h = Surjection.make(h)
    src = source or smash_power(x, h.s)
    tgt = target or smash_power(x, h.t)

    def fn(v):
        n = src.degree(v)
        if src.is_basepoint(v):
            return tgt.basepoint(n)
        return tuple(v[k - 1] for k in h.values)
    return SimplicialMap(src, tgt, fn, f"h#{h.values}")


def smash_map(f: SimplicialMap, s: int, source: Optional[Smash] = None,
              target: Optional[Smash] = None) -> SimplicialMap:
    """``f^s`` on smash powers."""
    src = source or smash_power(f.source, s)
    tgt = target or smash_power(f.target, s)
    return SimplicialMap(src, tgt, lambda v: tgt.klass(f(c) for c in v), f"{f.name}^{s}")


def characteristic_map(x_space: PointedSpace, x) -> PointedMap:
    """The map ``D[p]_+ -> X`` sending the fundamental simplex to ``x``."""
    p = x_space.degree(x)
    if x_space.is_basepoint(x):
        raise ValueError("characteristic map of the basepoint simplex")
    d = delta_plus(p)
    assignment = {"*": x_space.basepoint(0)}
    for gid, (dim, _) in d.generators.items():
        if gid == "*":
            continue
        verts = tuple(int(v) for v in gid.strip("[]").split(","))
        assignment[gid] = x_space.operator(x, verts)
    return PointedMap(d, x_space, assignment, name=f"char({x!r})")


# ----------------------------------------------------------------------
# mapping spaces


class MapSimplex(NamedTuple):
    """An ``n``-simplex of ``Y^X``: values on the nondegenerate cells of ``X x D[n]``."""

    degree: int
    values: Tuple[Any, ...]


class MapSpace(PointedSpace):
    """``Y^X`` with ``(Y^X)_n`` the pointed maps ``X ^ D[n]_+ -> Y``.

    A map is determined by its values on the nondegenerate simplices
    ``(x, b)`` of ``X x D[n]`` with ``x`` off the basepoint; these are
    enumerated by backtracking in increasing dimension with face-consistency
    pruning.  When ``X`` has no top dimension the target must be coskeletal,
    and cells above the coskeletal degree are filled from their faces.
    """

    def __init__(self, x: PointedSpace, y: PointedSpace, budget: int = 200_000, name: Optional[str] = None):
        super().__init__()
        self.x = x
        self.y = y
        self.budget = budget
        self.name = name or f"{y.name}^{x.name}"

    # cells --------------------------------------------------------------

    def _top(self, n: int) -> int:
        bounds = []
        if self.x.dim is not None:
            bounds.append(self.x.dim + n)
        if self.y.coskeletal_degree is not None:
            bounds.append(self.y.coskeletal_degree)
        if not bounds:
            raise ValueError(f"{self.x.name} has unbounded dimension and {self.y.name} is not coskeletal")
        return min(bounds)

    def cells(self, n: int) -> List[Tuple[Any, Tuple[int, ...]]]:
        """Nondegenerate ``(x, b)`` of ``X x D[n]`` with ``x`` not the basepoint, by degree."""
        def build():
            out = []
            for k in range(self._top(n) + 1):
                betas = [(b, merged_positions(b)) for b in monotone_maps(k, n)]
                for x in self.x.reduced_basis(k):
                    dx = self.x.degeneracy_set(x)
                    out.extend((x, b) for b, db in betas if not dx & db)
            return out
        return self._cached(("cells", n), build)

    def cell_index(self, n: int) -> Dict[Any, int]:
        return self._cached(("cell_index", n), lambda: {c: k for k, c in enumerate(self.cells(n))})

    def value_at(self, f: MapSimplex, x, beta: Sequence[int]):
        """``f(x, b)`` for an arbitrary simplex ``(x, b)`` of ``X x D[n]``."""
        return self._eval(f.values, self.cell_index(f.degree), x, tuple(beta))

    def _eval(self, values, index, x, beta):
        k = len(beta) - 1
        if self.x.is_basepoint(x):
            return self.y.basepoint(k)
        common = self.x.degeneracy_set(x) & merged_positions(beta)
        if common:
            for j in sorted(common, reverse=True):
                x = self.x.face(x, j)
                beta = beta[:j] + beta[j + 1:]
            y = self._eval(values, index, x, beta)
            for j in sorted(common):
                y = self.y.degen(y, j)
            return y
        pos = index.get((x, beta))
        if pos is not None:
            return values[pos]
        faces = [self._eval(values, index, self.x.face(x, i), beta[:i] + beta[i + 1:]) for i in range(k + 1)]
        return self.y.from_faces(faces)

    def evaluate(self, f: MapSimplex, x):
        """The evaluation map ``Y^X ^ X -> Y`` on ``n``-simplices: ``f(x, iota_n)``."""
        if self.x.degree(x) != f.degree:
            raise ValueError("evaluation pairs simplices of equal degree")
        return self.value_at(f, x, tuple(range(f.degree + 1)))

    # enumeration ------------------------------------------------------

    def _simplices(self, n: int) -> List[MapSimplex]:
        cells = self.cells(n)
        index = self.cell_index(n)
        y = self.y
        results: List[MapSimplex] = []
        values: List[Any] = [None] * len(cells)
        work = [0]

        def candidates(pos):
            x, beta = cells[pos]
            k = len(beta) - 1
            if k == 0:
                return y.simplices(0)
            faces = tuple(self._eval(values, index, self.x.face(x, i), beta[:i] + beta[i + 1:])
                          for i in range(k + 1))
            return y.by_faces(k).get(faces, [])

        def extend(pos):
            work[0] += 1
            if work[0] > self.budget:
                raise BudgetExceeded(f"enumerating ({self.name})_{n} exceeded budget {self.budget}")
            if pos == len(cells):
                results.append(MapSimplex(n, tuple(values)))
                return
            for c in candidates(pos):
                values[pos] = c
                extend(pos + 1)
            values[pos] = None

        extend(0)
        return results

    def basepoint(self, n: int) -> MapSimplex:
        return MapSimplex(n, tuple(self.y.basepoint(len(b) - 1) for _, b in self.cells(n)))

    def degree(self, f: MapSimplex) -> int:
        return f.degree

    def _reindex(self, f: MapSimplex, m: int, theta: Sequence[int]) -> MapSimplex:
        index = self.cell_index(f.degree)
        vals = tuple(self._eval(f.values, index, x, tuple(theta[b] for b in beta)) for x, beta in self.cells(m))
        return MapSimplex(m, vals)

    def face(self, f: MapSimplex, i: int) -> MapSimplex:
        n = f.degree
        return self._reindex(f, n - 1, [b if b < i else b + 1 for b in range(n)])

    def degen(self, f: MapSimplex, i: int) -> MapSimplex:
        n = f.degree
        return self._reindex(f, n + 1, [b if b <= i else b - 1 for b in range(n + 2)])

    def compose(self, outer: "MapSpace", g: MapSimplex, f: MapSimplex, target: "MapSpace") -> MapSimplex:
        """``(g o f)(x, b) = g(f(x, b), b)`` for ``g`` in ``outer = Z^Y`` and ``f`` in this ``Y^X``."""
        if g.degree != f.degree:
            raise ValueError("composition needs simplices of equal degree")
        n = f.degree
        vals = tuple(outer.value_at(g, self.value_at(f, x, beta), beta) for x, beta in target.cells(n))
        return MapSimplex(n, vals)

    def as_map(self, f: MapSimplex) -> SimplicialMap:
        """A degree-0 simplex as the pointed map ``X -> Y`` it encodes."""
        if f.degree != 0:
            raise ValueError("only 0-simplices are maps X -> Y")
        return SimplicialMap(self.x, self.y,
                             lambda v: self.value_at(f, v, (0,) * (self.x.degree(v) + 1)), "f")


def mapspace_simplices(x: PointedSpace, y: PointedSpace, n: int, budget: int = 200_000) -> List[MapSimplex]:
    return MapSpace(x, y, budget).simplices(n)
