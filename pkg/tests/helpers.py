import itertools

from mapchains.simplicial import (PointedMap, PointedSimplicialSet, Simplex, circle_triangle, cyclic_group, nerve,
                                  sphere_min)


def vertex_pointed_simplex(p):
    """The standard p-simplex pointed at vertex 0 (no extra basepoint)."""
    fid = lambda a: "[" + ",".join(map(str, a)) + "]"  # noqa: E731
    gens = {}
    for k in range(1, p + 2):
        for a in itertools.combinations(range(p + 1), k):
            faces = [Simplex(fid(a[:i] + a[i + 1:]), k - 2, ()) for i in range(k)] if k > 1 else []
            gens[fid(a)] = (k - 1, faces)
    return PointedSimplicialSet(gens, basepoint="[0]", name=f"D{p}")


def circle_collapse():
    """The weak equivalence from the three-vertex circle onto the minimal circle."""
    s1, t = sphere_min(1), circle_triangle()
    flat = Simplex("*", 0, (0,))
    bp = s1.basepoint(0)
    return PointedMap(t, s1, {"*": bp, "a": bp, "b": bp, "e0": flat, "e1": flat, "e2": Simplex("e1", 1, ())},
                      name="collapse")


def bz2():
    return nerve(cyclic_group(2))
