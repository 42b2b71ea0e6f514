"""Projective polytopes as pointed cones over a vertex list.

A polytope in P^{n-1} is the image of ``{sum c_i v_i : c_i >= 0}`` for
vertices ``v_i`` in Q^n.  Faces are recorded by the (0-based) indices of
the vertices they contain together with their *linear rank*, the dimension
of their linear span.  A face of projective dimension d has linear rank
d + 1; this is the only place that conversion happens.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exactla import LpProblem, Matrix, as_matrix, kernel, lp_solve, rank, to_rat
from .grassmann import IndexSet, Subspace


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Face:
    vertices: IndexSet
    linear_rank: int

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.vertices) + "}"

    def contains(self, other: "Face") -> bool:
        return set(other.vertices) <= set(self.vertices)

    def to_json(self) -> dict:
        return {"vertices": [i + 1 for i in self.vertices], "rank": self.linear_rank}


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True, eq=False)
class Polytope:
    n: int
    vertices: Matrix
    labels: tuple[str, ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.vertices)

    def rows(self, idx: Sequence[int]) -> Matrix:
        return tuple(self.vertices[i] for i in idx)

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def to_json(self) -> dict:
        from .jsonio import matrix_json

        return {"n": self.n, "vertices": matrix_json(self.vertices), "labels": list(self.labels)}

    def __reduce__(self):
        return (Polytope, (self.n, self.vertices, self.labels))

    def _memo(self, key, compute):
        # idempotent fill: a concurrent duplicate computation yields the same value
        try:
            return self._cache[key]
        except KeyError:
            value = compute()
            with self._lock:
                return self._cache.setdefault(key, value)


def _strictly_positive_functional(vectors: Matrix, zero_on: Matrix, n: int) -> bool:
    """Is there y with y.z = 0 on ``zero_on`` and y.v > 0 on every ``vectors`` row?

    Decided by maximizing the minimum slack t (capped at 1) over y free.
    Variables: y+ (n), y- (n), t, slacks s_v (one per vector), u (cap).
    """
    if not vectors:
        return True
    nv = len(vectors)
    width = 2 * n + 1 + nv + 1
    rows, rhs = [], []
    for z in zero_on:
        rows.append(list(z) + [-x for x in z] + [Fraction(0)] * (1 + nv + 1))
        rhs.append(Fraction(0))
    for i, v in enumerate(vectors):
        slack = [Fraction(0)] * nv
        slack[i] = Fraction(-1)
        rows.append(list(v) + [-x for x in v] + [Fraction(-1)] + slack + [Fraction(0)])
        rhs.append(Fraction(0))
    rows.append([Fraction(0)] * (2 * n) + [Fraction(1)] + [Fraction(0)] * nv + [Fraction(1)])
    rhs.append(Fraction(1))
    c = [Fraction(0)] * width
    c[2 * n] = Fraction(1)
    res = lp_solve(LpProblem(tuple(map(tuple, rows)), tuple(rhs), tuple(c)))
    return res.status == "optimal" and res.value > 0


def _in_cone(target: Sequence[Fraction], generators: Matrix) -> bool:
    if not generators:
        return all(x == 0 for x in target)
    A = tuple(zip(*generators))
    res = lp_solve(LpProblem(A, tuple(target), tuple(Fraction(0) for _ in generators)))
    return res.status == "optimal"


def build(n: int, vertices: Sequence[Sequence], labels: Sequence[str] | None = None) -> Polytope:
    """Validate a vertex list: full-dimensional, pointed and irredundant."""
    verts = as_matrix(vertices)
    if not verts:
        raise PolytopeError("a polytope needs at least one vertex")
    if any(len(v) != n for v in verts):
        raise PolytopeError(f"every vertex must have {n} coordinates")
    for i, v in enumerate(verts):
        if all(x == 0 for x in v):
            raise PolytopeError(f"vertex {i + 1} is the zero vector")
    if rank(verts) != n:
        raise PolytopeError(f"vertices span only a subspace of rank {rank(verts)} < {n}")
    if not _strictly_positive_functional(verts, (), n):
        raise PolytopeError("the cone over the vertices is not pointed (it contains a line)")
    for i, v in enumerate(verts):
        others = verts[:i] + verts[i + 1:]
        if _in_cone(v, others):
            raise PolytopeError(f"vertex {i + 1} is redundant (a nonnegative combination of the others)")
    if labels is None:
        labels = [str(i + 1) for i in range(len(verts))]
    labels = tuple(labels)
    if len(labels) != len(verts):
        raise PolytopeError("label count does not match vertex count")
    return Polytope(n, verts, labels)


def is_face(p: Polytope, s: Sequence[int]) -> bool:
    """Proper nonempty faces only: the empty set and the full vertex set give False."""
    s = tuple(sorted(set(s)))
    if not s or len(s) == p.m:
        return False
    inside = set(s)
    outside = tuple(v for i, v in enumerate(p.vertices) if i not in inside)
    return _strictly_positive_functional(outside, p.rows(s), p.n)


def facets(p: Polytope) -> tuple[Face, ...]:
    def compute():
        found = set()
        for idx in combinations(range(p.m), p.n - 1):
            sub = p.rows(idx)
            if rank(sub) != p.n - 1:
                continue
            (normal,) = kernel(sub)
            values = [_dot(normal, v) for v in p.vertices]
            if all(x >= 0 for x in values) or all(x <= 0 for x in values):
                found.add(tuple(i for i, x in enumerate(values) if x == 0))
        return tuple(sorted(Face(s, p.n - 1) for s in found))

    return p._memo("facets", compute)


def _face_lattice(p: Polytope) -> dict[IndexSet, int]:
    def compute():
        top = [set(f.vertices) for f in facets(p)]
        layer = {f.vertices for f in facets(p)}
        seen = set(layer)
        while layer:
            nxt = set()
            for a in layer:
                for b in top:
                    meet = tuple(sorted(b.intersection(a)))
                    if meet and meet not in seen:
                        nxt.add(meet)
            seen |= nxt
            layer = nxt
        out = {}
        for s in sorted(seen):
            if is_face(p, s):
                out[s] = rank(p.rows(s))
        return out

    return p._memo("lattice", compute)


def faces_of_rank(p: Polytope, r: int) -> tuple[Face, ...]:
    if not 1 <= r <= p.n - 1:
        raise ValueError(f"face rank must lie in [1, {p.n - 1}], got {r}")
    return tuple(Face(s, rr) for s, rr in _face_lattice(p).items() if rr == r)


def all_faces(p: Polytope) -> tuple[Face, ...]:
    return tuple(sorted((Face(s, r) for s, r in _face_lattice(p).items()), key=lambda f: (f.linear_rank, f.vertices)))


def improper_face(p: Polytope) -> Face:
    return Face(tuple(range(p.m)), p.n)


def facets_of_face(p: Polytope, f: Face) -> tuple[Face, ...]:
    """Faces of linear rank ``f.linear_rank - 1`` contained in ``f``."""
    if f.linear_rank == p.n:
        return facets(p)
    return tuple(g for g in faces_of_rank(p, f.linear_rank - 1) if f.contains(g))


def relint_point(p: Polytope, f: Face) -> tuple[Fraction, ...]:
    return tuple(sum(col, Fraction(0)) for col in zip(*p.rows(f.vertices)))


def _meets_cone(basis: Matrix, gens: Matrix, n: int, strict: bool) -> bool:
    """LP: basis^T lam = sum c_i g_i with sum c = 1 and c >= 0 (or max min c > 0).

    Variables: lam+ (k), lam- (k), then either c (one per generator) or
    t followed by s_i with c_i = t + s_i.
    """
    k = len(basis)
    g = len(gens)
    rows, rhs = [], []
    for coord in range(n):
        b = [basis[r][coord] for r in range(k)]
        if strict:
            tcoef = -sum((v[coord] for v in gens), Fraction(0))
            rows.append(b + [-x for x in b] + [tcoef] + [-v[coord] for v in gens])
        else:
            rows.append(b + [-x for x in b] + [-v[coord] for v in gens])
        rhs.append(Fraction(0))
    if strict:
        rows.append([Fraction(0)] * (2 * k) + [Fraction(g)] + [Fraction(1)] * g)
    else:
        rows.append([Fraction(0)] * (2 * k) + [Fraction(1)] * g)
    rhs.append(Fraction(1))
    width = len(rows[0])
    c = [Fraction(0)] * width
    if strict:
        c[2 * k] = Fraction(1)
    res = lp_solve(LpProblem(tuple(map(tuple, rows)), tuple(rhs), tuple(c)))
    if res.status != "optimal":
        return False
    return res.value > 0 if strict else True


def _check_dims(p: Polytope, v: Subspace) -> None:
    if v.n != p.n:
        raise ValueError(f"subspace lives in Q^{v.n} but the polytope in Q^{p.n}")


def intersects(p: Polytope, v: Subspace) -> bool:
    """LP oracle: does the subspace meet the polytope?"""
    _check_dims(p, v)
    return _meets_cone(v.basis, p.vertices, p.n, strict=False)


def meets_face(p: Polytope, f: Face, v: Subspace) -> bool:
    _check_dims(p, v)
    return _meets_cone(v.basis, p.rows(f.vertices), p.n, strict=False)


def intersects_relint(p: Polytope, f: Face, v: Subspace) -> bool:
    _check_dims(p, v)
    return _meets_cone(v.basis, p.rows(f.vertices), p.n, strict=True)


# --------------------------------------------------------------------------
# generators


def simplex(n: int) -> Polytope:
    verts = [[int(i == j) for j in range(n)] for i in range(n)]
    return build(n, verts, [f"e{i + 1}" for i in range(n)])


OCTAHEDRON_ORDER = ((0, 1), (0, 2), (0, 3), (1, 3), (1, 2), (2, 3))


def cross_polytope(n: int) -> Polytope:
    """Cross-polytope in P^{n-1}.

    For n = 4 this is the octahedron with vertices e_i + e_j in the order
    v12, v13, v14, v24, v23, v34.  Otherwise the vertices are e_0 +- e_i.
    """
    if n < 2:
        raise ValueError("cross_polytope needs n >= 2")
    if n == 4:
        verts, labels = [], []
        for i, j in OCTAHEDRON_ORDER:
            v = [0] * 4
            v[i] = v[j] = 1
            verts.append(v)
            labels.append(f"v{i + 1}{j + 1}")
        return build(4, verts, labels)
    verts, labels = [], []
    for i in range(1, n):
        for s in (1, -1):
            v = [0] * n
            v[0] = 1
            v[i] = s
            verts.append(v)
            labels.append(f"{'+' if s > 0 else '-'}e{i}")
    return build(n, verts, labels)


def hypercube(d: int) -> Polytope:
    """The cube [0,1]^d homogenized into P^d (vertices (1, x))."""
    verts, labels = [], []
    for bits in range(2 ** d):
        x = [(bits >> (d - 1 - i)) & 1 for i in range(d)]
        verts.append([1] + x)
        labels.append("".join(map(str, x)))
    return build(d + 1, verts, labels)


def cyclic(m: int, n: int, nodes: Sequence | None = None) -> Polytope:
    """m points (1, t, ..., t^{n-1}) on the moment curve; a polytope in P^{n-1}."""
    if nodes is None:
        nodes = range(1, m + 1)
    ts = [to_rat(t) for t in nodes]
    if len(ts) != m:
        raise ValueError(f"expected {m} nodes, got {len(ts)}")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("cyclic polytope nodes must be strictly increasing")
    if m < n:
        raise ValueError(f"cyclic({m}, {n}) needs at least {n} vertices")
    verts = [[t ** e for e in range(n)] for t in ts]
    return build(n, verts, [str(i + 1) for i in range(m)])
