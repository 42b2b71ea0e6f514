"""Cyclic polytopes, totally positive matrices and the m = 2 amplituhedron checks.

Conventions: ``cyclic(m, n)`` has its m vertices in Q^n, so it is an
(n-1)-dimensional polytope in P^{n-1} and its facets are (n-1)-subsets.
Twistor coordinates put the subspace basis on top:
``<i_1 ... i_m> = det[Y; Z_{i_1}; ...; Z_{i_m}]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Sequence

from .chow import evaluate
from .exactla import Matrix, as_matrix, det, to_rat
from .grassmann import IndexSet, Subspace, is_tnn, vector_sign_changes
from .polytope import Face, Polytope, simplex
from .signvec import leq
from .stab import chamber, default_chow_vector, member


def gale_facets(m: int, n: int) -> tuple[IndexSet, ...]:
    """Facets of C(m, n) in P^{n-1}: (n-1)-subsets of range(m) obeying Gale's evenness."""
    if n < 2 or m < n:
        raise ValueError(f"gale_facets needs m >= n >= 2, got m={m}, n={n}")
    out = []
    for s in combinations(range(m), n - 1):
        members = set(s)
        gaps = [i for i in range(m) if i not in members]
        if all(sum(1 for x in s if a < x < b) % 2 == 0 for a, b in zip(gaps, gaps[1:])):
            out.append(s)
    return tuple(out)


def vandermonde(k: int, n: int, nodes: Sequence) -> Matrix:
    """k x n matrix whose column j is (1, t_j, ..., t_j^{k-1})."""
    ts = [to_rat(t) for t in nodes]
    if len(ts) != n:
        raise ValueError(f"expected {n} nodes, got {len(ts)}")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("Vandermonde nodes must be strictly increasing")
    return tuple(tuple(t ** e for t in ts) for e in range(k))


def twistor(v: Subspace, verts: Polytope, idx: Sequence[int]) -> Fraction:
    """``det[v.basis; vertex rows idx]`` (0-based vertex indices)."""
    if v.k + len(idx) != verts.n or v.n != verts.n:
        raise ValueError(f"twistor needs k + |idx| = {verts.n}, got {v.k} + {len(idx)}")
    return det(v.basis + verts.rows(idx))


@dataclass(frozen=True)
class Condition:
    idx: IndexSet
    value: Fraction
    expected_sign: int

    @property
    def holds(self) -> bool:
        return self.value * self.expected_sign > 0


@dataclass(frozen=True)
class AmplResult:
    member: bool
    flip_count: int
    flip_sequence: tuple[Fraction, ...]
    conditions: tuple[Condition, ...]
    failed_condition: str | None
    boundary: bool
    proven: bool = field(default=False)


def _pair_tuples(lo: int, hi: int, count: int) -> list[IndexSet]:
    """Disjoint consecutive pairs (i, i+1) with lo <= i and i + 1 <= hi, flattened."""
    out = []
    for starts in combinations(range(lo, hi), count):
        if all(b >= a + 2 for a, b in zip(starts, starts[1:])):
            out.append(tuple(x for i in starts for x in (i, i + 1)))
    return out


def ampl_sign_membership(v: Subspace, verts: Polytope, m: int) -> AmplResult:
    """Sign-flip description of A_{n,k,m}; proven equivalent only for m in {1, 2}.

    Indices below are 0-based (vertex 1 is index 0).
    """
    k = v.k
    n = verts.m
    if k + m != verts.n:
        raise ValueError(f"need k + m = {verts.n}, got {k} + {m}")
    head = tuple(range(m - 1))
    flips_seq = tuple(twistor(v, verts, head + (j,)) for j in range(m - 1, n))
    flips = vector_sign_changes(flips_seq)

    half = m // 2
    conds: list[Condition] = []
    if m % 2 == 0:
        for t in _pair_tuples(0, n - 1, half):
            conds.append(Condition(t, twistor(v, verts, t), 1))
    else:
        for t in _pair_tuples(1, n - 1, half):
            idx = (0,) + t
            conds.append(Condition(idx, twistor(v, verts, idx), (-1) ** k))
        for t in _pair_tuples(0, n - 2, half):
            idx = t + (n - 1,)
            conds.append(Condition(idx, twistor(v, verts, idx), 1))

    failed = None
    boundary = False
    if flips != k:
        failed = f"sign flips of <1..{m - 1} j>: {flips}, expected {k}"
    for c in conds:
        if c.value == 0:
            boundary = True
        if failed is None and not c.holds:
            label = "".join(str(i + 1) for i in c.idx)
            failed = f"<{label}> has the wrong sign" if c.value else f"<{label}> = 0 (boundary)"
    if any(x == 0 for x in flips_seq):
        boundary = True
    return AmplResult(failed is None, flips, flips_seq, tuple(conds), failed, boundary, proven=m in (1, 2))


def banded_reference(k: int, n: int) -> Subspace:
    """Rows e_i + ... + e_{i+n-k} for i = 1..k."""
    return Subspace.from_rows([[int(i <= j <= i + n - k) for j in range(n)] for i in range(k)])


def nonneg_chamber_check(v: Subspace) -> bool:
    """Is the tnn point v in the closure of the simplex chamber of the banded reference?

    Compared on the facets of the reference's determining faces, where the
    chamber is defined; the full vector can differ (e.g. q_23 for Gr(2,4)).
    """
    if not is_tnn(v):
        raise ValueError("nonneg_chamber_check expects a totally nonnegative subspace")
    delta = simplex(v.n)
    ref = banded_reference(v.k, v.n)
    ch = chamber(delta, v.k, ref)
    cv = default_chow_vector(delta, v.k)
    restricted = evaluate(cv, v).signs.restrict(ch.positions)
    return leq(restricted, ch.restricted_signs)


def in_reference_closure(v: Subspace) -> bool:
    """Same sign test without the tnn precondition (used to exhibit strictness)."""
    delta = simplex(v.n)
    ref = banded_reference(v.k, v.n)
    ch = chamber(delta, v.k, ref)
    cv = default_chow_vector(delta, v.k)
    restricted = evaluate(cv, v).signs.restrict(ch.positions)
    return not restricted.is_zero() and leq(restricted, ch.restricted_signs)


def amplituhedron_point(c: Sequence[Sequence], z: Sequence[Sequence]) -> Subspace:
    """Y = C . Z for a k x n matrix C and an n x (k+m) matrix Z."""
    cm, zm = as_matrix(c), as_matrix(z)
    rows = [[sum((a * zm[j][col] for j, a in enumerate(row)), Fraction(0)) for col in range(len(zm[0]))] for row in cm]
    return Subspace.from_rows(rows)


@dataclass(frozen=True)
class M2Report:
    faces_hit: tuple[Face, ...]
    fan_faces: tuple[Face, ...]
    expected: int

    @property
    def matches(self) -> bool:
        return len(self.fan_faces) == self.expected


def stab_faces_m2(v: Subspace, cyc: Polytope) -> M2Report:
    """Faces of C(n, k+2) hit by v, and those of the form conv(v_1, v_i, v_{i+1}).

    The expected count ceil(k/2) is reported, not enforced.
    """
    k = v.k
    n = cyc.m
    hit = member(cyc, k, v).faces_hit
    fan = tuple(f for f in hit if len(f.vertices) == 3 and f.vertices[0] == 0
                and f.vertices[2] == f.vertices[1] + 1 and 1 <= f.vertices[1] < n - 2)
    return M2Report(hit, fan, ceil(k / 2))
