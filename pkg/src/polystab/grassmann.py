"""Index sets, Plücker coordinates and positivity tests on Gr(k, n).

Index sets are 0-based sorted tuples internally; they print 1-based
(``(0, 2)`` prints as ``"13"``).  Lexicographic order is used everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Literal, Sequence

from .exactla import DimensionError, Matrix, as_matrix, det, rank, shape

IndexSet = tuple[int, ...]


@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> tuple[IndexSet, ...]:
    """All ``k``-subsets of ``range(n)`` in lexicographic order."""
    if k < 0 or k > n:
        raise ValueError(f"no {k}-subsets of a {n}-set")
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def subset_position(n: int, k: int) -> dict[IndexSet, int]:
    return {s: i for i, s in enumerate(subsets(n, k))}


def complement(s: IndexSet, n: int) -> IndexSet:
    present = set(s)
    return tuple(i for i in range(n) if i not in present)


def index_label(s: IndexSet, n: int | None = None) -> str:
    """1-based label: ``(0, 2)`` -> ``"13"``; comma separated once labels exceed 9."""
    if n is not None and n >= 10:
        return ",".join(str(i + 1) for i in s)
    return "".join(str(i + 1) for i in s)


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def sigma_sign(s: IndexSet, n: int) -> int:
    """Sign of the permutation listing ``s`` followed by its complement, both ascending."""
    if any(i < 0 or i >= n for i in s):
        raise ValueError(f"index set {s} not inside range({n})")
    return permutation_sign(tuple(s) + complement(s, n))


def maximal_minors(m: Matrix) -> tuple[Fraction, ...]:
    k, n = shape(m)
    if k == 2:
        r0, r1 = m
        return tuple(r0[i] * r1[j] - r0[j] * r1[i] for i, j in subsets(n, 2))
    if k == 1:
        return tuple(m[0])
    cols = list(zip(*m))
    return tuple(det(tuple(zip(*(cols[i] for i in s)))) for s in subsets(n, k))


@dataclass(frozen=True)
class PlueckerVec:
    """Plücker vector; dual entries are indexed by k-sets, primal by (n-k)-sets."""

    flavor: Literal["primal", "dual"]
    n: int
    k: int
    entries: tuple[Fraction, ...]

    @property
    def index_size(self) -> int:
        return self.k if self.flavor == "dual" else self.n - self.k

    @property
    def indices(self) -> tuple[IndexSet, ...]:
        return subsets(self.n, self.index_size)

    def __getitem__(self, s: IndexSet) -> Fraction:
        return self.entries[subset_position(self.n, self.index_size)[tuple(s)]]

    def as_dict(self) -> dict[str, Fraction]:
        return {index_label(s, self.n): e for s, e in zip(self.indices, self.entries)}


@dataclass(frozen=True)
class Subspace:
    """A point of Gr(k, n), stored as the row span of a rank-k ``basis``."""

    basis: Matrix
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        basis = as_matrix(self.basis)
        object.__setattr__(self, "basis", basis)
        k, n = shape(basis)
        if k < 1 or k > n:
            raise DimensionError(f"a subspace basis needs 1 <= k <= n, got {k}x{n}")
        if rank(basis) != k:
            raise ValueError(f"basis rows are not linearly independent (rank < {k})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Subspace":
        return cls(as_matrix(rows))

    @cached_property
    def dual_pluecker(self) -> PlueckerVec:
        return PlueckerVec("dual", self.n, self.k, maximal_minors(self.basis))


def dual_pluecker(v: Subspace) -> PlueckerVec:
    return v.dual_pluecker


def primal_from_dual(q: PlueckerVec) -> PlueckerVec:
    """``p_{[n]\\I} = sigma(I) q_I``; equal to the kernel's minors up to a scalar."""
    if q.flavor != "dual":
        raise ValueError("expected a dual Plücker vector")
    n, k = q.n, q.k
    pos = subset_position(n, n - k)
    out = [Fraction(0)] * len(pos)
    for s, e in zip(subsets(n, k), q.entries):
        out[pos[complement(s, n)]] = sigma_sign(s, n) * e
    return PlueckerVec("primal", n, k, tuple(out))


def dual_from_primal(p: PlueckerVec) -> PlueckerVec:
    if p.flavor != "primal":
        raise ValueError("expected a primal Plücker vector")
    n, k = p.n, p.k
    entries = tuple(sigma_sign(s, n) * p[complement(s, n)] for s in subsets(n, k))
    return PlueckerVec("dual", n, k, entries)


def _one_sign(values: Sequence[Fraction], strict: bool) -> bool:
    signs = {(x > 0) - (x < 0) for x in values}
    if strict and 0 in signs:
        return False
    signs.discard(0)
    return len(signs) <= 1


def is_tnn(v: Subspace) -> bool:
    return _one_sign(v.dual_pluecker.entries, strict=False)


def is_tp(v: Subspace) -> bool:
    return _one_sign(v.dual_pluecker.entries, strict=True)


def vector_sign_changes(x: Sequence[Fraction]) -> int:
    """Number of sign alternations among the nonzero entries of ``x``."""
    changes = 0
    last = 0
    for e in x:
        s = (e > 0) - (e < 0)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def three_term_relations(q: PlueckerVec) -> list[Fraction]:
    """Residuals of the 3-term relations q_ij q_kl - q_ik q_jl + q_il q_jk for Gr(2, n).

    For general k the relations are taken on every (k-2)-set S and
    quadruple i<j<k<l outside S, with S prepended to each pair.
    """
    if q.flavor != "dual":
        raise ValueError("expected a dual Plücker vector")
    n, k = q.n, q.k
    if k < 2 or n - k < 2:
        return []

    def entry(base: IndexSet, a: int, b: int) -> Fraction:
        idx = tuple(sorted(base + (a, b)))
        # the sign of sorting S+(a,b) into increasing order
        sgn = permutation_sign(base + (a, b))
        return sgn * q[idx]

    out = []
    for base in subsets(n, k - 2):
        rest = [i for i in range(n) if i not in base]
        for i, j, kk, l in combinations(rest, 4):
            out.append(
                entry(base, i, j) * entry(base, kk, l)
                - entry(base, i, kk) * entry(base, j, l)
                + entry(base, i, l) * entry(base, j, kk)
            )
    return out
