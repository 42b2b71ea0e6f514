"""Chow forms of the linear spans of polytope faces and their evaluation on Gr(k, n)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .exactla import Matrix, det, primitive_integer, rank
from .grassmann import IndexSet, Subspace, complement, maximal_minors, sigma_sign, subset_position, subsets
from .polytope import Face, Polytope, faces_of_rank
from .signvec import SignVec, sign_of


class InvariantViolation(RuntimeError):
    """An exact invariant that should be impossible to break was broken."""


def independent_rows(p: Polytope, candidates: Sequence[int], count: int) -> tuple[int, ...]:
    """Greedy (hence lexicographically first) independent subset of ``candidates``."""
    chosen: list[int] = []
    for i in candidates:
        trial = chosen + [i]
        if rank(p.rows(trial)) == len(trial):
            chosen = trial
            if len(chosen) == count:
                return tuple(chosen)
    raise ValueError(f"face {candidates} has fewer than {count} independent vertices")


@lru_cache(maxsize=None)
def _laplace_table(n: int, k: int) -> tuple[tuple[int, int], ...]:
    """For each (n-k)-set I in lex order: (sigma(I), position of [n]\\I among k-sets)."""
    pos = subset_position(n, k)
    return tuple((sigma_sign(s, n), pos[complement(s, n)]) for s in subsets(n, n - k))


@dataclass(frozen=True)
class ChowForm:
    face: Face
    rows: tuple[int, ...]
    coeffs: tuple[Fraction, ...]
    # raw maximal minors of the row matrix equal scale * coeffs
    scale: Fraction
    n: int
    k: int
    _terms: tuple[tuple[Fraction, int], ...] = field(repr=False, compare=False, default=())

    def evaluate_dual(self, q: Sequence[Fraction]) -> Fraction:
        return sum((c * q[j] for c, j in self._terms), Fraction(0))


def chow_form(p: Polytope, f: Face, k: int, rows: Sequence[int] | None = None) -> ChowForm:
    n = p.n
    if f.linear_rank != n - k:
        raise ValueError(f"face {f.label()} has linear rank {f.linear_rank}, expected {n - k}")
    chosen = independent_rows(p, list(rows) if rows is not None else list(f.vertices), n - k)
    raw = maximal_minors(p.rows(chosen))
    ints = primitive_integer(raw)
    nz = next(i for i, x in enumerate(ints) if x)
    scale = raw[nz] / ints[nz]
    coeffs = tuple(Fraction(c) for c in ints)
    terms = tuple((sg * c, j) for c, (sg, j) in zip(coeffs, _laplace_table(n, k)) if c)
    return ChowForm(f, chosen, coeffs, scale, n, k, terms)


@dataclass(frozen=True, eq=False)
class ChowVector:
    polytope: Polytope
    k: int
    faces: tuple[Face, ...]
    forms: tuple[ChowForm, ...]
    # per-face lookups derived from this vector (positions, witness signs)
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.forms)

    def position(self, f: Face) -> int:
        return self._positions[f.vertices]

    @cached_property
    def _positions(self) -> dict[IndexSet, int]:
        return {g.vertices: i for i, g in enumerate(self.faces)}


def chow_vector(p: Polytope, k: int, order: Sequence[Sequence[int]] | None = None) -> ChowVector:
    """All faces of linear rank n - k with their Chow forms.

    ``order`` optionally lists every such face as a sequence of vertex
    indices; the listed order fixes both the face order and the row order
    used for each face's matrix.
    """
    if not 1 <= k <= p.n - 1:
        raise ValueError(f"k must lie in [1, {p.n - 1}], got {k}")
    faces = faces_of_rank(p, p.n - k)
    if order is None:
        forms = tuple(chow_form(p, f, k) for f in faces)
        return ChowVector(p, k, faces, forms)
    by_set = {f.vertices: f for f in faces}
    listed = [tuple(o) for o in order]
    keys = [tuple(sorted(o)) for o in listed]
    if sorted(keys) != sorted(by_set) or len(set(keys)) != len(keys):
        raise ValueError("explicit face order is not a permutation of the computed faces")
    ordered = tuple(by_set[key] for key in keys)
    forms = tuple(chow_form(p, by_set[key], k, rows=o) for key, o in zip(keys, listed))
    return ChowVector(p, k, ordered, forms)


@dataclass(frozen=True)
class ChowEval:
    values: tuple[Fraction, ...]

    @property
    def signs(self) -> SignVec:
        return sign_of(self.values)


def evaluate(cv: ChowVector, v: Subspace) -> ChowEval:
    if v.n != cv.polytope.n or v.k != cv.k:
        raise ValueError(f"expected a point of Gr({cv.k}, {cv.polytope.n}), got Gr({v.k}, {v.n})")
    q = v.dual_pluecker.entries
    values = tuple(form.evaluate_dual(q) for form in cv.forms)
    if not any(values):
        raise InvariantViolation("the vector of Chow forms vanished identically")
    return ChowEval(values)


def stacked_determinant(p: Polytope, form: ChowForm, v: Subspace) -> Fraction:
    """det of the chosen face rows stacked on top of the subspace basis."""
    m: Matrix = p.rows(form.rows) + v.basis
    return det(m)
