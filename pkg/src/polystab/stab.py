"""Deciding whether a subspace stabs a polytope from Chow-form signs alone.

For a face F of linear rank n - k + 1 a subspace V meets F exactly when
the signs of the Chow forms of F's facets, evaluated at V, are obtained
from those of a reference subspace through relint(F) by zeroing entries.
The reference ("witness") is built once per face from relative-interior
points and verified with the LP oracle; afterwards every query is a pure
sign computation.  The LP predicates in :mod:`polystab.polytope` stay
available as the independent check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .chow import ChowEval, ChowVector, chow_vector, evaluate
from .exactla import rank
from .grassmann import Subspace, permutation_sign
from .polytope import (
    Face,
    Polytope,
    faces_of_rank,
    facets_of_face,
    improper_face,
    intersects,
    intersects_relint,
    meets_face,
    relint_point,
)
from .signvec import SignVec, equiv, leq, sign_of, var_bar


class WitnessError(RuntimeError):
    pass


def default_chow_vector(p: Polytope, k: int) -> ChowVector:
    return p._memo(("chow", k), lambda: chow_vector(p, k))


def stabbing_faces(p: Polytope, k: int) -> tuple[Face, ...]:
    """Faces of linear rank n - k + 1; for k = 1 that is the polytope itself."""
    if not 1 <= k <= p.n - 1:
        raise ValueError(f"k must lie in [1, {p.n - 1}], got {k}")
    if k == 1:
        return (improper_face(p),)
    return faces_of_rank(p, p.n - k + 1)


def facet_positions(cv: ChowVector, f: Face) -> tuple[int, ...]:
    key = ("facets", f.vertices)
    if key not in cv.cache:
        cv.cache[key] = tuple(sorted(cv.position(g) for g in facets_of_face(cv.polytope, f)))
    return cv.cache[key]


@dataclass(frozen=True)
class Witness:
    face: Face
    faces_used: tuple[Face, ...]
    subspace: Subspace


@dataclass(frozen=True)
class Chamber:
    determining_faces: tuple[Face, ...]
    positions: tuple[int, ...]
    restricted_signs: SignVec


@dataclass(frozen=True)
class MemberResult:
    inside: bool
    faces_hit: tuple[Face, ...]


def is_maximally_stabbing(p: Polytope, k: int, v: Subspace) -> bool:
    """V meets P but no face of linear rank <= n - k.

    Every smaller face lies in one of rank exactly n - k, so those suffice.
    """
    if not intersects(p, v):
        return False
    return not any(meets_face(p, g, v) for g in faces_of_rank(p, p.n - k))


def build_witness(p: Polytope, k: int, f: Face) -> Witness:
    """Span of relint points of f and k - 1 further faces, verified by LP."""

    def compute():
        faces = stabbing_faces(p, k)
        if f not in faces:
            raise ValueError(f"{f.label()} is not a face of linear rank {p.n - k + 1}")
        anchor = relint_point(p, f)
        others = [g for g in faces if g != f]
        for combo in combinations(others, k - 1):
            pts = (anchor,) + tuple(relint_point(p, g) for g in combo)
            if rank(pts) != k:
                continue
            w = Subspace(pts)
            if intersects_relint(p, f, w) and is_maximally_stabbing(p, k, w):
                return Witness(f, (f,) + combo, w)
        raise WitnessError(f"no verified witness for face {f.label()} with k = {k}")

    return p._memo(("witness", k, f.vertices), compute)


def _resolve(p: Polytope, k: int, cv: ChowVector | None) -> ChowVector:
    if cv is None:
        return default_chow_vector(p, k)
    if cv.polytope is not p or cv.k != k:
        raise ValueError("Chow vector belongs to a different polytope or k")
    return cv


def _witness_signs(p: Polytope, k: int, f: Face, cv: ChowVector, positions: Sequence[int]) -> SignVec:
    key = ("witness", f.vertices)
    if key not in cv.cache:
        q = build_witness(p, k, f).subspace.dual_pluecker.entries
        cv.cache[key] = sign_of(cv.forms[i].evaluate_dual(q) for i in positions)
    return cv.cache[key]


def _face_test(p, k, f, cv, signs: SignVec) -> bool:
    positions = facet_positions(cv, f)
    restricted = signs.restrict(positions)
    # all zero: V meets span(F) in dimension >= 2 and the signs carry no information
    if restricted.is_zero():
        return False
    return leq(restricted, _witness_signs(p, k, f, cv, positions))


def stabs_face(p: Polytope, k: int, f: Face, v: Subspace, cv: ChowVector | None = None) -> bool:
    cv = _resolve(p, k, cv)
    return _face_test(p, k, f, cv, evaluate(cv, v).signs)


def _simplicial_signs(cv: ChowVector, f: Face, values: Sequence[Fraction]) -> SignVec:
    """Signs of (C_{S - s_last}, ..., C_{S - s_first}) with rows in increasing label order."""
    out = []
    for s in reversed(f.vertices):
        g = tuple(i for i in f.vertices if i != s)
        i = cv.position(Face(g, f.linear_rank - 1))
        # undo any caller-supplied row order so the pattern below applies
        order = permutation_sign(cv.forms[i].rows)
        out.append(sign_of([values[i] * order])[0])
    return SignVec(out)


def stabs_face_simplicial(
    p: Polytope, k: int, f: Face, v: Subspace, cv: ChowVector | None = None, values: ChowEval | None = None
) -> bool:
    """Alternating-sign test for a simplex face with n - k + 1 vertices."""
    cv = _resolve(p, k, cv)
    if len(f.vertices) != p.n - k + 1 or f.linear_rank != p.n - k + 1:
        raise ValueError(f"face {f.label()} is not a simplex of linear rank {p.n - k + 1}; use stabs_face")
    if values is None:
        values = evaluate(cv, v)
    actual = _simplicial_signs(cv, f, values.values)
    if actual.is_zero():
        return False
    pattern = SignVec((-1) ** j for j in range(len(actual)))
    return leq(actual, pattern)


def member(p: Polytope, k: int, v: Subspace, cv: ChowVector | None = None) -> MemberResult:
    cv = _resolve(p, k, cv)
    signs = evaluate(cv, v).signs
    hit = tuple(f for f in stabbing_faces(p, k) if _face_test(p, k, f, cv, signs))
    return MemberResult(bool(hit), hit)


def chamber(p: Polytope, k: int, v: Subspace, cv: ChowVector | None = None) -> Chamber:
    cv = _resolve(p, k, cv)
    if not is_maximally_stabbing(p, k, v):
        raise ValueError("stabbing chambers are defined only for maximally stabbing subspaces")
    determining = tuple(f for f in stabbing_faces(p, k) if intersects_relint(p, f, v))
    positions = tuple(sorted({i for f in determining for i in facet_positions(cv, f)}))
    signs = evaluate(cv, v).signs.restrict(positions)
    return Chamber(determining, positions, signs)


def same_chamber(p: Polytope, k: int, v: Subspace, w: Subspace, cv: ChowVector | None = None) -> bool:
    cv = _resolve(p, k, cv)
    ch = chamber(p, k, v, cv)
    return equiv(evaluate(cv, w).signs.restrict(ch.positions), ch.restricted_signs)


def slicing_member(p: Polytope, v: Subspace) -> bool:
    """Hyperplanes: V meets P iff the vertex Chow values admit a sign change."""
    if v.k != p.n - 1:
        raise ValueError(f"slicing needs a hyperplane (k = {p.n - 1}), got k = {v.k}")
    cv = default_chow_vector(p, p.n - 1)
    return var_bar(evaluate(cv, v).signs) >= 1


def closure_perturbation(
    p: Polytope,
    k: int,
    points: Sequence[Sequence[Fraction]],
    seed: int = 0,
    max_halvings: int = 60,
    keep_signs: bool = True,
) -> tuple[Fraction, Subspace]:
    """Push k independent points of V ∩ P towards a generic interior point.

    Returns the first eps = 2^-j with span(u_i + eps * interior) maximally
    stabbing, following the closure argument for P^[k] = cl(P^[k]_max).
    With ``keep_signs`` eps is also small enough that the nonzero Chow
    signs of V survive, i.e. sign(V) <= sign(V_eps).
    """
    rng = random.Random(seed)
    weights = [Fraction(rng.randint(1, 97), rng.randint(1, 13)) for _ in range(p.m)]
    interior = tuple(sum((w * v[c] for w, v in zip(weights, p.vertices)), Fraction(0)) for c in range(p.n))
    target = None
    if keep_signs:
        cv = default_chow_vector(p, k)
        target = evaluate(cv, Subspace(tuple(tuple(r) for r in points))).signs
    eps = Fraction(1)
    for _ in range(max_halvings):
        eps /= 2
        rows = [tuple(x + eps * y for x, y in zip(u, interior)) for u in points]
        if rank(rows) != k:
            continue
        w = Subspace(rows)
        if target is not None and not leq(target, evaluate(cv, w).signs):
            continue
        if is_maximally_stabbing(p, k, w):
            return eps, w
    raise WitnessError("no perturbation into the maximally stabbing set found")
