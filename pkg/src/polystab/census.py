"""Monte-Carlo census of the sign vectors realized off the k-face Schubert arrangement."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .chow import evaluate
from .exactla import rank
from .grassmann import Subspace, sigma_sign, subsets
from .polytope import Polytope
from .signvec import SignVec, canonical, sign_of
from .stab import default_chow_vector, member

NUMERATOR_RANGE = 9
DENOMINATOR_MAX = 9


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def sample_subspace(n: int, k: int, seed: int, index: int) -> Subspace:
    """Rank-k basis of small rationals, a pure function of (seed, index)."""
    rng = _rng(seed, index)
    while True:
        num = rng.integers(-NUMERATOR_RANGE, NUMERATOR_RANGE + 1, size=(k, n))
        den = rng.integers(1, DENOMINATOR_MAX + 1, size=(k, n))
        rows = tuple(tuple(Fraction(int(a), int(b)) for a, b in zip(r, d)) for r, d in zip(num, den))
        if rank(rows) == k:
            return Subspace(rows)


def sample_near(p: Polytope, k: int, seed: int, index: int) -> Subspace:
    """Rows are random signed combinations of vertices, biased towards meeting P."""
    rng = _rng(seed, index)
    while True:
        coeffs = rng.integers(-3, 8, size=(k, p.m))
        rows = tuple(
            tuple(sum((int(c) * v[j] for c, v in zip(cs, p.vertices)), Fraction(0)) for j in range(p.n))
            for cs in coeffs
        )
        if rank(rows) == k:
            return Subspace(rows)


@dataclass
class CensusReport:
    polytope_id: str
    k: int
    samples: int
    seed: int
    inside_only: bool
    realized: dict[str, int] = field(default_factory=dict)
    inside_count: int = 0
    on_arrangement: int = 0
    witnesses: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "polytope": self.polytope_id,
            "k": self.k,
            "samples": self.samples,
            "seed": self.seed,
            "inside_only": self.inside_only,
            "realized": dict(sorted(self.realized.items())),
            "realized_classes": len(self.realized),
            "inside_count": self.inside_count,
            "on_arrangement": self.on_arrangement,
            "witness_index": dict(sorted(self.witnesses.items())),
            "note": "sampling lower bound on realized sign classes; distinct regions may share a class",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def _census_chunk(p: Polytope, k: int, seed: int, start: int, stop: int, inside_only: bool):
    cv = default_chow_vector(p, k)
    realized: Counter = Counter()
    first: dict[str, int] = {}
    inside = 0
    zeros = 0
    for i in range(start, stop):
        v = sample_subspace(p.n, k, seed, i)
        signs = evaluate(cv, v).signs
        is_in = member(p, k, v, cv).inside
        inside += is_in
        if 0 in signs:
            zeros += 1
            continue
        if inside_only and not is_in:
            continue
        key = str(canonical(signs))
        realized[key] += 1
        first.setdefault(key, i)
    return realized, first, inside, zeros


def run_census(
    p: Polytope,
    k: int,
    samples: int,
    seed: int,
    inside_only: bool = False,
    workers: int = 1,
    polytope_id: str = "polytope",
) -> CensusReport:
    if samples <= 0:
        raise ValueError("samples must be positive")
    workers = max(1, min(workers, samples))
    bounds = [samples * w // workers for w in range(workers + 1)]
    chunks = list(zip(bounds, bounds[1:]))
    if workers == 1:
        results = [_census_chunk(p, k, seed, a, b, inside_only) for a, b in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_census_chunk, p, k, seed, a, b, inside_only) for a, b in chunks]
            results = [f.result() for f in futures]
    report = CensusReport(polytope_id, k, samples, seed, inside_only)
    total: Counter = Counter()
    first: dict[str, int] = {}
    for realized, fst, inside, zeros in results:
        total.update(realized)
        for key, idx in fst.items():
            first[key] = min(idx, first.get(key, idx))
        report.inside_count += inside
        report.on_arrangement += zeros
    report.realized = dict(total)
    report.witnesses = first
    return report


def segment_constant(p: Polytope, k: int, a: Subspace, b: Subspace, steps: int) -> bool | None:
    """Do all sampled points of the matrix segment (1-t)A + tB share one sign class?

    Returns None when the segment leaves Gr(k, n) at a sampled step.
    Heuristic evidence only.
    """
    cv = default_chow_vector(p, k)
    classes = set()
    for j in range(steps + 1):
        t = Fraction(j, steps)
        rows = tuple(tuple((1 - t) * x + t * y for x, y in zip(ra, rb)) for ra, rb in zip(a.basis, b.basis))
        if rank(rows) != k:
            return None
        classes.add(canonical(evaluate(cv, Subspace(rows)).signs))
    return len(classes) == 1


def pluecker_sign_classes_gr24_simplex(full_only: bool = True) -> set[str]:
    """Chow sign classes of Δ ⊂ P^3, k = 2, allowed by the 3-term Plücker relation.

    Enumerates sign patterns of (q12, q13, q14, q23, q24, q34) in {+,-}^6 for
    which q12 q34 - q13 q24 + q14 q23 = 0 has a real solution, i.e. the three
    signed terms are not all of one sign, and maps them to the Chow vector of
    the simplex (the edge I carries sigma(I) q_{[4] minus I}).
    """
    n, k = 4, 2
    idx = subsets(n, k)
    pos = {s: i for i, s in enumerate(idx)}
    values = (1, -1) if full_only else (1, 0, -1)
    out = set()
    for q in product(values, repeat=len(idx)):
        terms = [q[pos[(0, 1)]] * q[pos[(2, 3)]], -q[pos[(0, 2)]] * q[pos[(1, 3)]], q[pos[(0, 3)]] * q[pos[(1, 2)]]]
        nonzero = [t for t in terms if t]
        if nonzero and (all(t > 0 for t in nonzero) or all(t < 0 for t in nonzero)):
            continue
        if not any(q):
            continue
        chow = SignVec(sigma_sign(s, n) * q[pos[tuple(i for i in range(n) if i not in s)]] for s in idx)
        out.add(str(canonical(chow)))
    return out


def find_strict_nonneg_witness(seed: int = 0, attempts: int = 20000) -> Subspace | None:
    """A subspace of Gr(2,4) that is not tnn but lies in the closure of the reference chamber."""
    from .amplikit import in_reference_closure
    from .grassmann import is_tnn

    for i in range(attempts):
        v = sample_subspace(4, 2, seed, i)
        if not is_tnn(v) and in_reference_closure(v):
            return v
    return None
