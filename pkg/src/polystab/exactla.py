"""Exact rational linear algebra and a Bland-rule simplex solver.

Rationals are :class:`fractions.Fraction`; matrices are tuples of row
tuples.  Nothing in this module ever compares against a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Literal, Sequence

Rat = Fraction
Matrix = tuple[tuple[Fraction, ...], ...]


class DimensionError(ValueError):
    pass


def to_rat(value) -> Fraction:
    """Parse an int, Fraction or a string such as ``"-3/4"`` into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(to_rat(e) for e in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix")
    return m


def as_vector(entries: Sequence) -> tuple[Fraction, ...]:
    return tuple(to_rat(e) for e in entries)


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of scales."""
    out = []
    scale = 1
    for row in m:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
        scale *= d
    return out, scale


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination on integer-scaled rows."""
    rows, cols = shape(m)
    if rows != cols:
        raise DimensionError(f"determinant of a non-square {rows}x{cols} matrix")
    if rows == 0:
        return Fraction(1)
    if rows == 1:
        return m[0][0]
    if rows == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    ints, scale = _integer_rows(m)
    return Fraction(_bareiss(ints), scale)


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    # coerce so plain int input never falls into float division
    a = [[to_rat(x) for x in r] for r in m]
    nrows, ncols = shape(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Matrix) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def kernel(m: Matrix, ncols: int | None = None) -> Matrix:
    """Rows forming a basis of the right kernel of ``m``.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if ncols is None:
        ncols = shape(m)[1]
    if not m:
        return tuple(tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols))
    red, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def primitive_integer(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of ``v`` to coprime integers (sign preserved)."""
    d = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * d) for x in v]
    g = gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


# --------------------------------------------------------------------------
# Linear programming


@dataclass(frozen=True)
class LpProblem:
    """``max c.x  s.t.  A x = b,  x >= 0``."""

    A: Matrix
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self):
        rows, cols = shape(self.A)
        if rows != len(self.b):
            raise DimensionError(f"A has {rows} rows but b has {len(self.b)} entries")
        if cols != len(self.c) and rows:
            raise DimensionError(f"A has {cols} columns but c has {len(self.c)} entries")


LpStatus = Literal["optimal", "infeasible", "unbounded"]


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    witness: tuple[Fraction, ...] | None
    value: Fraction | None


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        row = [x * inv for x in row]
        tab[r] = row
    nz = [j for j, x in enumerate(row) if x != 0]
    for i, other in enumerate(tab):
        if i == r:
            continue
        f = other[c]
        if f != 0:
            for j in nz:
                other[j] -= f * row[j]
    basis[r] = c


def _bland(tab: list[list[Fraction]], basis: list[int], cost: Sequence[Fraction], allowed: int) -> bool:
    """Run Bland-rule pivots on ``tab`` maximizing ``cost``; False means unbounded.

    Only columns below ``allowed`` may enter the basis.  The last entry of
    every tableau row is the right-hand side.
    """
    while True:
        cb = [cost[j] for j in basis]
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            reduced = cost[j] - sum((cb[i] * tab[i][j] for i in range(len(tab)) if cb[i]), Fraction(0))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for i, row in enumerate(tab):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], entering)


def lp_solve(problem: LpProblem) -> LpResult:
    """Exact two-phase primal simplex with Bland's anti-cycling rule."""
    A, b, c = problem.A, problem.b, problem.c
    m = len(b)
    n = len(c)
    if m == 0:
        if any(x > 0 for x in c):
            return LpResult("unbounded", None, None)
        return LpResult("optimal", tuple(Fraction(0) for _ in range(n)), Fraction(0))

    tab: list[list[Fraction]] = []
    for i in range(m):
        row = list(A[i])
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs])
    basis = list(range(n, n + m))

    # phase 1: maximize -(sum of artificials)
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _bland(tab, basis, phase1, n + m)
    if sum((tab[i][-1] for i in range(m) if basis[i] >= n), Fraction(0)) != 0:
        return LpResult("infeasible", None, None)

    # drive artificial variables out of the basis; drop redundant rows
    r = 0
    while r < len(tab):
        if basis[r] >= n:
            col = next((j for j in range(n) if tab[r][j] != 0), None)
            if col is None:
                del tab[r]
                del basis[r]
                continue
            _pivot(tab, basis, r, col)
        r += 1
    tab = [row[:n] + [row[-1]] for row in tab]

    if not _bland(tab, basis, c, n):
        return LpResult("unbounded", None, None)
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = tab[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LpResult("optimal", tuple(x), value)
