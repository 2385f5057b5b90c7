"""Exact rational linear algebra and linear-inequality feasibility.

Scalars are :class:`fractions.Fraction`; matrices are plain sequences of rows.
Nothing in here ever rounds.  Feasibility of mixed systems of ``>=``, ``>``
and ``=`` constraints is decided by Fourier-Motzkin elimination with
duplicate-row removal, which is slow in the worst case but trivially exact
and fine for the handful of variables this package deals with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rat = Fraction
Vector = list[Fraction]

GE, GT, EQ = ">=", ">", "="
_RELATIONS = (GE, GT, EQ)


class CapacityExceeded(RuntimeError):
    """Input exceeds a configured size budget."""


class NoSolution(ValueError):
    """A linear system has no solution."""


# -- scalars -----------------------------------------------------------------


def to_rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings")
    return Fraction(value)


def rat_str(value: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_vector(values: Iterable) -> Vector:
    return [to_rat(v) for v in values]


def primitive(vec: Sequence) -> list[int]:
    """Clear denominators and divide by the content; the zero vector stays zero."""
    vec = [Fraction(v) for v in vec]
    den = reduce(lcm, (v.denominator for v in vec), 1)
    ints = [int(v * den) for v in vec]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def sign(x) -> int:
    return (x > 0) - (x < 0)


# -- matrices ----------------------------------------------------------------


def _as_rows(M: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[to_rat(x) for x in row] for row in M]


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in _as_rows(M):
        den = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([int(x * den) for x in row])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    if not rows:
        return 0, 1
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    prev = 1
    det_sign = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            det_sign = -det_sign
        p = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * rows[r][j]) // prev
            ri[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r, det_sign * prev


def rank(M: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = _integer_rows(M)
    if not rows or not rows[0]:
        return 0
    return _bareiss(rows)[0]


def determinant(M: Sequence[Sequence]) -> Fraction:
    rows = _as_rows(M)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    dens = [reduce(lcm, (x.denominator for x in row), 1) for row in rows]
    ints = [[int(x * d) for x in row] for row, d in zip(rows, dens)]
    rk, last = _bareiss(ints)
    if rk < n:
        return Fraction(0)
    return Fraction(last, reduce(lambda a, b: a * b, dens, 1))


def rref(M: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = _as_rows(M)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(M: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[int]]:
    """Integral primitive basis of the right null space.

    The basis is the reduced row echelon form of the null space with each
    row made primitive, so it depends only on the space.  ``ncols`` must be
    given when ``M`` has no rows.
    """
    if ncols is None:
        if not M:
            raise ValueError("ncols is required for a matrix without rows")
        ncols = len(M[0])
    R, pivots = rref(M, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    R, _ = rref(basis, ncols)
    return [primitive(row) for row in R]


def solve(M: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve ``M x = b`` exactly; free variables are set to zero.

    Raises :class:`NoSolution` for an inconsistent system.
    """
    rows = _as_rows(M)
    b = rat_vector(b)
    if len(rows) != len(b):
        raise ValueError("row count of M does not match len(b)")
    ncols = len(rows[0]) if rows else 0
    R, pivots = rref([row + [bi] for row, bi in zip(rows, b)], ncols + 1)
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def matvec(M: Sequence[Sequence], x: Sequence) -> Vector:
    return [dot(row, x) for row in M]


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


# -- feasibility -------------------------------------------------------------


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class _Row:
    coeffs: tuple  # Fractions over the remaining variables
    rhs: Fraction
    strict: bool


MAX_LP_VARS = 16
MAX_LP_ROWS = 50_000


def _normalize(row: _Row, k: int) -> tuple:
    """Dedup key: scale so that the first nonzero coefficient has magnitude 1."""
    lead = next((abs(c) for c in row.coeffs[:k] if c != 0), None)
    if lead is None:
        return (row.coeffs, row.rhs, row.strict)
    return (tuple(c / lead for c in row.coeffs), row.rhs / lead, row.strict)


def _dedup(rows: list[_Row], k: int) -> list[_Row]:
    seen: dict = {}
    for r in rows:
        key = _normalize(r, k)
        seen.setdefault(key, r)
    return list(seen.values())


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    """Canonical value inside the bounds; prefers 0, then a non-strict endpoint."""
    zero = Fraction(0)
    ok_lo = lo is None or (zero > lo if lo_strict else zero >= lo)
    ok_hi = hi is None or (zero < hi if hi_strict else zero <= hi)
    if ok_lo and ok_hi:
        return zero
    if hi is None:
        return lo if not lo_strict else Fraction(lo.__floor__() + 1)
    if lo is None:
        return hi if not hi_strict else Fraction(hi.__ceil__() - 1)
    if not lo_strict:
        return lo
    if not hi_strict:
        return hi
    return (lo + hi) / 2


def lp_feasible(
    A: Sequence[Sequence],
    relations: Sequence[str],
    b: Sequence,
    nvars: Optional[int] = None,
    max_vars: int = MAX_LP_VARS,
    max_rows: int = MAX_LP_ROWS,
) -> Feasibility:
    """Decide whether some rational ``x`` satisfies ``A[i] . x REL_i b[i]`` for all i.

    ``relations`` holds ``">="``, ``">"`` or ``"="`` per row.  Returns a
    :class:`Feasibility` carrying a canonical witness when feasible.
    """
    rows_in = _as_rows(A)
    b = rat_vector(b)
    if not (len(rows_in) == len(relations) == len(b)):
        raise ValueError("A, relations and b must have the same length")
    if nvars is None:
        if not rows_in:
            raise ValueError("nvars is required for an empty system")
        nvars = len(rows_in[0])
    if nvars > max_vars:
        raise CapacityExceeded(f"{nvars} variables exceed the budget of {max_vars}")
    for rel in relations:
        if rel not in _RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")

    # Substitute equalities away first: each one fixes a variable as an affine
    # function of the variables still free.
    eqs = [(r, bi) for r, bi, rel in zip(rows_in, b, relations) if rel == EQ]
    ineqs = [(r, bi, rel == GT) for r, bi, rel in zip(rows_in, b, relations) if rel != EQ]
    substitutions: list[tuple[int, Vector, Fraction]] = []  # x_k = rhs - coeffs . x
    while eqs:
        row, bi = eqs.pop()
        k = next((j for j, c in enumerate(row) if c != 0), None)
        if k is None:
            if bi != 0:
                return Feasibility(False)
            continue
        ak = row[k]
        expr = [c / ak for c in row]
        expr[k] = Fraction(0)
        rhs = bi / ak
        substitutions.append((k, expr, rhs))

        def subst(r, rb, k=k, expr=expr, rhs=rhs):
            f = r[k]
            if f == 0:
                return r, rb
            new = [c - f * e for c, e in zip(r, expr)]
            new[k] = Fraction(0)
            return new, rb - f * rhs

        eqs = [subst(r, rb) for r, rb in eqs]
        ineqs = [(*subst(r, rb), s) for r, rb, s in ineqs]

    fixed = {k for k, _, _ in substitutions}
    free_vars = [j for j in range(nvars) if j not in fixed]
    m = len(free_vars)
    rows = [
        _Row(tuple(r[j] for j in free_vars), bi, s) for r, bi, s in ineqs
    ]

    # stages[k] holds the rows over variables 0..k-1 (in free_vars order)
    stages: list[list[_Row]] = [[] for _ in range(m + 1)]
    stages[m] = _dedup(rows, m)
    for k in range(m, 0, -1):
        var = k - 1
        cur = stages[k]
        pos = [r for r in cur if r.coeffs[var] > 0]
        neg = [r for r in cur if r.coeffs[var] < 0]
        nxt = [_Row(r.coeffs[:var], r.rhs, r.strict) for r in cur if r.coeffs[var] == 0]
        for p in pos:
            for q in neg:
                fp, fq = -q.coeffs[var], p.coeffs[var]
                coeffs = tuple(fp * x + fq * y for x, y in zip(p.coeffs[:var], q.coeffs[:var]))
                nxt.append(_Row(coeffs, fp * p.rhs + fq * q.rhs, p.strict or q.strict))
        if len(nxt) > max_rows:
            raise CapacityExceeded(f"Fourier-Motzkin produced {len(nxt)} rows")
        stages[k - 1] = _dedup(nxt, var)

    for r in stages[0]:
        if (r.strict and not Fraction(0) > r.rhs) or (not r.strict and not Fraction(0) >= r.rhs):
            return Feasibility(False)

    values: list[Fraction] = []
    for k in range(1, m + 1):
        var = k - 1
        lo = hi = None
        lo_s = hi_s = False
        for r in stages[k]:
            a = r.coeffs[var]
            if a == 0:
                continue
            bound = (r.rhs - sum((c * v for c, v in zip(r.coeffs[:var], values)), Fraction(0))) / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_s = bound, r.strict
            else:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_s = bound, r.strict
        values.append(_pick(lo, lo_s, hi, hi_s))

    x = [Fraction(0)] * nvars
    for j, v in zip(free_vars, values):
        x[j] = v
    for k, expr, rhs in reversed(substitutions):
        x[k] = rhs - dot(expr, x)
    return Feasibility(True, x)


def check(A: Sequence[Sequence], relations: Sequence[str], b: Sequence, x: Sequence) -> bool:
    """True iff ``x`` satisfies every constraint exactly."""
    for row, rel, bi in zip(A, relations, b):
        lhs = dot([to_rat(c) for c in row], x)
        bi = to_rat(bi)
        if rel == GE and not lhs >= bi:
            return False
        if rel == GT and not lhs > bi:
            return False
        if rel == EQ and lhs != bi:
            return False
    return True
