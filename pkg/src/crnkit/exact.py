"""Exact linear algebra over the rationals.

Matrices are plain lists of rows whose entries are :class:`fractions.Fraction`.
Everything here is small-scale (a few dozen rows at most) and favours
clarity over speed.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings or floats to an exact Fraction.

    Floats are converted through their shortest ``repr`` so that ``0.36``
    becomes ``9/25`` rather than the binary expansion of the double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_fraction(x) for x in row] for row in rows]


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def rref(a: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[x if isinstance(x, Fraction) else to_fraction(x) for x in row] for row in a]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def rank_bareiss(a: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free elimination on the integer-scaled transpose.

    Deliberately a different route from :func:`rref` (columns eliminated in
    reverse order, integer arithmetic only) so the two can cross-check.
    """
    if not a or not a[0]:
        return 0
    rows = transpose(a)[::-1]
    m: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        m.append([int(x * den) for x in row][::-1])
    n_rows, n_cols = len(m), len(m[0])
    r, prev = 0, 1
    for c in range(n_cols):
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(r + 1, n_rows):
            m[i] = [(m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev for j in range(n_cols)]
        prev = m[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def nullspace(a: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}``; one vector per free column, free entry = 1."""
    if not a:
        n = n_cols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(a[0])
    r, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def left_nullspace(a: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Basis of ``{w : w^T a = 0}``."""
    return nullspace(transpose(a), n_cols=len(a))


def orthogonal_complement(vectors: Sequence[Sequence[Fraction]], dim: int) -> list[Vector]:
    """Basis of the orthogonal complement of ``span(vectors)`` in Q^dim."""
    vs = [list(v) for v in vectors if any(x != 0 for x in v)]
    if not vs:
        return nullspace([], n_cols=dim)
    return nullspace(vs)


def row_basis(vectors: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """A basis (in RREF) of the span of the given vectors."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    r, piv = rref(vs)
    return r[: len(piv)]


def same_span(u: Sequence[Sequence[Fraction]], v: Sequence[Sequence[Fraction]]) -> bool:
    return row_basis(u) == row_basis(v)


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale a rational vector to coprime integers with a positive leading entry."""
    v = list(v)
    nz = [x for x in v if x != 0]
    if not nz:
        return v
    den = 1
    for x in nz:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    sign = 1 if nz[0] > 0 else -1
    return [Fraction(sign * x // g) for x in ints]


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
