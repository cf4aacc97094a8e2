"""Exact linear feasibility by a phase-one simplex over the rationals.

The only question ever asked here is "does a vector with these signs exist
in this subspace?".  Strict signs are encoded by the normalisation
``x_i >= 1`` (or ``<= -1``), which is harmless because every feasible set we
build is a cone.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact import Vector

#: Sign constraints accepted by :func:`find_signed_vector`.
SIGN_CODES = ("+", "-", "0", ">=", "<=", "*")


def feasible_point(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector | None:
    """Return some ``x >= 0`` with ``a x = b``, or None if none exists.

    Phase one of the simplex method with one artificial variable per row and
    Bland's rule, so it terminates without cycling.
    """
    n_rows = len(a)
    n = len(a[0]) if n_rows else 0
    if n_rows == 0:
        return [Fraction(0)] * n
    rows = []
    rhs = []
    for row, bi in zip(a, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    # tableau columns: n structural + n_rows artificial
    width = n + n_rows
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(n_rows)] + [rhs[i]] for i in range(n_rows)]
    basis = [n + i for i in range(n_rows)]
    # objective: minimise the sum of artificials -> reduced costs
    cost = [Fraction(0)] * (width + 1)
    for i in range(n_rows):
        for j in range(n):
            cost[j] -= tab[i][j]
        cost[width] -= tab[i][width]

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave, best = None, None
        for i in range(n_rows):
            if tab[i][entering] > 0:
                ratio = tab[i][width] / tab[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # unbounded direction; cannot happen for phase one
            break
        _pivot(tab, cost, leave, entering)
        basis[leave] = entering

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][width]
    return x


def _pivot(tab, cost, r, c):
    inv = 1 / tab[r][c]
    tab[r] = [v * inv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [v - f * w for v, w in zip(row, tab[r])]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [v - f * w for v, w in zip(cost, tab[r])]


def find_signed_vector(
    e: Sequence[Sequence[Fraction]], signs: Sequence[str], n: int | None = None
) -> Vector | None:
    """Find ``x`` with ``e x = 0`` and per-coordinate sign constraints.

    Parameters
    ----------
    e : rows of the homogeneous constraint matrix (may be empty)
    signs : one code per coordinate: ``'+'`` strictly positive, ``'-'``
        strictly negative, ``'0'`` zero, ``'>='``/``'<='`` weak, ``'*'`` free.
    n : number of coordinates; defaults to ``len(signs)``.

    Returns
    -------
    A rational solution (strict coordinates have magnitude >= 1), or None.
    """
    n = len(signs) if n is None else n
    # x_i = offset_i + sum_k coef_ik u_k with u >= 0
    columns: list[tuple[int, int]] = []  # (coordinate, coefficient)
    offset = [Fraction(0)] * n
    for i, s in enumerate(signs):
        if s == "+":
            offset[i] = Fraction(1)
            columns.append((i, 1))
        elif s == "-":
            offset[i] = Fraction(-1)
            columns.append((i, -1))
        elif s == ">=":
            columns.append((i, 1))
        elif s == "<=":
            columns.append((i, -1))
        elif s == "*":
            columns.append((i, 1))
            columns.append((i, -1))
        elif s != "0":
            raise ValueError(f"unknown sign code {s!r}")
    rows = [list(r) for r in e if any(x != 0 for x in r)]
    a = [[row[i] * c for i, c in columns] for row in rows]
    b = [-sum((row[i] * offset[i] for i in range(n)), Fraction(0)) for row in rows]
    if not columns:
        return list(offset) if all(x == 0 for x in b) else None
    u = feasible_point(a, b) if rows else [Fraction(0)] * len(columns)
    if u is None:
        return None
    x = list(offset)
    for (i, c), ui in zip(columns, u):
        x[i] += c * ui
    return x


def pattern_codes(pattern: Sequence[int]) -> list[str]:
    """Map a sign vector in {-1, 0, 1} to strict sign codes."""
    return ["+" if s > 0 else "-" if s < 0 else "0" for s in pattern]
