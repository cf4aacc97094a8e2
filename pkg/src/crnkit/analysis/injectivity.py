"""Symbolic injectivity determinant.

For a power-law system build ``M = N diag(z) F diag(k)`` with one symbol
``z_j`` per reaction and ``k_i`` per species, overwrite ``d = m - s`` rows
by a basis of the left kernel of ``N``, and expand ``det(M*)``.  If the
determinant is a nonzero polynomial whose coefficients all share one strict
sign the system is injective.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .. import core, exact
from ..errors import SingularChoice
from ..kinetics import PowerLawKineticSystem
from ..polynomial import SparsePolynomial, determinant


@dataclass(frozen=True)
class InjectivityResult:
    determinant: SparsePolynomial
    replaced_rows: tuple[int, ...]
    kernel_rows: tuple[tuple[Fraction, ...], ...]
    z_symbols: tuple[str, ...]
    k_symbols: tuple[str, ...]

    @property
    def signs(self) -> set[int]:
        return {(c > 0) - (c < 0) for c in self.determinant.coefficients()}

    @property
    def injective(self) -> bool:
        """Requires numeric kinetic orders; symbolic coefficients raise TypeError in comparisons."""
        return not self.determinant.is_zero() and len(self.signs) == 1

    @property
    def verdict(self) -> str:
        return "injective" if self.injective else "inconclusive"


def _symbols(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(count))


def mstar_matrix(n_mat, orders, kernel, rows: Sequence[int], z=None, k=None) -> list[list[SparsePolynomial]]:
    """Assemble ``M*`` with ``rows`` replaced by the ``kernel`` vectors.

    ``orders`` entries may be numbers or :class:`SparsePolynomial` (symbolic
    kinetic orders).
    """
    m, r = len(n_mat), len(n_mat[0])
    z = z or _symbols("z", r)
    k = k or _symbols("k", m)
    zs = [SparsePolynomial.symbol(s) for s in z]
    ks = [SparsePolynomial.symbol(s) for s in k]
    f = [[SparsePolynomial.coerce(x) for x in row] for row in orders]
    out = []
    for i in range(m):
        row = []
        for h in range(m):
            acc = SparsePolynomial()
            for j in range(r):
                if n_mat[i][j] != 0 and not f[j][h].is_zero():
                    acc = acc + zs[j] * f[j][h] * n_mat[i][j]
            row.append(acc * ks[h])
        out.append(row)
    for i, w in zip(rows, kernel):
        out[i] = [SparsePolynomial.constant(x) for x in w]
    return out


def mstar_determinant(n_mat, orders) -> InjectivityResult:
    """``det(M*)`` for a stoichiometric matrix and (possibly symbolic) orders.

    The last ``d`` rows are replaced first; if that determinant vanishes
    identically every other ``d``-subset of rows is tried in lexicographic
    order.
    """
    m, r = len(n_mat), len(n_mat[0])
    kernel = [exact.primitive(w) for w in exact.left_nullspace(n_mat)]
    d = len(kernel)
    z, k = _symbols("z", r), _symbols("k", m)
    last = tuple(range(m - d, m))
    choices = [last] + [c for c in combinations(range(m), d) if c != last]
    for rows in choices:
        det = determinant(mstar_matrix(n_mat, orders, kernel, rows, z, k))
        if not det.is_zero():
            return InjectivityResult(det, rows, tuple(tuple(w) for w in kernel), z, k)
    raise SingularChoice("det(M*) vanishes identically for every choice of replaced rows")


def injectivity_determinant(sys: PowerLawKineticSystem) -> InjectivityResult:
    return mstar_determinant(core.stoichiometric_matrix(sys.network), sys.orders)


def numeric_mstar(n_mat, orders, kernel, rows, z_values, k_values) -> np.ndarray:
    """Float version of ``M*`` at given ``z``, ``k``; the cross-check for the expansion."""
    n = np.array([[float(x) for x in row] for row in n_mat])
    f = np.array([[float(x) for x in row] for row in orders])
    mat = n @ np.diag(z_values) @ f @ np.diag(k_values)
    for i, w in zip(rows, kernel):
        mat[i] = [float(x) for x in w]
    return mat
