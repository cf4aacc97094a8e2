"""Equilibrium solvers, eigenvalues and stability classification."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg
from scipy.optimize import brentq, least_squares
from scipy.special import logsumexp

from . import core, kinetics
from .errors import (
    DimensionMismatch,
    InfeasibleClass,
    NoBracket,
    NoConvergence,
    NoEquilibriumFound,
    NotAnEquilibrium,
    PreconditionFailure,
)
from .kinetics import PowerLawKineticSystem

SCHMITZ_RATE_NAMES = ("k12", "k13", "k15", "k21", "k23", "k24", "k31", "k34", "k42", "k43", "k51", "k56", "k61")
# exponents of the three non-linear rate laws
P15, P21, P31 = 0.36, 9.4, 10.2


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _bracket_increasing(g, lo: float, hi: float, max_doublings: int = 200) -> tuple[float, float]:
    """Expand ``[lo, hi]`` on a log scale until an increasing ``g`` changes sign."""
    for _ in range(max_doublings):
        if g(lo) < 0:
            break
        lo /= 10.0
    else:
        raise NoBracket("no lower bracket found")
    for _ in range(max_doublings):
        if g(hi) > 0:
            break
        hi *= 10.0
    else:
        raise NoBracket("no upper bracket found")
    return lo, hi


def _solve_increasing(g, dg, lo: float, hi: float, rtol: float = 1e-12) -> float:
    """Bisection to a coarse bracket, then Newton polish kept inside the bracket."""
    lo, hi = _bracket_increasing(g, lo, hi)
    # work in log space: exponents like 10.2 make the function very steep
    a, b = np.log(lo), np.log(hi)
    while b - a > 1e-3:
        mid = 0.5 * (a + b)
        if g(np.exp(mid)) < 0:
            a = mid
        else:
            b = mid
    x = np.exp(0.5 * (a + b))
    for _ in range(60):
        step = g(x) / dg(x)
        x_new = x - step
        if not (np.exp(a) <= x_new <= np.exp(b)):
            x_new = brentq(g, np.exp(a), np.exp(b), xtol=1e-300, rtol=4 * np.finfo(float).eps)
            return float(x_new)
        if abs(x_new - x) <= rtol * abs(x_new):
            return float(x_new)
        x = x_new
    return float(brentq(g, np.exp(a), np.exp(b), rtol=4 * np.finfo(float).eps))


@dataclass(frozen=True)
class SchmitzEquilibrium:
    state: tuple[float, ...]
    residual: float


def schmitz_m3_function(rates: Mapping[str, float], m2: float):
    """The increasing function of ``M3`` whose root fixes the equilibrium (and its derivative)."""
    k = rates
    k4 = k["k42"] + k["k43"]
    k1 = k["k12"] + k["k13"]
    a = k["k31"] * k["k12"] * k4
    b = k["k42"] * k["k34"] * k1
    c = (k["k23"] * k4 + k["k24"] * k["k43"]) * k1 * m2 + k["k21"] * k["k13"] * k4 * m2**P21

    def g(m3):
        return a * m3**P31 + b * m3 - c

    def dg(m3):
        return P31 * a * m3 ** (P31 - 1) + b

    return g, dg, c


def schmitz_closed_forms(rates: Mapping[str, float], m2: float, m3: float) -> np.ndarray:
    k = rates
    m1 = (k["k21"] * m2**P21 + k["k31"] * m3**P31) / (k["k12"] + k["k13"])
    m4 = (k["k24"] * m2 + k["k34"] * m3) / (k["k42"] + k["k43"])
    m5 = k["k15"] / (k["k51"] + k["k56"]) * m1**P15
    m6 = k["k56"] / k["k61"] * m5
    return np.array([m1, m2, m3, m4, m5, m6])


def schmitz_equilibrium(rates: Mapping[str, float], m2: float, system: PowerLawKineticSystem | None = None) -> SchmitzEquilibrium:
    """Positive equilibrium of the Schmitz system with prescribed ``M2``.

    ``rates`` maps ``k12 ... k61`` to positive values.  The result is checked
    against the rate function of ``system``, by default the built-in Schmitz
    system carrying ``rates``.

    Raises
    ------
    NoBracket
        Only on invalid input; the defining function runs from ``-C`` to
        infinity for positive rates.
    """
    missing = [n for n in SCHMITZ_RATE_NAMES if n not in rates]
    if missing:
        raise PreconditionFailure(f"missing rate constants {missing}")
    if any(not rates[n] > 0 for n in SCHMITZ_RATE_NAMES) or not m2 > 0:
        raise PreconditionFailure("rates and M2 must be positive")
    g, dg, c = schmitz_m3_function(rates, m2)
    guess = max((c / (rates["k31"] * rates["k12"] * (rates["k42"] + rates["k43"]))) ** (1 / P31), 1e-300)
    m3 = _solve_increasing(g, dg, guess, guess)
    x = schmitz_closed_forms(rates, m2, m3)
    if system is None:
        from .models import schmitz_system

        system = schmitz_system({n: rates[n] for n in SCHMITZ_RATE_NAMES})
    residual = kinetics.relative_residual(system, x)
    if residual > 1e-9:
        raise NoEquilibriumFound(f"Schmitz closed form leaves relative residual {residual:.2e}")
    return SchmitzEquilibrium(tuple(float(v) for v in x), residual)


# ----------------------------------------------------------------------
# Anderies family

def _anderies_orders(sys: PowerLawKineticSystem) -> tuple[float, float, float, float]:
    f = sys.orders
    return float(f[0][0]), float(f[0][1]), float(f[1][0]), float(f[1][1])


def and0_equilibrium(rates: Mapping[str, float], a0: float, q1: float = 0.580, q2: float = 0.911) -> np.ndarray:
    """Closed-form equilibrium of an AND_0 system on the class ``A1 + A2 + A3 = a0``.

    Raises
    ------
    InfeasibleClass
        If the class total is too small to hold the ACR values of A2, A3.
    """
    if q1 == q2:
        raise PreconditionFailure("q1 and q2 must differ")
    a2 = (rates["k2"] / rates["k1"]) ** (1.0 / (q1 - q2))
    a3 = a2 / rates["beta"]
    a1 = a0 - a2 - a3
    if not a1 > 0:
        raise InfeasibleClass(f"class total {a0} leaves A1 = {a1} <= 0")
    return np.array([a1, a2, a3])


def anderies_equilibria(sys: PowerLawKineticSystem, rates: Mapping[str, float], a0: float, n_scan: int = 4000) -> list[np.ndarray]:
    """All equilibria found on the class ``A1 + A2 + A3 = a0``.

    With ``R != 0`` the equilibria satisfy ``A3 = A2 / beta`` and
    ``A1^(p1-p2) = (k2/k1) A2^(q2-q1)``; the class constraint is then a scalar
    equation in ``log A2`` solved by scan plus Brent refinement over the whole
    positive float range.  Results are ordered by increasing ``A2``.
    """
    p1, q1, p2, q2 = _anderies_orders(sys)
    k1, k2, beta = rates["k1"], rates["k2"], rates["beta"]
    if p1 == p2:
        return [and0_equilibrium(rates, a0, q1, q2)]
    hi = np.log(a0 / (1.0 + 1.0 / beta))
    # equilibria with A2 near the underflow threshold are real (AND_> at large totals)
    lo = np.log(np.finfo(float).tiny)

    def log_a1(u):
        return (np.log(k2 / k1) + (q2 - q1) * u) / (p1 - p2)

    def state(u):
        a2 = np.exp(u)
        return np.array([np.exp(log_a1(u)), a2, a2 / beta])

    def g(u):
        return float(logsumexp([log_a1(u), u, u - np.log(beta)]) - np.log(a0))

    grid = np.linspace(lo, hi, n_scan + 1)
    vals = np.array([g(u) for u in grid])
    out = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if (fa < 0 < fb) or (fb < 0 < fa):
            out.append(state(brentq(g, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)))
    return out


def anderies_equilibria_curve(sys: PowerLawKineticSystem, rates: Mapping[str, float], a0: float) -> np.ndarray:
    """One equilibrium of an Anderies system on the class with total ``a0``.

    Raises
    ------
    NoEquilibriumFound
        If the scan finds no sign change of the class constraint.
    """
    found = anderies_equilibria(sys, rates, a0)
    if not found:
        raise NoEquilibriumFound(f"no sign change of the class constraint for total {a0} over the positive range of log A2")
    x = found[-1]  # largest A2: well away from the underflow threshold
    rated = sys.with_rates(rates)
    res = kinetics.relative_residual(rated, x)
    if res > 1e-9:
        raise NoEquilibriumFound(f"equilibrium candidate has relative residual {res:.2e}")
    return x


# ----------------------------------------------------------------------
# general systems

def find_equilibrium(sys: PowerLawKineticSystem, x0: Sequence[float], tol: float = 1e-9) -> np.ndarray:
    """Equilibrium in the stoichiometric class of ``x0`` by least squares in log coordinates.

    Raises
    ------
    NoEquilibriumFound
        If the solver stops above the relative residual ``tol``.
    """
    x0 = np.asarray(x0, dtype=float)
    w = np.array([[float(v) for v in row] for row in core.conservation_basis(sys.network)]).reshape(-1, sys.network.m)
    totals = w @ x0

    def resid(u):
        x = np.exp(u)
        scale = kinetics.term_scale(sys, x)
        f = kinetics.eval_f(sys, x) / np.where(scale > 0, scale, 1.0)
        cons = (w @ x - totals) / np.where(np.abs(totals) > 0, np.abs(totals), 1.0)
        return np.concatenate([f, cons])

    sol = least_squares(resid, np.log(x0), xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=5000)
    x = np.exp(sol.x)
    res = kinetics.relative_residual(sys, x)
    if res > tol:
        raise NoEquilibriumFound(f"least squares stopped at relative residual {res:.2e}")
    return x


# ----------------------------------------------------------------------
# eigenvalues and stability

def eigenvalues(matrix, max_dim: int = 32) -> np.ndarray:
    """All eigenvalues of a small dense real matrix (LAPACK ``geev`` via SciPy).

    Raises
    ------
    NoConvergence
        If the QR iteration fails.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("eigenvalues need a square matrix")
    if a.shape[0] > max_dim:
        raise DimensionMismatch(f"matrix dimension {a.shape[0]} exceeds {max_dim}")
    try:
        return scipy.linalg.eigvals(a)
    except scipy.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def eigenpairs(matrix) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(matrix, dtype=float)
    try:
        return scipy.linalg.eig(a)
    except scipy.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


@dataclass(frozen=True)
class StabilityVerdict:
    eigenvalues: tuple[complex, ...]
    zero_count: int
    nondegenerate: bool
    classification: str  # stable | unstable | degenerate
    zero_tol: float
    residual: float

    @property
    def nonzero(self) -> tuple[complex, ...]:
        return tuple(sorted((l for l in self.eigenvalues if abs(l) > self.zero_tol), key=lambda z: z.real))


def stability(sys: PowerLawKineticSystem, x, s: int | None = None, residual_tol: float = 1e-6) -> StabilityVerdict:
    """Classify an equilibrium from the spectrum of the Jacobian.

    Eigenvalues with modulus at most ``1e-7 * ||J||`` count as zero.  The
    state is nondegenerate when exactly ``m - s`` eigenvalues are zero, and
    stable when in addition every other eigenvalue has negative real part.

    Raises
    ------
    NotAnEquilibrium
        If the relative residual of ``f`` exceeds ``residual_tol``.
    """
    x = np.asarray(x, dtype=float)
    res = kinetics.relative_residual(sys, x)
    if res > residual_tol:
        raise NotAnEquilibrium(f"relative residual {res:.2e} exceeds {residual_tol:.0e}")
    s = core.rank(sys.network) if s is None else s
    j = kinetics.jacobian(sys, x)
    lam = eigenvalues(j)
    zero_tol = 1e-7 * float(np.linalg.norm(j, 2))
    zeros = int(np.sum(np.abs(lam) <= zero_tol))
    nondeg = zeros == sys.network.m - s
    if not nondeg:
        cls = "degenerate"
    elif all(l.real < 0 for l in lam if abs(l) > zero_tol):
        cls = "stable"
    else:
        cls = "unstable"
    return StabilityVerdict(tuple(complex(l) for l in lam), zeros, nondeg, cls, zero_tol, res)
