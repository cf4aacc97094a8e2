"""Log-parametrized equilibria, ACR species and multiplicity along the curve.

Given a weakly reversible, deficiency-zero PL-RDK system that is
dynamically equivalent (or linearly conjugate) to ``sys``, the positive
equilibria of ``sys`` are ``{x : log x - log x* in S~^perp}`` where ``S~`` is
the kinetic-order subspace of the complement.  Everything below works on
that description.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .. import core, exact, kinetics, lp
from ..errors import DimensionMismatch, NotAnEquilibrium, PreconditionFailure, PremiseFailure
from ..kinetics import PowerLawKineticSystem

EQUILIBRIUM_TOL = 1e-9
T_BOUND = 50.0
SCAN_POINTS = 10_000


@dataclass(frozen=True)
class PLPDescription:
    """Positive equilibria ``x* . exp(span(parameter_basis))``.

    ``system`` carries the numeric rates for which ``x*`` is an equilibrium;
    ``canonical_rates`` is True when those rates were chosen by the toolkit
    (``x* = 1``) because the input had none.
    """

    reference_equilibrium: tuple[float, ...]
    parameter_basis: tuple[tuple[Fraction, ...], ...]
    flux_space: tuple[tuple[Fraction, ...], ...]
    system: PowerLawKineticSystem
    canonical_rates: bool = False

    def __post_init__(self):
        if not self.parameter_basis:
            raise PreconditionFailure("parameter basis is empty: equilibria would be isolated")
        for v in self.parameter_basis:
            if all(x == 0 for x in v):
                raise PreconditionFailure("parameter basis contains the zero vector")
            for u in self.flux_space:
                if exact.dot(u, v) != 0:
                    raise PreconditionFailure("parameter basis is not orthogonal to the flux space")

    @property
    def species(self) -> tuple[str, ...]:
        return self.system.species


def _normalise(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    first = next(x for x in v if x != 0)
    return tuple(-x / first for x in v)


def canonical_rates(sys: PowerLawKineticSystem) -> PowerLawKineticSystem:
    """Rates ``k`` with ``N k = 0`` so that ``x = 1`` is an equilibrium."""
    k = core.positive_dependence(sys.network)
    if k is None:
        raise PremiseFailure("positive dependence", "reaction vectors are not positively dependent")
    return sys.with_rates([float(x) for x in k])


def reference_system(sys: PowerLawKineticSystem, x_star=None) -> tuple[PowerLawKineticSystem, np.ndarray, bool]:
    if sys.rates is None:
        if x_star is not None:
            raise PreconditionFailure("a reference equilibrium needs numeric rates")
        return canonical_rates(sys), np.ones(sys.network.m), True
    if x_star is None:
        raise PreconditionFailure("numeric rates given without a reference equilibrium")
    x = np.asarray(x_star, dtype=float)
    if kinetics.relative_residual(sys, x) > EQUILIBRIUM_TOL:
        raise NotAnEquilibrium(f"f(x*) is not zero (relative residual {kinetics.relative_residual(sys, x):.2e})")
    return sys, x, False


def check_ldc_premises(sys: PowerLawKineticSystem, ldc: PowerLawKineticSystem, conjugacy=None) -> None:
    c = [1] * sys.network.m if conjugacy is None else conjugacy
    if not kinetics.linear_conjugacy(sys, ldc, c):
        label = "dynamic equivalence" if conjugacy is None else "linear conjugacy"
        raise PremiseFailure(label, "rate functions do not match term by term")
    if not kinetics.classify(ldc).rdk:
        raise PremiseFailure("PL-RDK complement", "complement has conflicting kinetic orders at a node")
    idx = core.structural_indices(ldc.network)
    if not idx.weakly_reversible:
        raise PremiseFailure("weakly reversible complement", "complement is not weakly reversible")
    if idx.deficiency != 0:
        raise PremiseFailure("deficiency-zero complement", f"complement has deficiency {idx.deficiency}")


def plp_from_ldc(sys: PowerLawKineticSystem, ldc: PowerLawKineticSystem, x_star=None, conjugacy=None) -> PLPDescription:
    """PLP description of ``sys`` with flux space taken from its complement ``ldc``.

    ``conjugacy`` is the positive vector ``c`` with ``f_ldc = diag(c) f_sys``;
    None means dynamic equivalence.  Linear conjugacy preserves the positive
    equilibrium set, so the flux space carries over unchanged.

    Raises
    ------
    PremiseFailure
        Naming the first premise that does not hold.
    """
    check_ldc_premises(sys, ldc, conjugacy)
    flux = kinetics.kinetic_subspace_tilde(ldc).basis
    basis = exact.orthogonal_complement(flux, sys.network.m)
    ref_sys, x, canon = reference_system(sys, x_star)
    return PLPDescription(
        tuple(float(v) for v in x),
        tuple(_normalise(v) for v in basis),
        tuple(tuple(u) for u in flux),
        ref_sys,
        canon,
    )


def acr_species(plp: PLPDescription) -> set[str]:
    return {s for i, s in enumerate(plp.species) if all(v[i] == 0 for v in plp.parameter_basis)}


def sign_realizable(basis: Sequence[Sequence], pattern: Sequence[int]) -> bool:
    """Does ``span(basis)`` contain a nonzero vector with exactly this sign pattern?"""
    if all(p == 0 for p in pattern):
        return False
    dim = len(pattern)
    vecs = [[exact.to_fraction(x) for x in v] for v in basis]
    w = exact.orthogonal_complement(vecs, dim)
    return lp.find_signed_vector(w, lp.pattern_codes(pattern)) is not None


def realizable_patterns(basis: Sequence[Sequence], dim: int) -> set[tuple[int, ...]]:
    return {p for p in product((-1, 0, 1), repeat=dim) if sign_realizable(basis, p)}


def verify_linear_conjugacy(a: PowerLawKineticSystem, b: PowerLawKineticSystem, c) -> bool:
    return kinetics.linear_conjugacy(a, b, c)


# ----------------------------------------------------------------------
# multiplicity along the equilibrium curve

@dataclass(frozen=True)
class CurveResult:
    """Outcome of the curve search in one kind of class.

    ``t`` is the curve parameter of the witness along the first parameter
    basis vector, ``base`` the parameter of the equilibrium it pairs with.
    ``for_all_instances`` marks verdicts that follow from the sign structure
    of the direction alone.
    """

    multi: bool
    t: float | None = None
    base: float = 0.0
    witness: tuple[float, ...] | None = None
    partner: tuple[float, ...] | None = None
    for_all_instances: bool = False
    boundary_hit: bool = False

    @property
    def label(self) -> str:
        return "multi" if self.multi else "mono"


@dataclass(frozen=True)
class MultiplicityResult:
    stoich_class: CurveResult
    co_class: CurveResult
    direction: tuple[float, ...]


def _direction(plp: PLPDescription) -> np.ndarray:
    return np.array([float(x) for x in plp.parameter_basis[0]])


def _roots(h, lo: float, hi: float, n: int = SCAN_POINTS) -> tuple[list[float], bool]:
    """Sign-change roots of ``h`` on a grid, refined by Brent's method."""
    grid = np.linspace(lo, hi, n + 1)
    with np.errstate(over="ignore"):
        vals = np.array([h(t) for t in grid])
    roots, boundary = [], False
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if fa == 0.0:
            roots.append(float(a))
        elif (fa < 0 < fb) or (fb < 0 < fa):
            roots.append(float(brentq(h, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps)))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    if roots and (abs(roots[0] - lo) < (hi - lo) / n or abs(roots[-1] - hi) < (hi - lo) / n):
        boundary = True
    return roots, boundary


def _verify_point(plp: PLPDescription, x: np.ndarray) -> None:
    res = kinetics.relative_residual(plp.system, x)
    if res > EQUILIBRIUM_TOL:
        raise NotAnEquilibrium(f"curve witness fails f(x) = 0 (relative residual {res:.2e})")


def _stoich(plp: PLPDescription, c: np.ndarray, v: np.ndarray) -> CurveResult:
    x0 = np.asarray(plp.reference_equilibrium)
    if np.all(v >= 0) or np.all(v <= 0):
        # <c, x(t)> is strictly monotone in t
        return CurveResult(False, for_all_instances=True)
    # <c, x(t)> is strictly convex and unbounded on both sides, so any point
    # that is not its minimum has a partner; try a few base points
    for base in np.array([0.0, 1.0, -1.0, 3.0, -3.0]) / np.max(np.abs(v)):
        xb = x0 * np.exp(base * v)
        w = c * xb

        def h(t, w=w):
            return float(np.sum(w * np.expm1(t * v)) / t) if t != 0 else float(np.sum(w * v))

        roots, boundary = _roots(h, -T_BOUND, T_BOUND)
        roots = [t for t in roots if t != 0.0]
        if roots:
            t = min(roots, key=abs)
            xt = xb * np.exp(t * v)
            _verify_point(plp, xt)
            _verify_point(plp, xb)
            scale = float(np.sum(c * (xt + xb)))
            if abs(float(c @ (xt - xb))) > 1e-10 * scale:
                raise NotAnEquilibrium("curve witness is not in the same stoichiometric class")
            return CurveResult(True, t, base, tuple(xt), tuple(xb), True, boundary)
    return CurveResult(False)


def _co(plp: PLPDescription, c: np.ndarray, v: np.ndarray) -> CurveResult:
    x0 = np.asarray(plp.reference_equilibrium)
    strict_mixed = np.any(v > 0) and np.any(v < 0)
    zero_and_nonzero = np.any(v == 0)
    if strict_mixed or zero_and_nonzero:
        # differences of two curve points then have coordinates of opposite
        # sign (or zeros next to nonzeros) and cannot be a multiple of c > 0
        return CurveResult(False, for_all_instances=True)
    a = x0 / c
    i0 = int(np.argmax(np.abs(v)))

    def comp(i):
        def h(t):
            if t == 0:
                return float(a[i] * v[i] - a[i0] * v[i0])
            return float((a[i] * np.expm1(t * v[i]) - a[i0] * np.expm1(t * v[i0])) / t)
        return h

    others = [i for i in range(len(v)) if i != i0]
    probe = np.linspace(-T_BOUND, T_BOUND, 17)
    with np.errstate(over="ignore", invalid="ignore"):
        live = [i for i in others if any(abs(comp(i)(t)) > 1e-14 * (abs(a[i]) + abs(a[i0])) for t in probe)]
    if not live:
        t = 1.0
        xt = x0 * np.exp(t * v)
        _verify_point(plp, xt)
        return CurveResult(True, t, 0.0, tuple(xt), tuple(x0))
    roots, boundary = _roots(comp(live[0]), -T_BOUND, T_BOUND)
    for t in roots:
        if t == 0.0:
            continue
        d = a * np.expm1(t * v)
        if np.max(np.abs(d - d[i0])) <= 1e-10 * np.max(np.abs(d)):
            xt = x0 * np.exp(t * v)
            _verify_point(plp, xt)
            return CurveResult(True, t, 0.0, tuple(xt), tuple(x0), False, boundary)
    return CurveResult(False, boundary_hit=boundary)


def curve_multiplicity(plp: PLPDescription, conservation=None) -> MultiplicityResult:
    """Search the equilibrium curve for two equilibria in one class.

    The stoichiometric verdict is exact for every rate instance sharing the
    flux space.  The co-stoichiometric verdict is exact when it follows from
    the sign structure of the direction; otherwise it is the outcome of the
    search anchored at the reference equilibrium over ``|t| <= 50``.

    Raises
    ------
    DimensionMismatch
        Unless both the parameter space and the conservation space are
        one-dimensional.
    """
    if len(plp.parameter_basis) != 1:
        raise DimensionMismatch(f"curve search needs a 1-dimensional parameter space, got {len(plp.parameter_basis)}")
    net = plp.system.network
    if conservation is None:
        basis = core.conservation_basis(net)
        if len(basis) != 1:
            raise DimensionMismatch(f"curve search needs a 1-dimensional conservation space, got {len(basis)}")
        conservation = core.conservativity(net)
        if conservation is None:
            raise DimensionMismatch("conservation space has no positive vector")
    c = np.array([float(x) for x in conservation])
    if c.shape != (net.m,) or np.any(c <= 0):
        raise DimensionMismatch("conservation vector must be positive with one entry per species")
    v = _direction(plp)
    return MultiplicityResult(_stoich(plp, c, v), _co(plp, c, v), tuple(float(x) for x in v))
