"""Built-in carbon-cycle networks and kinetic systems.

Two pre-industrial carbon-cycle models are included: the six-pool Schmitz
model and the three-pool Anderies model, with the complements and the
aggregated variant used to compare them.  Every datum carries a provenance
entry; values that had to be reconstructed (rather than read off directly)
are flagged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .analysis.report import CLAIM_UNVERIFIED, ReportContext
from .core import ReactionNetwork
from .errors import UnknownModel
from .kinetics import PowerLawKineticSystem, TMatrices


@dataclass(frozen=True)
class Provenance:
    datum: str
    source: str
    reconstructed: bool = False


@dataclass(frozen=True)
class BuiltinModel:
    name: str
    description: str
    system: PowerLawKineticSystem | None
    tmatrix: TMatrices | None = None
    provenance: tuple[Provenance, ...] = ()
    context: ReportContext = field(default_factory=ReportContext)
    published_state: tuple[float, ...] | None = None


# ----------------------------------------------------------------------
# Schmitz

SCHMITZ_SPECIES = ("M1", "M2", "M3", "M4", "M5", "M6")

#: (id, reactant pool, product pool, rate symbol, kinetic order on the reactant)
SCHMITZ_REACTIONS = (
    ("r15", "M1", "M5", "k15", "0.36"),
    ("r51", "M5", "M1", "k51", "1"),
    ("r56", "M5", "M6", "k56", "1"),
    ("r61", "M6", "M1", "k61", "1"),
    ("r21", "M2", "M1", "k21", "9.4"),
    ("r12", "M1", "M2", "k12", "1"),
    ("r31", "M3", "M1", "k31", "10.2"),
    ("r13", "M1", "M3", "k13", "1"),
    ("r23", "M2", "M3", "k23", "1"),
    ("r24", "M2", "M4", "k24", "1"),
    ("r42", "M4", "M2", "k42", "1"),
    ("r34", "M3", "M4", "k34", "1"),
    ("r43", "M4", "M3", "k43", "1"),
)

SCHMITZ_RATES = {
    "k12": 0.0931,
    "k13": 0.0311,
    "k15": 10.08896,
    "k21": 58 * 730**-9.4,
    "k23": 0.0781,
    "k24": 0.0164,
    "k31": 18 * 140**-10.2,
    "k34": 0.714,
    "k42": 0.00189,
    "k43": 0.00114,
    "k51": 0.0862,
    "k56": 0.0862,
    "k61": 0.0333,
}

SCHMITZ_PUBLISHED_STATE = (612.0, 730.0, 140.424, 37041.164, 579.080, 1499.0)

#: Reference decomposition pieces: I1 is the M1/M5/M6 cycle, I2 and I3 split the rest.
SCHMITZ_R1 = ("r15", "r51", "r56", "r61")
SCHMITZ_R2 = ("r21", "r13", "r34", "r42")
SCHMITZ_R3 = ("r12", "r23", "r24", "r43", "r31")

SCHMITZ_EIGENVALUES = (-2.08129, -0.94080, -0.19917, -0.06698, -0.00825)


def schmitz_system(rates: dict | None = SCHMITZ_RATES) -> PowerLawKineticSystem:
    net = ReactionNetwork.from_reactions(SCHMITZ_SPECIES, [(i, {a: 1}, {b: 1}) for i, a, b, _, _ in SCHMITZ_REACTIONS])
    orders = {i: {a: o} for i, a, _, _, o in SCHMITZ_REACTIONS}
    symbols = {i: k for i, _, _, k, _ in SCHMITZ_REACTIONS}
    rate_map = None if rates is None else {i: rates[k] for i, _, _, k, _ in SCHMITZ_REACTIONS}
    return PowerLawKineticSystem.from_orders(net, orders, rate_map, symbols, name="schmitz")


SCHMITZ_LDC_COLUMNS = ("M1", "2 M2", "2 M3", "M2", "M3", "M4", "2 M1", "M5", "M6")
SCHMITZ_LDC_AUGMENTED = (
    (1, 0, 0, 0, 0, 0, "0.36", 0, 0),
    (0, "9.4", 0, 1, 0, 0, 0, 0, 0),
    (0, 0, "10.2", 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1),
    (1, 1, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, 1, 1),
)


def schmitz_ldc_tmatrix() -> TMatrices:
    return TMatrices.from_augmented(
        SCHMITZ_LDC_AUGMENTED, SCHMITZ_LDC_COLUMNS, SCHMITZ_SPECIES + ("L1", "L2", "L3"), m=6
    )


# ----------------------------------------------------------------------
# Anderies

ANDERIES_SPECIES = ("A1", "A2", "A3")
AND_GT_ORDERS = ("-1.894", "0.426", "-0.271", "0.439")  # p1, q1, p2, q2
AND_0_ORDERS = ("-68", "0.580", "-68", "0.911")
ANDERIES_SYMBOLS = {"R1": "k1", "R2": "k2", "R3": "a_m", "R4": "a_m*beta"}


def anderies_system(p1, q1, p2, q2, rates=None, name="anderies") -> PowerLawKineticSystem:
    """Anderies network with orders ``(p1, q1)`` on R1 and ``(p2, q2)`` on R2.

    ``rates`` may map ``k1, k2, a_m, beta`` (or reaction ids) to numbers.
    """
    net = ReactionNetwork.from_reactions(
        ANDERIES_SPECIES,
        [
            ("R1", {"A1": 1, "A2": 2}, {"A1": 2, "A2": 1}),
            ("R2", {"A1": 1, "A2": 1}, {"A2": 2}),
            ("R3", {"A2": 1}, {"A3": 1}),
            ("R4", {"A3": 1}, {"A2": 1}),
        ],
    )
    orders = {"R1": {"A1": p1, "A2": q1}, "R2": {"A1": p2, "A2": q2}}
    sys = PowerLawKineticSystem.from_orders(net, orders, None, ANDERIES_SYMBOLS, name=name)
    return sys if rates is None else sys.with_rates(rates)


def anderies_ldc_system(p1, q1, p2, q2, rates=None, name="anderies-ldc") -> PowerLawKineticSystem:
    net = ReactionNetwork.from_reactions(
        ANDERIES_SPECIES,
        [
            ("L1.f", {"A1": 1, "A2": 2}, {"A1": 2, "A2": 1}),
            ("L1.b", {"A1": 2, "A2": 1}, {"A1": 1, "A2": 2}),
            ("L2.f", {"A2": 1}, {"A3": 1}),
            ("L2.b", {"A3": 1}, {"A2": 1}),
        ],
    )
    orders = {"L1.f": {"A1": p1, "A2": q1}, "L1.b": {"A1": p2, "A2": q2}}
    symbols = {"L1.f": "k1", "L1.b": "k2", "L2.f": "a_m", "L2.b": "a_m*beta"}
    sys = PowerLawKineticSystem.from_orders(net, orders, None, symbols, name=name)
    return sys if rates is None else sys.with_rates(rates)


# ----------------------------------------------------------------------
# aggregated Schmitz

AGG_SPECIES = ("A1", "A2", "A3")


def aggregated_schmitz_system() -> PowerLawKineticSystem:
    net = ReactionNetwork.from_reactions(
        AGG_SPECIES,
        [
            ("R1", {"A1": 1}, {"A2": 1}),
            ("R2", {"A2": 1}, {"A1": 1}),
            ("R3", {"A2": 1}, {"A3": 1}),
            ("R4", {"A3": 1}, {"A2": 1}),
        ],
    )
    orders = {"R2": {"A2": "0.36"}, "R4": {"A3": "9.8"}}
    symbols = {"R1": "k1", "R2": "k2", "R3": "k3", "R4": "k4"}
    return PowerLawKineticSystem.from_orders(net, orders, None, symbols, name="aggregated-schmitz")


AGG_CONJUGACY = (1, 2, 4)


def aggregated_schmitz_ldc_system() -> PowerLawKineticSystem:
    net = ReactionNetwork.from_reactions(
        AGG_SPECIES,
        [
            ("L1.f", {"A1": 1}, {"A2": 2}),
            ("L1.b", {"A2": 2}, {"A1": 1}),
            ("L2.f", {"A2": 1}, {"A3": 2}),
            ("L2.b", {"A3": 2}, {"A2": 1}),
        ],
    )
    orders = {"L1.f": {"A1": 1}, "L1.b": {"A2": "0.36"}, "L2.f": {"A2": 1}, "L2.b": {"A3": "9.8"}}
    symbols = {"L1.f": "k1", "L1.b": "k2", "L2.f": "2*k3", "L2.b": "2*k4"}
    return PowerLawKineticSystem.from_orders(net, orders, None, symbols, name="aggregated-schmitz-ldc")


# ----------------------------------------------------------------------
# registry

_SCHMITZ_PROV = (
    Provenance("species M1..M6", "six carbon pools of the Schmitz model"),
    Provenance("reactions", "read off the Schmitz ODE system (13 monomolecular transfers)", reconstructed=True),
    Provenance("kinetic orders", "0.36, 9.4 and 10.2 from the ODE exponents, all others 1", reconstructed=True),
    Provenance("rate constants", "pre-industrial parameter block used for the stability check"),
    Provenance("network numbers n = 6, l = 1", "inferred from six monomolecular complexes and weak reversibility", reconstructed=True),
)
_ANDERIES_PROV = (
    Provenance("reactions", "Anderies terrestrial/atmosphere/ocean carbon exchange"),
    Provenance("rate constants", "symbolic k1, k2, a_m, a_m*beta; numeric values are not part of this corpus"),
)


def _schmitz_context(sys: PowerLawKineticSystem) -> ReportContext:
    from . import numerics

    eq = [numerics.schmitz_equilibrium(SCHMITZ_RATES, m2, sys).state for m2 in (730.0, 800.0)]
    return ReportContext(
        ldc_tmatrix=schmitz_ldc_tmatrix(),
        equilibria=tuple(eq),
        reference_state=eq[0],
        claims={"co_monostationary": CLAIM_UNVERIFIED},
        notes=("reference state is the self-consistent equilibrium at M2 = 730",),
    )


def _build(name: str) -> BuiltinModel:
    if name == "schmitz":
        sys = schmitz_system()
        return BuiltinModel(name, "Schmitz six-pool pre-industrial carbon cycle", sys, None, _SCHMITZ_PROV,
                            _schmitz_context(sys), SCHMITZ_PUBLISHED_STATE)
    if name == "schmitz-subnetwork":
        full = schmitz_system()
        sys = full.subsystem(SCHMITZ_R1 + SCHMITZ_R2)
        sys = PowerLawKineticSystem(sys.network, sys.orders, sys.rates, sys.rate_symbols, name)
        return BuiltinModel(name, "Schmitz subnetwork: M1/M5/M6 cycle plus the M2->M1->M3->M4->M2 cycle", sys,
                            None, _SCHMITZ_PROV + (Provenance("reaction subset", "union of the first two decomposition pieces"),))
    if name == "schmitz-ldc-tmatrix":
        return BuiltinModel(name, "augmented T-matrix of the Schmitz linear conjugate (arc set not included)",
                            None, schmitz_ldc_tmatrix(),
                            (Provenance("augmented T-matrix", "printed 9 x 9 matrix; arcs of the conjugate are unknown"),))
    if name in ("anderies-gt", "anderies-0"):
        orders = AND_GT_ORDERS if name == "anderies-gt" else AND_0_ORDERS
        sys = anderies_system(*orders, name=name)
        ldc = builtin("anderies-ldc" if name == "anderies-gt" else "anderies-0-ldc").system
        label = "AND_> (p1 = -1.894, p2 = -0.271)" if name == "anderies-gt" else "AND_0 (p1 = p2 = -68)"
        claims = {"co_multistationary": CLAIM_UNVERIFIED} if name == "anderies-gt" else {}
        prov = _ANDERIES_PROV + (Provenance("kinetic orders", f"{label}; q1, q2 as published"),)
        return BuiltinModel(name, f"Anderies three-pool model, {label}", sys, None, prov,
                            ReportContext(ldc=ldc, claims=claims))
    if name in ("anderies-ldc", "anderies-0-ldc"):
        orders = AND_GT_ORDERS if name == "anderies-ldc" else AND_0_ORDERS
        sys = anderies_ldc_system(*orders, name=name)
        prov = _ANDERIES_PROV + (
            Provenance("complement", "A1 + 2 A2 <-> 2 A1 + A2, A2 <-> A3, dynamically equivalent to the Anderies system"),
        )
        if name == "anderies-0-ldc":
            prov += (Provenance("AND_0 variant", "same complement with AND_0 orders, used for the comparison table", reconstructed=True),)
        variant = "AND_>" if name == "anderies-ldc" else "AND_0"
        return BuiltinModel(name, f"weakly reversible deficiency-zero complement of the Anderies system, {variant} orders",
                            sys, None, prov)
    if name == "aggregated-schmitz":
        sys = aggregated_schmitz_system()
        ldc = aggregated_schmitz_ldc_system()
        prov = (
            Provenance("aggregation", "{M5, M6} -> A1, M1 -> A2, {M2, M3, M4} -> A3"),
            Provenance("R4", "A3 -> A2 (the aggregate of M2 -> M1 and M3 -> M1)", reconstructed=True),
            Provenance("kinetic order 9.8", "average of 9.4 and 10.2"),
        )
        return BuiltinModel(name, "Schmitz model aggregated onto the Anderies pools", sys, None, prov,
                            ReportContext(ldc=ldc, conjugacy=AGG_CONJUGACY))
    if name == "aggregated-schmitz-ldc":
        prov = (
            Provenance("complement", "A1 <-> 2 A2, A2 <-> 2 A3"),
            Provenance("rates and conjugacy", "rates k1, k2, 2 k3, 2 k4 with c = (1, 2, 4)", reconstructed=True),
        )
        return BuiltinModel(name, "linear conjugate of the aggregated Schmitz system", aggregated_schmitz_ldc_system(),
                            None, prov)
    raise UnknownModel(name)


BUILTIN_NAMES = (
    "schmitz",
    "schmitz-subnetwork",
    "schmitz-ldc-tmatrix",
    "anderies-gt",
    "anderies-0",
    "anderies-ldc",
    "anderies-0-ldc",
    "aggregated-schmitz",
    "aggregated-schmitz-ldc",
)


@lru_cache(maxsize=None)
def builtin(name: str) -> BuiltinModel:
    """Look up a built-in model by name.

    Raises
    ------
    UnknownModel
        For names outside :data:`BUILTIN_NAMES`.
    """
    if name not in BUILTIN_NAMES:
        raise UnknownModel(name)
    return _build(name)
