"""Computed facts, a small forward-chaining rule engine, and property comparison.

Facts are plain booleans (plus a few payloads) computed from a system and
an optional context.  Rules map premise facts to claims; a claim is only
ever reported when some rule's premises all hold, so deleting a fact from
the dictionary removes every conclusion that depended on it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .. import core, decomp, exact, kinetics
from ..errors import CRNError, TooLarge
from ..kinetics import PowerLawKineticSystem, TMatrices
from .concordance import concordance as run_concordance, max_species
from . import injectivity as inj
from . import plp as plp_mod

CLAIM_UNVERIFIED = "published claim, not machine-derived"


@dataclass(frozen=True)
class Rule:
    name: str
    claims: tuple[str, ...]
    alternatives: tuple[Mapping[str, Any], ...]
    statement: str
    payload: str | None = None


RULES: tuple[Rule, ...] = (
    Rule("R1", ("complex_balanced_equilibria",), ({"deficiency_zero": True},),
         "deficiency zero: every positive equilibrium is complex balanced"),
    Rule("R2", ("birch", "monostationary"),
         ({"conservative": True, "weakly_reversible": True, "concordant": True, "nik": True, "deficiency_zero": True},),
         "conservative, weakly reversible, concordant, non-inhibitory, deficiency zero: Birch system"),
    Rule("R3", ("kssc",), ({"rdk": True, "isk": True, "t_minimal": True},),
         "PL-RDK with ISK on a t-minimal network: kinetic and stoichiometric subspaces coincide"),
    Rule("R4", ("kssc",),
         ({"ndk": True, "nr_lt_s": True},
          {"ndk": True, "isk": True, "t_minimal": True, "rmcf_identity": True}),
         "PL-NDK with N_R < s, or ISK, t - l = 0 and r - r_mcf = N_R - n_r: kinetic and stoichiometric subspaces coincide"),
    Rule("R5", ("co_monostationary",),
         ({"plp": True, "acr_nonempty": True, "conservative": True, "closed_max_rank": True},),
         "an ACR species in a conservative closed network of maximal rank: co-monostationary"),
    Rule("R6", ("multistationary",),
         ({"ldc_matches": True, "ldc_weakly_reversible": True, "ldc_rdk": True, "ldc_isk": True,
           "ldc_deficiency_zero": True, "ldc_same_stoichiometric_subspace": True, "sign_space_hypothesis": True},),
         "complement weakly reversible PL-RDK ISK with matching stoichiometric subspace and "
         "sigma(S) meeting sigma(S~ perp) outside 0: more than one equilibrium in some class"),
    Rule("R7", ("monostationary",), ({"injective": True},), "injective: monostationary"),
    Rule("R8", ("multistationary",), ({"plp": True, "curve_stoich_multi": True},),
         "two equilibria on the log-parametrized curve share a stoichiometric class"),
    Rule("R8", ("monostationary",), ({"plp": True, "curve_stoich_mono": True},),
         "sign-uniform curve direction: each stoichiometric class meets the curve once"),
    Rule("R8", ("co_multistationary",), ({"plp": True, "curve_co_multi": True},),
         "two equilibria on the curve share a co-stoichiometric class"),
    Rule("R8", ("co_monostationary",), ({"plp": True, "curve_co_mono": True},),
         "no co-stoichiometric coincidence on the curve"),
    Rule("R9", ("acr_species",), ({"plp": True},),
         "species with a zero coordinate in every parameter basis vector have ACR", payload="acr_set"),
    Rule("R10", ("no_acr",), ({"no_acr_pair": True},),
         "two positive equilibria differing in every coordinate: no ACR species"),
    Rule("R11", ("plp",),
         ({"ldc_matches": True, "ldc_rdk": True, "ldc_weakly_reversible": True, "ldc_deficiency_zero": True},),
         "dynamically equivalent or conjugate to a weakly reversible deficiency-zero PL-RDK system: PLP"),
)


@dataclass(frozen=True)
class Conclusion:
    claim: str
    rule: str
    premises: Mapping[str, Any]
    statement: str
    value: Any = True


def derive(facts: Mapping[str, Any], rules: Sequence[Rule] = RULES) -> list[Conclusion]:
    """Forward-chain ``rules`` over ``facts``; claims become facts for later rules."""
    known = dict(facts)
    out: list[Conclusion] = []
    fired: set[tuple[str, str]] = set()
    changed = True
    while changed:
        changed = False
        for rule in rules:
            for claim in rule.claims:
                if (rule.name, claim) in fired:
                    continue
                for alt in rule.alternatives:
                    if all(k in known and known[k] == v for k, v in alt.items()):
                        value = known.get(rule.payload, True) if rule.payload else True
                        out.append(Conclusion(claim, rule.name, dict(alt), rule.statement, value))
                        fired.add((rule.name, claim))
                        if claim not in known:
                            known[claim] = True
                            changed = True
                        break
    return out


@dataclass(frozen=True)
class ReportContext:
    """Optional extra knowledge about a system.

    ``ldc`` is a low-deficiency complement, ``conjugacy`` its conjugacy
    vector (None for dynamic equivalence).  ``ldc_tmatrix`` stands in when
    only the T-matrix of a complement is known.  ``equilibria`` are known
    positive equilibria used for the no-ACR test; ``reference_state`` is an
    equilibrium for the numeric rates.  ``claims`` maps a claim name to a
    label for published results that the toolkit cannot derive.
    """

    ldc: PowerLawKineticSystem | None = None
    conjugacy: tuple | None = None
    ldc_tmatrix: TMatrices | None = None
    equilibria: tuple[tuple[float, ...], ...] = ()
    reference_state: tuple[float, ...] | None = None
    claims: Mapping[str, str] = field(default_factory=dict)
    notes: tuple[str, ...] = ()


@dataclass
class PropertyReport:
    system: PowerLawKineticSystem
    indices: core.StructuralIndices
    facts: dict[str, Any]
    conclusions: list[Conclusion]
    data: dict[str, Any]
    claims: dict[str, str]

    def holds(self, claim: str) -> bool:
        return any(c.claim == claim for c in self.conclusions)

    def conclusion(self, claim: str) -> Conclusion | None:
        return next((c for c in self.conclusions if c.claim == claim), None)

    def rule_for(self, claim: str) -> str | None:
        c = self.conclusion(claim)
        return c.rule if c else None


def _all_coordinates_differ(equilibria) -> bool:
    for i, a in enumerate(equilibria):
        for b in equilibria[i + 1:]:
            a_, b_ = np.asarray(a), np.asarray(b)
            if np.all(np.abs(a_ - b_) > 1e-9 * np.maximum(np.abs(a_), np.abs(b_))):
                return True
    return False


def analyze(
    sys: PowerLawKineticSystem,
    context: ReportContext | None = None,
    *,
    concordance_limit: int | None = None,
    injectivity: bool = True,
) -> PropertyReport:
    """Compute every fact available for ``sys`` and derive the conclusions."""
    ctx = context or ReportContext()
    net = sys.network
    idx = core.structural_indices(net)
    li = core.linkage_analysis(net)
    facts: dict[str, Any] = {}
    data: dict[str, Any] = {"errors": {}}

    facts["deficiency_zero"] = idx.deficiency == 0
    facts["weakly_reversible"] = idx.weakly_reversible
    facts["t_minimal"] = idx.t_minimal
    cons = core.conservativity(net)
    facts["conservative"] = cons is not None
    facts["closed_max_rank"] = core.closed_maximal_rank(net)
    facts["positive_dependent"] = core.positive_dependence(net) is not None
    data["conservation_vector"] = cons
    data["linkage"] = li

    try:
        cres = run_concordance(net, concordance_limit)
        facts["concordant"] = cres.concordant
        data["concordance"] = cres
    except TooLarge as exc:
        data["concordance"] = None
        data["errors"]["concordance"] = f"skipped ({type(exc).__name__})"

    kc = kinetics.classify(sys)
    part = kinetics.cf_partition(sys)
    facts.update(rdk=kc.rdk, ndk=not kc.rdk, nik=kc.nik, isk=kc.isk)
    facts["nr_lt_s"] = part.n_R < idx.s
    facts["rmcf_identity"] = net.r - part.r_mcf == part.n_R - idx.n_r
    data["cf_partition"] = part
    if kc.rdk:
        data["tmatrices"] = kinetics.t_matrices(sys)
        data["kinetic_subspace"] = kinetics.kinetic_subspace_tilde(sys)

    data["decompositions"] = {
        "independent": decomp.finest_independent(net),
        "incidence-independent": decomp.finest_incidence_independent(net),
    }

    if injectivity:
        try:
            ires = inj.injectivity_determinant(sys)
            facts["injective"] = ires.injective
            data["injectivity"] = ires
        except CRNError as exc:
            data["errors"]["injectivity"] = f"{type(exc).__name__}: {exc}"

    # complement: supplied, or the system itself when it qualifies
    ldc, conj = ctx.ldc, ctx.conjugacy
    if ldc is None and kc.rdk and idx.weakly_reversible and idx.deficiency == 0:
        ldc, conj = sys, None
        data["ldc_is_self"] = True
    if ldc is not None:
        _ldc_facts(sys, ldc, conj, ctx, facts, data)
    elif ctx.ldc_tmatrix is not None:
        tm = ctx.ldc_tmatrix
        data["ldc_tmatrix"] = {
            "tik": tm.tik,
            "kinetic_rank": tm.kinetic_rank(),
            "rank": exact.rank(tm.augmented),
            "deficiency": tm.n_r - len(tm.linkage_rows) - idx.s,
        }

    if ctx.equilibria:
        facts["no_acr_pair"] = _all_coordinates_differ(ctx.equilibria)

    if sys.rates is not None and ctx.reference_state is not None:
        from .. import numerics

        try:
            data["stability"] = numerics.stability(sys, ctx.reference_state, idx.s)
        except CRNError as exc:
            data["errors"]["stability"] = f"{type(exc).__name__}: {exc}"

    conclusions = derive(facts)
    return PropertyReport(sys, idx, facts, conclusions, data, dict(ctx.claims))


def _ldc_facts(sys, ldc, conj, ctx, facts, data) -> None:
    net = sys.network
    try:
        matches = kinetics.linear_conjugacy(sys, ldc, conj if conj is not None else [1] * net.m)
    except CRNError as exc:
        data["errors"]["ldc"] = f"{type(exc).__name__}: {exc}"
        return
    lidx = core.structural_indices(ldc.network)
    lk = kinetics.classify(ldc)
    facts["ldc_matches"] = matches
    facts["ldc_rdk"] = lk.rdk
    facts["ldc_isk"] = lk.isk
    facts["ldc_weakly_reversible"] = lidx.weakly_reversible
    facts["ldc_deficiency_zero"] = lidx.deficiency == 0
    facts["ldc_same_stoichiometric_subspace"] = exact.same_span(
        core.reaction_vectors(net), core.reaction_vectors(ldc.network)
    )
    ldc_info: dict[str, Any] = {"deficiency": lidx.deficiency, "indices": lidx, "conjugacy": conj}
    data["ldc"] = ldc_info
    if not lk.rdk:
        return
    tm = kinetics.t_matrices(ldc)
    ks = kinetics.kinetic_subspace_tilde(ldc)
    ldc_info.update(tik=tm.tik, kinetic_subspace=ks)
    perp = exact.orthogonal_complement(ks.basis, net.m)
    if perp and net.m <= max_species():
        s_basis = exact.row_basis(core.reaction_vectors(net))
        pats = plp_mod.realizable_patterns(perp, net.m)
        shared = sorted(p for p in pats if plp_mod.sign_realizable(s_basis, p))
        facts["sign_space_hypothesis"] = bool(shared)
        data["sign_space"] = {"perp_patterns": sorted(pats), "shared": shared}
    if not (matches and lk.rdk and lidx.weakly_reversible and lidx.deficiency == 0):
        return
    try:
        desc = plp_mod.plp_from_ldc(sys, ldc, ctx.reference_state if sys.rates is not None else None, conj)
    except CRNError as exc:
        data["errors"]["plp"] = f"{type(exc).__name__}: {exc}"
        return
    data["plp"] = desc
    acr = plp_mod.acr_species(desc)
    facts["acr_set"] = tuple(s for s in net.species if s in acr)
    facts["acr_nonempty"] = bool(acr)
    try:
        mult = plp_mod.curve_multiplicity(desc)
    except CRNError as exc:
        data["errors"]["multiplicity"] = f"{type(exc).__name__}: {exc}"
        return
    data["multiplicity"] = mult
    st, co = mult.stoich_class, mult.co_class
    facts["curve_stoich_multi"] = st.multi
    facts["curve_stoich_mono"] = (not st.multi) and st.for_all_instances
    facts["curve_co_multi"] = co.multi
    facts["curve_co_mono"] = not co.multi


# ----------------------------------------------------------------------
# comparison rows

COMPARE_FIELDS = (
    "connectivity",
    "molecularity",
    "concordance",
    "RDK",
    "NIK",
    "ACR count",
    "multiplicity",
    "co-multiplicity",
    "deficiency",
    "KSSC",
    "LDC deficiency",
)


def _claimed(report: PropertyReport, claim: str) -> bool:
    return claim in report.claims


def summary_row(report: PropertyReport) -> dict[str, str]:
    """Human-readable value of every comparison field."""
    f, idx = report.facts, report.indices
    row: dict[str, str] = {}
    l = idx.l
    row["connectivity"] = "connected (1 linkage class)" if l == 1 else f"non-connected ({l} linkage classes)"
    row["molecularity"] = core.molecularity_summary(report.system.network)
    if "concordant" in f:
        row["concordance"] = "concordant" if f["concordant"] else "discordant"
    else:
        row["concordance"] = "skipped (TooLarge)"
    row["RDK"] = "PL-RDK" if f["rdk"] else "PL-NDK"
    row["NIK"] = "PL-NIK" if f["nik"] else "non-PL-NIK"
    acr = report.conclusion("acr_species")
    if acr is not None:
        n = len(acr.value)
        row["ACR count"] = "no ACR in any species" if n == 0 else f"ACR in {n} species"
    elif report.holds("no_acr"):
        row["ACR count"] = "no ACR in any species"
    else:
        row["ACR count"] = "undetermined"
    for key, mono, multi in (("multiplicity", "monostationary", "multistationary"),
                             ("co-multiplicity", "co_monostationary", "co_multistationary")):
        label_mono, label_multi = mono.replace("_", "-"), multi.replace("_", "-")
        if report.holds(multi):
            row[key] = label_multi
        elif report.holds(mono):
            row[key] = label_mono
        elif _claimed(report, multi):
            row[key] = label_multi
        elif _claimed(report, mono):
            row[key] = label_mono
        else:
            row[key] = "undetermined"
    row["deficiency"] = str(idx.deficiency)
    row["KSSC"] = "KSSC" if report.holds("kssc") else "undetermined"
    if "ldc" in report.data:
        row["LDC deficiency"] = str(report.data["ldc"]["deficiency"])
    elif "ldc_tmatrix" in report.data:
        row["LDC deficiency"] = str(report.data["ldc_tmatrix"]["deficiency"])
    else:
        row["LDC deficiency"] = "n/a"
    return row


@dataclass(frozen=True)
class ComparisonRow:
    field: str
    left: str
    right: str

    @property
    def differs(self) -> bool:
        return self.left != self.right


def compare(a: PropertyReport, b: PropertyReport) -> list[ComparisonRow]:
    ra, rb = summary_row(a), summary_row(b)
    return [ComparisonRow(k, ra[k], rb[k]) for k in COMPARE_FIELDS]


def differences(a: PropertyReport, b: PropertyReport) -> list[ComparisonRow]:
    return [row for row in compare(a, b) if row.differs]
