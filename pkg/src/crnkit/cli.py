"""Command-line interface: ``crnkit analyze|compare|equilibria|stability|decompose|builtin``.

Network references are either ``builtin:<name>`` or a path to a ``.crn``
file.  Exit codes: 0 success, 2 parse error, 3 precondition failure,
4 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys as _sys
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import __version__, core, crnfile, decomp, exact, kinetics, models, numerics
from .analysis import report as rep
from .errors import CRNError, NumericFailure, ParseError, PreconditionFailure
from .kinetics import PowerLawKineticSystem

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NUMERIC = 0, 2, 3, 4


@dataclass(frozen=True)
class Source:
    """A resolved network reference."""

    ref: str
    system: PowerLawKineticSystem | None
    builtin: models.BuiltinModel | None = None

    @property
    def context(self) -> rep.ReportContext:
        return self.builtin.context if self.builtin else rep.ReportContext()

    @property
    def label(self) -> str:
        if self.system is not None and self.system.name:
            return self.system.name
        return self.ref


def resolve(ref: str) -> Source:
    if ref.startswith("builtin:"):
        model = models.builtin(ref[len("builtin:"):])
        return Source(ref, model.system, model)
    try:
        return Source(ref, crnfile.load(ref))
    except OSError as exc:
        raise PreconditionFailure(f"cannot read {ref}: {exc.strerror}") from None


def _require_system(src: Source) -> PowerLawKineticSystem:
    if src.system is None:
        raise PreconditionFailure(f"{src.ref} has no reaction network (try 'crnkit builtin show')")
    return src.system


def read_rates(path: str) -> dict[str, float]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise PreconditionFailure(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"rates file is not JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or not all(isinstance(v, (int, float)) for v in data.values()):
        raise ParseError("rates file must be a JSON object of numbers", 1, 1)
    return {str(k): float(v) for k, v in data.items()}


def read_state(text: str, species: Sequence[str]) -> np.ndarray:
    """Parse ``--state``: inline ``a,b,c`` or a CSV file, optionally with a species header."""
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    rows = [r for r in csv.reader(io.StringIO(text.replace(";", ","))) if any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty state", 1, 1)
    header = None
    try:
        float(rows[0][0])
    except ValueError:
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    try:
        values = [float(c) for r in rows for c in r if c.strip()]
    except ValueError as exc:
        raise ParseError(f"bad state value: {exc}", 1, 1) from None
    if header is not None:
        if sorted(header) != sorted(species):
            raise PreconditionFailure(f"state header {header} does not match species {list(species)}")
        lookup = dict(zip(header, values))
        values = [lookup[s] for s in species]
    if len(values) != len(species):
        raise PreconditionFailure(f"state has {len(values)} entries, network has {len(species)} species")
    return np.array(values)


def _with_rates(system: PowerLawKineticSystem, rates: dict[str, float] | None) -> PowerLawKineticSystem:
    if rates is None:
        return system
    try:
        return system.with_rates(rates)
    except KeyError as exc:
        raise PreconditionFailure(f"rates file lacks a value for {exc.args[0]}") from None


def _random_start(system: PowerLawKineticSystem, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.exp(rng.normal(0.0, 1.0, system.network.m))


# ----------------------------------------------------------------------
# JSON helpers

def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return exact.format_fraction(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2)


def _fmt(x: float) -> str:
    return format(float(x), ".6g")


def _vec(values) -> str:
    return "(" + ", ".join(_fmt(v) for v in values) + ")"


# ----------------------------------------------------------------------
# report rendering

def _stability_dict(v: numerics.StabilityVerdict) -> dict[str, Any]:
    return {
        "classification": v.classification,
        "eigenvalues": list(v.eigenvalues),
        "nonzero_eigenvalues": list(v.nonzero),
        "zero_count": v.zero_count,
        "nondegenerate": v.nondegenerate,
        "zero_tol": v.zero_tol,
        "residual": v.residual,
    }


def _curve_dict(c) -> dict[str, Any]:
    return asdict(c) | {"label": c.label}


def report_dict(r: rep.PropertyReport, src: Source) -> dict[str, Any]:
    sysm, d, f = r.system, r.data, r.facts
    part = d["cf_partition"]
    kin: dict[str, Any] = {
        "rdk": f["rdk"], "nik": f["nik"], "isk": f["isk"],
        "cf_partition": {
            "N_R": part.n_R, "r_mcf": part.r_mcf,
            "subsets": [{"reactant": sysm.network.complexes[s.reactant].format(sysm.species), "reactions": s.reactions}
                        for s in part.subsets],
        },
        "orders": [list(row) for row in sysm.orders],
    }
    if "tmatrices" in d:
        tm = d["tmatrices"]
        kin["tmatrices"] = {"tik": tm.tik, "kinetic_rank": tm.kinetic_rank()}
    if "kinetic_subspace" in d:
        ks = d["kinetic_subspace"]
        kin["kinetic_subspace"] = {"dimension": ks.dimension, "kinetic_deficiency": ks.kinetic_deficiency}

    cres = d.get("concordance")
    conc = ({"skipped": "TooLarge"} if cres is None else
            {"concordant": cres.concordant, "patterns_checked": cres.patterns_checked,
             "alpha": cres.alpha, "sigma": cres.sigma})

    ires = d.get("injectivity")
    injd = None
    if ires is not None:
        injd = {"verdict": ires.verdict, "terms": len(ires.determinant.coefficients()),
                "determinant": str(ires.determinant), "replaced_rows": ires.replaced_rows}

    plp = d.get("plp")
    plpd = None
    if plp is not None:
        plpd = {"parameter_basis": plp.parameter_basis, "reference_equilibrium": plp.reference_equilibrium,
                "canonical_rates": plp.canonical_rates}
    acr = r.conclusion("acr_species")
    mult = d.get("multiplicity")
    multd = None
    if mult is not None:
        multd = {"direction": mult.direction, "stoichiometric_class": _curve_dict(mult.stoich_class),
                 "co_stoichiometric_class": _curve_dict(mult.co_class)}
    stab = d.get("stability")

    prov = [{"datum": "source", "source": src.ref, "reconstructed": False}]
    if src.builtin:
        prov += [asdict(p) for p in src.builtin.provenance]
    return {
        "system": r.system.name or src.ref,
        "species": sysm.species,
        "indices": asdict(r.indices),
        "kinetics": kin,
        "decompositions": {k: {"parts": v.parts, "dimensions": v.part_dimensions, "valid": v.valid}
                           for k, v in d["decompositions"].items()},
        "concordance": conc,
        "injectivity": injd,
        "plp": plpd,
        "acr": None if acr is None else list(acr.value),
        "multiplicity": multd,
        "stability": None if stab is None else _stability_dict(stab),
        "conclusions": {
            "derived": [{"claim": c.claim, "rule": c.rule, "statement": c.statement,
                         "value": c.value if not isinstance(c.value, bool) else None} for c in r.conclusions],
            "published_claims": r.claims,
            "summary": rep.summary_row(r),
            "errors": d["errors"],
        },
        "provenance": prov,
    }


_CLAIM_LABELS = {
    "complex_balanced_equilibria": "complex balanced equilibria",
    "birch": "Birch",
    "kssc": "KSSC",
    "monostationary": "monostationary",
    "multistationary": "multistationary",
    "co_monostationary": "co-monostationary",
    "co_multistationary": "co-multistationary",
    "plp": "PLP",
    "acr_species": "ACR species",
    "no_acr": "no ACR",
}


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render_text(r: rep.PropertyReport, src: Source) -> str:
    sysm, idx, d, f = r.system, r.indices, r.data, r.facts
    out = [f"system: {r.system.name or src.ref}", "species: " + " ".join(sysm.species)]
    out.append(f"species m: {idx.m}  complexes n: {idx.n}  reactant complexes n_r: {idx.n_r}  reactions r: {idx.r}")
    out.append(f"linkage classes: {idx.l}  strong: {idx.sl}  terminal: {idx.t}")
    out.append(f"rank: {idx.s}")
    out.append(f"deficiency: {idx.deficiency}")
    out.append(f"weakly reversible: {_yes(idx.weakly_reversible)}")
    out.append(f"t-minimal: {_yes(idx.t_minimal)}")
    cons = d["conservation_vector"]
    out.append("conservative: " + ("yes " + _vec(cons) if cons is not None else "no"))
    out.append(f"molecularity: {core.molecularity_summary(sysm.network)}")
    if d.get("concordance") is None:
        out.append("concordance: skipped (TooLarge)")
    else:
        out.append(f"concordant: {_yes(f['concordant'])}")
    out.append("kinetics: " + ", ".join([
        "PL-RDK" if f["rdk"] else "PL-NDK",
        "PL-NIK" if f["nik"] else "not PL-NIK",
        "ISK" if f["isk"] else "not ISK",
    ]))
    part = d["cf_partition"]
    out.append(f"CF-subsets: N_R = {part.n_R}, r_mcf = {part.r_mcf}")
    for key, dec in d["decompositions"].items():
        parts = " | ".join("{" + ", ".join(p) + "}" for p in dec.parts)
        out.append(f"finest {key} decomposition: {parts}")
    ires = d.get("injectivity")
    if ires is not None:
        n = len(ires.determinant.coefficients())
        out.append(f"injectivity: {ires.verdict} (det(M*) has {n} terms)")
    if "ldc" in d:
        out.append(f"LDC deficiency: {d['ldc']['deficiency']}")
    elif "ldc_tmatrix" in d:
        t = d["ldc_tmatrix"]
        out.append(f"LDC T-matrix: kinetic rank {t['kinetic_rank']}, deficiency {t['deficiency']}, tik {_yes(t['tik'])}")
    plp = d.get("plp")
    if plp is not None:
        for v in plp.parameter_basis:
            out.append(f"PLP basis: {_vec(v)}")
        acr = r.conclusion("acr_species")
        out.append("ACR species: " + (", ".join(acr.value) if acr and acr.value else "none"))
    mult = d.get("multiplicity")
    if mult is not None:
        st, co = mult.stoich_class, mult.co_class
        out.append(f"curve search, stoichiometric classes: {st.label}" + (f" (witness at t = {_fmt(st.t)})" if st.multi else ""))
        out.append(f"curve search, co-stoichiometric classes: {co.label}" + (f" (witness at t = {_fmt(co.t)})" if co.multi else ""))
    stab = d.get("stability")
    if stab is not None:
        out.append(f"stability: {stab.classification}, nonzero eigenvalues "
                   + _vec([l.real for l in stab.nonzero]))
    for key, msg in sorted(d["errors"].items()):
        if key != "concordance":
            out.append(f"{key}: {msg}")
    out.append("conclusions:")
    for c in r.conclusions:
        label = _CLAIM_LABELS.get(c.claim, c.claim)
        value = c.value if not isinstance(c.value, bool) else None
        extra = f" [{', '.join(value) or 'none'}]" if value is not None else ""
        out.append(f"  {label}: yes{extra} (rule {c.rule})")
    if r.claims:
        out.append("published claims:")
        for claim, label in sorted(r.claims.items()):
            out.append(f"  {_CLAIM_LABELS.get(claim, claim)}: {label}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------
# commands

def _analysis_inputs(args, src: Source) -> tuple[PowerLawKineticSystem, rep.ReportContext]:
    system = _require_system(src)
    ctx = src.context
    rates = read_rates(args.rates) if args.rates else None
    if rates is not None:
        system = _with_rates(system, rates)
        ctx = replace(ctx, equilibria=(), reference_state=None)
    if getattr(args, "ldc", None):
        ctx = replace(ctx, ldc=_require_system(resolve(args.ldc)), ldc_tmatrix=None)
    if getattr(args, "conjugacy", None):
        ctx = replace(ctx, conjugacy=tuple(Fraction(c.strip()) for c in args.conjugacy.split(",")))
    if args.state:
        ctx = replace(ctx, reference_state=tuple(read_state(args.state, system.species)))
    elif rates is not None:
        ctx = replace(ctx, reference_state=tuple(numerics.find_equilibrium(system, _random_start(system, args.seed))))
    return system, ctx


def cmd_analyze(args) -> str:
    src = resolve(args.ref)
    system, ctx = _analysis_inputs(args, src)
    r = rep.analyze(system, ctx, injectivity=not args.no_injectivity)
    return dumps(report_dict(r, src)) + "\n" if args.json else render_text(r, src)


def cmd_compare(args) -> str:
    reports = []
    for ref in (args.left, args.right):
        src = resolve(ref)
        reports.append((src, rep.analyze(_require_system(src), src.context)))
    (sa, ra), (sb, rb) = reports
    rows = rep.compare(ra, rb)
    if args.json:
        return dumps({
            "left": sa.label, "right": sb.label,
            "rows": [{"field": x.field, "left": x.left, "right": x.right, "differs": x.differs} for x in rows],
            "differences": sum(x.differs for x in rows),
        }) + "\n"
    width = max(len(x.field) for x in rows)
    wl = max(len(x.left) for x in rows + [rep.ComparisonRow("", sa.label, "")])
    lines = [f"  {'field':<{width}}  {sa.label:<{wl}}  {sb.label}"]
    for x in rows:
        mark = "*" if x.differs else " "
        lines.append(f"{mark} {x.field:<{width}}  {x.left:<{wl}}  {x.right}")
    lines.append(f"differences: {sum(x.differs for x in rows)}")
    return "\n".join(lines) + "\n"


def _equilibria(args, src: Source) -> list[np.ndarray]:
    system = _require_system(src)
    rates = read_rates(args.rates) if args.rates else None
    name = src.builtin.name if src.builtin else None
    if name == "schmitz" and rates is None:
        return [numerics.schmitz_equilibrium(models.SCHMITZ_RATES, m2, system).state for m2 in (args.m2 or [730.0])]
    if name in ("anderies-gt", "anderies-0"):
        if rates is None or args.total is None:
            raise PreconditionFailure("Anderies equilibria need --rates (k1, k2, a_m, beta) and --total")
        rated = _with_rates(system, rates)
        found = numerics.anderies_equilibria(system, rates, args.total)
        for x in found:
            if kinetics.relative_residual(rated, x) > 1e-9:
                raise NumericFailure("equilibrium candidate failed the residual check")
        return found
    system = _with_rates(system, rates)
    system.require_rates()
    x0 = read_state(args.state, system.species) if args.state else _random_start(system, args.seed)
    return [numerics.find_equilibrium(system, x0)]


def cmd_equilibria(args) -> str:
    src = resolve(args.ref)
    found = _equilibria(args, src)
    species = src.system.species
    if args.json:
        return dumps({"species": species, "equilibria": [dict(zip(species, x)) for x in found]}) + "\n"
    if not found:
        return "no equilibrium found in this class\n"
    lines = ["  ".join(f"{s:>14}" for s in species)]
    lines += ["  ".join(f"{v:>14.6f}" for v in x) for x in found]
    return "\n".join(lines) + "\n"


def cmd_stability(args) -> str:
    src = resolve(args.ref)
    system = _require_system(src)
    rates = read_rates(args.rates) if args.rates else None
    system = _with_rates(system, rates)
    if args.state:
        x = read_state(args.state, system.species)
    elif rates is None and src.context.reference_state is not None:
        x = np.asarray(src.context.reference_state)
    else:
        system.require_rates()
        x = numerics.find_equilibrium(system, _random_start(system, args.seed))
    v = numerics.stability(system, x, residual_tol=args.residual_tol)
    if args.json:
        return dumps({"state": dict(zip(system.species, x)), **_stability_dict(v)}) + "\n"
    lines = [f"state: {_vec(x)}", f"relative residual: {v.residual:.3e}",
             "eigenvalues: " + ", ".join(f"{l.real:.5f}" + (f"{l.imag:+.5f}i" if l.imag else "") for l in v.eigenvalues),
             f"zero eigenvalues: {v.zero_count} (tolerance {v.zero_tol:.2e})",
             f"classification: {v.classification}"]
    return "\n".join(lines) + "\n"


def cmd_decompose(args) -> str:
    src = resolve(args.ref)
    net = _require_system(src).network
    decs = {
        "independent": decomp.finest_independent(net),
        "incidence-independent": decomp.finest_incidence_independent(net),
    }
    if args.json:
        return dumps({k: {"parts": v.parts, "dimensions": v.part_dimensions, "total_dimension": v.total_dimension,
                          "valid": v.valid} for k, v in decs.items()}) + "\n"
    lines = []
    for k, v in decs.items():
        lines.append(f"finest {k} decomposition ({len(v)} parts, dimension {v.total_dimension}):")
        for part, dim in zip(v.parts, v.part_dimensions):
            lines.append(f"  dim {dim}: " + ", ".join(part))
    return "\n".join(lines) + "\n"


def cmd_builtin(args) -> str:
    if args.action == "list":
        if args.json:
            return dumps({n: models.builtin(n).description for n in models.BUILTIN_NAMES}) + "\n"
        width = max(map(len, models.BUILTIN_NAMES))
        return "\n".join(f"{n:<{width}}  {models.builtin(n).description}" for n in models.BUILTIN_NAMES) + "\n"
    if not args.name:
        raise PreconditionFailure("builtin show needs a model name")
    model = models.builtin(args.name)
    if model.system is not None:
        return crnfile.serialize(model.system)
    tm = model.tmatrix
    lines = ["  ".join(tm.column_labels)]
    lines += ["  ".join(exact.format_fraction(x) for x in row) for row in tm.augmented]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crnkit", description="Structural and kinetic analysis of power-law reaction networks.")
    p.add_argument("--version", action="version", version=f"crnkit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for random starting states (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full property report")
    a.add_argument("ref")
    a.add_argument("--ldc", help="low-deficiency complement (reference)")
    a.add_argument("--conjugacy", help="comma-separated conjugacy vector for --ldc")
    a.add_argument("--rates", help="JSON file of rate values by reaction id or parameter")
    a.add_argument("--state", help="reference equilibrium, inline CSV or CSV file")
    a.add_argument("--no-injectivity", action="store_true", help="skip the det(M*) expansion")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", parents=[common], help="side-by-side property comparison")
    c.add_argument("left")
    c.add_argument("right")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("equilibria", parents=[common], help="positive equilibria")
    e.add_argument("ref")
    e.add_argument("--rates")
    e.add_argument("--state", help="starting state (selects the stoichiometric class)")
    e.add_argument("--m2", type=float, action="append", help="Schmitz M2 value (repeatable, default 730)")
    e.add_argument("--total", type=float, help="Anderies class total A1 + A2 + A3")
    e.set_defaults(func=cmd_equilibria)

    s = sub.add_parser("stability", parents=[common], help="Jacobian spectrum at an equilibrium")
    s.add_argument("ref")
    s.add_argument("--rates")
    s.add_argument("--state")
    s.add_argument("--residual-tol", type=float, default=1e-6, help="accepted relative residual of f (default 1e-6)")
    s.set_defaults(func=cmd_stability)

    d = sub.add_parser("decompose", parents=[common], help="finest independent decompositions")
    d.add_argument("ref")
    d.set_defaults(func=cmd_decompose)

    b = sub.add_parser("builtin", parents=[common], help="list or print built-in models")
    b.add_argument("action", choices=("list", "show"))
    b.add_argument("name", nargs="?")
    b.set_defaults(func=cmd_builtin)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _sys.stdout.write(args.func(args))
    except ParseError as exc:
        print(f"crnkit: parse error: {exc}", file=_sys.stderr)
        return EXIT_PARSE
    except NumericFailure as exc:
        print(f"crnkit: numeric failure ({type(exc).__name__}): {exc}", file=_sys.stderr)
        return EXIT_NUMERIC
    except CRNError as exc:
        print(f"crnkit: {type(exc).__name__}: {exc}", file=_sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
