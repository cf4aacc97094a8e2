"""Power-law kinetic systems.

Kinetic orders are stored exactly (``0.36`` is ``9/25``) so that every
classification question is decided without floating-point equality.
Numerical evaluation converts to floats at call time.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from . import core, exact
from .core import ReactionNetwork
from .errors import NonPositiveState, NotRDK, PreconditionFailure, SpeciesMismatch
from .polynomial import SparsePolynomial

Row = tuple[Fraction, ...]


def _default_symbol(reaction_id: str) -> str:
    return "k_" + re.sub(r"\W", "_", reaction_id)


@dataclass(frozen=True)
class PowerLawKineticSystem:
    """A network with kinetic-order matrix ``orders`` (r x m) and optional rates.

    ``rate_symbols`` names each reaction's rate constant as a monomial in
    abstract parameters (``'k1'``, ``'a_m*beta'``); it drives all symbolic
    comparisons.  ``rates`` holds numeric values when known.
    """

    network: ReactionNetwork
    orders: tuple[Row, ...]
    rates: tuple[float, ...] | None = None
    rate_symbols: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        net = self.network
        orders = tuple(tuple(exact.to_fraction(x) for x in row) for row in self.orders)
        if len(orders) != net.r or any(len(row) != net.m for row in orders):
            raise PreconditionFailure(f"kinetic order matrix must be {net.r} x {net.m}")
        object.__setattr__(self, "orders", orders)
        if self.rates is not None:
            rates = tuple(float(k) for k in self.rates)
            if len(rates) != net.r:
                raise PreconditionFailure("one rate constant per reaction required")
            if any(not k > 0 or not math.isfinite(k) for k in rates):
                raise PreconditionFailure("rate constants must be positive and finite")
            object.__setattr__(self, "rates", rates)
        syms = self.rate_symbols
        if syms is None:
            syms = tuple(_default_symbol(rx.id) for rx in net.reactions)
        syms = tuple(syms)
        if len(syms) != net.r:
            raise PreconditionFailure("one rate symbol per reaction required")
        object.__setattr__(self, "rate_symbols", syms)

    # constructors -----------------------------------------------------
    @classmethod
    def mass_action(cls, net: ReactionNetwork, rates=None, rate_symbols=None, name="") -> "PowerLawKineticSystem":
        orders = tuple(tuple(rx.reactant.vector(net.species)) for rx in net.reactions)
        return cls(net, orders, rates, rate_symbols, name)

    @classmethod
    def from_orders(
        cls,
        net: ReactionNetwork,
        orders: Mapping[str, Mapping[str, object]],
        rates: Mapping[str, float] | None = None,
        rate_symbols: Mapping[str, str] | None = None,
        name: str = "",
    ) -> "PowerLawKineticSystem":
        """Per-reaction sparse orders; reactions not listed get mass action."""
        rows = []
        for rx in net.reactions:
            if rx.id in orders:
                d = orders[rx.id]
                rows.append(tuple(exact.to_fraction(d.get(s, 0)) for s in net.species))
            else:
                rows.append(tuple(rx.reactant.vector(net.species)))
        k = None if rates is None else tuple(rates[rx.id] for rx in net.reactions)
        syms = None
        if rate_symbols is not None:
            syms = tuple(rate_symbols.get(rx.id, _default_symbol(rx.id)) for rx in net.reactions)
        return cls(net, tuple(rows), k, syms, name)

    def with_rates(self, rates: Mapping[str, float] | Sequence[float]) -> "PowerLawKineticSystem":
        """Attach numeric rates, given per reaction id, per position, or per rate parameter."""
        if isinstance(rates, Mapping):
            ids = [rx.id for rx in self.network.reactions]
            if all(i in rates for i in ids):
                values = [float(rates[i]) for i in ids]
            else:
                values = [self.symbol_polynomial(j).evaluate(rates) for j in range(self.network.r)]
        else:
            values = [float(x) for x in rates]
        return replace(self, rates=tuple(values))

    def subsystem(self, reaction_ids) -> "PowerLawKineticSystem":
        keep = set(reaction_ids)
        idx = [j for j, rx in enumerate(self.network.reactions) if rx.id in keep]
        return PowerLawKineticSystem(
            self.network.subnetwork(keep),
            tuple(self.orders[j] for j in idx),
            None if self.rates is None else tuple(self.rates[j] for j in idx),
            tuple(self.rate_symbols[j] for j in idx),
            self.name,
        )

    # helpers ----------------------------------------------------------
    @property
    def species(self) -> tuple[str, ...]:
        return self.network.species

    def symbol_polynomial(self, j: int) -> SparsePolynomial:
        return SparsePolynomial.parse_monomial(self.rate_symbols[j])

    def rate_parameters(self) -> set[str]:
        out: set[str] = set()
        for j in range(self.network.r):
            out |= self.symbol_polynomial(j).symbols()
        return out

    @cached_property
    def _numeric(self):
        f = np.array([[float(x) for x in row] for row in self.orders], dtype=float)
        n_mat = np.array([[float(x) for x in row] for row in core.stoichiometric_matrix(self.network)], dtype=float)
        return f, n_mat

    def require_rates(self) -> np.ndarray:
        if self.rates is None:
            raise PreconditionFailure("numeric rate constants are required")
        return np.asarray(self.rates, dtype=float)


# ----------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class KineticClass:
    rdk: bool
    nik: bool
    isk: bool


@dataclass(frozen=True)
class CFSubset:
    reactant: int  # complex index
    row: Row
    reactions: tuple[str, ...]


@dataclass(frozen=True)
class CFPartition:
    subsets: tuple[CFSubset, ...]
    n_R: int
    r_mcf: int


def cf_partition(sys: PowerLawKineticSystem) -> CFPartition:
    net = sys.network
    groups: dict[tuple[int, Row], list[str]] = {}
    for j, rx in enumerate(net.reactions):
        key = (net.complex_index[rx.reactant], sys.orders[j])
        groups.setdefault(key, []).append(rx.id)
    subsets = tuple(CFSubset(c, row, tuple(ids)) for (c, row), ids in groups.items())
    # maximal CF-subnetwork: all branches at RDK nodes, largest subset at NDK nodes
    best: dict[int, int] = {}
    for sub in subsets:
        best[sub.reactant] = max(best.get(sub.reactant, 0), len(sub.reactions))
    return CFPartition(subsets, len(subsets), sum(best.values()))


def classify(sys: PowerLawKineticSystem) -> KineticClass:
    part = cf_partition(sys)
    rdk = part.n_R == len(sys.network.reactant_complexes)
    nik = all(x >= 0 for row in sys.orders for x in row)
    rows = [sub.row for sub in part.subsets]
    isk = len(set(rows)) == len(rows)
    return KineticClass(rdk=rdk, nik=nik, isk=isk)


def reactant_rows(sys: PowerLawKineticSystem) -> dict[int, Row]:
    """Kinetic-order row per reactant complex; raises NotRDK on conflict."""
    out: dict[int, Row] = {}
    net = sys.network
    for j, rx in enumerate(net.reactions):
        c = net.complex_index[rx.reactant]
        if c in out and out[c] != sys.orders[j]:
            raise NotRDK(f"reactant complex {rx.reactant} has conflicting kinetic orders")
        out.setdefault(c, sys.orders[j])
    return out


@dataclass(frozen=True)
class TMatrices:
    """T-matrix (m x n_r) and its augmentation by the linkage indicator rows."""

    T: tuple[tuple[Fraction, ...], ...]
    augmented: tuple[tuple[Fraction, ...], ...]
    column_labels: tuple[str, ...]
    row_labels: tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return len(self.T)

    @property
    def n_r(self) -> int:
        return len(self.T[0]) if self.T else 0

    @property
    def linkage_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.augmented[self.m:]

    @property
    def tik(self) -> bool:
        return exact.rank(self.augmented) == self.n_r

    def columns(self) -> list[list[Fraction]]:
        return [list(col) for col in zip(*self.T)]

    def classes(self) -> list[list[int]]:
        return [[j for j, x in enumerate(row) if x != 0] for row in self.linkage_rows]

    def kinetic_rank(self) -> int:
        """Dimension of the kinetic-order subspace assuming weak reversibility.

        In a weakly reversible network every pair of complexes in a linkage
        class is joined by a directed path, so the kinetic subspace is spanned
        by differences of T-columns within each class.
        """
        cols = self.columns()
        diffs = []
        for cls in self.classes():
            for j in cls[1:]:
                diffs.append([a - b for a, b in zip(cols[j], cols[cls[0]])])
        return exact.rank(diffs) if diffs else 0

    @classmethod
    def from_augmented(cls, rows, column_labels, row_labels=(), m=None) -> "TMatrices":
        aug = tuple(tuple(exact.to_fraction(x) for x in row) for row in rows)
        if m is None:
            raise ValueError("number of species rows m is required")
        return cls(aug[:m], aug, tuple(column_labels), tuple(row_labels))


def t_matrices(sys: PowerLawKineticSystem) -> TMatrices:
    net = sys.network
    rows = reactant_rows(sys)
    cols = list(net.reactant_complexes)
    li = core.linkage_analysis(net)
    T = tuple(tuple(rows[c][i] for c in cols) for i in range(net.m))
    L = tuple(tuple(Fraction(int(c in cls)) for c in cols) for cls in li.linkage_classes)
    labels = tuple(net.complexes[c].format(net.species) for c in cols)
    return TMatrices(T, T + L, labels, tuple(net.species) + tuple(f"L{i + 1}" for i in range(li.l)))


def kinetic_complexes(sys: PowerLawKineticSystem) -> list[list[Fraction]]:
    """Kinetic vector of every complex: its T-column if a reactant, else its stoichiometry."""
    net = sys.network
    rows = reactant_rows(sys)
    return [list(rows[i]) if i in rows else c.vector(net.species) for i, c in enumerate(net.complexes)]


@dataclass(frozen=True)
class KineticSubspace:
    basis: tuple[tuple[Fraction, ...], ...]
    dimension: int
    kinetic_deficiency: int | None


def kinetic_subspace_tilde(sys: PowerLawKineticSystem) -> KineticSubspace:
    net = sys.network
    kc = kinetic_complexes(sys)
    vecs = []
    for rx in net.reactions:
        a = kc[net.complex_index[rx.reactant]]
        b = kc[net.complex_index[rx.product]]
        vecs.append([y - x for x, y in zip(a, b)])
    basis = exact.row_basis(vecs)
    dim = len(basis)
    li = core.linkage_analysis(net)
    kd = net.n - li.l - dim if li.weakly_reversible else None
    return KineticSubspace(tuple(tuple(v) for v in basis), dim, kd)


# ----------------------------------------------------------------------
# species formation rate function, symbolic form

@dataclass(frozen=True)
class GeneralizedMonomialSum:
    """Sum of ``coefficient * x^exponent`` with exponent vectors merged exactly."""

    terms: tuple[tuple[Row, SparsePolynomial], ...]

    @classmethod
    def build(cls, pairs) -> "GeneralizedMonomialSum":
        acc: dict[Row, SparsePolynomial] = {}
        for exp_vec, coef in pairs:
            acc[exp_vec] = acc.get(exp_vec, SparsePolynomial()) + coef
        return cls(tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero())))

    def as_dict(self) -> dict[Row, SparsePolynomial]:
        return dict(self.terms)

    def scale(self, c) -> "GeneralizedMonomialSum":
        c = exact.to_fraction(c)
        return GeneralizedMonomialSum.build((e, p * c) for e, p in self.terms)

    def format(self, species: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms:
            mono = "*".join(
                s if x == 1 else f"{s}^{exact.format_fraction(x)}" for s, x in zip(species, e) if x != 0
            )
            out.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(out)


def formal_sfrf(sys: PowerLawKineticSystem, numeric: bool = False) -> list[GeneralizedMonomialSum]:
    """Per-species sum of ``k_j x^{F_j} (y'-y)_j``; coefficients symbolic unless ``numeric``."""
    net = sys.network
    vecs = core.reaction_vectors(net)
    if numeric:
        coefs = [SparsePolynomial.constant(Fraction(k)) for k in sys.require_rates()]
    else:
        coefs = [sys.symbol_polynomial(j) for j in range(net.r)]
    out = []
    for i in range(net.m):
        pairs = [(sys.orders[j], coefs[j] * vecs[j][i]) for j in range(net.r) if vecs[j][i] != 0]
        out.append(GeneralizedMonomialSum.build(pairs))
    return out


def _numeric_mode(a: PowerLawKineticSystem, b: PowerLawKineticSystem) -> bool:
    return a.rates is not None and b.rates is not None


def _sums_match(fa, fb, rel_tol: float) -> bool:
    for sa, sb in zip(fa, fb):
        da, db = sa.as_dict(), sb.as_dict()
        if set(da) != set(db):
            return False
        for e in da:
            diff = da[e] - db[e]
            if diff.is_zero():
                continue
            scale = max(max(abs(c) for c in da[e].coefficients()), max(abs(c) for c in db[e].coefficients()))
            if any(abs(c) > rel_tol * scale for c in diff.coefficients()):
                return False
    return True


def _check_species(a: PowerLawKineticSystem, b: PowerLawKineticSystem) -> bool:
    if a.species == b.species:
        return True
    if len(a.species) != len(b.species):
        return False
    raise SpeciesMismatch(f"species {a.species} vs {b.species}")


def dynamic_equivalence(a: PowerLawKineticSystem, b: PowerLawKineticSystem, rel_tol: float = 1e-12) -> bool:
    """True iff the two species formation rate functions coincide term by term.

    Systems of different dimension are never equivalent; systems of equal
    dimension with different species names raise :class:`SpeciesMismatch`.
    With numeric rates on both sides coefficients are compared to
    ``rel_tol``; otherwise the rate symbols are compared exactly.
    """
    return linear_conjugacy(a, b, [1] * len(a.species), rel_tol)


def linear_conjugacy(a: PowerLawKineticSystem, b: PowerLawKineticSystem, c, rel_tol: float = 1e-12) -> bool:
    """True iff ``f_b = diag(c) f_a`` term by term."""
    if not _check_species(a, b):
        return False
    c = [exact.to_fraction(x) for x in c]
    if len(c) != len(a.species) or any(x <= 0 for x in c):
        raise PreconditionFailure("conjugacy vector must be positive with one entry per species")
    numeric = _numeric_mode(a, b)
    fa = [s.scale(ci) for s, ci in zip(formal_sfrf(a, numeric), c)]
    fb = formal_sfrf(b, numeric)
    return _sums_match(fa, fb, rel_tol if numeric else 0.0)


# ----------------------------------------------------------------------
# numerical evaluation

def _check_state(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise NonPositiveState(f"state must be strictly positive, got {x}")
    return x


def reaction_rates(sys: PowerLawKineticSystem, x) -> np.ndarray:
    x = _check_state(x)
    f_mat, _ = sys._numeric
    k = sys.require_rates()
    return k * np.exp(f_mat @ np.log(x))


def eval_f(sys: PowerLawKineticSystem, x) -> np.ndarray:
    _, n_mat = sys._numeric
    return n_mat @ reaction_rates(sys, x)


def term_scale(sys: PowerLawKineticSystem, x) -> np.ndarray:
    """Per-species sum of absolute term magnitudes; the yardstick for 'relative' residuals."""
    _, n_mat = sys._numeric
    return np.abs(n_mat) @ reaction_rates(sys, x)


def relative_residual(sys: PowerLawKineticSystem, x) -> float:
    f = eval_f(sys, x)
    scale = term_scale(sys, x)
    return float(np.max(np.abs(f) / np.where(scale > 0, scale, 1.0)))


def jacobian(sys: PowerLawKineticSystem, x) -> np.ndarray:
    """Analytic Jacobian ``N diag(K(x)) F diag(1/x)``."""
    x = _check_state(x)
    f_mat, n_mat = sys._numeric
    k_x = reaction_rates(sys, x)
    return n_mat @ (k_x[:, None] * f_mat) / x[None, :]
