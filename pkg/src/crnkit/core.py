"""Reaction networks and their structural indices.

All structural answers (rank, deficiency, conservation certificates) are
computed in exact rational arithmetic.  Species order is declaration order
and every vector or matrix in the package is indexed by it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from . import exact, lp
from .errors import InvalidNetwork


@dataclass(frozen=True)
class Complex:
    """A nonnegative combination of species; ``Complex({})`` is the zero complex."""

    coefficients: tuple[tuple[str, Fraction], ...]

    def __init__(self, coefficients: Mapping[str, object] | Iterable[tuple[str, object]] = ()):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        merged: dict[str, Fraction] = {}
        for s, c in items:
            c = exact.to_fraction(c)
            if c < 0:
                raise InvalidNetwork(f"negative stoichiometric coefficient {c} for {s}")
            merged[s] = merged.get(s, Fraction(0)) + c
        object.__setattr__(
            self, "coefficients", tuple(sorted((s, c) for s, c in merged.items() if c != 0))
        )

    @property
    def support(self) -> frozenset[str]:
        return frozenset(s for s, _ in self.coefficients)

    def coefficient(self, species: str) -> Fraction:
        return dict(self.coefficients).get(species, Fraction(0))

    def vector(self, species: Sequence[str]) -> list[Fraction]:
        d = dict(self.coefficients)
        return [d.get(s, Fraction(0)) for s in species]

    @property
    def molecularity(self) -> Fraction:
        return sum((c for _, c in self.coefficients), Fraction(0))

    def format(self, species_order: Sequence[str] | None = None) -> str:
        if not self.coefficients:
            return "0"
        d = dict(self.coefficients)
        order = [s for s in species_order if s in d] if species_order else sorted(d)
        parts = []
        for s in order:
            c = d[s]
            parts.append(s if c == 1 else f"{exact.format_fraction(c)} {s}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class Reaction:
    id: str
    reactant: Complex
    product: Complex

    def __post_init__(self):
        if self.reactant == self.product:
            raise InvalidNetwork(f"reaction {self.id}: reactant equals product")

    def __str__(self) -> str:
        return f"{self.id}: {self.reactant} -> {self.product}"


@dataclass(frozen=True)
class StructuralIndices:
    m: int
    n: int
    n_r: int
    r: int
    l: int
    sl: int
    t: int
    s: int
    deficiency: int
    weakly_reversible: bool
    t_minimal: bool
    point_terminal: bool
    cycle_terminal: bool


@dataclass(frozen=True)
class LinkageInfo:
    l: int
    sl: int
    t: int
    n_r: int
    weakly_reversible: bool
    t_minimal: bool
    point_terminal: bool
    cycle_terminal: bool
    linkage_classes: tuple[tuple[int, ...], ...]  # complex indices per class
    terminal_classes: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ReactionNetwork:
    """The triple (species, complexes, reactions).

    ``complexes`` is derived: the distinct reactant/product complexes in
    order of first appearance.  Species that occur in no complex are allowed
    here (subnetworks keep the parent's species space); the file parser is
    stricter.
    """

    species: tuple[str, ...]
    reactions: tuple[Reaction, ...]
    complexes: tuple[Complex, ...] = field(init=False)

    def __post_init__(self):
        species = tuple(self.species)
        reactions = tuple(self.reactions)
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "reactions", reactions)
        if not species:
            raise InvalidNetwork("a network needs at least one species")
        if len(set(species)) != len(species):
            raise InvalidNetwork("duplicate species")
        if not reactions:
            raise InvalidNetwork("a network needs at least one reaction")
        ids = [rx.id for rx in reactions]
        if len(set(ids)) != len(ids):
            raise InvalidNetwork("duplicate reaction ids")
        known = set(species)
        seen: dict[Complex, int] = {}
        for rx in reactions:
            for c in (rx.reactant, rx.product):
                missing = c.support - known
                if missing:
                    raise InvalidNetwork(f"reaction {rx.id} uses undeclared species {sorted(missing)}")
                seen.setdefault(c, len(seen))
        object.__setattr__(self, "complexes", tuple(seen))

    @classmethod
    def from_reactions(cls, species: Sequence[str], reactions: Iterable[tuple]) -> "ReactionNetwork":
        """Build from ``(id, reactant_map, product_map)`` triples."""
        rxs = tuple(Reaction(rid, Complex(a), Complex(b)) for rid, a, b in reactions)
        return cls(tuple(species), rxs)

    # sizes ------------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.species)

    @property
    def n(self) -> int:
        return len(self.complexes)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @cached_property
    def complex_index(self) -> dict[Complex, int]:
        return {c: i for i, c in enumerate(self.complexes)}

    @cached_property
    def reaction_index(self) -> dict[str, int]:
        return {rx.id: j for j, rx in enumerate(self.reactions)}

    @cached_property
    def reactant_complexes(self) -> tuple[int, ...]:
        """Indices of reactant complexes, in order of first use as a reactant."""
        out: dict[int, None] = {}
        for rx in self.reactions:
            out.setdefault(self.complex_index[rx.reactant], None)
        return tuple(out)

    def subnetwork(self, reaction_ids: Iterable[str]) -> "ReactionNetwork":
        wanted = set(reaction_ids)
        return ReactionNetwork(self.species, tuple(rx for rx in self.reactions if rx.id in wanted))

    def is_monomolecular(self) -> bool:
        return all(c.molecularity == 1 and len(c.support) == 1 for c in self.complexes)

    def __str__(self) -> str:
        return "\n".join(str(rx) for rx in self.reactions)


# ----------------------------------------------------------------------
# graph structure

def complex_graph(net: ReactionNetwork) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(net.n))
    for rx in net.reactions:
        g.add_edge(net.complex_index[rx.reactant], net.complex_index[rx.product])
    return g


def linkage_analysis(net: ReactionNetwork) -> LinkageInfo:
    g = complex_graph(net)
    weak = sorted(tuple(sorted(c)) for c in nx.weakly_connected_components(g))
    strong = [frozenset(c) for c in nx.strongly_connected_components(g)]
    terminal = sorted(
        tuple(sorted(c)) for c in strong if all(v in c for u in c for v in g.successors(u))
    )
    l, sl, t = len(weak), len(strong), len(terminal)
    n_r = len(net.reactant_complexes)
    return LinkageInfo(
        l=l,
        sl=sl,
        t=t,
        n_r=n_r,
        weakly_reversible=sl == l,
        t_minimal=t == l,
        point_terminal=t == net.n - n_r,
        cycle_terminal=net.n == n_r,
        linkage_classes=tuple(weak),
        terminal_classes=tuple(terminal),
    )


# ----------------------------------------------------------------------
# linear structure

def reaction_vectors(net: ReactionNetwork) -> list[list[Fraction]]:
    out = []
    for rx in net.reactions:
        a = rx.reactant.vector(net.species)
        b = rx.product.vector(net.species)
        out.append([y - x for x, y in zip(a, b)])
    return out


def stoichiometric_matrix(net: ReactionNetwork) -> exact.Matrix:
    """The m x r matrix whose column j is product(j) - reactant(j)."""
    return exact.transpose(reaction_vectors(net))


def incidence_vectors(net: ReactionNetwork) -> list[list[Fraction]]:
    out = []
    for rx in net.reactions:
        v = [Fraction(0)] * net.n
        v[net.complex_index[rx.product]] += 1
        v[net.complex_index[rx.reactant]] -= 1
        out.append(v)
    return out


def incidence_matrix(net: ReactionNetwork) -> exact.Matrix:
    return exact.transpose(incidence_vectors(net))


def rank(net: ReactionNetwork) -> int:
    return exact.rank(reaction_vectors(net))


def rank_deficiency(net: ReactionNetwork) -> tuple[int, int]:
    s = rank(net)
    return s, net.n - linkage_analysis(net).l - s


def incidence_image_dimension(net: ReactionNetwork) -> int:
    d = exact.rank(incidence_vectors(net))
    expected = net.n - linkage_analysis(net).l
    if d != expected:  # a graph-theoretic identity; failure means a bug
        raise AssertionError(f"incidence rank {d} != n - l = {expected}")
    return d


def structural_indices(net: ReactionNetwork) -> StructuralIndices:
    li = linkage_analysis(net)
    s = rank(net)
    return StructuralIndices(
        m=net.m,
        n=net.n,
        n_r=li.n_r,
        r=net.r,
        l=li.l,
        sl=li.sl,
        t=li.t,
        s=s,
        deficiency=net.n - li.l - s,
        weakly_reversible=li.weakly_reversible,
        t_minimal=li.t_minimal,
        point_terminal=li.point_terminal,
        cycle_terminal=li.cycle_terminal,
    )


def conservation_basis(net: ReactionNetwork) -> list[list[Fraction]]:
    """Basis of the orthogonal complement of the stoichiometric subspace."""
    return exact.orthogonal_complement(reaction_vectors(net), net.m)


def conservativity(net: ReactionNetwork) -> list[Fraction] | None:
    """A strictly positive conservation vector (entries >= 1) or None."""
    n_mat = stoichiometric_matrix(net)
    # v^T N = 0  <=>  N^T v = 0
    return lp.find_signed_vector(exact.transpose(n_mat), ["+"] * net.m)


def positive_dependence(net: ReactionNetwork) -> list[Fraction] | None:
    """Strictly positive k (entries >= 1) with N k = 0, or None."""
    return lp.find_signed_vector(stoichiometric_matrix(net), ["+"] * net.r)


def closed_maximal_rank(net: ReactionNetwork) -> bool:
    return rank(net) == net.m - 1


def molecularity_summary(net: ReactionNetwork) -> str:
    """Human-readable complex molecularity census, e.g. ``'2 mono- + 2 bimolecular'``."""
    names = {1: "mono", 2: "bi", 3: "tri"}
    counts: dict[object, int] = {}
    for c in net.complexes:
        mol = c.molecularity
        key = int(mol) if mol.denominator == 1 else mol
        counts[key] = counts.get(key, 0) + 1
    if len(counts) == 1:
        (k, v), = counts.items()
        return f"{v} {names.get(k, str(k) + '-')}molecular complexes"
    parts = [f"{v} {names.get(k, str(k))}-" for k, v in sorted(counts.items(), key=lambda kv: float(kv[0]))]
    return " + ".join(parts)[:-1] + "molecular complexes"
