"""Finest independent and incidence-independent decompositions.

A partition of the reactions is *independent* when the stoichiometric
subspace is the direct sum of the parts' subspaces, and *incidence
independent* when the same holds for the images of the incidence map.  Both
are direct-sum conditions on a family of vectors, so the finest such
partition is the set of connected components of the linear matroid on those
vectors.  We find components through fundamental circuits relative to a
basis picked greedily from the vectors themselves.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Literal, Sequence

import networkx as nx

from . import core, exact
from .core import ReactionNetwork
from .errors import NotAPartition

Kind = Literal["independent", "incidence-independent"]


@dataclass(frozen=True)
class Decomposition:
    """A reaction partition with its direct-sum certificate.

    ``part_dimensions[i]`` is the dimension spanned by part ``i``; the
    decomposition is valid when their sum equals ``total_dimension``.
    """

    parts: tuple[tuple[str, ...], ...]
    kind: Kind
    part_dimensions: tuple[int, ...]
    total_dimension: int

    @property
    def valid(self) -> bool:
        return sum(self.part_dimensions) == self.total_dimension

    def __len__(self) -> int:
        return len(self.parts)

    def as_sets(self) -> set[frozenset[str]]:
        return {frozenset(p) for p in self.parts}


def _vectors(net: ReactionNetwork, kind: Kind) -> list[list[Fraction]]:
    if kind == "independent":
        return core.reaction_vectors(net)
    if kind == "incidence-independent":
        return core.incidence_vectors(net)
    raise ValueError(f"unknown decomposition kind {kind!r}")


def _check_partition(net: ReactionNetwork, parts: Sequence[Iterable[str]]) -> list[list[int]]:
    idx = net.reaction_index
    seen: set[str] = set()
    out = []
    for p in parts:
        p = list(p)
        if not p:
            raise NotAPartition("empty part")
        for rid in p:
            if rid not in idx:
                raise NotAPartition(f"unknown reaction {rid!r}")
            if rid in seen:
                raise NotAPartition(f"reaction {rid!r} appears in two parts")
            seen.add(rid)
        out.append([idx[rid] for rid in p])
    if len(seen) != net.r:
        missing = sorted(set(idx) - seen)
        raise NotAPartition(f"reactions not covered: {missing}")
    return out


def _certify(net: ReactionNetwork, parts: Sequence[Iterable[str]], kind: Kind) -> Decomposition:
    vecs = _vectors(net, kind)
    index_parts = _check_partition(net, parts)
    dims = tuple(exact.rank([vecs[j] for j in p]) for p in index_parts)
    ordered = tuple(tuple(net.reactions[j].id for j in sorted(p)) for p in index_parts)
    return Decomposition(ordered, kind, dims, exact.rank(vecs))


def verify_independent(net: ReactionNetwork, parts: Sequence[Iterable[str]]) -> bool:
    return _certify(net, parts, "independent").valid


def verify_incidence_independent(net: ReactionNetwork, parts: Sequence[Iterable[str]]) -> bool:
    return _certify(net, parts, "incidence-independent").valid


def _matroid_components(vecs: list[list[Fraction]]) -> list[list[int]]:
    r = len(vecs)
    basis: list[int] = []
    for j in range(r):
        if exact.rank([vecs[b] for b in basis] + [vecs[j]]) > len(basis):
            basis.append(j)
    g = nx.Graph()
    g.add_nodes_from(range(r))
    if basis:
        # coordinates of every vector in the chosen basis: solve B^T c = v
        bt = exact.transpose([vecs[b] for b in basis])
        for j in range(r):
            if j in basis:
                continue
            aug = [row + [v] for row, v in zip(bt, vecs[j])]
            red, piv = exact.rref(aug)
            coords = [Fraction(0)] * len(basis)
            for i, p in enumerate(piv):
                coords[p] = red[i][-1]
            for b, c in zip(basis, coords):
                if c != 0:
                    g.add_edge(j, b)
    comps = [sorted(c) for c in nx.connected_components(g)]
    return sorted(comps)


def _finest(net: ReactionNetwork, kind: Kind) -> Decomposition:
    comps = _matroid_components(_vectors(net, kind))
    parts = [[net.reactions[j].id for j in c] for c in comps]
    return _certify(net, parts, kind)


def finest_independent(net: ReactionNetwork) -> Decomposition:
    """Unique finest partition whose stoichiometric subspaces form a direct sum."""
    return _finest(net, "independent")


def finest_incidence_independent(net: ReactionNetwork) -> Decomposition:
    """Unique finest partition whose incidence images form a direct sum."""
    return _finest(net, "incidence-independent")


def splittable_parts(net: ReactionNetwork, dec: Decomposition, max_size: int = 16) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Brute-force search for a part that splits into two independent pieces.

    Returns every split found (first one per part).  An empty list certifies
    that no part with at most ``max_size`` reactions can be refined.
    """
    vecs = _vectors(net, dec.kind)
    idx = net.reaction_index
    found = []
    for part in dec.parts:
        k = len(part)
        if k < 2 or k > max_size:
            continue
        cols = [idx[rid] for rid in part]
        whole = exact.rank([vecs[j] for j in cols])
        first, rest = part[0], part[1:]
        hit = None
        # fix the first reaction on side A to enumerate each bipartition once
        for size in range(0, k - 1):
            for extra in combinations(rest, size):
                side_a = (first,) + extra
                side_b = tuple(x for x in rest if x not in extra)
                ra = exact.rank([vecs[idx[x]] for x in side_a])
                rb = exact.rank([vecs[idx[x]] for x in side_b])
                if ra + rb == whole:
                    hit = (side_a, side_b)
                    break
            if hit:
                break
        if hit:
            found.append(hit)
    return found


def is_finest(net: ReactionNetwork, dec: Decomposition, max_size: int = 16) -> bool:
    return dec.valid and not splittable_parts(net, dec, max_size)
