"""Exact concordance test.

A network is discordant when some nonzero ``sigma`` in the stoichiometric
subspace and some ``alpha`` in the kernel of ``L(alpha) = N alpha`` satisfy,
for every reaction ``y -> y'``:

(i)  ``alpha_j != 0`` implies some species in ``supp(y)`` has
     ``sgn(sigma_s) = sgn(alpha_j)``;
(ii) ``alpha_j = 0`` implies ``sigma`` vanishes on ``supp(y)`` or takes
     both strict signs there.

Both conditions depend on ``sigma`` only through its sign pattern, so we
enumerate patterns.  For a fixed pattern the admissible signs of each
``alpha_j`` form one of ``{0}``, ``{+}``, ``{-}`` or all of ``{-, 0, +}``,
which makes the ``alpha`` question a single sign-constrained feasibility
problem, independent of the ``sigma`` one.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .. import core, exact, lp
from ..core import ReactionNetwork
from ..errors import TooLarge

DEFAULT_MAX_SPECIES = 12
ENV_MAX_SPECIES = "CRNKIT_MAX_CONCORDANCE_SPECIES"


@dataclass(frozen=True)
class ConcordanceResult:
    concordant: bool
    alpha: tuple[Fraction, ...] | None = None
    sigma: tuple[Fraction, ...] | None = None
    patterns_checked: int = 0

    @property
    def verdict(self) -> str:
        return "concordant" if self.concordant else "discordant"


def max_species() -> int:
    raw = os.environ.get(ENV_MAX_SPECIES)
    return int(raw) if raw else DEFAULT_MAX_SPECIES


def _alpha_codes(net: ReactionNetwork, pattern: tuple[int, ...]) -> tuple[str, ...]:
    pos = {s: i for i, s in enumerate(net.species)}
    codes = []
    for rx in net.reactions:
        signs = {pattern[pos[s]] for s in rx.reactant.support}
        has_p, has_m = 1 in signs, -1 in signs
        if has_p and has_m:
            codes.append("*")
        elif has_p:
            codes.append("+")
        elif has_m:
            codes.append("-")
        else:
            codes.append("0")
    return tuple(codes)


def concordance(net: ReactionNetwork, limit: int | None = None) -> ConcordanceResult:
    """Decide concordance exactly; a discordance witness is returned when found.

    Patterns are visited in lexicographic order over ``(-1, 0, 1)^m`` keeping
    only those whose first nonzero entry is positive (the conditions are
    invariant under ``(alpha, sigma) -> (-alpha, -sigma)``), so the witness
    is deterministic.

    Raises
    ------
    TooLarge
        If ``m`` exceeds ``limit`` (default 12, or the value of the
        ``CRNKIT_MAX_CONCORDANCE_SPECIES`` environment variable).
    """
    limit = max_species() if limit is None else limit
    if net.m > limit:
        raise TooLarge(f"concordance enumeration limited to m <= {limit}, network has m = {net.m}")
    n_mat = core.stoichiometric_matrix(net)
    w = core.conservation_basis(net)
    alpha_cache: dict[tuple[str, ...], list[Fraction] | None] = {}
    checked = 0
    for pattern in product((-1, 0, 1), repeat=net.m):
        first = next((p for p in pattern if p != 0), 0)
        if first <= 0:
            continue
        checked += 1
        codes = _alpha_codes(net, pattern)
        if codes not in alpha_cache:
            alpha_cache[codes] = lp.find_signed_vector(n_mat, list(codes))
        alpha = alpha_cache[codes]
        if alpha is None:
            continue
        sigma = lp.find_signed_vector(w, lp.pattern_codes(pattern))
        if sigma is None:
            continue
        return ConcordanceResult(False, tuple(alpha), tuple(sigma), checked)
    return ConcordanceResult(True, None, None, checked)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def verify_witness(net: ReactionNetwork, alpha, sigma) -> bool:
    """Mechanically re-check a discordance witness against the definition."""
    alpha = [exact.to_fraction(a) for a in alpha]
    sigma = [exact.to_fraction(s) for s in sigma]
    if len(alpha) != net.r or len(sigma) != net.m:
        return False
    if any(x != 0 for x in exact.matvec(core.stoichiometric_matrix(net), alpha)):
        return False
    if all(s == 0 for s in sigma):
        return False
    if any(exact.dot(wv, sigma) != 0 for wv in core.conservation_basis(net)):
        return False
    pos = {s: i for i, s in enumerate(net.species)}
    for rx, a in zip(net.reactions, alpha):
        signs = {_sgn(sigma[pos[s]]) for s in rx.reactant.support}
        if a != 0:
            if _sgn(a) not in signs:
                return False
        elif not (signs <= {0} or {1, -1} <= signs):
            return False
    return True
