"""Chemical reaction network analysis for power-law kinetic systems.

The top-level namespace exposes the network and kinetic-system types; the
decision procedures live in :mod:`crnkit.analysis`, the built-in carbon
cycle models in :mod:`crnkit.models`.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .core import Complex, Reaction, ReactionNetwork, structural_indices
from .crnfile import parse, serialize
from .errors import CRNError, NumericFailure, ParseError, PreconditionFailure
from .kinetics import PowerLawKineticSystem

__all__ = [
    "CRNError",
    "Complex",
    "NumericFailure",
    "ParseError",
    "PowerLawKineticSystem",
    "PreconditionFailure",
    "Reaction",
    "ReactionNetwork",
    "parse",
    "serialize",
    "structural_indices",
]
