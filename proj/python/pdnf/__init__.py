"""Probabilistic disjunctive normal forms: measures over venjunctions,
fusion, identification, distances and random-walk weight processes."""

from ._pdnf import *  # noqa: F401,F403
from ._pdnf import PdnfError, ContradictoryEvidence

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
