"""Generalized van der Waerden numbers n(a,b;r) for (a,b)-triples."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Coloring,
    FamilyParams,
    MalformedColoringError,
    Triple,
    Verdict,
    embed_triple,
    enumerate_triples,
    make_triple,
    triples_ending_at,
    verify_coloring,
)
from .solver import SearchConfig, SearchOutcome, Status, brute_force_decide, decide, find_n  # noqa: E402

__all__ = [
    "__version__",
    "Coloring",
    "FamilyParams",
    "MalformedColoringError",
    "Triple",
    "Verdict",
    "embed_triple",
    "enumerate_triples",
    "make_triple",
    "triples_ending_at",
    "verify_coloring",
    "SearchConfig",
    "SearchOutcome",
    "Status",
    "brute_force_decide",
    "decide",
    "find_n",
]
