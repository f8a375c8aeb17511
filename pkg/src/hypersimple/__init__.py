"""Exact, asymptotic and sampled simplicity statistics of configuration-model hypergraphs."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DirectedDegreeSequence,
    DirectedHypergraph,
    Hypergraph,
    StatisticCounts,
    UndirectedDegreeSequence,
    statistic_counts,
)
from .exact import ExpectationReport, expected  # noqa: E402

__all__ = [
    "DirectedDegreeSequence",
    "DirectedHypergraph",
    "ExpectationReport",
    "Hypergraph",
    "StatisticCounts",
    "UndirectedDegreeSequence",
    "expected",
    "statistic_counts",
]
