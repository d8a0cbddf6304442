"""Directed citation graph over normalized DOIs."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

_EMPTY: frozenset[str] = frozenset()


@dataclass(frozen=True)
class CitationGraph:
    """``out_edges[p]`` holds the papers p cites, ``in_edges[p]`` those citing p."""

    out_edges: Mapping[str, frozenset[str]] = field(default_factory=dict)
    in_edges: Mapping[str, frozenset[str]] = field(default_factory=dict)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.out_edges.values())

    def nodes(self) -> set[str]:
        return set(self.out_edges) | set(self.in_edges)


def build_graph(edges: Iterable) -> CitationGraph:
    """Build both adjacency directions from ``(citing, cited)`` pairs.

    Accepts :class:`~semantometrics.corpus.CitationEdge` objects or plain
    tuples.  Self-loops are skipped.
    """
    out_edges: dict[str, set[str]] = defaultdict(set)
    in_edges: dict[str, set[str]] = defaultdict(set)
    for edge in edges:
        citing, cited = (edge.citing, edge.cited) if hasattr(edge, "citing") else edge
        if citing == cited:
            continue
        out_edges[citing].add(cited)
        in_edges[cited].add(citing)
    return CitationGraph(
        {k: frozenset(v) for k, v in out_edges.items()},
        {k: frozenset(v) for k, v in in_edges.items()},
    )


def cited_set(p: str, g: CitationGraph) -> frozenset[str]:
    return g.out_edges.get(p, _EMPTY)


def citing_set(p: str, g: CitationGraph) -> frozenset[str]:
    return g.in_edges.get(p, _EMPTY)


def citation_count(p: str, g: CitationGraph) -> int:
    return len(g.in_edges.get(p, _EMPTY))
