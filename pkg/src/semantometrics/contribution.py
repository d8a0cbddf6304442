"""Semantometric contribution score.

The contribution of a paper p is the mean semantic distance between every
text-bearing paper p cites (A') and every text-bearing paper citing p (B'):

    contribution(p) = 1 / (|A'| |B'|) * sum_{a in A'} sum_{b in B'} (1 - cos(a, b))

A paper that bridges what it builds on to distant follow-up work scores
high.  The score is undefined, never zero, when either side has no text.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .graph import CitationGraph, citation_count, cited_set, citing_set
from .table import MetricRow, MetricTable
from .textmodel import DocumentVector

DEFINED = "defined"
UNDEFINED = "undefined"
NO_CITED_TEXTS = "no_cited_texts"
NO_CITING_TEXTS = "no_citing_texts"
PAPER_UNKNOWN = "paper_unknown"


@dataclass(frozen=True)
class ContributionScore:
    value: float | None
    pair_count: int
    a_used: int
    b_used: int
    status: str = DEFINED
    reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.status == DEFINED

    @classmethod
    def undefined(cls, reason: str, a_used: int = 0, b_used: int = 0) -> "ContributionScore":
        return cls(None, 0, a_used, b_used, UNDEFINED, reason)


@dataclass(frozen=True)
class VectorMatrix:
    """CSR layout of a set of document vectors.

    Term ids follow sorted term order, so a merge over ids visits shared
    terms in the same order as :func:`~semantometrics.textmodel.cosine`.
    """

    dois: tuple[str, ...]
    row_of: Mapping[str, int]
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    @classmethod
    def from_vectors(cls, vectors: Mapping[str, DocumentVector]) -> "VectorMatrix":
        dois = tuple(sorted(vectors))
        term_id = {t: i for i, t in enumerate(sorted({t for v in vectors.values() for t in v.terms}))}
        indptr = np.zeros(len(dois) + 1, dtype=np.int64)
        indices, data = [], []
        for r, doi in enumerate(dois):
            vec = vectors[doi]
            indices.extend(term_id[t] for t in vec.terms)
            data.extend(vec.values)
            indptr[r + 1] = len(indices)
        return cls(
            dois,
            {d: r for r, d in enumerate(dois)},
            indptr,
            np.asarray(indices, dtype=np.int64),
            np.asarray(data, dtype=np.float64),
        )


def _neighborhoods(p: str, g: CitationGraph, has_vector) -> tuple[list[str], list[str]]:
    a_side = sorted(a for a in cited_set(p, g) if a != p and has_vector(a))
    b_side = sorted(b for b in citing_set(p, g) if b != p and has_vector(b))
    return a_side, b_side


def _reason(a_side: Sequence, b_side: Sequence) -> str | None:
    if not a_side:
        return NO_CITED_TEXTS
    if not b_side:
        return NO_CITING_TEXTS
    return None


def contribution(
    p: str,
    g: CitationGraph,
    vectors: Mapping[str, DocumentVector],
    papers: Mapping | None = None,
) -> ContributionScore:
    """Contribution score of a single paper.

    ``vectors`` must hold entries only for text-bearing papers with non-empty
    vectors; neighbors without one are skipped.  ``papers`` (optional) marks
    DOIs that are known even when they have no edges and no text.
    """
    known = p in g.out_edges or p in g.in_edges or p in vectors or (papers is not None and p in papers)
    if not known:
        return ContributionScore.undefined(PAPER_UNKNOWN)
    a_side, b_side = _neighborhoods(p, g, vectors.__contains__)
    reason = _reason(a_side, b_side)
    if reason:
        return ContributionScore.undefined(reason, len(a_side), len(b_side))
    local = VectorMatrix.from_vectors({d: vectors[d] for d in set(a_side) | set(b_side)})
    a_rows = np.array([local.row_of[d] for d in a_side], dtype=np.int64)
    b_rows = np.array([local.row_of[d] for d in b_side], dtype=np.int64)
    value = kernels.mean_pair_distance(local.indptr, local.indices, local.data, a_rows, b_rows)
    return ContributionScore(value, len(a_side) * len(b_side), len(a_side), len(b_side))


def contribution_scores(
    dois: Sequence[str], g: CitationGraph, vectors: Mapping[str, DocumentVector]
) -> dict[str, ContributionScore]:
    """Batch evaluation of many papers through one kernel call."""
    matrix = VectorMatrix.from_vectors(vectors)
    row_of = matrix.row_of
    a_ptr, b_ptr = [0], [0]
    a_rows: list[int] = []
    b_rows: list[int] = []
    sides = []
    for p in dois:
        a_side, b_side = _neighborhoods(p, g, row_of.__contains__)
        sides.append((a_side, b_side))
        a_rows.extend(row_of[d] for d in a_side)
        b_rows.extend(row_of[d] for d in b_side)
        a_ptr.append(len(a_rows))
        b_ptr.append(len(b_rows))
    out = np.empty(len(dois), dtype=np.float64)
    kernels.contribution_batch(
        matrix.indptr,
        matrix.indices,
        matrix.data,
        np.asarray(a_ptr, dtype=np.int64),
        np.asarray(a_rows, dtype=np.int64),
        np.asarray(b_ptr, dtype=np.int64),
        np.asarray(b_rows, dtype=np.int64),
        out,
    )
    scores = {}
    for p, (a_side, b_side), value in zip(dois, sides, out.tolist()):
        reason = _reason(a_side, b_side)
        if reason or math.isnan(value):
            scores[p] = ContributionScore.undefined(reason or NO_CITED_TEXTS, len(a_side), len(b_side))
        else:
            scores[p] = ContributionScore(value, len(a_side) * len(b_side), len(a_side), len(b_side))
    return scores


def contribution_all(g: CitationGraph, vectors: Mapping[str, DocumentVector], corpus) -> MetricTable:
    """One :class:`MetricRow` per corpus paper, ascending by DOI."""
    dois = sorted(corpus.papers)
    scores = contribution_scores(dois, g, vectors)
    return MetricTable(
        tuple(
            MetricRow(doi, citation_count(doi, g), corpus.papers[doi].reader_count, scores[doi].value)
            for doi in dois
        )
    )
