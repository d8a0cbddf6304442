"""tf-idf vector space model over title + abstract text.

Weights are ``tf * ln(N / df)``; terms present in every document get weight
zero and are dropped, so all weights are positive and cosine similarity of
two L2-normalized vectors lies in [0, 1].
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import VocabularyError

_ALNUM_RUN = re.compile(r"[^\W_]+")

# a unit vector's self-dot lands a few ulps from 1; snap so identical documents
# are exactly at distance 0
COSINE_SNAP = 1e-12


def tokenize(text: str) -> list[str]:
    """Lowercase ``text`` and split it on anything that is not a letter or digit.

    Tokens shorter than two characters and tokens made only of digits (any
    Unicode numeric character, so ``"0¼"`` too) are dropped.  Order and
    multiplicity are preserved.

    >>> tokenize("H2O at 25")
    ['h2o', 'at']
    """
    return [
        tok
        for tok in _ALNUM_RUN.findall(text.lower())
        if len(tok) >= 2 and any(ch.isalpha() for ch in tok)
    ]


@dataclass(frozen=True)
class VocabularyStats:
    doc_count: int
    doc_freq: Mapping[str, int]

    def idf(self, term: str) -> float:
        return math.log(self.doc_count / self.doc_freq[term])


def build_vocabulary(records) -> VocabularyStats:
    """Document frequencies over the text-bearing records.

    ``records`` is a :class:`~semantometrics.corpus.Corpus` or any iterable
    of :class:`~semantometrics.corpus.PaperRecord`.
    """
    if hasattr(records, "papers"):
        records = records.papers.values()
    doc_freq: Counter[str] = Counter()
    n = 0
    for rec in records:
        if not rec.has_text:
            continue
        n += 1
        doc_freq.update(set(tokenize(rec.text)))
    if n == 0:
        raise VocabularyError("corpus has no text-bearing documents")
    return VocabularyStats(n, dict(doc_freq))


@dataclass(frozen=True)
class DocumentVector:
    """Sparse nonnegative vector with terms kept in sorted order.

    Sorted storage fixes the summation order of :func:`cosine`, which makes
    it exactly symmetric and lets the compiled kernels reproduce it bit for
    bit.
    """

    terms: tuple[str, ...] = ()
    values: tuple[float, ...] = ()

    @classmethod
    def from_weights(cls, weights: Mapping[str, float]) -> "DocumentVector":
        """L2-normalize ``weights``; zero entries are dropped."""
        items = sorted((t, float(w)) for t, w in weights.items() if w != 0.0)
        if any(w < 0.0 for _, w in items):
            raise ValueError("document weights must be nonnegative")
        if not items:
            return cls()
        norm = math.sqrt(math.fsum(w * w for _, w in items))
        return cls(tuple(t for t, _ in items), tuple(w / norm for _, w in items))

    @property
    def weights(self) -> dict[str, float]:
        return dict(zip(self.terms, self.values))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)


def raw_weights(tokens: Iterable[str], stats: VocabularyStats) -> dict[str, float]:
    n = stats.doc_count
    out = {}
    for term, tf in Counter(tokens).items():
        df = stats.doc_freq.get(term)
        if df is None:
            raise VocabularyError(f"term {term!r} missing from vocabulary")
        if df < n:
            out[term] = tf * math.log(n / df)
    return out


def vectorize(record, stats: VocabularyStats) -> DocumentVector:
    """tf-idf vector for one text-bearing record.

    May return an empty vector when every term occurs in all documents;
    callers treat such records as text-free.
    """
    if not record.has_text:
        raise ValueError(f"record {record.doi} has no text to vectorize")
    return DocumentVector.from_weights(raw_weights(tokenize(record.text), stats))


def vectorize_corpus(corpus, stats: VocabularyStats | None = None) -> dict[str, DocumentVector]:
    """Vectors for every text-bearing paper whose vector is non-empty."""
    if stats is None:
        stats = build_vocabulary(corpus)
    vectors = {}
    for doi, rec in corpus.papers.items():
        if rec.has_text:
            vec = vectorize(rec, stats)
            if vec:
                vectors[doi] = vec
    return vectors


def cosine(u: DocumentVector, v: DocumentVector) -> float:
    if not u or not v:
        raise ValueError("cosine is undefined for empty vectors")
    # merge-join over sorted terms: the summation order depends only on the
    # shared terms, never on argument order
    tu, tv, xu, xv = u.terms, v.terms, u.values, v.values
    i = j = 0
    total = 0.0
    while i < len(tu) and j < len(tv):
        if tu[i] == tv[j]:
            total += xu[i] * xv[j]
            i += 1
            j += 1
        elif tu[i] < tv[j]:
            i += 1
        else:
            j += 1
    return 1.0 if total > 1.0 - COSINE_SNAP else total


def distance(u: DocumentVector, v: DocumentVector) -> float:
    return 1.0 - cosine(u, v)
