"""Semantometric contribution scores and comparative citation analytics."""
from .analytics import analyze, bucketize, histogram, pearson
from .contribution import contribution, contribution_all
from .corpus import Corpus, PaperRecord, load_corpus, normalize_doi
from .graph import build_graph, citation_count, cited_set, citing_set
from .textmodel import build_vocabulary, cosine, distance, tokenize, vectorize

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "PaperRecord",
    "analyze",
    "build_graph",
    "build_vocabulary",
    "bucketize",
    "citation_count",
    "cited_set",
    "citing_set",
    "contribution",
    "contribution_all",
    "cosine",
    "distance",
    "histogram",
    "load_corpus",
    "normalize_doi",
    "pearson",
    "tokenize",
    "vectorize",
]
