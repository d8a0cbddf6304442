"""Ingest paper metadata and citation edges into an immutable corpus.

Papers come from a JSON-lines file (one object per line with ``doi``,
``title``, ``abstract`` and ``reader_count``), edges from a CSV file with the
header ``citing_doi,cited_doi``.  Identifiers are normalized before any
comparison, so ``https://doi.org/10.1/A`` and ``10.1/a`` are the same paper.

Per-record problems are counted in an :class:`IngestReport` and never abort
ingest; only an unreadable source or a structurally broken file is fatal.
"""
from __future__ import annotations

import csv
import json
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import InputFormatError, MalformedDOIError
from .textmodel import tokenize

_RESOLVER_PREFIXES = (
    "https://dx.doi.org/",
    "http://dx.doi.org/",
    "https://doi.org/",
    "http://doi.org/",
    "doi:",
)
_DOI_SHAPE = re.compile(r"10\.[0-9]+/\S+")

EDGE_HEADER = ("citing_doi", "cited_doi")


def normalize_doi(raw: str) -> str:
    """Return the canonical lowercase form of ``raw``.

    Raises :class:`MalformedDOIError` when the input does not reduce to
    ``10.<digits>/<suffix>``.
    """
    if not isinstance(raw, str):
        raise MalformedDOIError(f"DOI must be a string, got {type(raw).__name__}")
    doi = raw.strip()
    lowered = doi.lower()
    for prefix in _RESOLVER_PREFIXES:
        if lowered.startswith(prefix):
            doi = doi[len(prefix):]
            break
    doi = doi.strip().lower()
    if not _DOI_SHAPE.fullmatch(doi):
        raise MalformedDOIError(f"not a DOI: {raw!r}")
    return doi


@dataclass(frozen=True)
class PaperRecord:
    doi: str
    title: str = ""
    abstract: str = ""
    reader_count: int = 0
    has_text: bool = False

    @classmethod
    def create(cls, doi: str, title: str = "", abstract: str = "", reader_count: int = 0) -> "PaperRecord":
        """Build a record with ``has_text`` derived from the tokenizer."""
        has_text = bool(tokenize(title + " " + abstract))
        return cls(doi, title, abstract, reader_count, has_text)

    @property
    def text(self) -> str:
        return self.title + " " + self.abstract


@dataclass(frozen=True, order=True)
class CitationEdge:
    citing: str
    cited: str


@dataclass
class IngestReport:
    """Record accounting for one source.

    ``accepted + duplicate + malformed == total``.  For edges, self-citations
    are part of ``malformed`` and additionally broken out in
    ``self_citation``.
    """

    total: int = 0
    accepted: int = 0
    duplicate: int = 0
    malformed: int = 0
    self_citation: int = 0
    unknown_endpoint: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Corpus:
    papers: Mapping[str, PaperRecord]
    edges: tuple[CitationEdge, ...] = ()
    paper_report: IngestReport = field(default_factory=IngestReport)
    edge_report: IngestReport = field(default_factory=IngestReport)

    def __post_init__(self):
        if not isinstance(self.papers, MappingProxyType):
            object.__setattr__(self, "papers", MappingProxyType(dict(self.papers)))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def ingest_report(self) -> dict:
        return {"papers": self.paper_report.as_dict(), "edges": self.edge_report.as_dict()}

    def to_json(self) -> str:
        """Serialize deterministically: papers and edges in sorted order."""
        doc = {
            "format": "semantometrics-corpus/1",
            "papers": [
                {
                    "doi": p.doi,
                    "title": p.title,
                    "abstract": p.abstract,
                    "reader_count": p.reader_count,
                    "has_text": p.has_text,
                }
                for p in sorted(self.papers.values(), key=lambda r: r.doi)
            ],
            "edges": [[e.citing, e.cited] for e in sorted(self.edges)],
            "ingest_report": self.ingest_report,
        }
        return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Corpus":
        try:
            doc = json.loads(text)
            papers = {}
            for item in doc["papers"]:
                rec = PaperRecord.create(item["doi"], item["title"], item["abstract"], int(item["reader_count"]))
                if rec.has_text != item["has_text"]:
                    raise InputFormatError(f"has_text mismatch for {rec.doi}")
                papers[rec.doi] = rec
            edges = tuple(CitationEdge(a, b) for a, b in doc["edges"])
            rep = doc["ingest_report"]
            return cls(papers, edges, IngestReport(**rep["papers"]), IngestReport(**rep["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputFormatError):
                raise
            raise InputFormatError(f"invalid serialized corpus: {exc}") from exc


def _parse_paper(line: str) -> PaperRecord | None:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError:
        return None
    if not isinstance(obj, dict):
        return None
    try:
        doi = normalize_doi(obj.get("doi"))
    except MalformedDOIError:
        return None
    title = obj.get("title") or ""
    abstract = obj.get("abstract") or ""
    readers = obj.get("reader_count", 0)
    if readers is None:
        readers = 0
    if not isinstance(title, str) or not isinstance(abstract, str):
        return None
    if isinstance(readers, bool) or not isinstance(readers, int) or readers < 0:
        return None
    return PaperRecord.create(doi, title, abstract, readers)


def ingest_papers(lines: Iterable[str]) -> tuple[dict[str, PaperRecord], IngestReport]:
    """Parse JSON-lines paper records; first occurrence of a DOI wins.

    Every line is one record, so blank or unparsable lines count as
    malformed.
    """
    papers: dict[str, PaperRecord] = {}
    report = IngestReport()
    for line in lines:
        report.total += 1
        rec = _parse_paper(line)
        if rec is None:
            report.malformed += 1
        elif rec.doi in papers:
            report.duplicate += 1
        else:
            papers[rec.doi] = rec
            report.accepted += 1
    return papers, report


def ingest_edges(
    rows: Iterable[str], papers: Mapping[str, PaperRecord] | None = None
) -> tuple[list[CitationEdge], IngestReport]:
    """Parse ``citing_doi,cited_doi`` CSV lines (header included).

    Edges touching DOIs missing from ``papers`` are kept; they are only
    tallied in ``unknown_endpoint``.
    """
    reader = csv.reader(rows)
    header = next(reader, None)
    if header is None:
        # a completely empty file is an empty edge list
        return [], IngestReport()
    if tuple(h.strip().lstrip("\ufeff") for h in header) != EDGE_HEADER:
        raise InputFormatError(f"edges file header must be {','.join(EDGE_HEADER)}, got {header!r}")

    seen: set[CitationEdge] = set()
    edges: list[CitationEdge] = []
    report = IngestReport()
    for row in reader:
        report.total += 1
        if len(row) != 2:
            report.malformed += 1
            continue
        try:
            edge = CitationEdge(normalize_doi(row[0]), normalize_doi(row[1]))
        except MalformedDOIError:
            report.malformed += 1
            continue
        if edge.citing == edge.cited:
            report.malformed += 1
            report.self_citation += 1
            continue
        if edge in seen:
            report.duplicate += 1
            continue
        seen.add(edge)
        edges.append(edge)
        report.accepted += 1
        if papers is not None and (edge.citing not in papers or edge.cited not in papers):
            report.unknown_endpoint += 1
    return edges, report


def _lines(path: Path) -> Iterator[str]:
    # split on LF only: str.splitlines would also break on U+2028 inside JSON strings
    with open(path, encoding="utf-8-sig", newline="") as fh:
        text = fh.read()
    if not text:
        return iter(())
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return (line[:-1] if line.endswith("\r") else line for line in lines)


def read_papers(path: str | Path) -> tuple[dict[str, PaperRecord], IngestReport]:
    try:
        return ingest_papers(_lines(Path(path)))
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path}: not valid UTF-8") from exc


def read_edges(
    path: str | Path, papers: Mapping[str, PaperRecord] | None = None
) -> tuple[list[CitationEdge], IngestReport]:
    try:
        return ingest_edges(_lines(Path(path)), papers)
    except UnicodeDecodeError as exc:
        raise InputFormatError(f"{path}: not valid UTF-8") from exc
    except csv.Error as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def load_corpus(papers_path: str | Path, edges_path: str | Path) -> Corpus:
    papers, paper_report = read_papers(papers_path)
    edges, edge_report = read_edges(edges_path, papers)
    return Corpus(papers, edges, paper_report, edge_report)
