"""Command-line pipeline: ingest -> compute -> analyze, plus synth.

Each stage hands off through files in ``--out`` so analytics can be re-run
without recomputing contribution scores.

Exit status: 0 success, 2 usage error, 3 input-format error, 4 I/O error,
5 data error (no text-bearing papers, too few rows for the buckets, ...).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analytics import analyze
from .contribution import contribution_all
from .corpus import Corpus, load_corpus
from .errors import AnalysisError, InputFormatError, VocabularyError
from .graph import build_graph
from .synth import SynthConfig, generate
from .table import MetricTable
from .textmodel import build_vocabulary, vectorize_corpus

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_IO = 4
EXIT_DATA = 5

CORPUS_FILE = "corpus.json"
INGEST_REPORT_FILE = "ingest_report.json"
TABLE_FILE = "metric_table.csv"
REPORT_FILE = "analysis_report.json"

log = logging.getLogger("semantometrics")


class UsageError(Exception):
    pass


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def cmd_ingest(papers_path, edges_path, output_dir) -> Corpus:
    out = Path(output_dir)
    for p in (papers_path, edges_path):
        if not Path(p).is_file():
            raise FileNotFoundError(f"no such file: {p}")
    corpus = load_corpus(papers_path, edges_path)
    _write(out / CORPUS_FILE, corpus.to_json())
    _write(out / INGEST_REPORT_FILE, json.dumps(corpus.ingest_report, sort_keys=True, indent=2) + "\n")
    pr, er = corpus.paper_report, corpus.edge_report
    print(f"papers: {pr.accepted} accepted, {pr.duplicate} duplicate, {pr.malformed} malformed (of {pr.total})")
    print(
        f"edges:  {er.accepted} accepted, {er.duplicate} duplicate, {er.malformed} malformed "
        f"({er.self_citation} self-citations; {er.unknown_endpoint} touch unknown papers) (of {er.total})"
    )
    return corpus


def cmd_compute(corpus_path, output_dir) -> MetricTable:
    corpus = Corpus.from_json(Path(corpus_path).read_text(encoding="utf-8"))
    stats = build_vocabulary(corpus)
    vectors = vectorize_corpus(corpus, stats)
    table = contribution_all(build_graph(corpus.edges), vectors, corpus)
    _write(Path(output_dir) / TABLE_FILE, table.to_csv())
    n_defined = len(table.defined())
    log.info("vocabulary: %d documents, %d terms", stats.doc_count, len(stats.doc_freq))
    print(f"contribution: {n_defined} defined, {len(table) - n_defined} undefined (of {len(table)} papers)")
    return table


def cmd_analyze(table_path, output_dir, bucket_count=20, exclude_zero_readers=False, log_transform=False):
    if bucket_count < 2:
        raise UsageError("--buckets must be at least 2")
    table = MetricTable.from_csv(Path(table_path).read_text(encoding="utf-8"))
    report = analyze(table, bucket_count, exclude_zero_readers, log_transform)
    out = Path(output_dir)
    _write(out / REPORT_FILE, report.to_json())
    for name, text in report.csv_files().items():
        _write(out / name, text)
    for c in report.correlations:
        print(f"pearson({c.metric_x}, {c.metric_y}) = {c.r:.4f}  (n={c.n})")
    return report


def cmd_synth(config: SynthConfig, output_dir):
    try:
        corpus = generate(config)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    corpus.write(output_dir)
    counts = corpus.manifest["counts"]
    print(f"synth: {counts['papers']} papers, {counts['edges']} edges -> {output_dir}")
    return corpus


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semantometrics", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize and deduplicate papers and edges")
    p.add_argument("--papers", required=True, help="JSON-lines paper records")
    p.add_argument("--edges", required=True, help="CSV with header citing_doi,cited_doi")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("compute", help="contribution scores -> metric table")
    p.add_argument("--corpus", required=True, help=f"{CORPUS_FILE} written by ingest")
    p.add_argument("--out", required=True)

    def analysis_flags(p):
        p.add_argument("--buckets", type=int, default=20, help="bucket count (default 20)")
        p.add_argument("--exclude-zero-readers", action="store_true")
        p.add_argument("--log-transform", action="store_true", help="log1p counts before Pearson")

    p = sub.add_parser("analyze", help="correlations, histograms and bucket studies")
    p.add_argument("--table", required=True, help=f"{TABLE_FILE} written by compute")
    p.add_argument("--out", required=True)
    analysis_flags(p)

    p = sub.add_parser("run", help="ingest, compute and analyze in one go")
    p.add_argument("--papers", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("--out", required=True)
    analysis_flags(p)

    p = sub.add_parser("synth", help="generate a synthetic corpus")
    defaults = SynthConfig()
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--n-core", type=int, default=defaults.n_core)
    p.add_argument("--n-neighbors", type=int, default=defaults.n_neighbors)
    p.add_argument("--citation-alpha", type=float, default=defaults.citation_alpha)
    p.add_argument("--reader-rho", type=float, default=defaults.reader_rho)
    p.add_argument("--vocab-size", type=int, default=defaults.vocab_size)
    p.add_argument("--topic-count", type=int, default=defaults.topic_count)
    p.add_argument("--tokens-per-abstract", type=int, default=defaults.tokens_per_abstract)
    p.add_argument("--textless-fraction", type=float, default=defaults.textless_fraction)
    p.add_argument("--out", required=True)
    return parser


def _dispatch(args) -> None:
    out = Path(args.out)
    if args.command == "ingest":
        cmd_ingest(args.papers, args.edges, out)
    elif args.command == "compute":
        cmd_compute(args.corpus, out)
    elif args.command == "analyze":
        cmd_analyze(args.table, out, args.buckets, args.exclude_zero_readers, args.log_transform)
    elif args.command == "run":
        if args.buckets < 2:
            raise UsageError("--buckets must be at least 2")
        cmd_ingest(args.papers, args.edges, out)
        cmd_compute(out / CORPUS_FILE, out)
        cmd_analyze(out / TABLE_FILE, out, args.buckets, args.exclude_zero_readers, args.log_transform)
    elif args.command == "synth":
        config = SynthConfig(
            seed=args.seed,
            n_core=args.n_core,
            n_neighbors=args.n_neighbors,
            citation_alpha=args.citation_alpha,
            reader_rho=args.reader_rho,
            vocab_size=args.vocab_size,
            topic_count=args.topic_count,
            tokens_per_abstract=args.tokens_per_abstract,
            textless_fraction=args.textless_fraction,
        )
        cmd_synth(config, out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputFormatError, UnicodeDecodeError) as exc:
        print(f"input format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (VocabularyError, AnalysisError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
