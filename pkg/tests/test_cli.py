import csv
import json
import subprocess
import sys

import pytest

from semantometrics.cli import (
    EXIT_DATA,
    EXIT_FORMAT,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from semantometrics.table import MetricRow, MetricTable


def snapshot(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.is_file()}


@pytest.fixture(scope="module")
def fixture_run(tmp_path_factory, fixture_dir):
    out = tmp_path_factory.mktemp("run")
    assert main(["ingest", "--papers", str(fixture_dir / "papers.jsonl"), "--edges", str(fixture_dir / "edges.csv"),
                 "--out", str(out)]) == EXIT_OK
    assert main(["compute", "--corpus", str(out / "corpus.json"), "--out", str(out)]) == EXIT_OK
    assert main(["analyze", "--table", str(out / "metric_table.csv"), "--out", str(out)]) == EXIT_OK
    return out


def test_ingest_report(fixture_run, capsys):
    report = json.loads((fixture_run / "ingest_report.json").read_text())
    assert report["papers"]["accepted"] == 200
    assert report["edges"]["accepted"] == 400 and report["edges"]["duplicate"] == 20


def test_output_inventory(fixture_run):
    names = {p.name for p in fixture_run.iterdir()}
    assert len([n for n in names if n.startswith("fig_")]) == 6
    assert len([n for n in names if n.startswith("hist_")]) == 3
    assert {"analysis_report.json", "metric_table.csv", "corpus.json", "ingest_report.json"} <= names


def test_outputs_match_golden(fixture_run, fixture_dir):
    golden = fixture_dir / "golden"
    for path in sorted(golden.iterdir()):
        assert (fixture_run / path.name).read_bytes() == path.read_bytes(), path.name


def test_csv_conventions(fixture_run):
    for path in fixture_run.glob("*.csv"):
        raw = path.read_bytes()
        assert b"\r" not in raw and raw.endswith(b"\n")
        raw.decode("utf-8")
    rows = list(csv.DictReader((fixture_run / "metric_table.csv").open()))
    assert list(rows[0]) == ["doi", "citations", "readers", "contribution"]
    assert sum(1 for r in rows if r["contribution"] == "") == 57
    for r in rows:
        if r["contribution"]:
            digits = r["contribution"].lstrip("0.").replace(".", "").split("e")[0]
            assert len(digits) <= 12


def test_rerun_byte_identical(fixture_run, fixture_dir, tmp_path):
    assert main(["run", "--papers", str(fixture_dir / "papers.jsonl"), "--edges", str(fixture_dir / "edges.csv"),
                 "--out", str(tmp_path)]) == EXIT_OK
    assert snapshot(tmp_path) == snapshot(fixture_run)


def test_missing_papers_file(tmp_path, fixture_dir):
    code = main(["ingest", "--papers", str(tmp_path / "nope.jsonl"), "--edges", str(fixture_dir / "edges.csv"),
                 "--out", str(tmp_path)])
    assert code == EXIT_IO


def test_empty_edges_file(tmp_path, fixture_dir):
    (tmp_path / "edges.csv").write_text("")
    assert main(["ingest", "--papers", str(fixture_dir / "papers.jsonl"), "--edges", str(tmp_path / "edges.csv"),
                 "--out", str(tmp_path)]) == EXIT_OK
    corpus = json.loads((tmp_path / "corpus.json").read_text())
    assert corpus["edges"] == [] and len(corpus["papers"]) == 200


def test_bad_edges_header(tmp_path, fixture_dir):
    (tmp_path / "edges.csv").write_text("a,b\n10.1/a,10.1/b\n")
    code = main(["ingest", "--papers", str(fixture_dir / "papers.jsonl"), "--edges", str(tmp_path / "edges.csv"),
                 "--out", str(tmp_path)])
    assert code == EXIT_FORMAT


def test_usage_errors(tmp_path):
    assert main([]) == EXIT_USAGE
    assert main(["ingest", "--papers", "x"]) == EXIT_USAGE
    assert main(["synth", "--n-core", "0", "--out", str(tmp_path)]) == EXIT_USAGE
    assert main(["analyze", "--table", "t.csv", "--out", str(tmp_path), "--buckets", "1"]) == EXIT_USAGE


def test_malformed_table(tmp_path):
    (tmp_path / "t.csv").write_text("doi,citations\n10.1/a,3\n")
    assert main(["analyze", "--table", str(tmp_path / "t.csv"), "--out", str(tmp_path)]) == EXIT_FORMAT


def test_too_few_rows(tmp_path):
    rows = tuple(MetricRow(f"10.1/{i}", i, i % 3, i / 10) for i in range(10))
    (tmp_path / "t.csv").write_text(MetricTable(rows).to_csv())
    assert main(["analyze", "--table", str(tmp_path / "t.csv"), "--out", str(tmp_path)]) == EXIT_DATA


def test_no_text_corpus(tmp_path):
    (tmp_path / "p.jsonl").write_text('{"doi": "10.1/a"}\n{"doi": "10.1/b", "title": "1 2"}\n')
    (tmp_path / "e.csv").write_text("citing_doi,cited_doi\n10.1/a,10.1/b\n")
    assert main(["ingest", "--papers", str(tmp_path / "p.jsonl"), "--edges", str(tmp_path / "e.csv"),
                 "--out", str(tmp_path)]) == EXIT_OK
    assert main(["compute", "--corpus", str(tmp_path / "corpus.json"), "--out", str(tmp_path)]) == EXIT_DATA


def test_buckets_flag_remainder(tmp_path):
    rows = tuple(MetricRow(f"10.1/{i:02d}", i % 7, (3 * i) % 11, (i % 5) / 5) for i in range(43))
    (tmp_path / "t.csv").write_text(MetricTable(rows).to_csv())
    assert main(["analyze", "--table", str(tmp_path / "t.csv"), "--out", str(tmp_path), "--buckets", "5"]) == EXIT_OK
    report = json.loads((tmp_path / "analysis_report.json").read_text())
    for study in report["bucket_studies"].values():
        assert [b["size"] for b in study["buckets"]] == [9, 9, 9, 8, 8]
    fig = list(csv.DictReader((tmp_path / "fig_citations_vs_readers.csv").open()))
    assert len(fig) == 5 and list(fig[0]) == ["bucket", "x_min", "x_max", "y_mean", "y_std", "grand_mean"]


def test_synth_command(tmp_path):
    assert main(["synth", "--seed", "3", "--n-core", "300", "--n-neighbors", "40", "--out", str(tmp_path / "a")]) == 0
    assert main(["synth", "--seed", "3", "--n-core", "300", "--n-neighbors", "40", "--out", str(tmp_path / "b")]) == 0
    assert snapshot(tmp_path / "a") == snapshot(tmp_path / "b")
    manifest = json.loads((tmp_path / "a" / "manifest.json").read_text())
    assert manifest["config"]["seed"] == 3 and manifest["counts"]["papers"] == 340


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "semantometrics", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "synth" in proc.stdout
