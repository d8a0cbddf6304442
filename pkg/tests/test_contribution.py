import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from semantometrics.contribution import (
    NO_CITED_TEXTS,
    NO_CITING_TEXTS,
    PAPER_UNKNOWN,
    contribution,
    contribution_all,
    contribution_scores,
)
from semantometrics.corpus import Corpus, PaperRecord
from semantometrics.graph import build_graph
from semantometrics.textmodel import DocumentVector, vectorize_corpus


def vec(**weights):
    return DocumentVector.from_weights(weights)


def test_same_single_doc_on_both_sides(backend):
    g = build_graph([("p", "d"), ("d", "p")])
    score = contribution("p", g, {"d": vec(x=1.0, y=2.0)})
    assert score.defined and score.value == 0.0
    assert (score.a_used, score.b_used, score.pair_count) == (1, 1, 1)


def test_disjoint_single_pair(backend):
    g = build_graph([("p", "a"), ("b", "p")])
    score = contribution("p", g, {"a": vec(x=1.0), "b": vec(y=1.0)})
    assert score.value == pytest.approx(1.0, abs=1e-9)


def test_undefined_reasons():
    vectors = {"a": vec(x=1.0), "b": vec(y=1.0)}
    g = build_graph([("p", "a"), ("q", "b")])
    assert contribution("p", g, vectors).reason == NO_CITING_TEXTS
    assert contribution("b", g, vectors).reason == NO_CITED_TEXTS
    assert contribution("zzz", g, vectors).reason == PAPER_UNKNOWN
    # citers without text do not count
    g = build_graph([("p", "a"), ("t", "p")])
    score = contribution("p", g, vectors)
    assert not score.defined and score.reason == NO_CITING_TEXTS and score.a_used == 1


def test_self_excluded_even_if_vectorized():
    g = build_graph([("p", "a"), ("b", "p")])
    vectors = {"p": vec(z=1.0), "a": vec(x=1.0), "b": vec(x=1.0)}
    assert contribution("p", g, vectors).value == pytest.approx(0.0, abs=1e-12)


def test_fixture_pair_paper_against_oracle(fixture_pipeline, fixture_dir, backend):
    corpus, graph, vectors, _ = fixture_pipeline
    pair = json.loads((fixture_dir / "manifest.json").read_text())["pair_paper"]
    score = contribution(pair["doi"], graph, vectors)
    assert (score.a_used, score.b_used, score.pair_count) == (2, 3, 6)
    texts = {d: r.text for d, r in corpus.papers.items()}
    ovecs = oracles.tfidf_vectors(texts)
    expected = sum(
        1 - oracles.cosine(ovecs[a], ovecs[b]) for a in pair["cited"] for b in pair["citing"]
    ) / 6
    assert score.value == pytest.approx(expected, abs=1e-12)


def test_fixture_table(fixture_pipeline, fixture_dir):
    corpus, _, _, table = fixture_pipeline
    manifest = json.loads((fixture_dir / "manifest.json").read_text())
    assert len(table) == 200
    assert [r.doi for r in table] == sorted(corpus.papers)
    assert len(table.defined()) == manifest["defined_contribution"] == 143
    assert {r.doi: r.citations for r in table} == manifest["citations"]


def test_batch_equals_single(fixture_pipeline, backend):
    corpus, graph, vectors, _ = fixture_pipeline
    dois = sorted(corpus.papers)
    batch = contribution_scores(dois, graph, vectors)
    for doi in dois:
        assert batch[doi] == contribution(doi, graph, vectors, corpus.papers)


def test_empty_corpus():
    assert len(contribution_all(build_graph([]), {}, Corpus({}))) == 0


def test_table_independent_of_input_order(fixture_corpus):
    def run(papers, edges):
        c = Corpus(papers, edges)
        return contribution_all(build_graph(c.edges), vectorize_corpus(c), c).to_csv()

    reference = run(dict(fixture_corpus.papers), list(fixture_corpus.edges))
    rng = random.Random(3)
    items = list(fixture_corpus.papers.items())
    edges = list(fixture_corpus.edges)
    rng.shuffle(items)
    rng.shuffle(edges)
    assert run(dict(items), edges) == reference


def test_constant_distance_gives_constant():
    # every cited doc is orthogonal to every citing doc -> all distances 1
    g = build_graph([("p", "a1"), ("p", "a2"), ("p", "a3"), ("b1", "p"), ("b2", "p")])
    vectors = {
        "a1": vec(x=1.0), "a2": vec(x=1.0, y=3.0), "a3": vec(y=1.0),
        "b1": vec(z=2.0), "b2": vec(z=1.0, w=1.0),
    }
    assert contribution("p", g, vectors).value == 1.0


doc_vectors = st.dictionaries(
    st.sampled_from("abcdef"), st.floats(0.01, 10.0), min_size=1, max_size=4
).map(DocumentVector.from_weights)


@settings(max_examples=60)
@given(st.lists(doc_vectors, min_size=1, max_size=5), st.lists(doc_vectors, min_size=1, max_size=5), st.randoms())
def test_properties(a_side, b_side, rnd):
    vectors = {f"a{i}": v for i, v in enumerate(a_side)} | {f"b{i}": v for i, v in enumerate(b_side)}
    edges = [("p", f"a{i}") for i in range(len(a_side))] + [(f"b{i}", "p") for i in range(len(b_side))]
    score = contribution("p", build_graph(edges), vectors)
    assert 0.0 <= score.value <= 1.0

    naive = oracles.contribution("p", edges, {k: v.weights for k, v in vectors.items()})
    assert score.value == pytest.approx(naive, abs=1e-12)

    # swapping cited and citing roles leaves the mean unchanged
    swapped = [(b, a) for a, b in edges]
    assert contribution("p", build_graph(swapped), vectors).value == pytest.approx(score.value, abs=1e-12)

    # consistent relabeling of DOIs changes nothing
    names = list(vectors)
    new = names[:]
    rnd.shuffle(new)
    relabel = dict(zip(names, (f"x{n}" for n in new))) | {"p": "q"}
    g2 = build_graph([(relabel[a], relabel[b]) for a, b in edges])
    v2 = {relabel[k]: v for k, v in vectors.items()}
    assert contribution("q", g2, v2).value == pytest.approx(score.value, abs=1e-12)


def test_overlap_participates_on_both_sides():
    # d both cites p and is cited by p
    g = build_graph([("p", "d"), ("d", "p"), ("p", "a"), ("b", "p")])
    vectors = {"d": vec(x=1.0), "a": vec(x=1.0), "b": vec(y=1.0)}
    score = contribution("p", g, vectors)
    assert (score.a_used, score.b_used) == (2, 2)
    # pairs: (a,b)=1, (a,d)=0, (d,b)=1, (d,d)=0
    assert score.value == pytest.approx(0.5, abs=1e-12)


def test_text_free_paper_still_gets_row():
    papers = {
        "10.1/p": PaperRecord.create("10.1/p", "", "", 4),
        "10.1/a": PaperRecord.create("10.1/a", "alpha beta"),
        "10.1/b": PaperRecord.create("10.1/b", "gamma delta"),
    }
    c = Corpus(papers, [])
    g = build_graph([("10.1/p", "10.1/a"), ("10.1/b", "10.1/p")])
    table = contribution_all(g, vectorize_corpus(c), c)
    row = {r.doi: r for r in table}["10.1/p"]
    assert row.readers == 4 and row.citations == 1
    assert math.isclose(row.contribution, 1.0)
