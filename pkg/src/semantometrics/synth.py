"""Deterministic synthetic scholarly corpora.

The generator plants three structures the analytics are meant to recover:

* citation in-degrees following a discrete power law, ``P(K >= k) = k**-(alpha-1)``;
* reader counts whose Pearson correlation with citations is ``reader_rho``;
* topic-structured abstracts, with citations preferring nearby topics, so that
  contribution scores spread over a unimodal range instead of piling up at 1.

Papers are ``n_core`` core papers followed by ``n_neighbors`` neighbors.  The
first half of the neighbors only cite, the second half are only cited.

Every random draw comes from :class:`~semantometrics.rng.SplitMix64`
substreams spawned from ``seed`` in a fixed order (topics, textless, text,
degrees, citers, readers), so output files are byte-identical across runs
and platforms.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .rng import SplitMix64
from .table import fmt_real

TITLE_TOKENS = 8
GENERAL_PERCENT = 20  # share of tokens drawn from the whole vocabulary
TOPICAL_PERCENT = 95  # share of citations drawn from a nearby topic
TOPIC_SPREAD = 1  # nearby = within this many topics on the topic ring
READER_SCALE = 3.0

_CONSONANTS = "bcdfghjklmnprstvz"
_VOWELS = "aeiou"
_SYLLABLES = [c + v for c in _CONSONANTS for v in _VOWELS]

PAPERS_FILE = "papers.jsonl"
EDGES_FILE = "edges.csv"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 42
    n_core: int = 2000
    n_neighbors: int = 500
    citation_alpha: float = 2.5
    reader_rho: float = 0.35
    vocab_size: int = 1000
    topic_count: int = 20
    tokens_per_abstract: int = 60
    textless_fraction: float = 0.02

    def validate(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        for name in ("n_core", "vocab_size", "topic_count", "tokens_per_abstract"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.n_neighbors < 0:
            raise ValueError("n_neighbors must be nonnegative")
        if not self.citation_alpha > 1:
            raise ValueError("citation_alpha must exceed 1")
        if not 0 <= self.reader_rho < 1:
            raise ValueError("reader_rho must lie in [0, 1)")
        if not 0 <= self.textless_fraction < 1:
            raise ValueError("textless_fraction must lie in [0, 1)")


def word(i: int) -> str:
    """Pseudo-word for vocabulary index ``i`` (at least two syllables, unique)."""
    base = len(_SYLLABLES)
    parts = [_SYLLABLES[i % base]]
    i //= base
    parts.append(_SYLLABLES[i % base])
    i //= base
    while i:
        parts.append(_SYLLABLES[i % base])
        i //= base
    return "".join(parts)


def survival_slope(degrees, min_tail: int = 10) -> float:
    """OLS slope of log S(k) on log k over distinct k >= 1 with S(k) >= min_tail.

    ``S(k)`` is the number of values at least ``k``.
    """
    values = np.sort(np.asarray([d for d in degrees if d >= 1], dtype=np.int64))
    ks = np.unique(values)
    surv = len(values) - np.searchsorted(values, ks, side="left")
    keep = surv >= min_tail
    lx, ly = np.log(ks[keep].astype(float)), np.log(surv[keep].astype(float))
    if len(lx) < 2:
        return math.nan
    mx, my = math.fsum(lx) / len(lx), math.fsum(ly) / len(ly)
    return math.fsum((lx - mx) * (ly - my)) / math.fsum((lx - mx) ** 2)


@dataclass
class SynthCorpus:
    papers_jsonl: str
    edges_csv: str
    manifest: dict

    def manifest_json(self) -> str:
        return json.dumps(self.manifest, sort_keys=True, indent=1) + "\n"

    def write(self, out_dir: str | Path) -> dict[str, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            "papers": out / PAPERS_FILE,
            "edges": out / EDGES_FILE,
            "manifest": out / MANIFEST_FILE,
        }
        for key, text in (
            ("papers", self.papers_jsonl),
            ("edges", self.edges_csv),
            ("manifest", self.manifest_json()),
        ):
            paths[key].write_text(text, encoding="utf-8", newline="\n")
        return paths


def _texts(cfg: SynthConfig, centers: list[int], stream: SplitMix64) -> list[tuple[str, str]]:
    n = len(centers)
    per_doc = TITLE_TOKENS + cfg.tokens_per_abstract
    V, T = cfg.vocab_size, cfg.topic_count
    width = max(1, V // T)
    draws = stream.block(3 * n * per_doc).reshape(n, per_doc, 3)
    general = (draws[:, :, 0] % np.uint64(100)) < np.uint64(GENERAL_PERCENT)
    uniform_pick = (draws[:, :, 1] % np.uint64(V)).astype(np.int64)
    # triangular offset in [-(width-1), width-1]; neighbouring topics overlap
    offset = (
        (draws[:, :, 1] % np.uint64(width)).astype(np.int64)
        + (draws[:, :, 2] % np.uint64(width)).astype(np.int64)
        - (width - 1)
    )
    ids = np.where(general, uniform_pick, (np.asarray(centers, dtype=np.int64)[:, None] + offset) % V)
    vocab = [word(i) for i in range(V)]
    out = []
    for row in ids.tolist():
        words = [vocab[i] for i in row]
        title = " ".join(words[:TITLE_TOKENS]).capitalize()
        abstract = " ".join(words[TITLE_TOKENS:]).capitalize() + "."
        out.append((title, abstract))
    return out


def _pick_citers(
    p: int, k: int, topic_p: int, pool: list[int], by_topic: dict[int, list[int]], T: int, stream: SplitMix64
) -> list[int]:
    chosen: list[int] = []
    seen = {p}
    attempts = 0
    limit = 50 * k + 100
    while len(chosen) < k:
        attempts += 1
        cand = None
        if attempts <= limit and stream.randbelow(100) < TOPICAL_PERCENT:
            t = (topic_p + stream.randbelow(2 * TOPIC_SPREAD + 1) - TOPIC_SPREAD) % T
            members = by_topic.get(t)
            if members:
                cand = members[stream.randbelow(len(members))]
        if cand is None:
            cand = pool[stream.randbelow(len(pool))]
        if cand not in seen:
            seen.add(cand)
            chosen.append(cand)
    return chosen


def generate(config: SynthConfig) -> SynthCorpus:
    """Generate papers, edges and a ground-truth manifest for ``config``."""
    config.validate()
    cfg = config
    master = SplitMix64(cfg.seed)
    s_topics, s_textless, s_text, s_degrees, s_citers, s_readers = (master.spawn() for _ in range(6))

    n_citing_only = (cfg.n_neighbors + 1) // 2
    N = cfg.n_core + cfg.n_neighbors
    roles = ["core"] * cfg.n_core + ["citing_only"] * n_citing_only + ["cited_only"] * (cfg.n_neighbors - n_citing_only)
    dois = [f"10.5555/synth.c{i:06d}" for i in range(cfg.n_core)] + [
        f"10.5555/synth.n{j:06d}" for j in range(cfg.n_neighbors)
    ]

    topics, centers = [], []
    width = max(1, cfg.vocab_size // cfg.topic_count)
    for _ in range(N):
        t = s_topics.randbelow(cfg.topic_count)
        topics.append(t)
        # each paper sits somewhere inside its topic's slice of the vocabulary ring
        centers.append((t * cfg.vocab_size // cfg.topic_count + s_topics.randbelow(width) - width // 2) % cfg.vocab_size)
    textless = [s_textless.random() < cfg.textless_fraction for _ in range(N)]
    texts = _texts(cfg, centers, s_text)

    pool = [i for i in range(N) if roles[i] != "cited_only"]
    by_topic: dict[int, list[int]] = {}
    for i in pool:
        by_topic.setdefault(topics[i], []).append(i)
    targets = [i for i in range(N) if roles[i] != "citing_only"]
    exponent = -1.0 / (cfg.citation_alpha - 1.0)
    planted = {}
    for p in targets:
        cap = len(pool) - (1 if roles[p] == "core" else 0)
        planted[p] = min(int(math.floor(s_degrees.random_open0() ** exponent)), cap)

    edges: list[tuple[int, int]] = []
    refs: list[list[int]] = [[] for _ in range(N)]
    cites: list[list[int]] = [[] for _ in range(N)]
    for p in targets:
        for c in _pick_citers(p, planted[p], topics[p], pool, by_topic, cfg.topic_count, s_citers):
            edges.append((c, p))
            refs[c].append(p)
            cites[p].append(c)

    in_degree = [len(c) for c in cites]
    perm = list(range(N))
    for i in range(N - 1, 0, -1):
        j = s_readers.randbelow(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    noise_w = math.sqrt(1.0 - cfg.reader_rho**2)
    readers = [
        int(math.floor(READER_SCALE * (cfg.reader_rho * in_degree[i] + noise_w * in_degree[perm[i]]) + 0.5))
        for i in range(N)
    ]

    has_text = [not t for t in textless]
    papers_lines = []
    for i in range(N):
        title, abstract = ("", "") if textless[i] else texts[i]
        rec = {"doi": dois[i], "title": title, "abstract": abstract, "reader_count": readers[i]}
        papers_lines.append(json.dumps(rec, sort_keys=True, ensure_ascii=False))
    edge_lines = ["citing_doi,cited_doi"] + [f"{dois[c]},{dois[p]}" for c, p in edges]

    defined = sum(
        1 for i in range(N) if any(has_text[a] for a in refs[i]) and any(has_text[b] for b in cites[i])
    )
    slope = survival_slope([planted[p] for p in targets])
    manifest = {
        "format": "semantometrics-synth/1",
        "generator": "splitmix64",
        "config": asdict(cfg),
        "constants": {
            "title_tokens": TITLE_TOKENS,
            "general_percent": GENERAL_PERCENT,
            "topical_percent": TOPICAL_PERCENT,
            "topic_spread": TOPIC_SPREAD,
            "reader_scale": READER_SCALE,
        },
        "counts": {
            "papers": N,
            "edges": len(edges),
            "text_bearing": sum(has_text),
            "expected_defined_contribution": defined,
        },
        "survival_slope": float(fmt_real(slope)) if math.isfinite(slope) else None,
        "papers": [
            {
                "doi": dois[i],
                "role": roles[i],
                "topic": topics[i],
                "vocab_center": centers[i],
                "in_degree": in_degree[i],
                "out_degree": len(refs[i]),
                "reader_count": readers[i],
                "has_text": has_text[i],
            }
            for i in range(N)
        ],
    }
    return SynthCorpus("\n".join(papers_lines) + "\n", "\n".join(edge_lines) + "\n", manifest)
