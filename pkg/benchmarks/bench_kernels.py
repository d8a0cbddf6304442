"""Time the compiled and pure-Python contribution kernels on a synthetic corpus.

    python3 benchmarks/bench_kernels.py --n-core 3000 --repeat 3
"""
import argparse
import time

from semantometrics import kernels
from semantometrics.contribution import contribution_all
from semantometrics.corpus import Corpus, ingest_edges, ingest_papers
from semantometrics.graph import build_graph
from semantometrics.synth import SynthConfig, generate
from semantometrics.textmodel import vectorize_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-core", type=int, default=3000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    synth = generate(SynthConfig(seed=args.seed, n_core=args.n_core, n_neighbors=args.n_core // 4))
    papers, _ = ingest_papers(synth.papers_jsonl.splitlines())
    edges, _ = ingest_edges(synth.edges_csv.splitlines(), papers)
    corpus = Corpus(papers, edges)
    graph = build_graph(edges)
    vectors = vectorize_corpus(corpus)
    print(f"corpus: {len(papers)} papers, {len(edges)} edges, {len(vectors)} vectors")

    results = {}
    previous = kernels.backend
    try:
        for name in kernels.available_backends():
            kernels.use_backend(name)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                table = contribution_all(graph, vectors, corpus)
                best = min(best, time.perf_counter() - t0)
            results[name] = (best, table.to_csv())
            print(f"{name:>9}: {best:.3f}s (best of {args.repeat})")
    finally:
        kernels.use_backend(previous)

    if len(results) == 2:
        (tc, csv_c), (tp, csv_p) = results["compiled"], results["python"]
        print(f"speedup: {tp / tc:.1f}x, identical output: {csv_c == csv_p}")
    else:
        print("compiled kernels not built; only the python backend was timed")


if __name__ == "__main__":
    main()
