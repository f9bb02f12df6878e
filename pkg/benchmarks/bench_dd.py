"""Compare the compiled and pure-Python adjacency kernels.

    python benchmarks/bench_dd.py [--repeat N] [--large]

Each case enumerates one matching system with every available kernel and
reports the best wall time; vertex sets are checked to be identical.
"""

import argparse
import time

from qnormal import corpus
from qnormal.coordinates import matching_system
from qnormal.enumeration import available_kernels, enumerate_dd
from qnormal.triangulation import layered_solid_torus

CASES = [
    ("lst3", "standard", lambda: corpus.load("lst3")),
    ("lst8", "standard", lambda: layered_solid_torus(8)),
    ("trefoil", "quad", lambda: corpus.load("trefoil")),
    ("trefoil", "standard", lambda: corpus.load("trefoil")),
    ("figure_eight", "quad", lambda: corpus.load("figure_eight")),
]
LARGE = [("figure_eight", "standard", lambda: corpus.load("figure_eight"))]


def best_time(system, kernel, repeat):
    best, vectors = float("inf"), None
    for _ in range(repeat):
        started = time.perf_counter()
        vectors = enumerate_dd(system, kernel=kernel).vectors
        best = min(best, time.perf_counter() - started)
    return best, vectors


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--large", action="store_true", help="include the slow figure-eight standard case")
    args = ap.parse_args()

    kernels = available_kernels()
    print(f"{'case':<24} {'vertices':>8} " + " ".join(f"{k:>10}" for k in kernels) + "   speedup", flush=True)
    for name, kind, build in CASES + (LARGE if args.large else []):
        system = matching_system(build(), kind)
        times, results = {}, {}
        for k in kernels:
            times[k], results[k] = best_time(system, k, args.repeat)
        if len({tuple(v) for v in results.values()}) != 1:
            raise SystemExit(f"kernels disagree on {name} {kind}")
        speedup = times["python"] / times["cython"] if "cython" in times else 1.0
        print(
            f"{name + ' ' + kind:<24} {len(results['python']):>8} "
            + " ".join(f"{times[k]:>9.3f}s" for k in kernels)
            + f"   {speedup:6.1f}x",
            flush=True,
        )


if __name__ == "__main__":
    main()
