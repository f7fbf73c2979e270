"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads: the integer matrices that the rank routine hands to the kernels
while computing descent cohomology on the largest corpus models, plus dense
random integer matrices.
"""

import argparse
import random
import time

from gnc import _kernels_py
from gnc.cohomology import ProjectiveModel
from gnc.complex_core import random_corpus
from gnc.descent import descent_complex
from gnc.kernels import PRIME

try:
    from gnc import _kernels
except ImportError:
    _kernels = None


def descent_blocks(count=3):
    corpus = sorted(random_corpus(), key=lambda m: -len(m.facets))[:count]
    blocks = []
    for m in corpus:
        cx = descent_complex(ProjectiveModel(m), 2)
        for d in cx.differentials:
            if d.rows and d.cols:
                rows = [[0] * d.cols for _ in range(d.rows)]
                for (r, c), v in d.items():
                    rows[r][c] = int(v)
                blocks.append(rows)
    return blocks


def dense_blocks(n=120, count=4, seed=0):
    rng = random.Random(seed)
    return [[[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)] for _ in range(count)]


def timed(fn, blocks, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        ranks = [fn(b) for b in blocks]
        best = min(best, time.perf_counter() - start)
    return best, ranks


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()
    workloads = {"descent": descent_blocks(), "dense": dense_blocks()}
    print(f"{'workload':10} {'kernel':10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, blocks in workloads.items():
        for kernel in ("rank_exact", "rank_mod_p"):
            def call(mod):
                f = getattr(mod, kernel)
                if kernel == "rank_mod_p":
                    return lambda b: f(b, len(b[0]), PRIME)
                return lambda b: f(b, len(b[0]))
            py, py_ranks = timed(call(_kernels_py), blocks, args.repeat)
            if _kernels is None:
                print(f"{name:10} {kernel:10} {py:10.3f} {'n/a':>10} {'n/a':>8}")
                continue
            try:
                cy, cy_ranks = timed(call(_kernels), blocks, args.repeat)
            except OverflowError:
                print(f"{name:10} {kernel:10} {py:10.3f} {'overflow':>10} {'n/a':>8}")
                continue
            assert cy_ranks == py_ranks, "backends disagree"
            print(f"{name:10} {kernel:10} {py:10.3f} {cy:10.3f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
