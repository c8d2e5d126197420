"""Benchmark the compiled term kernels against the pure-Python fallback.

Runs the same seeded quantum-product workloads through both backends and
prints per-dimension timings plus the speedup.  Usage:

    python benchmarks/bench_kernels.py [--trials N]
"""

import argparse
import time

from qexterior import _kernels_py as pure
from qexterior.sampling import Sampler

try:
    from qexterior import _kernels_cy as compiled
except ImportError:
    compiled = None


def workload(dim, trials, seed):
    s = Sampler(seed)
    cases = []
    for _ in range(trials):
        a = s.ext_form(dim, degree=s.rng.randint(1, dim), h_max=1, terms=3)
        b = s.ext_form(dim, degree=s.rng.randint(1, dim), h_max=1, terms=3)
        w = s.antisymmetric_bivector(dim)
        cases.append((a.terms, b.terms, w.pairs0()))
    return cases


def run(backend, cases):
    start = time.perf_counter()
    sink = 0
    for A, B, wpairs in cases:
        out = backend.qwedge_terms(A, B, wpairs)
        sink += len(out)
    return time.perf_counter() - start, sink


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=150)
    ap.add_argument("--seed", type=int, default=12345)
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels unavailable; showing pure-Python timings only")

    print(f"{'dim':>4} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for dim in (3, 4, 6, 8):
        cases = workload(dim, args.trials, args.seed)
        t_pure, sink_p = run(pure, cases)
        if compiled is not None:
            t_cy, sink_c = run(compiled, cases)
            assert sink_p == sink_c, "backends disagree"
            print(f"{dim:>4} {t_pure:>10.3f} {t_cy:>11.3f} "
                  f"{t_pure / t_cy:>7.2f}x")
        else:
            print(f"{dim:>4} {t_pure:>10.3f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
