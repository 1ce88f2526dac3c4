"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--size K]

Builds the join of two K-gon wrap maps with an S^0 pad (the planner's shape at
degree (K/3)^2) and times the two hot kernels in both lanes.  The env flag
SPHEREMAP_NUMBA only affects library dispatch; this script imports both lane
modules directly.
"""

import argparse
import time

import numpy as np

import spheremap as sm
from spheremap import _kernels_numpy
from spheremap.complexes import _ridge_pairs

try:
    from spheremap import _kernels_numba
except ImportError:
    _kernels_numba = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=300, help="cycle size per factor")
    args = ap.parse_args()
    k = args.size

    f = sm.join_maps(sm.join_maps(sm.wrap_map(k, 3), sm.wrap_map(k, 3)),
                     sm.identity_map(sm.simplex_boundary(0)))
    src = f.source_complex.facets
    assign = f.assignment
    tc = f.target_complex
    tgt = np.ascontiguousarray(tc.facets[tc.lex_order()])
    ok, _, pa, pb, oa, ob = _ridge_pairs(f.source_complex)
    assert ok
    rel = np.where((oa.astype(np.int16) + ob) % 2 == 0, -1, 1).astype(np.int8)
    m = f.source_complex.num_facets
    print(f"source: {m} facets of dimension {f.source_complex.dim}, "
          f"{f.source_complex.num_vertices} vertices")

    lanes = [("numpy", _kernels_numpy)]
    if _kernels_numba is not None:
        _kernels_numba.facet_image_lookup(src[:10], assign, tgt)  # compile
        _kernels_numba.propagate_signs(m, pa, pb, rel)
        lanes.append(("numba", _kernels_numba))
    else:
        print("numba not importable; benchmarking the numpy lane only")

    results = {}
    for name, lane in lanes:
        t_deg = timeit(lambda: lane.facet_image_lookup(src, assign, tgt))
        t_or = timeit(lambda: lane.propagate_signs(m, pa, pb, rel))
        results[name] = (t_deg, t_or)
        print(f"{name:>6}: facet_image_lookup {t_deg * 1e3:8.1f} ms   "
              f"propagate_signs {t_or * 1e3:8.1f} ms")

    if len(results) == 2:
        d0, o0 = results["numpy"]
        d1, o1 = results["numba"]
        print(f"speedup: facet_image_lookup x{d0 / d1:.1f}, propagate_signs x{o0 / o1:.1f}")
        i1, p1 = _kernels_numpy.facet_image_lookup(src, assign, tgt)
        i2, p2 = _kernels_numba.facet_image_lookup(src, assign, tgt)
        assert np.array_equal(i1, i2) and np.array_equal(p1, p2), "lanes disagree"
        print("lane outputs identical")


if __name__ == "__main__":
    main()
