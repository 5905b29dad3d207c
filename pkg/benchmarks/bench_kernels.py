"""Time the numba and pure-numpy oracle kernels against each other.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Compile time is excluded: each numba kernel runs once before timing.
"""

import argparse
import time

import numpy as np

from zmsplines._accel import HAVE_NUMBA
from zmsplines.arith import factorize
from zmsplines.constructions import pq_rank, rank_one_pq
from zmsplines.graph import from_edge_labels
from zmsplines.kernels import additive_closure, enumerate_residue_splines
from zmsplines.lattice import build_spline_lattice, flow_up_basis


def cases():
    c5 = from_edge_labels(5, [(1, 2, 3), (2, 3, 5), (3, 4, 5), (4, 5, 3), (1, 5, 5)], factorize(15))
    path = from_edge_labels(5, [(1, 2, 2), (2, 3, 3), (3, 4, 4), (4, 5, 6)], factorize(12))
    yield "C_5 / Z15", c5
    yield "P_5 / Z12", path
    yield "K_5 rank 1 / Z6", rank_one_pq(5, 2, 3, factorize(6))
    yield "K_5 rank 5 / Z6", pq_rank(5, 5, factorize(6))
    yield "P_6 / Z12", from_edge_labels(6, [(1, 2, 2), (2, 3, 3), (3, 4, 4), (4, 5, 6), (5, 6, 2)], factorize(12))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'instance':<18}{'kernel':<12}{'splines':>9}" + "".join(f"{b:>12}" for b in backends))
    for name, g in cases():
        L = g.label_matrix()
        gens = np.array(flow_up_basis(build_spline_lattice(g)).reduced(g.ctx), dtype=np.int64)
        for kernel, fn in (
            ("enumerate", lambda b: enumerate_residue_splines(L, g.m, backend=b)[0]),
            ("closure", lambda b: additive_closure(gens, g.m, g.n, backend=b)),
        ):
            if "numba" in backends:
                fn("numba")
            row, size, ref = [], None, None
            for b in backends:
                secs, out = best_of(lambda: fn(b), args.repeat)
                if ref is None:
                    ref, size = out, len(out)
                elif not np.array_equal(ref, out):
                    raise SystemExit(f"{name} {kernel}: backends disagree")
                row.append(f"{secs * 1e3:10.2f}ms")
            print(f"{name:<18}{kernel:<12}{size:>9}" + "".join(row))


if __name__ == "__main__":
    main()
