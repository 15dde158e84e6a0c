"""Compare the numba and pure-numpy kernel backends.

    python benchmarks/bench_kernels.py [--blocks 60] [--clusters 30] [--repeat 5]

Each backend is timed on the same synthetic block decomposition. Numba
compilation happens once before timing.
"""
import argparse
import time

import numpy as np

from bicvis import kernels

NB = kernels.backend("numba")
NP = kernels.backend("numpy")


def synthetic(s, t, k, seed=0):
    g = np.random.default_rng(seed)
    mr = g.random((s, k)) < 0.15
    mc = g.random((t, k)) < 0.15
    co = (mr.astype(np.int64) @ mc.T.astype(np.int64)) > 0
    sz_r = g.integers(1, 40, s).astype(np.int64)
    sz_c = g.integers(1, 40, t).astype(np.int64)
    return mr, mc, co, sz_r, sz_c


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(args):
    mr, mc, co, sz_r, sz_c = synthetic(args.blocks, args.blocks, args.clusters)
    arrs = (mr, mc, co, sz_r, sz_c)
    order = np.arange(args.blocks, dtype=np.int64)
    half = order[: args.blocks // 2]
    w = NP.pair_weights(mc, mr, sz_c)
    tour = np.random.default_rng(1).permutation(args.blocks).astype(np.int64)

    def greedy(be, kind):
        # one full insertion sweep over the row axis
        def run():
            for b in range(args.blocks // 2, args.blocks):
                be.insertion_scores(kind, half, order, b, True, *arrs)
        return run

    def two_opt(be):
        def run():
            t = tour.copy()
            while be.two_opt_pass(w, t):
                pass
        return run

    out = []
    for name, code in (("prox", kernels.PROX), ("area", kernels.AREA), ("unint", kernels.UNINT),
                       ("demerit", kernels.DEMERIT)):
        out.append((f"score_blocks/{name}", lambda be, c=code: (lambda: be.score_blocks(c, order, order, *arrs))))
    out.append(("insertion_scores/area sweep", lambda be: greedy(be, kernels.AREA)))
    out.append(("insertion_scores/unint sweep", lambda be: greedy(be, kernels.UNINT)))
    out.append(("pair_weights", lambda be: (lambda: be.pair_weights(mc, mr, sz_c))))
    out.append(("two_opt to convergence", two_opt))
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--blocks", type=int, default=60)
    p.add_argument("--clusters", type=int, default=30)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    print(f"blocks per axis {args.blocks}, clusters {args.clusters}, best of {args.repeat}")
    print(f"{'kernel':32} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, make in cases(args):
        fn_nb, fn_np = make(NB), make(NP)
        fn_nb()  # compile
        t_nb = timeit(fn_nb, args.repeat)
        t_np = timeit(fn_np, args.repeat)
        print(f"{name:32} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
