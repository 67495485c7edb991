"""Compare the compiled and pure-Python kernels on fixed workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each row reports the best wall time over the repeats and checks that both
kernels return the same answer.
"""

import argparse
import timeit

from homlab import HomSearchConfig, hom_count, hom_exists, subdivide
from homlab._kernels import compiled_kernel, python_kernel
from homlab.generators import all_graphs
from homlab.named import complete, cycle, petersen


def hom_workloads():
    yield "count P->K3 (120 maps)", lambda cfg: hom_count(petersen(), complete(3), cfg)
    yield "exists Sub2(K4)->C5", lambda cfg: hom_exists(subdivide(complete(4), 2), cycle(5), cfg) is not None
    yield "exists C11->C9 (none)", lambda cfg: hom_exists(cycle(11), cycle(9), cfg) is not None
    graphs = all_graphs(4)
    yield "all pairs <=4 exists", lambda cfg: sum(hom_exists(a, b, cfg) is not None for a in graphs for b in graphs)


def td_workloads():
    g12 = cycle(12)
    yield "td table C12", lambda k: k.td_table(list(g12.adj_masks))[-1]
    pg = petersen()
    yield "td Petersen", lambda k: k.td_mask(list(pg.adj_masks), (1 << pg.n) - 1)


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_kernel is None:
        print("compiled kernel not built; only the pure-Python timings are shown")
    print(f"{'workload':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    rows = [(name, lambda b, fn=fn: fn(HomSearchConfig(backend=b)), "python", "cython")
            for name, fn in hom_workloads()]
    rows += [(name, lambda k, fn=fn: fn(k), python_kernel, compiled_kernel) for name, fn in td_workloads()]
    for name, run, slow, fast in rows:
        ref = run(slow)
        t_py = best(lambda: run(slow), args.repeat)
        if compiled_kernel is None:
            print(f"{name:28s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        if run(fast) != ref:
            raise SystemExit(f"kernels disagree on {name}")
        t_cy = best(lambda: run(fast), args.repeat)
        print(f"{name:28s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
