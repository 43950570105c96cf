"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is run against both kernel modules directly, so the result
does not depend on QDESIGNS_PURE_PYTHON.
"""
import argparse
import random
import time
import timeit

from qdesigns import _pykernels
from qdesigns.gf import make_field
from qdesigns.groups import singer_group
from qdesigns.incidence import borel_family_matrix, km_concat
from qdesigns.subspaces import subspace_coordinates

try:
    from qdesigns import _ckernels
except ImportError:
    _ckernels = None


def canon_batch(K, tables, q, n=6, k=3, count=5000, seed=1):
    rng = random.Random(seed)
    mats = [bytes(rng.randrange(q) for _ in range(n * k)) for _ in range(count)]

    def run():
        for m in mats:
            try:
                K.canon(m, n, k, tables)
            except ValueError:
                pass

    return run


def coordinates_batch(K, F, n=7, k=4, t=2, count=200, seed=2):
    rng = random.Random(seed)
    coords = subspace_coordinates(F, k, t)
    bases = []
    while len(bases) < count:
        m = bytes(rng.randrange(F.q) for _ in range(n * k))
        try:
            bases.append(K.canon(m, n, k, F.tables)[0])
        except ValueError:
            pass

    def run():
        for b in bases:
            K.mul_canon_many(b, coords, n, k, t, F.tables)

    return run


def dfs(K, matrix, lam):
    cols = [list(c) for c in zip(*matrix.entries)]

    def run():
        K.dfs_solve(cols, len(matrix.entries), lam, -1, 0.0)

    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    F2, F3 = make_field(2), make_field(3)
    singer = km_concat(singer_group(F2, 6), 2, (3, 4))
    borel = borel_family_matrix(F2, 6, 2)
    workloads = [
        ("canon 5000 x (6x3) over F_3", lambda K: canon_batch(K, F3.tables, 3)),
        ("2-subspaces of 200 4-subspaces of F_2^7", lambda K: coordinates_batch(K, F2)),
        ("DFS Singer 11x34, lambda=5 (infeasible)", lambda K: dfs(K, singer, 5)),
        ("DFS Borel M 15x15, lambda=15, all solutions", lambda K: dfs(K, borel, 15)),
    ]
    backends = [("pure", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")

    print(f"{'workload':45s}" + "".join(f"{name:>12s}" for name, _ in backends) + "    speedup")
    for label, make in workloads:
        times = []
        for _, K in backends:
            fn = make(K)
            times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        line = f"{label:45s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times)
        if len(times) == 2:
            line += f"   {times[0] / times[1]:7.1f}x"
        print(line, flush=True)


if __name__ == "__main__":
    t0 = time.perf_counter()
    main()
    print(f"total {time.perf_counter() - t0:.1f}s")
