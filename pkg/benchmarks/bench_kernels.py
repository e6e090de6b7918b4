"""Timing comparison of the jitted kernels against the plain-Python path.

Run:  python benchmarks/bench_kernels.py [--repeat N]

The same comparison is what COVERHOM_DISABLE_NUMBA=1 switches globally;
here both backends are timed in one process (the jitted function and its
uncompiled source).
"""

import argparse
import time
from itertools import combinations

import numpy as np

from coverhom import _kernels as K


def timed(func, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_transversals(repeat):
    rng = np.random.default_rng(0)
    edges = set()
    while len(edges) < 40:
        verts = rng.choice(24, size=3, replace=False)
        edges.add(int(sum(1 << int(v) for v in verts)))
    edges = np.array(sorted(edges), np.uint64)
    tj, a = timed(K._minimal_transversals_jit, edges.copy(), repeat=repeat)
    tp, b = timed(K._minimal_transversals_core, edges.copy(), repeat=repeat)
    assert np.array_equal(np.unique(a), np.unique(b))
    return "minimal transversals (40 edges / 24 vertices)", tj, tp


def bench_faces(repeat):
    rng = np.random.default_rng(1)
    edges = set()
    while len(edges) < 30:
        verts = rng.choice(20, size=4, replace=False)
        edges.add(int(sum(1 << int(v) for v in verts)))
    edges = np.array(sorted(edges), np.uint64)
    uni = np.uint64((1 << 20) - 1)
    cap = np.int64(1 << 24)
    tj, (fa, _) = timed(K._enum_faces_jit, edges.copy(), uni, cap, repeat=repeat)
    tp, (fb, _) = timed(K._enum_faces_core, edges.copy(), uni, cap, repeat=repeat)
    assert len(fa) == len(fb)
    return f"face enumeration ({len(fa)} faces)", tj, tp


def _random_boundary(n):
    faces = [tuple(sorted(c)) for c in combinations(range(n), 3)]
    lower = [tuple(sorted(c)) for c in combinations(range(n), 2)]
    idx = {f: i for i, f in enumerate(lower)}
    mat = np.zeros((len(lower), len(faces)), np.int64)
    for col, f in enumerate(faces):
        for pos in range(3):
            sub = f[:pos] + f[pos + 1 :]
            mat[idx[sub], col] = 1 if pos % 2 == 0 else -1
    return mat


def bench_rank_gf2(repeat):
    mat = _random_boundary(14)
    nr, nc = mat.shape
    words = (nc + 63) // 64
    packed = np.zeros((nr, words), np.uint64)
    rr, cc = np.nonzero(mat & 1)
    for i, j in zip(rr.tolist(), cc.tolist()):
        packed[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    tj, a = timed(K._rank_gf2_jit, packed.copy(), nc, repeat=repeat)
    tp, b = timed(K._rank_gf2_core, packed.copy(), nc, repeat=repeat)
    assert a == b
    return f"GF(2) rank ({nr}x{nc})", tj, tp


def bench_rank_exact(repeat):
    mat = _random_boundary(11)
    tj, a = timed(K._rank_bareiss_jit, mat.copy(), repeat=repeat)
    tp, b = timed(K._rank_bareiss_core, mat.copy(), repeat=repeat)
    assert a == b
    return f"integer Bareiss rank ({mat.shape[0]}x{mat.shape[1]})", tj, tp


def bench_reduce(repeat):
    n = 16
    facets = [tuple(range(0, 8)), tuple(range(4, 12)), tuple(range(8, 16))]
    faces = {0}
    for f in facets:
        for k in range(1, len(f) + 1):
            for c in combinations(f, k):
                faces.add(sum(1 << v for v in c))
    masks = np.array(sorted(faces), np.uint64)
    uni = np.uint64((1 << n) - 1)
    tj, a = timed(K._reduce_cells_jit, masks.copy(), uni, repeat=repeat)
    tp, b = timed(K._reduce_cells_impl, masks.copy(), uni, repeat=repeat)
    assert np.array_equal(np.sort(a), np.sort(b))
    return f"cell reduction ({len(masks)} cells)", tj, tp


def bench_lq(repeat):
    rng = np.random.default_rng(2)
    exp = rng.integers(0, 3, size=(300, 12)).astype(np.int64)
    tj, a = timed(K._lq_violation_jit, exp.copy(), repeat=repeat)
    tp, b = timed(K._lq_violation_core, exp.copy(), repeat=repeat)
    assert a == b
    return "linear-quotient check (300 x 12)", tj, tp


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not K.NUMBA_ENABLED:
        print("numba backend disabled; nothing to compare")
        return
    K.warm_up()
    benches = [
        bench_transversals,
        bench_faces,
        bench_rank_gf2,
        bench_rank_exact,
        bench_reduce,
        bench_lq,
    ]
    print(f"{'kernel':45s} {'jit':>10s} {'python':>10s} {'speedup':>8s}")
    for bench in benches:
        name, tj, tp = bench(args.repeat)
        print(f"{name:45s} {tj * 1e3:9.2f}ms {tp * 1e3:9.2f}ms {tp / tj:7.1f}x")


if __name__ == "__main__":
    main()
