"""Compare the compiled and pure-Python per-pair kernels.

    python benchmarks/bench_kernels.py [--sizes 50,200,1000] [--pairs 2000]

Both backends are fed the same pre-drawn (sigma, tau) pairs; results are
checked for equality before timing.
"""
import argparse
import time

from randsts import kernels
from randsts.permcore import RngStream, class_images


def draw_pairs(n, count, seed=0):
    out = []
    for i in range(count):
        rng = RngStream(seed, i)
        out.append((class_images((n,), rng), rng.permutation(n)))
    return out


def time_backend(fn, pairs, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for s, t in pairs:
            fn(s, t)
        best = min(best, time.perf_counter() - t0)
    return best / len(pairs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,200,1000")
    ap.add_argument("--pairs", type=int, default=2000)
    args = ap.parse_args(argv)

    compiled = kernels.compiled_analyze_pair
    if compiled is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'n':>6} {'python us/pair':>15} {'compiled us/pair':>17} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        pairs = draw_pairs(n, args.pairs)
        py = time_backend(kernels.python_analyze_pair, pairs, repeat=1)
        if compiled is None:
            print(f"{n:>6} {py * 1e6:>15.1f} {'-':>17} {'-':>8}")
            continue
        for s, t in pairs[:50]:
            a, b = compiled(s, t), kernels.python_analyze_pair(s, t)
            assert list(a[0]) == list(b[0]) and a[1:] == b[1:], "backends disagree"
        cy = time_backend(compiled, pairs)
        print(f"{n:>6} {py * 1e6:>15.1f} {cy * 1e6:>17.1f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
