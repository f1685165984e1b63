"""Compare the compiled polynomial kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--degree 24] [--repeat 5]

Also times plan compilation and encoding end to end, switching the
dispatcher between backends.
"""

import argparse
import random
import timeit

from flexenc import _pykernels, kernels
from flexenc.curves import HessianCurve, WeierstrassCurve
from flexenc.families import builtin_family, certify_even, encode
from flexenc.field import make_field, random_prime

try:
    from flexenc import _kernels
except ImportError:
    _kernels = None


def _best(stmt, repeat, number):
    return min(timeit.repeat(stmt, repeat=repeat, number=number)) / number


def bench_kernels(p, degree, repeat):
    rng = random.Random(1)
    a = [rng.randrange(p) for _ in range(degree + 1)]
    b = [rng.randrange(p) for _ in range(degree // 2 + 1)]
    x = rng.randrange(p)
    cases = {
        "mul": lambda m: m.mul(a, b, p),
        "divmod": lambda m: m.divmod_(a, b, p),
        "evaluate": lambda m: m.evaluate(a, x, p),
    }
    rows = []
    for name, fn in cases.items():
        py = _best(lambda: fn(_pykernels), repeat, 2000)
        cy = _best(lambda: fn(_kernels), repeat, 2000) if _kernels else float("nan")
        rows.append((name, py, cy))
    return rows


def bench_pipeline(p, repeat):
    F = make_field(p)
    w = WeierstrassCurve(F, 3, 5)
    h = HessianCurve(F, 7)
    out = []
    for backend in ("python", "cython"):
        if backend == "cython" and not _kernels:
            continue
        kernels.use_backend(backend)
        compile_time = _best(lambda: certify_even(w, builtin_family("octic", w)), repeat, 3)
        plan = certify_even(h, builtin_family("pencil", h))
        ts = list(range(1, 201))
        encode_time = _best(lambda: [encode(plan, t) for t in ts], repeat, 1) / len(ts)
        out.append((backend, compile_time, encode_time))
    kernels.use_backend("cython" if _kernels else "python")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, default=24)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    p = random_prime(61, 2, random.Random(0))
    print(f"p = {p} ({p.bit_length()} bits), default backend: {kernels.BACKEND}")
    print(f"\nkernels, degree {args.degree}            python      cython    speedup")
    for name, py, cy in bench_kernels(p, args.degree, args.repeat):
        print(f"  {name:<28}{py * 1e6:9.2f}us {cy * 1e6:9.2f}us {py / cy:8.1f}x")
    print("\npipeline                   compile octic   encode (pencil)")
    for backend, c, e in bench_pipeline(p, args.repeat):
        print(f"  {backend:<24}{c * 1e3:10.2f}ms {e * 1e6:12.2f}us")


if __name__ == "__main__":
    main()
