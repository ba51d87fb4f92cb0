"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The script times itself once per backend; the pure-Python run is a
subprocess with ``LAURENTCC_PURE_PYTHON=1``.
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("series_mul", "Z/8[e;2]", 64),
    ("series_mul", "Q[e1;2,e2;3]", 48),
    ("compose", "Z/8[e;2]", 32),
    ("compose", "Q[e;3]", 32),
    ("det_cocycle", "Q[e;2]", 32),
]


def _workload(kind, ring_text, n):
    import random

    from laurentcc import AutElement, LaurentSeries, compose, det_cocycle, make_ring, precision
    from laurentcc.rings import RingSampler

    ring = make_ring(ring_text)
    rng = random.Random(0)
    draw = RingSampler(ring, rng, 3, 0.7)
    if kind == "series_mul":
        a = LaurentSeries.from_dict(ring, {i: draw.element() for i in range(n)}, prec=n)
        b = LaurentSeries.from_dict(ring, {i: draw.element() for i in range(n)}, prec=n)
        return lambda: a.mul(b, n)
    e = ring.gen(ring.names[0])
    f = LaurentSeries.from_dict(ring, {-2: e, 1: ring.one, 2: draw.element(), 3: draw.element()})
    g = LaurentSeries.from_dict(ring, {-1: e, 1: draw.unit(), 2: draw.element()})
    if kind == "compose":
        return lambda: compose(f, g, n)
    phi, psi = AutElement(f), AutElement(g)

    def run():
        with precision(n):
            return det_cocycle(phi, psi)
    return run


def measure(repeat):
    from laurentcc.kernels import BACKEND

    rows = []
    for kind, ring_text, n in CASES:
        fn = _workload(kind, ring_text, n)
        fn()
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
        rows.append({"kind": kind, "ring": ring_text, "n": n, "seconds": best})
    return BACKEND, rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.child:
        backend, rows = measure(args.repeat)
        print(json.dumps({"backend": backend, "rows": rows}))
        return
    backend, fast = measure(args.repeat)
    env = dict(os.environ, LAURENTCC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, __file__, "--child", "--repeat", str(args.repeat)],
                         env=env, check=True, capture_output=True, text=True).stdout
    slow = json.loads(out)
    if backend == slow["backend"]:
        print(f"note: only the {backend} backend is available; build the extension first")
    print(f"{'kernel':<12} {'ring':<14} {'n':>4} {backend:>10} {slow['backend']:>10} {'speedup':>8}")
    for a, b in zip(fast, slow["rows"]):
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("nan")
        print(f"{a['kind']:<12} {a['ring']:<14} {a['n']:>4} {a['seconds']:>10.5f} "
              f"{b['seconds']:>10.5f} {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
