"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times a raw join and two full checks with each backend. The solver is
imported fresh in a subprocess per backend so the import-time selection
is exercised exactly as in normal use.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import numpy as np
from guicheck import _kernels
from guicheck.flatten import resolve_spec
from guicheck.oracle import random_trace
from guicheck.solver import check_spec
from guicheck.stdlib import builtin_library

def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

repeat = {repeat}
rng = np.random.default_rng(0)
v, n = 5, 400
left = np.where(rng.random((n, v)) < 0.4, rng.integers(0, 60, (n, v)), -1).astype(np.int64)
right = np.where(rng.random((n, v)) < 0.4, rng.integers(0, 60, (n, v)), -1).astype(np.int64)
keys = np.zeros((n, 1), dtype=np.int64)
excl = np.ones(v, dtype=np.int64)
slot_kind = np.zeros(v, dtype=np.int64)
cap = np.array([60], dtype=np.int64)
shape_kind = np.zeros(60, dtype=np.int64)

lib = builtin_library()
hscroll = resolve_spec("HScrollbar", lib=lib)
big = random_trace(1, {{"counts": {{"rectangle": 14, "triangle": 6}}, "coord_range": (0, 200)}})
canvas = resolve_spec("ResizedCanvas", lib=lib)
rects = random_trace(2, {{"counts": {{"rectangle": 40}}, "coord_range": (0, 400)}})

print(json.dumps({{
    "backend": _kernels.BACKEND,
    "join 400x400": best(lambda: _kernels.join(left, right, keys, keys, 0, excl, slot_kind, cap, shape_kind), repeat),
    "HScrollbar, 20 shapes": best(lambda: check_spec(hscroll, big), repeat),
    "ResizedCanvas, 40 rectangles": best(lambda: check_spec(canvas, rects), repeat),
}}))
"""


def run_backend(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["GUICHECK_PURE_PYTHON"] = "1" if pure else ""
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD.format(repeat=repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled backend not built; only the Python fallback is available")
    print(f"{'workload':32} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:32} {fast[key] * 1e3:9.2f}ms {slow[key] * 1e3:9.2f}ms {slow[key] / fast[key]:7.1f}x")


if __name__ == "__main__":
    main()
