"""Time the branch-tracked solver under both root kernels.

The kernel backend is chosen at import time, so each backend runs in a
fresh subprocess with FUSSCAT_PURE_PYTHON set accordingly.  The workload
is the solve_path sweep the density tabulation leans on: one vertical
descent plus a horizontal pass across the support at small Im(z).

Usage: python benchmarks/bench_solver.py [--m 2] [--points 2000] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import numpy as np
from fusscat._backend import BACKEND_NAME
from fusscat.density import support_edge
from fusscat.stieltjes import solve_path

m, n_points, repeat = json.loads(sys.argv[1])
edge = support_edge(m)
descent = [complex(edge, v) for v in np.geomspace(10.0, 1e-8, n_points // 4)]
sweep = [complex(x, 1e-8) for x in np.linspace(edge, 1e-6 * edge, n_points)]

best = float("inf")
for _ in range(repeat):
    t0 = time.perf_counter()
    solve_path(m, descent)
    solve_path(m, descent[-1:] + sweep)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({"backend": BACKEND_NAME, "seconds": best}))
"""


def run_backend(pure, args):
    env = dict(os.environ)
    env.pop("FUSSCAT_PURE_PYTHON", None)
    if pure:
        env["FUSSCAT_PURE_PYTHON"] = "1"
    payload = json.dumps([args.m, args.points, args.repeat])
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, payload],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    results = [run_backend(pure, args) for pure in (False, True)]
    for r in results:
        n = args.points + args.points // 4
        print(f"{r['backend']:>8}: {r['seconds'] * 1e3:8.1f} ms  "
              f"({r['seconds'] / n * 1e6:.1f} us/point)")
    if results[0]["backend"] != results[1]["backend"]:
        speedup = results[1]["seconds"] / results[0]["seconds"]
        print(f"compiled kernel speedup: {speedup:.2f}x")
    else:
        print("compiled kernel unavailable; both runs used the pure backend")


if __name__ == "__main__":
    main()
