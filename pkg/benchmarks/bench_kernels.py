"""Time the hot kernels with numba and with the pure numpy fallback.

Each backend runs in its own interpreter because the switch is read at
import time.  Usage::

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, timeit
import numpy as np
from ddc import _accel, kernels
from ddc.algebra import bose_b2
from ddc.constructions import doubly_periodic_leedd, lee_sphere_cells, periodic_welch

repeat = int(sys.argv[1])
w = periodic_welch(61)
lee = np.array(lee_sphere_cells(60)) + 60
d = doubly_periodic_leedd(4, bose_b2(11))
mask = np.zeros(d.period, bool)
for i, j in d.fundamental:
    mask[i, j] = True
sphere = np.array(lee_sphere_cells(4)) + 4
square = [(i, j) for i in range(9) for j in range(9) if abs(i - 4) + abs(j - 4) <= 5]

cases = {
    "shift_counts": lambda: kernels.shift_counts(w.fundamental, w.period, lee),
    "scan_shape_ddc": lambda: kernels.scan_shape_ddc(mask, sphere),
    "circle_counts": lambda: kernels.circle_counts(2000),
    "max_ddc_dfs": lambda: kernels.max_ddc_dfs(square, 0, None, 200000),
}
out = {"backend": _accel.backend()}
for name, fn in cases.items():
    fn()  # warm up, which includes compilation for numba
    out[name] = min(timeit.repeat(fn, number=1, repeat=repeat))
print(json.dumps(out))
"""


def run(disable, repeat):
    env = dict(os.environ)
    env.pop("NUMBA_DISABLE_JIT", None)
    env.pop("DDC_DISABLE_NUMBA", None)
    if disable:
        env["DDC_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':<16}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for name in fast:
        if name == "backend":
            continue
        print(f"{name:<16}{fast[name]:>12.4f}{slow[name]:>12.4f}{slow[name] / fast[name]:>10.1f}")


if __name__ == "__main__":
    main()
