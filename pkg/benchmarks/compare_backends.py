"""Time the compiled kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the choice is made at import
time. Usage: python3 benchmarks/compare_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from courant_shla import kernels
from courant_shla.generate import random_poly
from courant_shla.planfile import load_plan
from courant_shla.poly import Poly
from courant_shla.runner import run_plan

def best(fn, repeat):
    out = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); out.append(time.perf_counter() - t)
    return min(out)

repeat = REPEAT
rng = random.Random(0)
ps = [random_poly(3, 4, 9, rng) for _ in range(40)]
big = [p * Poly.const(3, 2**70 + 1) for p in ps]

def products():
    for a in ps:
        for b in ps[:10]:
            a * b

def dots():
    for i in range(0, 40, 4):
        Poly.dot(3, list(zip(ps[i:i + 4], ps[i + 4:i + 8] or ps[:4])))

def bigint():
    for a in big[:20]:
        for b in big[:10]:
            a * b

plan = load_plan('plan { suites = ["axioms", "shla"], trials = 10 }\n'
                 'courant { kind = "bialgebroid_double", pair = "poisson", pi = { (2,3): "x1", (3,1): "x2", (1,2): "x3" } }')

print(json.dumps({
    "backend": kernels.BACKEND,
    "poly products": best(products, repeat),
    "dot products": best(dots, repeat),
    "big-integer products": best(bigint, repeat),
    "plan run (so3 Poisson double)": best(lambda: run_plan(plan), repeat),
}))
"""


def run(pure, repeat):
    env = dict(os.environ)
    env.pop("COURANT_SHLA_PURE", None)
    if pure:
        env["COURANT_SHLA_PURE"] = "1"
    code = WORKLOAD.replace("REPEAT", str(repeat))
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled kernels are not built; both columns use the pure-Python fallback")
    print(f"{'workload':32s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        print(f"{key:32s} {fast[key]:9.3f}s {slow[key]:9.3f}s {slow[key] / fast[key]:7.2f}x")


if __name__ == "__main__":
    main()
