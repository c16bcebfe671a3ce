"""Compare the numba kernels with the plain numpy fallback.

Each configuration runs in a fresh interpreter so the environment flag takes
effect at import time.  Usage: ``python benchmarks/bench_kernels.py``.
"""

import json
import os
import subprocess
import sys

CASES = [("A", 2, (2, 2), "P"), ("B", 2, (2, 1), "P"), ("G", 2, (1, 1), "P"), ("A", 2, (-6, 0), "E")]

WORKER = r"""
import json, sys, time
from macwalk.rootsys import build_root_system
from macwalk.ring import ParameterMap
from macwalk.walks import E_polynomial, P_polynomial
cases = json.loads(sys.argv[1])
warm = build_root_system("A", 1)
P_polynomial(warm, (1,))
out = []
for t, r, mu, kind in cases:
    rs = build_root_system(t, r)
    params = ParameterMap(rs, "orbit" if rs.n_orbits > 1 else "equal")
    fn = P_polynomial if kind == "P" else E_polynomial
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        fn(rs, tuple(mu), params)
        best = min(best, time.perf_counter() - t0)
    out.append(best)
print(json.dumps(out))
"""


def run(disable_jit: bool) -> list[float]:
    env = dict(os.environ, MACWALK_DISABLE_JIT="1" if disable_jit else "0")
    res = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(CASES)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    jit, plain = run(False), run(True)
    print(f"{'case':<22s} {'numba':>10s} {'numpy':>10s} {'ratio':>8s}")
    for (t, r, mu, kind), a, b in zip(CASES, jit, plain):
        name = f"{kind} {t}{r} {mu}"
        print(f"{name:<22s} {a:10.4f} {b:10.4f} {b / a:8.1f}x")


if __name__ == "__main__":
    main()
