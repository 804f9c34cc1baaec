"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--N 57] [--repeat 5]

Times each kernel on random inputs and one full pipeline run per backend,
and checks that both backends return the same q_n values.
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from schlafli import _pykernels
from schlafli.cheb import cosine_matrix, nodes

try:
    from schlafli import _ckernels
except ImportError:
    _ckernels = None

PIPELINE = """
import json, time
from schlafli.recurrence import solve_many
t0 = time.perf_counter()
sols = solve_many([{ns}], N={N})
elapsed = time.perf_counter() - t0
print(json.dumps([elapsed, [float(s(s.n)) for _, s in sorted(sols.items())]]))
"""


def kernel_table(N, repeat):
    rng = np.random.default_rng(0)
    a, c, v = rng.normal(size=N), rng.normal(size=N), rng.normal(size=N)
    t, y = cosine_matrix(N), nodes(N)
    cases = {
        "fit_values": lambda k: k.fit_values(v, t),
        "product_coeffs": lambda k: k.product_coeffs(c, a),
        "solve_step": lambda k: k.solve_step(101, a),
        "advance": lambda k: k.advance(a, 101, t, y),
        "clenshaw": lambda k: k.clenshaw(a, 0.3),
    }
    rows = []
    for name, call in cases.items():
        per = {}
        for label, mod in (("cython", _ckernels), ("python", _pykernels)):
            if mod is None:
                continue
            timer = timeit.Timer(lambda: call(mod))
            loops, _ = timer.autorange()
            per[label] = min(timer.repeat(repeat, loops)) / loops
        rows.append((name, per))
    return rows


def pipeline(backend, N, ns):
    env = dict(os.environ, SCHLAFLI_BACKEND=backend)
    code = PIPELINE.format(ns=", ".join(map(str, ns)), N=N)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    elapsed, values = json.loads(out.stdout)
    return elapsed, values


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=57)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"kernels at N={args.N} (best of {args.repeat}, microseconds per call)")
    print(f"{'kernel':<16}{'cython':>12}{'python':>12}{'speedup':>10}")
    for name, per in kernel_table(args.N, args.repeat):
        cy, py = per.get("cython"), per.get("python")
        cy_s = f"{cy * 1e6:12.2f}" if cy else f"{'n/a':>12}"
        ratio = f"{py / cy:9.1f}x" if cy else f"{'':>10}"
        print(f"{name:<16}{cy_s}{py * 1e6:12.2f}{ratio}")

    ns = [4, 5, 10, 11, 100, 101, 1000, 1001, 10000, 10001]
    print(f"\nfull table run, N={args.N}")
    results = {}
    for backend in ("cython", "python"):
        if backend == "cython" and _ckernels is None:
            continue
        results[backend] = pipeline(backend, args.N, ns)
        print(f"{backend:<8}{results[backend][0]:8.3f} s")
    if len(results) == 2:
        diff = np.max(np.abs(np.subtract(results["cython"][1], results["python"][1])))
        print(f"max |q_cython - q_python| = {diff:.2e}")


if __name__ == "__main__":
    main()
