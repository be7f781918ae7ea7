"""Compare the compiled and pure-Python polynomial kernels.

Each backend runs in its own interpreter because the choice is made once at
import time.  Usage::

    python benchmarks/bench_kernels.py            # both backends, table
    python benchmarks/bench_kernels.py --json     # machine-readable
    python benchmarks/bench_kernels.py --worker   # one backend, JSON on stdout
"""
import argparse
import json
import os
import random
import subprocess
import sys
import timeit


def _random_poly(ring, rng, terms, degree):
    out = {}
    for _ in range(terms):
        exps = [rng.randint(0, degree) for _ in range(ring.nvars)]
        out[ring.pack(exps)] = rng.choice([-1, 1]) * rng.randint(1, 10 ** 6)
    return {m: c for m, c in out.items() if c}


def workloads():
    from contactkit.catalog import load_entry
    from contactkit.kernels import pmul
    from contactkit.parser import parse_scalar
    from contactkit.polynomial import PolyRing
    from contactkit.scalar import Chart

    rng = random.Random(20240601)
    ring = PolyRing(4)
    a = _random_poly(ring, rng, 60, 6)
    b = _random_poly(ring, rng, 60, 6)
    chart = Chart(["x", "y", "z"])
    fracs = [parse_scalar(t, chart) for t in
             ("(x^2*y - 3*z + 1)/(x - y^2 + 2)", "(y*z^2 + x)/(z^3 - x*y + 5)",
              "(x^3 - 2*y*z + 4)/(x*z + y + 1)")]

    def rational_sum():
        acc = chart.zero()
        for f in fracs:
            acc = acc + f * f - f / (f + 1)
        return acc

    def gcd_nontrivial():
        f = fracs[0] * fracs[1]
        return (f * fracs[2]) / (fracs[2] * fracs[1])

    def geometry(key):
        def run():
            G = load_entry(key).structure.geometry()
            return [G.connection(k) for k in ("lc", "tw", "bl")]
        return run

    return {
        "pmul 60x60 terms, 4 vars": (lambda: pmul(a, b), 200),
        "rational sum of squares": (rational_sum, 50),
        "cancellation through gcd": (gcd_nontrivial, 50),
        "connections on r2n1(n=3)": (geometry("r2n1(n=3)"), 3),
        "connections on perturbed-r3": (geometry("perturbed-r3"), 3),
        "connections on s3": (geometry("s3"), 3),
    }


def worker():
    from contactkit.kernels import BACKEND
    out = {"backend": BACKEND, "timings": {}}
    for name, (fn, number) in workloads().items():
        fn()  # warm caches and imports
        best = min(timeit.repeat(fn, number=number, repeat=3)) / number
        out["timings"][name] = best
    json.dump(out, sys.stdout)


def run_backend(pure):
    env = dict(os.environ)
    env["CONTACTKIT_PURE_PYTHON"] = "1" if pure else "0"
    proc = subprocess.run([sys.executable, __file__, "--worker"], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = p.parse_args(argv)
    if args.worker:
        worker()
        return
    compiled, pure = run_backend(False), run_backend(True)
    if compiled["backend"] != "cython":
        print("warning: compiled kernels unavailable; both runs use the Python fallback",
              file=sys.stderr)
    rows = []
    for name, t_pure in pure["timings"].items():
        t_c = compiled["timings"][name]
        rows.append({"workload": name, "python_s": t_pure, "compiled_s": t_c,
                     "speedup": t_pure / t_c if t_c else float("inf")})
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return
    width = max(len(r["workload"]) for r in rows)
    print(f"{'workload':<{width}}  {'python':>10}  {compiled['backend']:>10}  speedup")
    for r in rows:
        print(f"{r['workload']:<{width}}  {r['python_s'] * 1e3:>8.2f}ms  "
              f"{r['compiled_s'] * 1e3:>8.2f}ms  {r['speedup']:>6.2f}x")


if __name__ == "__main__":
    main()
