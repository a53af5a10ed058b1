"""Compare the compiled and pure-Python arithmetic backends.

The backend is fixed at import time, so each one is timed in its own
subprocess with TRAPTILE_BACKEND set.  Usage:

    python3 benchmarks/bench_field.py [--repeat 3] [--skip-tiling]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time, timeit
from fractions import Fraction
from traptile.field import BACKEND, FieldContext, QuadraticNumber

repeat, tiling = int(sys.argv[1]), sys.argv[2] == "1"
ctx = FieldContext(2)
x = QuadraticNumber(Fraction(5, 3), Fraction(-2, 7), ctx)
y = QuadraticNumber(Fraction(11, 4), Fraction(3, 5), ctx)
big = x ** 40

cases = {
    "add": lambda: x + y,
    "mul": lambda: x * y,
    "div": lambda: x / y,
    "compare": lambda: x < y,
    "mul (large coefficients)": lambda: big * y,
}
out = {"backend": BACKEND, "micro": {}, "tiling": {}}
for name, fn in cases.items():
    number = 20000
    best = min(timeit.repeat(fn, number=number, repeat=repeat))
    out["micro"][name] = best / number * 1e9

if tiling:
    from traptile.circuit import build_circuit, solve_potential
    from traptile.geometry import realize, verify_exact
    from traptile.synth import tile_quadratic

    a = QuadraticNumber(3, 1, ctx)
    b = QuadraticNumber(1, 1, ctx)
    c = QuadraticNumber(Fraction(5, 2), 1, ctx)
    t0 = time.perf_counter()
    tree = tile_quadratic(a, b, c)
    t1 = time.perf_counter()
    til = realize(tree)
    t2 = time.perf_counter()
    assert verify_exact(til).ok
    t3 = time.perf_counter()
    circ = build_circuit(til)
    solve_potential(circ)
    t4 = time.perf_counter()
    out["tiling"] = {
        "pieces": len(til.placements),
        "construct": t1 - t0,
        "realize": t2 - t1,
        "verify": t3 - t2,
        "circuit": t4 - t3,
    }
print(json.dumps(out))
"""


def run(backend: str, repeat: int, tiling: bool) -> dict:
    env = dict(os.environ, TRAPTILE_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat), "1" if tiling else "0"],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-tiling", action="store_true", help="only run the arithmetic microbenchmarks")
    args = parser.parse_args(argv)

    pure = run("pure", args.repeat, not args.skip_tiling)
    try:
        ext = run("ext", args.repeat, not args.skip_tiling)
    except subprocess.CalledProcessError:
        print("compiled backend not built; showing the pure backend only")
        ext = None

    print(f"{'operation':28s} {'pure ns':>10s} {'ext ns':>10s} {'speedup':>8s}")
    for name, t_pure in pure["micro"].items():
        if ext:
            t_ext = ext["micro"][name]
            print(f"{name:28s} {t_pure:10.0f} {t_ext:10.0f} {t_pure / t_ext:7.2f}x")
        else:
            print(f"{name:28s} {t_pure:10.0f}")
    if pure["tiling"]:
        print(f"\nquadratic tiling, {pure['tiling']['pieces']} pieces (seconds)")
        for stage in ("construct", "realize", "verify", "circuit"):
            t_pure = pure["tiling"][stage]
            if ext:
                t_ext = ext["tiling"][stage]
                print(f"{stage:28s} {t_pure:10.3f} {t_ext:10.3f} {t_pure / t_ext:7.2f}x")
            else:
                print(f"{stage:28s} {t_pure:10.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
