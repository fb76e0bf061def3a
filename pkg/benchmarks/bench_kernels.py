"""Compare the compiled and pure-Python kernels on the two hot loops.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

from bihom3 import _accel, catalog
from bihom3.algebra import jacobi_tables
from bihom3.search import commutant_basis, generate_random_algebra

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from helpers import realify  # noqa: E402


def jacobi_case(A):
    outer, inner = jacobi_tables(A)
    return f"jacobi scan, {A.name} (n={A.dim}, {A.dim**5} tuples)", lambda b: _accel.jacobi_scan(outer, inner, A.dim, b)


def box_case(A, bound, sign):
    par = commutant_basis(A.alpha, A.beta)
    args = (par.n, bound, list(par.free_pos), list(par.dep_pos), [list(r) for r in par.dep_num], par.denom, sign)
    target = "Id" if sign > 0 else "-Id"
    label = f"box search M^2 = {target}, {A.name} (bound {bound}, {par.box_size(bound)} candidates)"
    return label, lambda b: _accel.box_square_search(*args, backend=b)


def timed(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn(backend)
        times.append(time.perf_counter() - t)
    return statistics.median(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.compiled_available():
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    cases = [
        jacobi_case(catalog.example_4_22()),
        jacobi_case(generate_random_algebra(5, 3, seed=1)),
        jacobi_case(realify(catalog.example_3_18())[0]),
        box_case(catalog.example_3_18(), 2, 1),
        box_case(catalog.example_4_22(), 2, -1),
        box_case(catalog.example_4_22(), 2, 1),
    ]
    print(f"{'case':<62} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for label, fn in cases:
        tc, rc = timed(fn, "compiled", args.repeat)
        tp, rp = timed(fn, "python", args.repeat)
        assert rc == rp, f"backends disagree on {label}"
        print(f"{label:<62} {tc * 1e3:>8.2f}ms {tp * 1e3:>8.2f}ms {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
