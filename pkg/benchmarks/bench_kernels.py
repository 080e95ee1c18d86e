"""Wall-clock comparison of the numba kernels and the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py --sizes 64 128 256 --repeat 3

Both paths run in one process: the numpy kernels are always importable, the
compiled ones only when numba is installed and not disabled.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from dampedqho import _kernels
from dampedqho.linalg import frobenius_norm
from dampedqho.model import OrderingScheme, PhysParams
from dampedqho.operators import FockBasis, build_hamiltonian


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def general(hess, hqr, a):
    h = hess(a.copy())
    return hqr(h, 1e-12, 30 * a.shape[0], frobenius_norm(a))


def hermitian(tri, tql, a):
    d, e = tri(a.copy())
    return tql(d, e, 1e-12, 30 * a.shape[0])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    have_numba = _kernels.hqr_numba is not None
    paths = {"numpy": (_kernels.hessenberg_numpy, _kernels.hqr_numpy, _kernels.tridiag_numpy, _kernels.tql_python)}
    if have_numba:
        paths["numba"] = (_kernels.hessenberg_numba, _kernels.hqr_numba, _kernels.tridiag_numba, _kernels.tql_numba)
        # compile outside the timed region
        small = build_hamiltonian(FockBasis(4, 1.0), PhysParams(), OrderingScheme.YP)
        general(paths["numba"][0], paths["numba"][1], small)
        hermitian(paths["numba"][2], paths["numba"][3], 0.5 * (small + small.conj().T))

    rows = []
    p = PhysParams(lambda_damp=1.0)
    for n in args.sizes:
        h_gen = build_hamiltonian(FockBasis(n, 1.0), p, OrderingScheme.YP)
        h_sym = build_hamiltonian(FockBasis(n, 1.0), p, OrderingScheme.SYMMETRIZED)
        for name, (hess, hqr, tri, tql) in paths.items():
            rows.append(
                {
                    "n": n,
                    "backend": name,
                    "general_s": _best(lambda: general(hess, hqr, h_gen), args.repeat),
                    "hermitian_s": _best(lambda: hermitian(tri, tql, h_sym), args.repeat),
                }
            )
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'n':>5} {'backend':>8} {'general [s]':>12} {'hermitian [s]':>14}")
    for r in rows:
        print(f"{r['n']:>5} {r['backend']:>8} {r['general_s']:>12.4f} {r['hermitian_s']:>14.4f}")
    if have_numba:
        by = {(r["n"], r["backend"]): r for r in rows}
        for n in args.sizes:
            g = by[n, "numpy"]["general_s"] / by[n, "numba"]["general_s"]
            h = by[n, "numpy"]["hermitian_s"] / by[n, "numba"]["hermitian_s"]
            print(f"n={n}: numba speed-up general x{g:.1f}, hermitian x{h:.1f}")
    else:
        print("numba inactive: only the numpy path was timed")


if __name__ == "__main__":
    main()
