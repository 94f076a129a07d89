"""Compare the compiled crystal kernels with the NumPy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import timeit

import numpy as np

from mvcrystal import _kernels_py
from mvcrystal.crystal import b_lambda
from mvcrystal.root_data import build_root_system

try:
    from mvcrystal import _kernels as _compiled
except ImportError:
    _compiled = None

CASES = [("A2", (1, 1), (2, 1)), ("A3", (1, 0, 1), (0, 2, 0)), ("D4", (0, 1, 0, 0), (1, 0, 1, 0))]


def _args(name, lam, mu):
    t = build_root_system(name)
    a, b = b_lambda(t, lam), b_lambda(t, mu)
    return (a.f, a.e, a.eps, a.phi, b.f, b.e, b.eps, b.phi)


def run(repeat: int) -> list[dict]:
    rows = []
    for name, lam, mu in CASES:
        args = _args(name, lam, mu)
        f, *_ = _kernels_py.tensor_edges(*args)
        n = f.shape[1]
        row = {"case": f"{name} {lam} x {mu}", "elements": n}
        impls = {"numpy": _kernels_py}
        if _compiled is not None:
            impls["cython"] = _compiled
        for label, mod in impls.items():
            row[f"tensor_edges_{label}_ms"] = round(
                1000 * min(timeit.repeat(lambda: mod.tensor_edges(*args), number=1, repeat=repeat)), 3)
            row[f"components_{label}_ms"] = round(
                1000 * min(timeit.repeat(lambda: mod.component_labels(f, n), number=1, repeat=repeat)), 3)
        if _compiled is not None:
            for x, y in zip(_kernels_py.tensor_edges(*args), _compiled.tensor_edges(*args)):
                assert np.array_equal(np.asarray(x), np.asarray(y)), "backends disagree"
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    if _compiled is None:
        print("compiled extension not built; showing the NumPy fallback only")
    for row in rows:
        print(row["case"], f"({row['elements']} elements)")
        for k in sorted(k for k in row if k.endswith("_ms")):
            print(f"  {k:28s} {row[k]:10.3f}")


if __name__ == "__main__":
    main()
