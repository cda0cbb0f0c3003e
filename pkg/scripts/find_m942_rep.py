#!/usr/bin/env python3
"""Search for the two-dimensional representation of the m(9_42) plat DGA.

The backtracking search is deterministic, so the committed rep file is
reproducible; expect a run on the order of a minute.
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from lch import refdata
from lch.dga import compute_dga
from lch.freealg import F2
from lch.reps import search_matrix_rep, serialize_rep, verify_matrix_rep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--budget", type=int, default=10 ** 8)
    ap.add_argument("--out", type=pathlib.Path,
                    default=pathlib.Path(__file__).resolve().parents[1]
                    / "reps" / "m9_42_dim2.rep")
    args = ap.parse_args()

    g = compute_dga(refdata.m942_front(), F2)
    print(f"searching dim {args.n}, {len(g.presentation.generators)} generators ...")
    t0 = time.time()
    rho = search_matrix_rep(g, args.n, budget=args.budget)
    took = time.time() - t0
    if rho is None:
        print(f"no representation within budget ({took:.1f}s); inconclusive")
        return 1
    assert verify_matrix_rep(g, rho)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(serialize_rep(rho))
    print(f"found and verified in {took:.1f}s; wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
