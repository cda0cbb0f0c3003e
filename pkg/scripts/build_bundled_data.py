#!/usr/bin/env python3
"""Regenerate the bundled data, certificate, and expression files.

Everything written here is reproducible from the reference tables and the
certificate builders in lch.refdata; the test suite asserts that the files
on disk match these builders byte for byte, so rerun this script after
touching either side.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from lch import refdata
from lch.dga import serialize


def targets(root: pathlib.Path) -> dict[pathlib.Path, str]:
    return {
        root / "data" / "k1_appendixA.dga": serialize(refdata.k1_reference_dga()),
        root / "data" / "k2_appendixB.dga": serialize(refdata.k2_reference_dga()),
        root / "certs" / "k1_trivial.cert": refdata.k1_trivial_cert_text(),
        root / "certs" / "k2_quotient.cert": refdata.k2_quotient_cert_text(),
        root / "certs" / "k2_norep.cert": refdata.k2_norep_cert_text(),
        root / "certs" / "k1_unit.expr": refdata.k1_unit_expr_text(),
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--root", type=pathlib.Path,
                    default=pathlib.Path(__file__).resolve().parents[1])
    ap.add_argument("--check", action="store_true",
                    help="verify files instead of writing them")
    args = ap.parse_args()

    stale = []
    for path, text in targets(args.root).items():
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(path)
                print(f"STALE {path}")
            else:
                print(f"ok    {path}")
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            print(f"wrote {path} ({len(text)} bytes)")
    return 1 if stale else 0


if __name__ == "__main__":
    raise SystemExit(main())
