#!/usr/bin/env python3
"""Quick smoke checks: the package compiles, imports, and handles trivial levels.

Run:
  python -m norm0.qa.qa_smoke
"""

from __future__ import annotations

import compileall
import sys
from pathlib import Path

# Ensure repo root is on sys.path regardless of where this script is invoked from.
_REPO_ROOT = Path(__file__).resolve().parents[2]
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))


def die(msg: str, code: int = 1) -> None:
    print(f"\n[SMOKE CHECK FAILED] {msg}\n")
    raise SystemExit(code)


def main(argv: list[str] | None = None) -> None:
    pkg_dir = _REPO_ROOT / "norm0"
    if not pkg_dir.is_dir():
        die("norm0/ not found (run from the repository root).")
    if not compileall.compile_dir(str(pkg_dir), quiet=1):
        die("norm0/ package failed to compile.")

    try:
        from norm0.core.structure import build_report, full_quotient
    except Exception as e:
        die(f"Import failure: {e}")

    for N, order in ((1, 1), (2, 2), (5, 2), (6, 4)):
        G = full_quotient(N)
        if len(G) != order:
            die(f"|G({N})| = {len(G)}, expected {order}")
        report = build_report(N, G)
        if not report.claim_al.holds:
            die(f"claim_AL unexpectedly false at N={N}")

    print("[SMOKE CHECK OK]")


if __name__ == "__main__":
    main()
