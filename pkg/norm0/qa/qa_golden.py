#!/usr/bin/env python3
"""Pinned regression values that are computed by enumeration rather than stated anywhere.

The baseline lives in ``norm0/qa/goldens/derived_v1.json`` and is committed.  Every run
recomputes the pinned values and compares them exactly; a missing or unreadable baseline
fails the gate.  Values whose bytes depend on the report layout (the N=48 report hash, the
order profile of G(256)) are not pinned; they are computed twice per run and must agree.

NOTE: If you intentionally change enumeration order or the relation tables, inspect the new
values with ``--print-baseline`` and re-record them with ``--record``.

Run:
  python -m norm0.qa.qa_golden
  python -m norm0.qa.qa_golden --record
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

# Ensure repo root is on sys.path regardless of where this script is invoked from.
_REPO_ROOT = Path(__file__).resolve().parents[2]
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from norm0.core.group_engine import center, exponent, order_profile  # noqa: E402
from norm0.core.normalizer import expected_quotient_order  # noqa: E402
from norm0.core.structure import build_report, full_quotient, verify_structure  # noqa: E402

DERIVED_SCHEMA = "norm0-derived/1"
DEFAULT_PATH = _REPO_ROOT / "norm0" / "qa" / "goldens" / "derived_v1.json"

ORDER_LEVELS = (144, 256, 512, 576, 1024, 1800)


def _die(msg: str, code: int = 1) -> None:
    print(f"\n[QA GOLDEN FAILED] {msg}\n")
    raise SystemExit(code)


def _compute() -> dict[str, Any]:
    values: dict[str, Any] = {}
    for N in ORDER_LEVELS:
        values[f"order_{N}"] = len(full_quotient(N))

    G48 = full_quotient(48)
    z = sorted(center(G48))
    values["center_48"] = {"size": len(z), "words": [str(G48.words[i]) for i in z]}

    G256 = full_quotient(256)
    values["exponent_256"] = exponent(G256)
    two_part = verify_structure(256, "barsfi", G256)[0]
    values["two_part_factor_256"] = {
        "generators": list(two_part.generators),
        "order": two_part.computed_order,
        "relations": {r.label: r.observed for r in two_part.relations},
    }
    return values


def _unpinned() -> dict[str, Any]:
    G256 = full_quotient(256)
    return {
        "report_hash_48": build_report(48).deterministic_hash(),
        "order_profile_256": {str(k): v for k, v in order_profile(G256).items()},
    }


def _check_closed_forms(values: dict[str, Any]) -> None:
    for N in ORDER_LEVELS:
        if values[f"order_{N}"] != expected_quotient_order(N):
            _die(f"|G({N})| = {values[f'order_{N}']} disagrees with the closed form {expected_quotient_order(N)}")


def _baseline_text(values: dict[str, Any]) -> str:
    return json.dumps({"schema": DERIVED_SCHEMA, "values": values}, indent=2, sort_keys=True) + "\n"


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(add_help=True)
    ap.add_argument("--print-baseline", action="store_true", help="Print freshly computed values and exit.")
    ap.add_argument("--record", action="store_true", help="Overwrite the baseline with freshly computed values.")
    ap.add_argument("--path", default=str(DEFAULT_PATH), help="Baseline file (default: goldens/derived_v1.json).")
    args = ap.parse_args(argv)

    values = _compute()
    if args.print_baseline:
        print(_baseline_text({**values, **_unpinned()}), end="")
        return

    print("[QA GOLDEN] Computing derived values...")
    if _compute() != values:
        _die("two computations of the pinned values disagree")
    if _unpinned() != _unpinned():
        _die("two computations of the report hash / order profile disagree")
    _check_closed_forms(values)

    path = Path(args.path)
    if args.record:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(_baseline_text(values), encoding="utf-8")
        print(f"  wrote baseline to {path}")
        print("\n[QA GOLDEN OK] Baseline recorded.")
        return

    if not path.exists():
        _die(f"baseline {path} is missing; record it with --record")
    try:
        stored = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _die(f"cannot read baseline {path}: {exc}")
    if stored.get("schema") != DERIVED_SCHEMA:
        _die(f"unexpected baseline schema {stored.get('schema')!r}")
    expected = stored.get("values") or {}
    for key, exp_v in sorted(expected.items()):
        if values.get(key) != exp_v:
            _die(f"{key}: got {values.get(key)!r} expected {exp_v!r}")
        print(f"  OK: {key}")
    missing = sorted(set(values) - set(expected))
    if missing:
        _die(f"baseline has no entry for {', '.join(missing)}")
    print("\n[QA GOLDEN OK] All derived values match the baseline.")


if __name__ == "__main__":
    main()
