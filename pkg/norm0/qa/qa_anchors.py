#!/usr/bin/env python3
"""Anchored structure checks: group orders, relations, non-relations, claim verdicts and
commutation rules at the levels where they are known exactly.

``run_checks`` is shared with ``python -m norm0 selftest``; it never raises and reports one
(name, ok, detail) triple per check.

Run:
  python -m norm0.qa.qa_anchors
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Callable

# Ensure repo root is on sys.path regardless of where this script is invoked from.
_REPO_ROOT = Path(__file__).resolve().parents[2]
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from norm0.core.exact import factorize  # noqa: E402
from norm0.core.group_engine import QuotientGroup, commutes, is_relation, resolve  # noqa: E402
from norm0.core.structure import check_claim_AL, full_quotient, verify_commutation_rule  # noqa: E402

GroupFor = Callable[[int], QuotientGroup]

ORDERS = {4: 6, 8: 8, 9: 12, 27: 18, 16: 24, 64: 96, 32: 32}

RELATIONS = (
    (16, "(w16 S4)^3"),
    (32, "S4^4"),
    (32, "w32^2"),
    (32, "(w32 S4)^4"),
    (64, "(w64 S8)^3"),
    (128, "(w128 S8)^4"),
    (256, "w256 S8 w256 S8 w256 S8^3 w256 S8^3"),
)

NON_RELATIONS = (
    (256, "(w256 S8)^3"),
    (128, "S8 (w128 S8 w128) S8^-1 (w128 S8 w128)^-1"),
    (64, "S8 (w64 S8 w64) S8^-1 (w64 S8 w64)^-1"),
    (256, "S8 (w256 S8 w256) S8^-1 (w256 S8 w256)^-1"),
)

# N -> (holds, stage, witness)
CLAIMS = {
    48: (False, "commuting", ("S4", "w3")),
    45: (False, "commuting", ("S3", "w5")),
    63: (True, None, ()),
}


def mod3_criterion_levels(limit: int = 50) -> tuple[int, ...]:
    """Prime powers p^n <= limit with p != 3; S3 commutes with w_{p^n} at 9 p^n iff p^n = 1 mod 3."""
    return tuple(n for n in range(2, limit + 1) if n % 3 and len(factorize(n).primes()) == 1)


# (N, p^n, shift order)
COMMUTATION_RULES = (
    (45, 5, 3),
    (63, 7, 3),
    (112, 7, 4),
    (144, 9, 4),
    (144, 16, 3),
    (1800, 25, 3),
    (1800, 8, 3),
    (192, 3, 8),
    (320, 5, 8),
    (448, 7, 8),
)


def _checks(group_for: GroupFor) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    out: list[tuple[str, Callable[[], tuple[bool, str]]]] = []

    for N, exp in ORDERS.items():
        def order_check(N: int = N, exp: int = exp) -> tuple[bool, str]:
            got = len(group_for(N))
            return got == exp, f"|G({N})| = {got}, expected {exp}"

        out.append((f"order |G({N})| = {exp}", order_check))

    for N, word in RELATIONS:
        def rel_check(N: int = N, word: str = word) -> tuple[bool, str]:
            return is_relation(group_for(N), word), f"{word} is not the identity at N={N}"

        out.append((f"relation {word} = 1 at N={N}", rel_check))

    for N, word in NON_RELATIONS:
        def nonrel_check(N: int = N, word: str = word) -> tuple[bool, str]:
            return not is_relation(group_for(N), word), f"{word} is the identity at N={N}"

        out.append((f"non-relation {word} != 1 at N={N}", nonrel_check))

    for N, (holds, stage, witness) in CLAIMS.items():
        def claim_check(N: int = N, holds: bool = holds, stage: str | None = stage, witness: tuple = witness):
            verdict = check_claim_AL(N, group_for(N))
            ok = verdict.holds == holds and verdict.stage == stage and verdict.witness == witness
            return ok, f"got holds={verdict.holds} stage={verdict.stage} witness={verdict.witness}"

        out.append((f"claim_AL({N}) = {'true' if holds else 'false'}", claim_check))

    for pn in mod3_criterion_levels():
        def mod3_check(pn: int = pn) -> tuple[bool, str]:
            G = group_for(9 * pn)
            got = commutes(G, resolve(G, "S3"), resolve(G, f"w{pn}"))
            return got == (pn % 3 == 1), f"S3 vs w{pn} at N={9 * pn}: commute={got}"

        out.append((f"S3 commutes with w{pn} iff {pn} = 1 mod 3", mod3_check))

    for N, pn, h in COMMUTATION_RULES:
        def rule_check(N: int = N, pn: int = pn, h: int = h) -> tuple[bool, str]:
            return verify_commutation_rule(group_for(N), pn, h), f"w{pn} S{h} != S{h}^{pn % h} w{pn} at N={N}"

        out.append((f"w{pn} S{h} = S{h}^{pn % h} w{pn} at N={N}", rule_check))
    return out


def run_checks(group_for: GroupFor | None = None) -> list[tuple[str, bool, str]]:
    if group_for is None:
        memo: dict[int, QuotientGroup] = {}

        def group_for(N: int) -> QuotientGroup:
            if N not in memo:
                memo[N] = full_quotient(N)
            return memo[N]

    results: list[tuple[str, bool, str]] = []
    for name, check in _checks(group_for):
        try:
            ok, detail = check()
        except Exception as exc:  # a failing check must not stop the rest
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), "" if ok else detail))
    return results


def main(argv: list[str] | None = None) -> None:
    results = run_checks()
    failed = [r for r in results if not r[1]]
    for name, ok, detail in results:
        print(f"  {'OK' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else ""))
    if failed:
        print(f"\n[ANCHORS FAILED] {len(failed)} of {len(results)} checks failed\n")
        raise SystemExit(1)
    print(f"\n[ANCHORS OK] {len(results)} checks passed.")


if __name__ == "__main__":
    main()
