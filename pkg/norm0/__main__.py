"""Command-line entry point for norm0.

Usage
-----
Structure report for one level:
    python -m norm0 structure 48 --format json

Decide the direct-product claim (exit 0 true, 1 false):
    python -m norm0 check-claim 45

Normalizer membership (exit 0 member, 1 not a member); --oracle adds the conjugation check:
    python -m norm0 member 48 "4,1,0,4" --oracle

Evaluate a word, export the Cayley table:
    python -m norm0 eval 16 "(w16 S4)^3"
    python -m norm0 cayley 9 --format gap --out g9.g

Sweep a range into a CSV table, or run the anchored self-test:
    python -m norm0 batch 2..100 --report sweep.csv --jobs 4
    python -m norm0 selftest

Exit codes: 0 success / verdict true, 1 verdict false (check-claim, member, selftest), 2 error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any

import pandas as pd

from norm0 import __version__
from norm0.config import FORMATS, CliConfig
from norm0.core.cache import StructureCache
from norm0.core.errors import Norm0Error
from norm0.core.exact import ProjectiveMatrix, squarefree_decompose
from norm0.core.exports import to_dot, to_gap, to_json
from norm0.core.gamma0 import conjugation_normalizes, epsilon, is_gamma0, v_params
from norm0.core.group_engine import QuotientGroup, eval_word, rep_of
from norm0.core.normalizer import theorem1_member
from norm0.core.report import CSV_COLUMNS, Report
from norm0.core.structure import build_report, full_quotient

log = logging.getLogger("norm0")


# ---------------------------------------------------------------------------
# Group / report acquisition (cache-aware)
# ---------------------------------------------------------------------------


def obtain(N: int, cfg: CliConfig) -> tuple[QuotientGroup, Report]:
    """Enumerate (or load) the full quotient and its report for level N."""
    if N < 1:
        raise ValueError(f"level must be a positive integer, got {N}")
    cache = StructureCache(cfg.cache_dir) if cfg.use_cache else None
    if cache is not None:
        entry = cache.load(N)
        if entry is not None:
            return entry.group, entry.report
    G = full_quotient(N, budget=cfg.budget, cap=cfg.factor_cap)
    report = build_report(N, G, budget=cfg.budget, cap=cfg.factor_cap)
    if cache is not None:
        try:
            cache.store(G, report)
        except OSError as exc:
            log.warning("could not write cache for N=%d: %s", N, exc)
    return G, report


def parse_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single level ``"a"``."""
    raw = str(text).strip()
    lo_s, sep, hi_s = raw.partition("..")
    try:
        lo = int(lo_s)
        hi = int(hi_s) if sep else lo
    except ValueError:
        raise ValueError(f"expected a range like 2..20, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise ValueError(f"range {text!r} must satisfy 1 <= a <= b")
    return range(lo, hi + 1)


def batch_row(N: int, cfg: CliConfig) -> dict[str, Any]:
    """One CSV row; errors are recorded in the ``note`` column."""
    try:
        _, report = obtain(N, cfg)
        return report.csv_row()
    except (Norm0Error, ValueError, OSError) as exc:
        row: dict[str, Any] = {c: "" for c in CSV_COLUMNS}
        row["N"] = N
        try:
            sqf = squarefree_decompose(N, cap=cfg.factor_cap)
            row.update(sigma=sqf.sigma, q=sqf.q, v=v_params(N).v, epsilon=epsilon(N, cap=cfg.factor_cap))
        except (Norm0Error, ValueError):
            pass
        row["note"] = f"error: {exc}"
        return row


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_structure(args: argparse.Namespace, cfg: CliConfig) -> int:
    _, report = obtain(args.N, cfg)
    sys.stdout.write(report.to_json() if cfg.output_format == "json" else report.to_text())
    return 0


def _cmd_check_claim(args: argparse.Namespace, cfg: CliConfig) -> int:
    _, report = obtain(args.N, cfg)
    claim = report.claim_al
    if claim.holds:
        print(f"N={args.N}: claim_AL true")
        return 0
    print(f"N={args.N}: claim_AL false ({claim.stage})")
    if claim.witness:
        print(f"  witness: {' / '.join(claim.witness)}")
    if claim.detail:
        print(f"  {claim.detail}")
    return 1


def _cmd_eval(args: argparse.Namespace, cfg: CliConfig) -> int:
    G, _ = obtain(args.N, cfg)
    idx = eval_word(G, args.word)
    rep = rep_of(G, idx)
    print(f"representative: {rep}")
    print(f"det: {rep.det}")
    print(f"word: {G.words[idx]}")
    print(f"identity: {'true' if idx == 0 else 'false'}")
    return 0


def _print_oracle(p: ProjectiveMatrix, N: int, cfg: CliConfig) -> None:
    if N > cfg.oracle_cap:
        print(f"conjugation oracle: skipped (level {N} exceeds the oracle cap {cfg.oracle_cap})")
        return
    ok = conjugation_normalizes(p, N, cap=cfg.oracle_cap)
    print(f"conjugation oracle: {'true' if ok else 'false'}")


def _cmd_member(args: argparse.Namespace, cfg: CliConfig) -> int:
    p = ProjectiveMatrix.parse(args.matrix)
    witness = theorem1_member(p, args.N, cap=cfg.factor_cap)
    print(f"matrix: {p} (det {p.det})")
    if args.oracle:
        _print_oracle(p, args.N, cfg)
    if witness is None:
        print(f"member of Norm(Gamma0({args.N})): false")
        return 1
    print(f"member of Norm(Gamma0({args.N})): true")
    print(f"  delta={witness.delta}, Delta={witness.Delta}, lambda={witness.lam}")
    print(f"  in Gamma0({args.N}): {'true' if is_gamma0(p, args.N) else 'false'}")
    return 0


def _cmd_cayley(args: argparse.Namespace, cfg: CliConfig) -> int:
    G, _ = obtain(args.N, cfg)
    render = {"json": to_json, "gap": to_gap, "dot": to_dot}[args.format]
    text = render(G)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        out = Path(args.out)
        out.write_text(text, encoding="utf-8")
        print(f"Cayley data ({args.format}, {len(G)} elements) written to {out}", file=sys.stderr)
    return 0


def _cmd_batch(args: argparse.Namespace, cfg: CliConfig) -> int:
    levels = list(parse_range(args.range))
    print(f"Running batch over {levels[0]}..{levels[-1]} ({len(levels)} levels)", file=sys.stderr)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(batch_row, levels, [cfg] * len(levels)))
    else:
        rows = [batch_row(N, cfg) for N in levels]
    df = pd.DataFrame(rows, columns=list(CSV_COLUMNS))
    csv_str = df.to_csv(index=False)
    if args.report in (None, "-"):
        print(csv_str, end="")
    else:
        out = Path(args.report)
        out.write_text(csv_str, encoding="utf-8")
        print(f"Results written to {out}", file=sys.stderr)
    return 0


def _cmd_selftest(args: argparse.Namespace, cfg: CliConfig) -> int:
    from norm0.qa.qa_anchors import run_checks

    results = run_checks(lambda n: obtain(n, cfg)[0])
    failed = 0
    for name, ok, detail in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail and not ok else ""))
        failed += 0 if ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


_COMMANDS = {
    "structure": _cmd_structure,
    "check-claim": _cmd_check_claim,
    "eval": _cmd_eval,
    "member": _cmd_member,
    "cayley": _cmd_cayley,
    "batch": _cmd_batch,
    "selftest": _cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m norm0",
        description="Structure of Norm(Gamma0(N))/Gamma0(N): generators, relations, claim checks.",
        epilog="Exit codes: 0 success or verdict true, 1 verdict false (check-claim, member, selftest), 2 error.",
    )
    parser.add_argument("--version", action="version", version=f"norm0 {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging.")
    parser.add_argument("--cache-dir", metavar="DIR", help="Cache directory (default: $NORM0_CACHE or .norm0-cache/).")
    parser.add_argument("--no-cache", action="store_true", help="Neither read nor write the cache.")
    parser.add_argument("--budget", type=int, help="Closure element budget (default: $NORM0_BUDGET or 100000).")
    parser.add_argument("--factor-cap", type=int, help="Factorization cap (default: $NORM0_FACTOR_CAP or 10^9).")
    parser.add_argument(
        "--oracle-cap", type=int, help="Largest level for the conjugation oracle (default: $NORM0_ORACLE_CAP or 10^4)."
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("structure", help="Print the structure report for one level.")
    p.add_argument("N", type=int)
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("check-claim", help="Decide the direct-product claim for one level.")
    p.add_argument("N", type=int)

    p = sub.add_parser("eval", help="Evaluate a word in the generators.")
    p.add_argument("N", type=int)
    p.add_argument("word", help='e.g. "(w16 S4)^3" or "S8 w S8^-1"')

    p = sub.add_parser(
        "member",
        help="Normalizer membership of a matrix a,b,c,d (exit 0 member, 1 not a member).",
        description="Exit codes: 0 member, 1 not a member, 2 malformed or singular matrix.",
    )
    p.add_argument("N", type=int)
    p.add_argument("matrix", help='comma-separated "a,b,c,d"')
    p.add_argument("--oracle", action="store_true", help="Also run the conjugation oracle on Gamma0(N) generators.")

    p = sub.add_parser("cayley", help="Export the Cayley table.")
    p.add_argument("N", type=int)
    p.add_argument("--out", metavar="FILE", default="-")
    p.add_argument("--format", choices=("json", "gap", "dot"), default="json")

    p = sub.add_parser("batch", help="Sweep a range of levels into a CSV table.")
    p.add_argument("range", help="a..b (inclusive)")
    p.add_argument("--report", metavar="FILE", default="-", help="CSV output path, '-' for stdout.")
    p.add_argument("--jobs", type=int, default=1, help="Worker processes (default 1).")

    sub.add_parser("selftest", help="Run the anchored regression checks.")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        cfg = CliConfig.from_env().with_overrides(
            cache_dir=args.cache_dir,
            no_cache=args.no_cache,
            budget=args.budget,
            factor_cap=args.factor_cap,
            oracle_cap=args.oracle_cap,
            output_format=getattr(args, "format", None) if args.command == "structure" else None,
        )
        return _COMMANDS[args.command](args, cfg)
    except (Norm0Error, ValueError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
