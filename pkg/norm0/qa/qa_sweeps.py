#!/usr/bin/env python3
"""Range sweeps: closed forms and structure statements checked over every level in a range.

Checks:
- v(N) closed form against gcd(sigma, epsilon), and epsilon(N) | 24
- epsilon against the bounded matrix oracle
- coset graph size equals psi(N)
- enumerated quotient order equals the closed-form index, and every element decomposes
  as w_m * Omega
- direct-product claim true whenever v2(N) <= 3 and v3(N) <= 1
- quotient elementary abelian of order 2^omega(N) whenever 4 and 9 do not divide N
- membership pattern agrees with the conjugation oracle on generator products and
  random matrices

Run:
  python -m norm0.qa.qa_sweeps
  python -m norm0.qa.qa_sweeps --quick
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

# Ensure repo root is on sys.path regardless of where this script is invoked from.
_REPO_ROOT = Path(__file__).resolve().parents[2]
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from norm0.core.errors import OrientationReversing, SingularMatrix  # noqa: E402
from norm0.core.exact import Mat2, canonicalize, factorize, pmul, valuation  # noqa: E402
from norm0.core.gamma0 import (  # noqa: E402
    coset_graph,
    conjugation_normalizes,
    epsilon,
    epsilon_oracle_stable,
    psi,
    v_from_definition,
    v_params,
)
from norm0.core.group_engine import QuotientGroup, element_order, is_abelian  # noqa: E402
from norm0.core.normalizer import canonical_generators, expected_quotient_order, theorem1_member  # noqa: E402
from norm0.core.structure import Decomposer, check_claim_AL, full_quotient  # noqa: E402

ORACLE_LEVELS = (4, 8, 9, 12, 16, 27, 32, 45, 48, 63, 96, 144)
RANDOM_SEED = 20240617


def _die(msg: str, code: int = 1) -> None:
    print(f"\n[SWEEPS FAILED] {msg}\n")
    raise SystemExit(code)


class _Groups:
    """Per-run memo of enumerated quotients."""

    def __init__(self) -> None:
        self._memo: dict[int, QuotientGroup] = {}

    def __call__(self, N: int) -> QuotientGroup:
        if N not in self._memo:
            self._memo[N] = full_quotient(N)
        return self._memo[N]


def _sweep_closed_forms(v_max: int, eps_oracle_max: int, eps_max: int) -> None:
    for N in range(1, v_max + 1):
        got, exp = v_from_definition(N), v_params(N).v
        if got != exp:
            _die(f"v({N}): gcd(sigma, epsilon) = {got}, closed form {exp}")
    for N in range(1, eps_oracle_max + 1):
        got, exp = epsilon(N), epsilon_oracle_stable(N)
        if got != exp:
            _die(f"epsilon({N}) = {got}, oracle {exp}")
    for N in range(1, eps_max + 1):
        if 24 % epsilon(N):
            _die(f"epsilon({N}) = {epsilon(N)} does not divide 24")
    print(f"  closed forms: v for N <= {v_max}, epsilon oracle for N <= {eps_oracle_max}, 24 | eps for N <= {eps_max}")


def _sweep_coset_graph(n_max: int) -> None:
    for N in range(1, n_max + 1):
        if len(coset_graph(N)) != psi(N):
            _die(f"coset graph at N={N} has {len(coset_graph(N))} points, psi = {psi(N)}")
    print(f"  coset graph size = psi(N) for N <= {n_max}")


def _sweep_orders_and_decomposition(groups: _Groups, n_max: int) -> None:
    for N in range(1, n_max + 1):
        G = groups(N)
        if len(G) != expected_quotient_order(N):
            _die(f"|G({N})| = {len(G)}, closed form {expected_quotient_order(N)}")
        dec = Decomposer(G)
        for i in range(len(G)):
            dec.decompose_index(i)
    print(f"  orders and w_m * Omega decompositions for N <= {n_max}")


def _sweep_claim(groups: _Groups, n_max: int) -> int:
    count = 0
    for N in range(1, n_max + 1):
        if valuation(N, 2) > 3 or valuation(N, 3) > 1:
            continue
        verdict = check_claim_AL(N, groups(N))
        if not verdict.holds:
            _die(f"claim_AL({N}) false at stage {verdict.stage}: {verdict.detail}")
        count += 1
    print(f"  claim_AL true at {count} levels with v2 <= 3, v3 <= 1, N <= {n_max}")
    return count


def _sweep_elementary_abelian(groups: _Groups, n_max: int) -> None:
    for N in range(1, n_max + 1):
        if N % 4 == 0 or N % 9 == 0:
            continue
        G = groups(N)
        omega = len(factorize(N).factors)
        if len(G) != 2**omega:
            _die(f"|G({N})| = {len(G)}, expected 2^{omega}")
        if not is_abelian(G) or any(element_order(G, i) > 2 for i in range(len(G))):
            _die(f"G({N}) is not elementary abelian")
    print(f"  elementary abelian of order 2^omega(N) for N <= {n_max}, 4 and 9 not dividing N")


def _random_matrices(rng: np.random.Generator, count: int, bound: int = 30) -> list:
    out = []
    while len(out) < count:
        a, b, c, d = (int(x) for x in rng.integers(-bound, bound + 1, size=4))
        try:
            out.append(canonicalize(Mat2(a, b, c, d)))
        except (SingularMatrix, OrientationReversing):
            continue
    return out


def _sweep_oracle(levels: tuple[int, ...], random_count: int, max_len: int) -> None:
    rng = np.random.default_rng(RANDOM_SEED)
    for N in levels:
        mats = [m for _, m in canonical_generators(N)]
        products = []
        for k in range(1, max_len + 1):
            for combo in itertools.product(mats, repeat=k):
                p = combo[0]
                for m in combo[1:]:
                    p = pmul(p, m)
                products.append(p)
        for p in products:
            if theorem1_member(p, N) is None or not conjugation_normalizes(p, N):
                _die(f"generator product {p} at N={N} is not recognized as a member by both predicates")
        members = 0
        for p in _random_matrices(rng, random_count):
            by_pattern = theorem1_member(p, N) is not None
            if by_pattern != conjugation_normalizes(p, N):
                _die(f"membership disagreement for {p} at N={N}: pattern says {by_pattern}")
            members += by_pattern
        print(f"  N={N}: {len(products)} products, {random_count} random matrices ({members} members) agree")


def main(argv: list[str] | None = None) -> None:
    ap = argparse.ArgumentParser(description="Range sweeps over levels")
    ap.add_argument("--quick", action="store_true", help="Smaller ranges (for CI smoke runs).")
    args = ap.parse_args(argv)

    groups = _Groups()
    if args.quick:
        _sweep_closed_forms(200, 40, 2000)
        _sweep_coset_graph(100)
        _sweep_orders_and_decomposition(groups, 100)
        _sweep_claim(groups, 150)
        _sweep_elementary_abelian(groups, 100)
        _sweep_oracle((4, 9, 16, 48), 25, 3)
    else:
        _sweep_closed_forms(1000, 100, 10**4)
        _sweep_coset_graph(500)
        _sweep_orders_and_decomposition(groups, 300)
        _sweep_claim(groups, 500)
        _sweep_elementary_abelian(groups, 200)
        _sweep_oracle(ORACLE_LEVELS, 100, 4)

    print("[SWEEPS OK]")


if __name__ == "__main__":
    main()
