#!/usr/bin/env python3
"""Truth-table QA: small, exact examples for matrices, Gamma0(N) and the normalizer.

These checks are intentionally explicit. They exist to prove that:
- canonical representatives are what the rest of the code hashes on,
- epsilon(N), v(N) and the coset fingerprints have their documented values,
- the named elements w_m and S_k are built and recognized correctly.

Run:
  python -m norm0.qa.qa_truth_tables
"""

from __future__ import annotations

import sys
from pathlib import Path

# Ensure repo root is on sys.path regardless of where this script is invoked from.
_REPO_ROOT = Path(__file__).resolve().parents[2]
if str(_REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(_REPO_ROOT))

from norm0.core.errors import NotExactDivisor, ShiftNotInNormalizer  # noqa: E402
from norm0.core.exact import (  # noqa: E402
    IDENTITY,
    Mat2,
    adjugate,
    canonicalize,
    ext_gcd,
    factorize,
    is_perfect_square,
    mul,
    squarefree_decompose,
)
from norm0.core.gamma0 import (  # noqa: E402
    Fingerprint,
    conjugation_normalizes,
    coset_equal,
    coset_graph,
    epsilon,
    fingerprint,
    is_gamma0,
    v_params,
)
from norm0.core.normalizer import (  # noqa: E402
    Theorem1Witness,
    atkin_lehner,
    canonical_generators,
    shift,
    theorem1_member,
)


def _die(msg: str, code: int = 1) -> None:
    print(f"\n[TRUTH TABLES FAILED] {msg}\n")
    raise SystemExit(code)


def _eq(name: str, got: object, exp: object) -> None:
    if got != exp:
        _die(f"{name}: got {got!r} expected {exp!r}")


def _raises(name: str, exc: type[BaseException], fn, *args) -> None:
    try:
        fn(*args)
    except exc:
        return
    _die(f"{name}: expected {exc.__name__}")


def _test_exact_core() -> None:
    _eq("mul shear", mul(Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)), Mat2(2, 1, 1, 1))
    _eq("mul identity", mul(Mat2(3, 2, 48, 33), IDENTITY), Mat2(3, 2, 48, 33))
    _eq("mul w3 squared", mul(Mat2(3, 2, 48, 33), Mat2(3, 2, 48, 33)), Mat2(105, 72, 1728, 1185))
    _eq("adjugate shear", adjugate(Mat2(1, 1, 0, 1)), Mat2(1, -1, 0, 1))
    _eq("adjugate S4", adjugate(Mat2(4, 1, 0, 4)), Mat2(4, -1, 0, 4))
    _eq("canonicalize scalar", canonicalize(Mat2(2, 0, 0, 2)).entries(), (1, 0, 0, 1))
    _eq("canonicalize sign", canonicalize(Mat2(-4, -1, 0, -4)).entries(), (4, 1, 0, 4))
    _eq("canonicalize content", canonicalize(Mat2(6, 4, 96, 66)).entries(), (3, 2, 48, 33))
    _eq("factorize 48", factorize(48).factors, ((2, 4), (3, 1)))
    _eq("factorize 1", factorize(1).factors, ())
    _eq("factorize 63", factorize(63).factors, ((3, 2), (7, 1)))
    _eq("sqf 48", (squarefree_decompose(48).sigma, squarefree_decompose(48).q), (4, 3))
    _eq("sqf 72", (squarefree_decompose(72).sigma, squarefree_decompose(72).q), (6, 2))
    _eq("sqf 1", (squarefree_decompose(1).sigma, squarefree_decompose(1).q), (1, 1))
    g, x, y = ext_gcd(3, 16)
    _eq("ext_gcd(3,16)", (g, 3 * x + 16 * y), (1, 1))
    _eq("ext_gcd(1,0)", ext_gcd(1, 0), (1, 1, 0))
    _eq("ext_gcd(6,4)", ext_gcd(6, 4)[0], 2)
    _eq("square 16", is_perfect_square(16), 4)
    _eq("square 0", is_perfect_square(0), 0)
    _eq("square 48", is_perfect_square(48), None)


def _test_gamma0() -> None:
    T = canonicalize(Mat2(1, 1, 0, 1))
    w3 = canonicalize(Mat2(3, 2, 48, 33))
    S4 = canonicalize(Mat2(4, 1, 0, 4))
    _eq("T in Gamma0(48)", is_gamma0(T, 48), True)
    _eq("lower unipotent in Gamma0(48)", is_gamma0(canonicalize(Mat2(1, 0, 48, 1)), 48), True)
    _eq("w3 not in Gamma0(48)", is_gamma0(w3, 48), False)
    _eq("S2^2 ~ identity at 4", coset_equal(canonicalize(mul(Mat2(2, 1, 0, 2), Mat2(2, 1, 0, 2))), IDENTITY_P, 4), True)
    _eq("S2 !~ identity at 4", coset_equal(canonicalize(Mat2(4, 1, 0, 4)), IDENTITY_P, 4), False)
    _eq("w3 ~ w3 T at 48", coset_equal(w3, canonicalize(mul(w3, Mat2(1, 1, 0, 1))), 48), True)
    _eq("fingerprint identity", fingerprint(IDENTITY_P, 6), Fingerprint(1, (1, 0)))
    _eq("fingerprint S4", fingerprint(S4, 48), Fingerprint(16, (4, 0)))
    _eq("epsilon 9", epsilon(9), 3)
    _eq("epsilon 48", epsilon(48), 24)
    _eq("epsilon 1", epsilon(1), 1)
    _eq("v 48", v_params(48).v, 4)
    _eq("v 9", (v_params(9).mu, v_params(9).w, v_params(9).v), (0, 1, 3))
    _eq("v 5", v_params(5).v, 1)
    _eq("coset graph 1", len(coset_graph(1)), 1)
    _eq("coset graph 2", len(coset_graph(2)), 3)
    _eq("coset graph 6", len(coset_graph(6)), 12)
    _eq("identity normalizes", conjugation_normalizes(IDENTITY_P, 12), True)
    _eq("S4 normalizes Gamma0(48)", conjugation_normalizes(S4, 48), True)
    _eq("S5 does not normalize Gamma0(48)", conjugation_normalizes(canonicalize(Mat2(5, 1, 0, 5)), 48), False)


def _test_normalizer() -> None:
    _eq("w1 is identity", atkin_lehner(48, 1), IDENTITY_P)
    fricke = atkin_lehner(48, 48)
    _eq("Fricke coset", coset_equal(fricke, canonicalize(Mat2(0, -1, 48, 0)), 48), True)
    w3 = atkin_lehner(48, 3)
    _eq("w3 at 48", w3.entries(), (3, 2, 48, 33))
    _eq("w3 det", w3.det, 3)
    _raises("w2 at 48", NotExactDivisor, atkin_lehner, 48, 2)
    _raises("w5 at 48", NotExactDivisor, atkin_lehner, 48, 5)
    _eq("S4 at 48", shift(48, 4).entries(), (4, 1, 0, 4))
    _raises("S8 at 48", ShiftNotInNormalizer, shift, 48, 8)
    _eq("S1 is T", shift(48, 1).entries(), (1, 1, 0, 1))
    _eq("pattern S4", theorem1_member(shift(48, 4), 48), Theorem1Witness(1, 1, 1))
    _eq("pattern w3", theorem1_member(w3, 48), Theorem1Witness(3, 1, 4))
    _eq("pattern S5", theorem1_member(canonicalize(Mat2(5, 1, 0, 5)), 48), None)
    _eq("generators 5", canonical_generators(5).names, ("w5",))
    _eq("generators 48", canonical_generators(48).names, ("w16", "w3", "S4"))
    _eq("generators 63", canonical_generators(63).names, ("w9", "w7", "S3"))


IDENTITY_P = canonicalize(IDENTITY)


def main(argv: list[str] | None = None) -> None:
    _test_exact_core()
    _test_gamma0()
    _test_normalizer()
    print("[TRUTH TABLES OK]")


if __name__ == "__main__":
    main()
