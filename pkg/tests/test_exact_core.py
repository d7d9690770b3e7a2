"""Exact 2x2 matrix arithmetic and the number-theory helpers."""

from __future__ import annotations

import math

import pytest
import sympy

from norm0.core.errors import CapExceeded, OrientationReversing, SingularMatrix
from norm0.core.exact import (
    IDENTITY,
    Mat2,
    ProjectiveMatrix,
    adjugate,
    canonicalize,
    content,
    det,
    divisors,
    exact_divisors,
    ext_gcd,
    factorize,
    gcd_all,
    is_perfect_square,
    mul,
    pinv,
    pmul,
    squarefree_decompose,
    valuation,
)


class TestMatrixArithmetic:
    def test_mul_examples(self) -> None:
        assert mul(Mat2(1, 1, 0, 1), Mat2(1, 0, 1, 1)) == Mat2(2, 1, 1, 1)
        assert mul(Mat2(3, 2, 48, 33), IDENTITY) == Mat2(3, 2, 48, 33)
        assert mul(Mat2(3, 2, 48, 33), Mat2(3, 2, 48, 33)) == Mat2(105, 72, 1728, 1185)

    def test_det_is_multiplicative(self) -> None:
        x, y = Mat2(3, 2, 48, 33), Mat2(4, 1, 0, 4)
        assert det(mul(x, y)) == det(x) * det(y)

    def test_adjugate(self) -> None:
        assert adjugate(Mat2(1, 1, 0, 1)) == Mat2(1, -1, 0, 1)
        assert adjugate(Mat2(4, 1, 0, 4)) == Mat2(4, -1, 0, 4)
        x = Mat2(7, 3, 12, 5)
        assert mul(x, adjugate(x)) == Mat2(det(x), 0, 0, det(x))

    def test_content(self) -> None:
        assert content(Mat2(6, 4, 96, 66)) == 2
        assert content(Mat2(0, 0, 0, 0)) == 0


class TestCanonicalize:
    @pytest.mark.parametrize(
        "raw, expected",
        [
            (Mat2(2, 0, 0, 2), (1, 0, 0, 1)),
            (Mat2(-4, -1, 0, -4), (4, 1, 0, 4)),
            (Mat2(6, 4, 96, 66), (3, 2, 48, 33)),
            (Mat2(0, -1, 1, 0), (0, 1, -1, 0)),
        ],
    )
    def test_examples(self, raw: Mat2, expected: tuple[int, int, int, int]) -> None:
        assert canonicalize(raw).entries() == expected

    def test_determinant_scales_with_content(self) -> None:
        p = canonicalize(Mat2(6, 4, 96, 66))
        assert p.det == 3

    def test_singular(self) -> None:
        with pytest.raises(SingularMatrix):
            canonicalize(Mat2(1, 2, 2, 4))

    def test_orientation_reversing(self) -> None:
        with pytest.raises(OrientationReversing):
            canonicalize(Mat2(0, 1, 1, 0))

    def test_scalar_multiples_share_representative(self) -> None:
        base = canonicalize(Mat2(3, 2, 48, 33))
        for k in (2, -3, 7):
            assert canonicalize(Mat2(3 * k, 2 * k, 48 * k, 33 * k)) == base

    def test_projective_product_and_inverse(self) -> None:
        w3 = canonicalize(Mat2(3, 2, 48, 33))
        assert pmul(w3, pinv(w3)) == canonicalize(IDENTITY)

    def test_constructor_rejects_non_canonical(self) -> None:
        with pytest.raises(ValueError):
            ProjectiveMatrix(2, 0, 0, 2, 4)
        with pytest.raises(ValueError):
            ProjectiveMatrix(-1, 0, 0, -1, 1)


class TestParse:
    def test_parse(self) -> None:
        p = ProjectiveMatrix.parse("4, 1, 0, 4")
        assert p.entries() == (4, 1, 0, 4)
        assert p.det == 16
        assert str(p) == "[[4,1],[0,4]]"

    @pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", "1,2,3,4,5", ""])
    def test_parse_rejects(self, text: str) -> None:
        with pytest.raises(ValueError):
            ProjectiveMatrix.parse(text)


class TestNumberTheory:
    def test_factorize_examples(self) -> None:
        assert factorize(48).factors == ((2, 4), (3, 1))
        assert factorize(1).factors == ()
        assert factorize(63).factors == ((3, 2), (7, 1))

    @pytest.mark.parametrize("n", list(range(1, 400)) + [999_999_937, 2**29, 3**18, 600_851_475])
    def test_factorize_matches_sympy(self, n: int) -> None:
        assert dict(factorize(n).factors) == sympy.factorint(n)

    def test_factorize_cap(self) -> None:
        with pytest.raises(CapExceeded):
            factorize(10**6 + 3, cap=10**6)
        with pytest.raises(ValueError):
            factorize(0)

    @pytest.mark.parametrize("n, sigma, q", [(48, 4, 3), (72, 6, 2), (1, 1, 1), (1800, 30, 2), (30, 1, 30)])
    def test_squarefree_decompose(self, n: int, sigma: int, q: int) -> None:
        sqf = squarefree_decompose(n)
        assert (sqf.sigma, sqf.q) == (sigma, q)
        assert sqf.sigma**2 * sqf.q == n

    def test_divisors(self) -> None:
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]
        assert exact_divisors(48) == [1, 3, 16, 48]
        assert exact_divisors(1800) == [1, 8, 9, 25, 72, 200, 225, 1800]
        for n in range(1, 200):
            assert all(math.gcd(m, n // m) == 1 for m in exact_divisors(n))
            assert divisors(n) == sorted(sympy.divisors(n))

    def test_valuation(self) -> None:
        assert valuation(48, 2) == 4
        assert valuation(48, 3) == 1
        assert valuation(48, 5) == 0

    def test_ext_gcd(self) -> None:
        g, x, y = ext_gcd(3, 16)
        assert g == 1 and 3 * x + 16 * y == 1
        assert ext_gcd(1, 0) == (1, 1, 0)
        assert ext_gcd(6, 4)[0] == 2
        g, x, y = ext_gcd(-12, 18)
        assert g == 6 and -12 * x + 18 * y == 6
        with pytest.raises(ValueError):
            ext_gcd(0, 0)

    def test_perfect_square(self) -> None:
        assert is_perfect_square(16) == 4
        assert is_perfect_square(0) == 0
        assert is_perfect_square(48) is None
        assert is_perfect_square(-4) is None

    def test_gcd_all(self) -> None:
        assert gcd_all([12, 18, 30]) == 6
        assert gcd_all([]) == 0
