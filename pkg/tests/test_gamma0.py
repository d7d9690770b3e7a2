"""Gamma0(N) membership, coset equality, fingerprints, epsilon/v and the coset graph."""

from __future__ import annotations

import pytest

from norm0.core.errors import CapExceeded
from norm0.core.exact import IDENTITY, Mat2, canonicalize, mul
from norm0.core.gamma0 import (
    Fingerprint,
    conjugation_normalizes,
    coset_equal,
    coset_graph,
    epsilon,
    epsilon_oracle,
    epsilon_oracle_stable,
    fingerprint,
    is_gamma0,
    p1_normalize,
    psi,
    schreier_generators,
    v_from_definition,
    v_params,
)

ID = canonicalize(IDENTITY)
T = canonicalize(Mat2(1, 1, 0, 1))
W3_48 = canonicalize(Mat2(3, 2, 48, 33))
S4 = canonicalize(Mat2(4, 1, 0, 4))


def test_is_gamma0() -> None:
    assert is_gamma0(T, 48)
    assert is_gamma0(canonicalize(Mat2(1, 0, 48, 1)), 48)
    assert not is_gamma0(canonicalize(Mat2(1, 0, 24, 1)), 48)
    assert not is_gamma0(W3_48, 48)


class TestCosetEqual:
    def test_examples(self) -> None:
        S2_sq = canonicalize(mul(Mat2(2, 1, 0, 2), Mat2(2, 1, 0, 2)))
        assert coset_equal(S2_sq, ID, 4)
        assert not coset_equal(canonicalize(Mat2(4, 1, 0, 4)), ID, 4)
        assert coset_equal(W3_48, canonicalize(mul(W3_48, Mat2(1, 1, 0, 1))), 48)

    def test_different_determinants_never_equal(self) -> None:
        assert not coset_equal(S4, ID, 48)

    def test_equal_cosets_share_fingerprint(self) -> None:
        for g in (Mat2(1, 1, 0, 1), Mat2(1, 0, 48, 1), Mat2(7, 1, 48, 7)):
            moved = canonicalize(mul(W3_48, g))
            assert coset_equal(W3_48, moved, 48)
            assert fingerprint(W3_48, 48) == fingerprint(moved, 48)


def test_fingerprint_examples() -> None:
    assert fingerprint(ID, 6) == Fingerprint(1, (1, 0))
    assert fingerprint(S4, 48) == Fingerprint(16, (4, 0))


def test_p1_normalize_is_orbit_minimum() -> None:
    N = 12
    units = (1, 5, 7, 11)
    for c in range(N):
        for d in range(N):
            orbit = {((u * c) % N, (u * d) % N) for u in units}
            assert p1_normalize(c, d, N) == min(orbit)


class TestEpsilonAndV:
    @pytest.mark.parametrize("N, expected", [(1, 1), (9, 3), (48, 24), (5, 1), (7, 1), (8, 8), (24, 24), (63, 3)])
    def test_epsilon_examples(self, N: int, expected: int) -> None:
        assert epsilon(N) == expected

    @pytest.mark.parametrize("N", range(1, 41))
    def test_epsilon_matches_oracle(self, N: int) -> None:
        assert epsilon(N) == epsilon_oracle_stable(N)

    def test_oracle_bound_monotone(self) -> None:
        # a wider search can only lower the gcd
        assert epsilon_oracle(48, 200) % epsilon_oracle(48, 400) == 0

    def test_epsilon_divides_24(self) -> None:
        for N in range(1, 2000):
            assert 24 % epsilon(N) == 0

    def test_v_examples(self) -> None:
        assert v_params(48).v == 4
        vp = v_params(9)
        assert (vp.mu, vp.w, vp.v) == (0, 1, 3)
        assert v_params(5).v == 1
        assert v_params(64).v == 8
        assert v_params(1024).v == 8
        assert v_params(144).v == 12

    def test_v_closed_form_matches_definition(self) -> None:
        for N in range(1, 600):
            assert v_from_definition(N) == v_params(N).v

    def test_v_rejects_nonpositive(self) -> None:
        with pytest.raises(ValueError):
            v_params(0)


class TestCosetGraph:
    @pytest.mark.parametrize("N, size", [(1, 1), (2, 3), (6, 12), (48, 96)])
    def test_sizes(self, N: int, size: int) -> None:
        assert len(coset_graph(N)) == size
        assert psi(N) == size

    def test_actions_are_permutations(self) -> None:
        g = coset_graph(30)
        n = len(g)
        assert sorted(g.s_action) == list(range(n))
        assert sorted(g.t_action) == list(range(n))
        # S has order 2 on P^1
        assert all(g.s_action[g.s_action[i]] == i for i in range(n))

    def test_cap(self) -> None:
        with pytest.raises(CapExceeded):
            coset_graph(50, cap=40)

    def test_schreier_generators_lie_in_gamma0(self) -> None:
        for N in (1, 4, 12, 35):
            gens = schreier_generators(N)
            assert gens
            assert all(is_gamma0(g, N) for g in gens)


class TestConjugationOracle:
    def test_examples(self) -> None:
        assert conjugation_normalizes(ID, 12)
        assert conjugation_normalizes(S4, 48)
        assert conjugation_normalizes(W3_48, 48)
        assert not conjugation_normalizes(canonicalize(Mat2(5, 1, 0, 5)), 48)
        assert not conjugation_normalizes(canonicalize(Mat2(8, 1, 0, 8)), 48)

    def test_gamma0_elements_normalize(self) -> None:
        for g in schreier_generators(20):
            assert conjugation_normalizes(g, 20)
