"""Predicted structures, relation verification, the direct-product claim and w_m * Omega."""

from __future__ import annotations

import pytest

from norm0.core.errors import NotInNormalizer, ShiftNotInNormalizer
from norm0.core.exact import Mat2, canonicalize
from norm0.core.group_engine import eval_word, is_relation, op, resolve
from norm0.qa.qa_anchors import mod3_criterion_levels
from norm0.core.structure import (
    Decomposer,
    bars_decompose,
    build_report,
    check_claim_AL,
    commutation_rule,
    full_quotient,
    omega_names,
    predicted_structure,
    verify_commutation_rule,
    verify_structure,
)


class TestPredictedStructure:
    def test_unknown_source(self) -> None:
        with pytest.raises(ValueError):
            predicted_structure(48, "other")

    def test_factors_for_48(self) -> None:
        desc = predicted_structure(48, "claim8")
        assert desc.direct_product
        two, three = desc.factors
        assert (two.prime, two.generators, two.order) == (2, ("w16", "S4"), 24)
        assert (three.prime, three.generators, three.order) == (3, ("w3",), 2)
        assert [r.label for r in two.relations] == ["w16^2", "S4^4", "(w16 S4)^3"]

    def test_corrected_tables_carry_non_relations(self) -> None:
        f = predicted_structure(256, "barsfi").factor(2)
        assert f is not None
        expected = {r.label: r.expected for r in f.relations}
        assert expected["(w256 S8)^3"] is False
        assert expected["w256 S8 w256 S8 w256 S8^3 w256 S8^3"] is True
        assert predicted_structure(256, "barsfi").factor(5) is None

    def test_claimed_orders(self) -> None:
        assert predicted_structure(32, "claim8").factor(2).order == 32
        assert predicted_structure(27, "claim8").factor(3).order == 18
        assert predicted_structure(9, "claim8").factor(3).order == 12
        assert predicted_structure(8, "barsfi").factor(2).order == 8
        assert predicted_structure(7, "claim8").factor(7).order == 2


class TestVerifyStructure:
    @pytest.mark.parametrize("N", [4, 8, 9, 16, 27, 32, 64, 128, 256])
    def test_corrected_structure_holds_for_prime_powers(self, N: int) -> None:
        verdicts = verify_structure(N, "barsfi")
        assert all(f.ok for f in verdicts), [r for f in verdicts for r in f.relations if not r.ok]

    def test_original_statement_fails_at_32(self) -> None:
        (two,) = verify_structure(32, "claim8")
        assert not two.ok
        failing = [r.label for r in two.relations if not r.ok]
        assert failing == ["S4 (w32 S4 w32) S4^-1 (w32 S4 w32)^-1"]


class TestClaim:
    @pytest.mark.parametrize("N", [1, 2, 5, 6, 12, 30, 63, 210])
    def test_true(self, N: int) -> None:
        assert check_claim_AL(N).holds

    def test_48(self) -> None:
        verdict = check_claim_AL(48)
        assert (verdict.holds, verdict.stage, verdict.witness) == (False, "commuting", ("S4", "w3"))
        assert "S4 does not commute with w3" in verdict.detail

    def test_45(self) -> None:
        verdict = check_claim_AL(45)
        assert (verdict.holds, verdict.stage, verdict.witness) == (False, "commuting", ("S3", "w5"))

    def test_18_fails_on_commuting(self) -> None:
        # w2 S3 = S3^2 w2 since 2 mod 3 = 2
        verdict = check_claim_AL(18)
        assert (verdict.holds, verdict.stage, verdict.witness) == (False, "commuting", ("w2", "S3"))

    @pytest.mark.parametrize("N", [32, 128, 256])
    def test_relation_stage(self, N: int) -> None:
        assert check_claim_AL(N).stage == "relations"

    def test_reuses_given_group(self) -> None:
        G = full_quotient(63)
        assert check_claim_AL(63, G).holds


class TestDecomposition:
    def test_omega_names(self) -> None:
        assert omega_names(48) == ("S4", "w16", "w3")
        assert omega_names(35) == ()
        assert omega_names(1800) == ("S6", "w8", "w9")

    @pytest.mark.parametrize("N", [35, 48, 63, 1800])
    def test_every_element_decomposes(self, N: int) -> None:
        G = full_quotient(N)
        dec = Decomposer(G)
        for i in range(len(G)):
            m, word = dec.decompose_index(i)
            wm = 0 if m == 1 else resolve(G, f"w{m}")
            assert op(G, wm, eval_word(G, word)) == i

    def test_bars_decompose_matrix(self) -> None:
        m, word = bars_decompose(35, canonicalize(Mat2(5, 2, 35, 15)))
        assert m == 5 and str(word) == "1"
        m, word = bars_decompose(48, canonicalize(Mat2(4, 1, 0, 4)))
        assert m == 1 and word.names() <= {"S4", "w16", "w3"}

    def test_bars_decompose_rejects_non_members(self) -> None:
        with pytest.raises(NotInNormalizer):
            bars_decompose(48, canonicalize(Mat2(5, 1, 0, 5)))


class TestCommutationRules:
    def test_predicted_exponent(self) -> None:
        assert commutation_rule(45, 5, 3) == 2
        assert commutation_rule(63, 7, 3) == 1
        assert commutation_rule(448, 7, 8) == 7

    def test_errors(self) -> None:
        with pytest.raises(ValueError):
            commutation_rule(45, 5, 5)
        with pytest.raises(ValueError):
            commutation_rule(144, 9, 3)
        with pytest.raises(ShiftNotInNormalizer):
            commutation_rule(45, 5, 4)

    @pytest.mark.parametrize(
        "N, pn, h",
        [(45, 5, 3), (63, 7, 3), (112, 7, 4), (144, 9, 4), (144, 16, 3), (1800, 25, 3), (1800, 8, 3), (192, 3, 8)],
    )
    def test_rules_hold(self, N: int, pn: int, h: int) -> None:
        assert verify_commutation_rule(full_quotient(N), pn, h)

    def test_mod3_criterion_levels(self) -> None:
        assert mod3_criterion_levels() == (
            2, 4, 5, 7, 8, 11, 13, 16, 17, 19, 23, 25, 29, 31, 32, 37, 41, 43, 47, 49,
        )

    @pytest.mark.parametrize("pn", mod3_criterion_levels())
    def test_mod3_commutation_criterion(self, pn: int) -> None:
        G = full_quotient(9 * pn)
        assert is_relation(G, f"S3 w{pn} S3^-1 w{pn}") == (pn % 3 == 1)


class TestReport:
    def test_report_fields(self) -> None:
        report = build_report(48)
        assert (report.N, report.sigma, report.q, report.v, report.epsilon, report.order) == (48, 4, 3, 4, 24, 48)
        assert report.generators == ("w16", "w3", "S4")
        assert not report.claim_al.holds
        assert report.structure_ok
        assert {(c.a, c.b): c.commute for c in report.commutations} == {("w16", "w3"): True, ("S4", "w3"): False}
        assert 0 < len(report.bars_samples) <= 8
        assert report.bars_samples[0].element == "1" and report.bars_samples[0].m == 1
        assert set(report.timing) == {"close_s", "total_s"}

    def test_report_is_deterministic(self) -> None:
        assert build_report(45).deterministic_hash() == build_report(45).deterministic_hash()
