"""Closure, Cayley table construction and the finite-group queries."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from norm0.core.errors import BudgetExceeded, NotASubgroup, UnknownGenerator
from norm0.core.exact import pmul
from norm0.core.group_engine import (
    QuotientGroup,
    center,
    close,
    commutes,
    element_order,
    eval_word,
    exponent,
    internal_direct_product,
    inverse,
    is_abelian,
    is_closed,
    is_relation,
    locate,
    op,
    order_profile,
    power,
    regular_representation,
    resolve,
    rep_of,
    span,
    subgroup,
)
from norm0.core.normalizer import GeneratorSet, canonical_generators
from norm0.core.structure import full_quotient


@pytest.fixture(scope="module")
def g4() -> QuotientGroup:
    return full_quotient(4)


@pytest.fixture(scope="module")
def g8() -> QuotientGroup:
    return full_quotient(8)


@pytest.fixture(scope="module")
def g6() -> QuotientGroup:
    return full_quotient(6)


class TestClosure:
    def test_trivial_level(self) -> None:
        G = full_quotient(1)
        assert len(G) == 1
        assert G.cayley.tolist() == [[0]]

    def test_orders(self, g4: QuotientGroup, g6: QuotientGroup, g8: QuotientGroup) -> None:
        assert (len(g4), len(g6), len(g8)) == (6, 4, 8)

    def test_budget(self) -> None:
        with pytest.raises(BudgetExceeded):
            close(canonical_generators(48), budget=10)

    def test_subgroup_closure(self) -> None:
        G = close(GeneratorSet.from_names(48, ["w3"]))
        assert len(G) == 2

    @pytest.mark.parametrize("N", [4, 8, 12, 16, 45])
    def test_table_is_a_group_law(self, N: int) -> None:
        G = full_quotient(N)
        n = len(G)
        table = G.cayley
        assert (table[0] == np.arange(n)).all() and (table[:, 0] == np.arange(n)).all()
        for row in table:
            assert sorted(row.tolist()) == list(range(n))
        for i in range(n):
            assert table[i, G.inv[i]] == 0
        for i, j, k in itertools.islice(itertools.product(range(n), repeat=3), 0, None, 7):
            assert table[table[i, j], k] == table[i, table[j, k]]

    @pytest.mark.parametrize("N", [8, 16, 48])
    def test_table_matches_matrix_products(self, N: int) -> None:
        G = full_quotient(N)
        for i, j in itertools.product(range(len(G)), repeat=2):
            if (i * 31 + j) % 5:
                continue
            assert locate(G, pmul(rep_of(G, i), rep_of(G, j))) == op(G, i, j)

    def test_words_evaluate_to_their_element(self) -> None:
        G = full_quotient(48)
        for i, w in enumerate(G.words):
            assert eval_word(G, w) == i

    def test_table_is_read_only(self, g4: QuotientGroup) -> None:
        with pytest.raises(ValueError):
            g4.cayley[0, 0] = 1

    def test_from_tables(self, g8: QuotientGroup) -> None:
        rebuilt = QuotientGroup.from_tables(
            8, [el.rep for el in g8.elements], g8.cayley.tolist(), g8.gens, [str(w) for w in g8.words]
        )
        assert (rebuilt.cayley == g8.cayley).all()
        assert rebuilt.gen_index == g8.gen_index
        assert rebuilt.words == g8.words
        with pytest.raises(ValueError):
            QuotientGroup.from_tables(8, [el.rep for el in g8.elements], [[0]], g8.gens, [str(w) for w in g8.words])


class TestQueries:
    def test_order_six_group_is_nonabelian(self, g4: QuotientGroup) -> None:
        assert not is_abelian(g4)
        assert center(g4) == frozenset({0})
        assert exponent(g4) == 6
        assert order_profile(g4) == {1: 1, 2: 3, 3: 2}

    def test_order_eight_group_is_dihedral(self, g8: QuotientGroup) -> None:
        assert len(center(g8)) == 2
        assert order_profile(g8) == {1: 1, 2: 5, 4: 2}
        assert is_relation(g8, "(S2 w8)^4")
        assert not is_relation(g8, "(S2 w8)^2")

    def test_klein_four(self, g6: QuotientGroup) -> None:
        assert is_abelian(g6)
        assert exponent(g6) == 2

    def test_power_and_inverse(self, g4: QuotientGroup) -> None:
        x = eval_word(g4, "w4 S2")
        assert element_order(g4, x) == 3
        assert power(g4, x, 3) == 0
        assert power(g4, x, -1) == inverse(g4, x)
        assert power(g4, x, 0) == 0

    def test_commutes(self, g4: QuotientGroup) -> None:
        w4, s2 = resolve(g4, "w4"), resolve(g4, "S2")
        assert commutes(g4, w4, w4)
        assert not commutes(g4, w4, s2)

    def test_resolve(self) -> None:
        G = full_quotient(48)
        assert resolve(G, "w48") == eval_word(G, "w16 w3")
        assert resolve(G, "S2") == eval_word(G, "S4^2")
        with pytest.raises(UnknownGenerator):
            resolve(G, "S8")
        with pytest.raises(UnknownGenerator):
            resolve(G, "w5")
        with pytest.raises(UnknownGenerator):
            eval_word(G, "foo")


class TestSubgroups:
    def test_span_records_words(self) -> None:
        G = full_quotient(48)
        found = span(G, ["w16", "S4"])
        assert len(found) == 24
        for idx, word in found.items():
            assert eval_word(G, word) == idx
        assert is_closed(G, found)

    def test_subgroup_and_is_closed(self, g4: QuotientGroup) -> None:
        s2 = resolve(g4, "S2")
        assert subgroup(g4, [s2]) == frozenset({0, s2})
        assert is_closed(g4, {0, s2})
        assert not is_closed(g4, {0, s2, resolve(g4, "w4")})
        assert not is_closed(g4, set())

    def test_direct_product_holds(self, g6: QuotientGroup) -> None:
        a, b = subgroup(g6, [resolve(g6, "w2")]), subgroup(g6, [resolve(g6, "w3")])
        assert internal_direct_product(g6, [a, b]).holds

    def test_direct_product_failures(self, g4: QuotientGroup, g6: QuotientGroup) -> None:
        s2, w4 = resolve(g4, "S2"), resolve(g4, "w4")
        verdict = internal_direct_product(g4, [subgroup(g4, [s2]), subgroup(g4, [w4])])
        assert (verdict.holds, verdict.stage) == (False, "commuting")

        a = subgroup(g6, [resolve(g6, "w2")])
        assert internal_direct_product(g6, [a]).stage == "order"
        verdict = internal_direct_product(g6, [a, a])
        assert (verdict.stage, verdict.witness) == ("intersection", (resolve(g6, "w2"),))

    def test_not_a_subgroup(self, g4: QuotientGroup) -> None:
        with pytest.raises(NotASubgroup):
            internal_direct_product(g4, [{0, resolve(g4, "S2"), resolve(g4, "w4")}, {0}])


@pytest.mark.parametrize("N", [4, 8, 16, 45, 48])
def test_regular_representation_order_matches_sympy(N: int) -> None:
    G = full_quotient(N)
    perms = [Permutation([x - 1 for x in p]) for p in regular_representation(G)]
    assert PermutationGroup(perms).order() == len(G)
