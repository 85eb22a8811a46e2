from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from mtlfi.chain import (GODEL, LUKASIEWICZ, PRODUCT, FiniteChain,
                         GapOrOverlap, NegationNotDecreasing, NotAFilter,
                         OutOfCarrier, SizeMismatch, StandardChain,
                         TableNotTnorm, builtin_chains, is_filter,
                         parse_chain_file, quotient_by_filter, upward_filter,
                         validate_mtl_laws)


class TestFiniteFamilies:
    def test_three_valued_involutive_tables(self, chains):
        l3 = chains["L3"]
        assert l3.tnorm(F(1, 2), F(1, 2)) == 0
        assert l3.residuum(F(1, 2), 0) == F(1, 2)
        assert l3.negation(F(1, 2)) == F(1, 2)
        assert l3.tnorm(F(1, 2), 1) == F(1, 2)

    def test_three_valued_idempotent_tables(self, chains):
        g3 = chains["G3"]
        assert g3.tnorm(F(1, 2), F(1, 2)) == F(1, 2)
        assert g3.negation(F(1, 2)) == 0
        assert g3.residuum(1, F(1, 2)) == F(1, 2)

    def test_two_element_chain_is_boolean(self, chains):
        b2 = chains["B2"]
        assert b2.tnorm(1, 1) == 1
        assert b2.negation(0) == 1 and b2.negation(1) == 0

    def test_explicit_table_roundtrip(self):
        rows = [["0", "0"], ["0", "1"]]
        b2 = FiniteChain.from_values_table(rows, name="bool")
        assert b2.size == 2
        assert b2.tnorm(1, 1) == 1

    def test_delta_is_top_projection(self, chains):
        for name in ("L3", "G5", "NM6"):
            chain = chains[name]
            assert chain.delta(1) == 1
            for x in chain.elements[:-1]:
                assert chain.delta(x) == 0

    def test_out_of_carrier(self, chains):
        with pytest.raises(OutOfCarrier):
            chains["L3"].tnorm(F(1, 3), 1)


class TestTableValidation:
    def test_non_commutative_table_rejected(self):
        rows = [[0, 0, 0], [0, 1, 1], [0, 0, 2]]
        with pytest.raises(TableNotTnorm) as exc:
            FiniteChain(rows)
        assert exc.value.law == "commutativity"

    def test_no_unit_rejected(self):
        rows = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        with pytest.raises(TableNotTnorm) as exc:
            FiniteChain(rows)
        assert exc.value.law == "unit"

    def test_non_monotone_rejected(self):
        rows = [[0, 1, 0], [1, 1, 1], [0, 1, 2]]
        with pytest.raises(TableNotTnorm):
            FiniteChain(rows)

    def test_non_associative_rejected(self):
        # commutative with unit, monotone, but (a*a)*b != a*(a*b)
        rows = [[0, 0, 0, 0],
                [0, 0, 1, 1],
                [0, 1, 1, 2],
                [0, 1, 2, 3]]
        with pytest.raises(TableNotTnorm) as exc:
            FiniteChain(rows)
        assert exc.value.law == "associativity"
        assert len(exc.value.witness) == 3

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            FiniteChain([[0, 0], [0]])

    def test_bad_negation_endpoints(self):
        with pytest.raises(NegationNotDecreasing):
            FiniteChain.from_negation([1, 0, F(1, 2)])

    def test_increasing_negation_rejected(self):
        with pytest.raises(NegationNotDecreasing):
            FiniteChain.from_negation([1, F(1, 3), F(2, 3), 0])


class TestWnm:
    def test_w15_negation_profile(self, chains):
        w15 = chains["W15"]
        assert w15.size == 16
        assert w15.negation(F(2, 15)) == F(13, 15)
        assert w15.negation(F(3, 15)) == F(12, 15)
        assert w15.negation(F(5, 15)) == F(7, 15)
        assert w15.negation(F(10, 15)) == F(3, 15)
        assert w15.negation(F(12, 15)) == F(3, 15)

    def test_w15_tnorm_shape(self, chains):
        w15 = chains["W15"]
        # below the negation the product collapses to 0, else to min
        assert w15.tnorm(F(2, 15), F(13, 15)) == 0
        assert w15.tnorm(F(9, 15), F(10, 15)) == F(9, 15)
        assert w15.tnorm(F(4, 15), F(8, 15)) == 0       # 8/15 = n(4/15)
        assert w15.tnorm(F(4, 15), F(9, 15)) == F(4, 15)

    def test_nm6_is_involutive(self, chains):
        nm6 = chains["NM6"]
        for x in nm6.elements:
            assert nm6.negation(nm6.negation(x)) == x


class TestStandardChains:
    def test_component_tiling_validated(self):
        with pytest.raises(GapOrOverlap):
            StandardChain([(LUKASIEWICZ, 0, F(1, 2)), (GODEL, F(2, 3), 1)])
        with pytest.raises(GapOrOverlap):
            StandardChain([(LUKASIEWICZ, F(1, 4), 1)])

    def test_product_component_values(self, chains):
        lp = chains["LP"]
        assert lp.tnorm(F(5, 6), F(3, 4)) == F(2, 3)
        assert lp.residuum(F(3, 4), F(2, 3)) == F(5, 6)
        assert lp.negation(F(3, 4)) == 0

    def test_second_lukasiewicz_component(self, chains):
        ll = chains["LL"]
        assert ll.tnorm(F(3, 5), F(3, 5)) == F(1, 2)
        assert ll.residuum(F(3, 5), F(1, 2)) == F(9, 10)
        assert ll.negation(F(3, 5)) == 0

    def test_first_component_negation(self, chains):
        lg = chains["LG"]
        assert lg.residuum(F(1, 4), 0) == F(1, 4)
        assert lg.negation(F(1, 4)) == F(1, 4)

    def test_residuum_tops_out(self, chains):
        for name in ("LG", "LP", "LL"):
            chain = chains[name]
            assert chain.residuum(F(1, 3), F(1, 3)) == 1
            assert chain.residuum(F(1, 4), F(5, 6)) == 1

    def test_shared_endpoint_is_idempotent(self, chains):
        for name in ("LG", "LP", "LL"):
            chain = chains[name]
            a = F(1, 2)
            assert chain.tnorm(a, a) == a
            for y in (F(1, 4), F(3, 4), a, F(1), F(0)):
                assert chain.tnorm(a, y) == min(a, y)

    def test_single_component_is_plain_lukasiewicz(self):
        luk = StandardChain([(LUKASIEWICZ, 0, 1)], name="Luk")
        assert luk.tnorm(F(3, 5), F(3, 5)) == F(1, 5)
        assert luk.negation(F(3, 5)) == F(2, 5)
        assert luk.n_set().empty

    def test_irrational_endpoints_rejected(self):
        from mtlfi.chain import NonRationalEndpoint
        with pytest.raises(NonRationalEndpoint):
            StandardChain([(LUKASIEWICZ, 0.0, 1)])

    def test_carrier_bounds(self, chains):
        with pytest.raises(OutOfCarrier):
            chains["LL"].tnorm(2, 1)
        with pytest.raises(OutOfCarrier):
            chains["LL"].residuum(F(-1, 2), 0)


rationals = st.fractions(min_value=0, max_value=1)


@pytest.mark.parametrize("name", ["LG", "LP", "LL"])
@given(x=rationals, y=rationals, z=rationals)
@settings(max_examples=150, deadline=None)
def test_adjointness_on_standard_chains(name, x, y, z):
    chain = builtin_chains()[name]
    assert (chain.tnorm(x, y) <= z) == (x <= chain.residuum(y, z))
    assert max(chain.residuum(x, y), chain.residuum(y, x)) == 1


@pytest.mark.parametrize("name", ["B2", "L3", "L5", "G3", "G5", "NM6", "L3G3"])
def test_finite_laws_exhaustive(chains, name):
    assert validate_mtl_laws(chains[name]) == []


def test_residuum_is_maximal_on_samples(chains):
    # the residuum must be the largest z with x*z <= y
    chain = chains["LL"]
    grid = [F(i, 12) for i in range(13)]
    for x in grid:
        for y in grid:
            r = chain.residuum(x, y)
            assert chain.tnorm(x, r) <= y
            for z in grid:
                if z > r:
                    assert chain.tnorm(x, z) > y


class TestNSet:
    def test_spec_shapes(self, chains):
        assert chains["LG"].n_set().describe() == "[1/2, 1)"
        assert chains["LP"].n_set().describe() == "[1/2, 1)"
        assert chains["B2"].n_set().empty
        assert chains["W15"].n_set().empty
        assert StandardChain([(LUKASIEWICZ, 0, 1)]).n_set().empty
        godel = StandardChain([(GODEL, 0, 1)])
        assert godel.n_set().describe() == "(0, 1)"

    def test_finite_scan(self, chains):
        assert chains["L3G3"].n_set().elements == frozenset({F(1, 2), F(3, 4)})
        assert chains["G3"].n_set().elements == frozenset({F(1, 2)})

    def test_analytic_matches_pointwise_scan(self, chains):
        for name in ("LG", "LP", "LL"):
            chain = chains[name]
            nset = chain.n_set()
            for i in range(61):
                x = F(i, 60)
                in_scan = x != 1 and chain.negation(x) == 0
                assert (x in nset) == in_scan


class TestSmtl:
    def test_pseudo_complemented_chains(self, chains):
        assert chains["G3"].is_smtl() == (True, None)
        assert StandardChain([(GODEL, 0, 1)]).is_smtl()[0]
        assert StandardChain([(PRODUCT, 0, 1)]).is_smtl()[0]

    def test_witnesses(self, chains):
        ok, witness = chains["L3"].is_smtl()
        assert not ok and min(witness, chains["L3"].negation(witness)) != 0
        ok, witness = chains["LP"].is_smtl()
        assert not ok and witness == F(1, 4)


class TestQuotient:
    def test_filter_validation(self, chains):
        l5 = chains["L5"]
        ok, _ = is_filter(l5, {F(3, 4), F(1)})
        assert not ok  # 3/4 * 3/4 = 1/2 escapes
        with pytest.raises(NotAFilter):
            quotient_by_filter(l5, {F(3, 4), F(1)})
        ok, _ = is_filter(l5, upward_filter(l5, 1))
        assert ok

    def test_trivial_filter_is_isomorphic(self, chains):
        l5 = chains["L5"]
        quotient, projection = quotient_by_filter(l5, {F(1)})
        assert quotient.size == l5.size
        assert sorted(projection.values()) == list(quotient.elements)

    def test_w15_collapse(self, chains):
        w15 = chains["W15"]
        quotient, projection = quotient_by_filter(
            w15, upward_filter(w15, F(12, 15)))
        assert quotient.size == 10
        assert validate_mtl_laws(quotient) == []
        # the top class swallows [12/15, 1]
        assert projection[F(12, 15)] == 1 and projection[F(14, 15)] == 1
        # a new zero-negation element below 1 appears
        assert any(z != 1 and quotient.negation(z) == 0
                   for z in quotient.elements)
        # ... although upstairs only 1 had a zero negation
        assert w15.n_set().empty

    def test_projection_is_a_homomorphism(self, chains):
        w15 = chains["W15"]
        quotient, proj = quotient_by_filter(w15, upward_filter(w15, F(12, 15)))
        for x in w15.elements:
            for y in w15.elements:
                assert proj[w15.tnorm(x, y)] == quotient.tnorm(proj[x], proj[y])
                assert proj[w15.residuum(x, y)] == quotient.residuum(proj[x], proj[y])


class TestOrdinalSumFinite:
    def test_two_component_glueing(self, chains):
        l3g3 = chains["L3G3"]
        assert l3g3.size == 5
        # first component is involutive under rescaling
        assert l3g3.tnorm(F(1, 4), F(1, 4)) == 0
        assert l3g3.negation(F(1, 4)) == F(1, 4)
        # second component is idempotent
        assert l3g3.tnorm(F(3, 4), F(3, 4)) == F(3, 4)
        # cross-component products take the minimum
        assert l3g3.tnorm(F(1, 4), F(3, 4)) == F(1, 4)
        assert validate_mtl_laws(l3g3) == []

    def test_rejects_degenerate_components(self):
        with pytest.raises(SizeMismatch):
            FiniteChain.ordinal_sum([(LUKASIEWICZ, 1), (GODEL, 3)])


class TestChainFiles:
    def test_standard_file(self):
        name, chain = parse_chain_file(
            "chain demo\nkind: standard\n"
            "components: lukasiewicz 0 1/2; product 1/2 1\n")
        assert name == "demo"
        assert chain.tnorm(F(5, 6), F(3, 4)) == F(2, 3)

    def test_family_file(self):
        _, chain = parse_chain_file("chain l4\nkind: finite\n"
                                    "family: lukasiewicz\nsize: 4\n")
        assert chain.size == 4
        assert chain.tnorm(F(2, 3), F(2, 3)) == F(1, 3)

    def test_negation_file(self):
        _, chain = parse_chain_file(
            "chain nm\nkind: finite\nnegation: 1 2/3 1/3 0\n")
        assert chain.negation(F(1, 3)) == F(2, 3)

    def test_table_file(self):
        text = ("chain b\nkind: finite\ntable:\n0 0\n0 1\n")
        _, chain = parse_chain_file(text)
        assert chain.size == 2

    def test_malformed_file(self):
        with pytest.raises(ValueError):
            parse_chain_file("kind: finite\n")
