import pytest

from cubichodge.jets import JetPoly
from cubichodge.loop import FreeEnergy
from cubichodge.outputs import (TSeries, dimension_check, faber_leading, first_flow_check,
                                h1_gap_check, hodge_expand, intersection_table, r_poly,
                                riemann_check, v_series)
from cubichodge.ratio import Q
from cubichodge.sigma import SigmaPoly
from cubichodge.textform import parse_sigma

from golden import FABER2_TEXT, FABER3_TEXT, R2_TEXT, R3_TEXT


class TestVSeries:
    def test_only_t0(self):
        v = v_series(0, 5)
        assert v == TSeries.t(0, 0, 5)

    def test_t0t1_coefficient(self):
        v = v_series(2, 4)
        assert v.coefficient((1, 1, 0)) == SigmaPoly.one()

    def test_t0sq_t2_coefficient(self):
        v = v_series(2, 4)
        assert v.coefficient((2, 0, 1)) == SigmaPoly.const(Q(1, 2))

    def test_explicit_cross_check_runs(self):
        v_series(3, 4, cross_check=True)

    @pytest.mark.parametrize("i", [0, 1, 2, 3])
    def test_riemann(self, i):
        assert riemann_check(i, 4)


class TestGap:
    def test_r2(self, h123):
        assert r_poly(h123[1]) == parse_sigma(R2_TEXT)

    def test_r3(self, h123):
        assert r_poly(h123[2]) == parse_sigma(R3_TEXT)

    def test_r2_rational_point(self, h123):
        # K1 = 2, K2 = 1 specialization of the sigma values
        s1 = Q(1, 3) - Q(1, 2) - Q(1, 1)
        s3 = Q(2, 27) - Q(2, 8) - Q(2, 1)
        val = r_poly(h123[1]).evaluate(s1, s3)
        assert val.denominator > 0  # exact rational, no error

    def test_degree_bound(self, h123):
        for g in (2, 3):
            assert r_poly(h123[g - 1]).degree() <= 3 * g - 3

    def test_genus1_rejected(self, h123):
        with pytest.raises(ValueError):
            r_poly(h123[0])


class TestFaber:
    def test_g2(self):
        assert faber_leading(2) == parse_sigma(FABER2_TEXT)

    def test_g3(self):
        assert faber_leading(3) == parse_sigma(FABER3_TEXT)

    @pytest.mark.parametrize("g", [2, 3, 4, 5])
    def test_degree(self, g):
        fl = faber_leading(g)
        assert fl.is_homogeneous(3 * g - 3)
        assert fl.degree() == 3 * g - 3

    @pytest.mark.parametrize("g", [2, 3])
    def test_matches_top_of_rg(self, h123, g):
        rg = r_poly(h123[g - 1])
        assert rg.homogeneous_part(3 * g - 3) == faber_leading(g)


class TestH1Gap:
    def test_pass(self, h123):
        assert h1_gap_check(h123[0])

    def test_log_coeff_mutation(self, h123):
        h1 = h123[0]
        fake = FreeEnergy(1, h1.gradient, h1.body, log_z1_coeff=Q(1, 23))
        assert not h1_gap_check(fake)

    def test_sigma_mutation(self, h123):
        h1 = h123[0]
        body = JetPoly.monomial(Q(1, 25), (1, 0), {0: 1}, h1.body.cutoff)
        fake = FreeEnergy(1, h1.gradient, body, log_z1_coeff=Q(1, 24))
        assert not h1_gap_check(fake)


class TestHodgeTables:
    def test_g1_t0_t1(self, h123):
        series = hodge_expand(h123[0], 2, 3)
        assert series.coefficient((1, 0, 0)) == SigmaPoly.s1() * Q(1, 24)
        assert series.coefficient((0, 1, 0)) == SigmaPoly.const(Q(1, 24))

    def test_g2_constant(self, h123):
        series = hodge_expand(h123[1], 2, 2)
        expect = SigmaPoly.monomial(3, 0, Q(1, 17280)) + SigmaPoly.monomial(0, 1, Q(-1, 34560))
        assert series.constant_term() == expect

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_dimension_check(self, h123, g):
        series = hodge_expand(h123[g - 1], 3, 4)
        ok, violation = dimension_check(g, series)
        assert ok, violation

    def test_dimension_check_mutation(self, h123):
        h2 = h123[1]
        bumped = h2.body.mul_z(2)  # shifts every term's z2 exponent
        fake = FreeEnergy(2, h2.gradient, bumped)
        series = hodge_expand(fake, 2, 3)
        ok, _ = dimension_check(2, series)
        assert not ok

    def test_g1_t2_coefficient_vanishes(self, h123):
        series = hodge_expand(h123[0], 3, 4)
        assert not series.coefficient((0, 0, 1, 0))

    def test_normalized_table(self, h123):
        raw = dict(intersection_table(h123[0], 2, 3))
        normed = dict(intersection_table(h123[0], 2, 3, normalized=True))
        key = (1, 1)  # t1^2 monomial
        assert raw[key] == SigmaPoly.const(Q(1, 48))
        assert normed[key] == raw[key] * Q(2)


class TestFirstFlow:
    def test_holds_to_degree3(self, h123):
        assert first_flow_check(h123[0], 3)

    def test_sigma_mutation_fails(self, h123):
        h1 = h123[0]
        body = JetPoly.monomial(Q(1, 25), (1, 0), {0: 1}, h1.body.cutoff)
        fake = FreeEnergy(1, h1.gradient, body, log_z1_coeff=Q(1, 24))
        assert not first_flow_check(fake, 3)

    def test_log_mutation_fails(self, h123):
        h1 = h123[0]
        fake = FreeEnergy(1, h1.gradient, h1.body, log_z1_coeff=Q(1, 23))
        assert not first_flow_check(fake, 3)
