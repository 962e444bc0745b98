import pytest

from cubichodge.ratio import Q
from cubichodge.virasoro import (BtildeTable, FockPoly, RationalParams, TruncationViolation,
                                 a_kn, btilde_row0, c_float, c_pair, c_ratio,
                                 commutator_check, monomial_basis, v_rational, virasoro_apply)

P21 = RationalParams(2, 1)
P12 = RationalParams(1, 2)


class TestParams:
    def test_k_constant(self):
        assert P21.kconst == Q(27, 4)

    def test_coprimality_enforced(self):
        with pytest.raises(ValueError):
            RationalParams(2, 4)

    def test_nstar_21(self):
        # excludes 0 and everything congruent to -K2 = 2 mod 3
        assert P21.nstar_upto(9) == [1, 3, 4, 6, 7, 9]

    def test_nstar_12(self):
        # K1 = 1: negative index -1 is included, 1 mod 3 is excluded
        assert P12.nstar_upto(8) == [-1, 2, 3, 5, 6, 8]

    def test_decompose_and_b(self):
        assert P21.decompose(1) == (1, 0) and P21.b(1) == Q(1, 2)
        assert P21.decompose(4) == (1, 1) and P21.b(4) == Q(3, 2)
        assert P21.decompose(3) == (0, 1) and P21.b(3) == Q(1)
        assert P12.decompose(-1) == (-1, 0) and P12.b(-1) == Q(1, 2)
        assert P12.decompose(2) == (-1, 1) and P12.b(2) == Q(3, 2)

    def test_unique_decomposition(self):
        for params in (P21, P12, RationalParams(3, 4)):
            for k in params.nstar_upto(30):
                alpha, ell = params.decompose(k)
                assert alpha + params.h * ell == k
                assert -(params.k2 - 1) <= alpha <= params.k1 - 1 and ell >= 0

    def test_g_matrix(self):
        p = RationalParams(3, 2)
        assert p.gpair(0, 0) == Q(1)
        assert p.gpair(1, 2) == Q(2, 5)
        assert p.gpair(1, 1) == 0
        assert p.gpair(-1, -1) == Q(3, 5)
        assert p.gpair(1, -1) == 0

    def test_sigma_values(self):
        s1, s3 = P21.sigma_values()
        assert s1 == Q(1, 3) - Q(1, 2) - 1
        assert s3 == Q(2, 27) - Q(2, 8) - 2


class TestVRational:
    def test_v1_at_zero(self):
        assert v_rational(P21, 1)(0) == Q(4, 9)

    def test_v0_is_one(self):
        assert v_rational(P21, 0)(Q(5, 7)) == Q(1)

    def test_telescoping(self):
        v1, v3 = v_rational(P21, 1), v_rational(P21, 3)
        x = Q(17, 5)
        assert v3(x) == v1(x) * v1(x - 1) * v1(x - 2)

    def test_asymptotic_series_oracle(self):
        from cubichodge.oracles import v1_asymptotic_check

        for params in (P12, RationalParams(2, 3), RationalParams(3, 4)):
            ok, detail = v1_asymptotic_check(params, 8)
            assert ok, detail


class TestCConstants:
    def test_c_int(self):
        assert P21.c_int(1) == 3  # C(3, 2)
        assert P21.c_int(2) == 15

    def test_aligned_ratio_identity(self):
        # c_h = K V_1(0): 3 = (27/4)(4/9)
        assert P21.kconst * v_rational(P21, 1)(0) == P21.c_int(1)

    def test_c_ratio_trivial(self):
        assert c_ratio(P21, 1, 0) == Q(1)

    def test_c_ratio_against_floats(self):
        import math

        for k in P21.nstar_upto(5):
            for ell in (1, 2):
                exact = float(c_ratio(P21, k, ell))
                approx = c_float(P21, k + 3 * ell) / c_float(P21, k)
                assert math.isclose(exact, approx, rel_tol=1e-10)

    def test_c_pair_half_integer(self):
        # c_1^2 with c_1 = 3/2
        assert c_pair(P21, 1, 0, 1, 0) == Q(9, 4)

    def test_c_pair_aligned(self):
        assert c_pair(P21, 0, 0, 0, 0) == Q(9)  # c_3 * c_3

    def test_c_pair_float_oracle(self):
        from cubichodge.oracles import c_pair_float_check

        for params in (P12, RationalParams(2, 3), RationalParams(3, 4)):
            ok, detail = c_pair_float_check(params, 3)
            assert ok, detail

    def test_c_pair_range_errors(self):
        with pytest.raises(ValueError):
            c_pair(P21, 1, 0, 2, 0)
        with pytest.raises(ValueError):
            c_pair(P21, 5, 0, -3, 0)


class TestAkn:
    @pytest.mark.parametrize("pair", [(1, 2), (2, 3), (3, 4)])
    def test_a0n_is_kn(self, pair):
        params = RationalParams(*pair)
        for n in range(13):
            assert a_kn(params, 0, n) == params.kconst**n

    def test_btilde00_is_theta(self):
        assert btilde_row0(P21, 0, 10) == [Q(1)] * 11

    def test_btilde01_sigma_free(self):
        # (Theta^2 - Theta)/2 expands to m/2 xi^m for every parameter pair
        for params in (P21, P12):
            assert btilde_row0(params, 1, 8) == [Q(m, 2) for m in range(9)]

    def test_btilde11_closed_form(self):
        from cubichodge.oracles import btilde11_closed_form_check

        for params in (P12, RationalParams(2, 3), RationalParams(3, 4)):
            ok, detail = btilde11_closed_form_check(params)
            assert ok, detail

    def test_integral_identity(self):
        from cubichodge.oracles import btilde11_integral_check

        for params in (P12, RationalParams(2, 3), RationalParams(3, 4)):
            ok, detail = btilde11_integral_check(params, 10)
            assert ok, detail

    def test_specialization_bridge_small(self):
        from cubichodge.oracles import specialization_bridge
        from cubichodge.ptensors import PTensorTable

        ok, detail = specialization_bridge(P12, PTensorTable(3), 2, 6)
        assert ok, detail

    def test_row_recursion_symmetry(self):
        table = BtildeTable(P21, 8)
        for i in range(3):
            for j in range(3):
                assert table.row(i, j) == table.row(j, i)


class TestOperators:
    def test_l0_on_one(self):
        one = FockPoly.monomial(P21, 10, 1)
        out = virasoro_apply(P21, 0, one)
        s1, _ = P21.sigma_values()
        expect = FockPoly.monomial(P21, 10, Q(1, 2), x=2, eps2=-1) + \
            FockPoly.monomial(P21, 10, s1 / 24)
        assert out == expect

    def test_lm_on_one_vanishes(self):
        one = FockPoly.monomial(P21, 10, 1)
        for m in (1, 2, 3):
            assert not virasoro_apply(P21, m, one)

    def test_l1_on_x_s1(self):
        f = FockPoly.monomial(P21, 10, 1, x=1, s=((1, 1),))
        assert not virasoro_apply(P21, 1, f)

    def test_l1_on_s4(self):
        f = FockPoly.monomial(P21, 10, 1, s=((4, 1),))
        out = virasoro_apply(P21, 1, f)
        assert out == FockPoly.monomial(P21, 10, Q(1, 2), s=((1, 1),))

    def test_l1_on_s3_gives_x(self):
        f = FockPoly.monomial(P21, 10, 1, s=((3, 1),))
        out = virasoro_apply(P21, 1, f)
        assert out == FockPoly.monomial(P21, 10, 1, x=1)

    def test_invalid_index_rejected(self):
        with pytest.raises(TruncationViolation):
            FockPoly.monomial(P21, 10, 1, s=((2, 1),))  # 2 not in N_*

    def test_k_cut_enforced(self):
        with pytest.raises(TruncationViolation):
            FockPoly.monomial(P21, 3, 1, s=((4, 1),))
        f = FockPoly.monomial(P21, 4, 1, s=((4, 1),))
        with pytest.raises(TruncationViolation):
            virasoro_apply(P21, 2, f)  # h*m = 6 beyond k_cut 4

    def test_degree_cut(self):
        with pytest.raises(TruncationViolation):
            FockPoly.monomial(P21, 10, 1, x=3, s=((1, 1),), d_cut=3)


class TestCommutators:
    def test_equal_indices_trivial(self):
        f = FockPoly.monomial(P21, 20, 1, x=1, s=((1, 1), (3, 1)))
        ok, _ = commutator_check(P21, 2, 2, f)
        assert ok

    def test_sample_21(self):
        k_cut = 3 * P21.h + 2 + 6 * P21.h
        f = FockPoly.monomial(P21, k_cut, 1, x=1, s=((1, 1), (3, 1)))
        ok, term = commutator_check(P21, 2, 1, f)
        assert ok, term

    def test_grid_23(self):
        params = RationalParams(2, 3)
        bound = params.h + 2
        basis = monomial_basis(params, bound + 6 * params.h, bound, 3)
        for m in range(4):
            for n in range(4):
                for f in basis:
                    ok, term = commutator_check(params, m, n, f)
                    assert ok, (m, n, term)

    def test_basis_size(self):
        basis = monomial_basis(P21, 40, 4, 2)
        # variables: x, s1, s3, s4 -> C(4+2, 2) monomials of degree <= 2
        assert len(basis) == 15
