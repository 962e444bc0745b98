import pytest

from cubichodge.jets import JetPoly
from cubichodge.ptensors import PTensorTable, top_coefficient_value
from cubichodge.ratio import Q
from cubichodge.sigma import SigmaPoly
from cubichodge.theta import ThetaPoly

M = 12


@pytest.fixture(scope="module")
def table():
    return PTensorTable(M)


def sconst(c):
    return JetPoly.const(c, M)


class TestRow0:
    def test_p00_is_theta(self, table):
        assert table.row0(0) == ThetaPoly.theta(M)

    def test_p01(self, table):
        tp = table.row0(1)
        assert tp.degree == 2
        assert tp.coeff(2) == sconst(Q(1, 2)) and tp.coeff(1) == sconst(Q(-1, 2))

    def test_append_only(self, table):
        before = table.row0(2)
        table.ensure_row0(6)
        assert table.row0(2) == before


class TestPtilde:
    def test_p11_closed_form(self, table):
        s1 = SigmaPoly.s1()
        expect = ThetaPoly(M, [
            JetPoly.zero(M),
            JetPoly.from_sigma(SigmaPoly.const(Q(1, 8)) - s1 * Q(1, 12), M),
            JetPoly.from_sigma(SigmaPoly.const(Q(-3, 8)) + s1 * Q(1, 12), M),
            sconst(Q(1, 4)),
        ])
        assert table.ptilde(1, 1) == expect

    def test_p10_equals_p01(self, table):
        assert table.ptilde(1, 0) == table.row0(1)

    def test_symmetry_to_10(self, table):
        for i in range(11):
            for j in range(i, 11 - i):
                assert table.ptilde(i, j) == table.ptilde(j, i), (i, j)

    def test_degree_bound_to_10(self, table):
        for i in range(11):
            for j in range(11 - i):
                assert table.ptilde(i, j).degree <= i + j + 1

    def test_jet_free(self, table):
        for i in range(6):
            for j in range(6 - i):
                assert table.ptilde(i, j).max_jet_index() < 0

    def test_top_coefficients(self, table):
        for i in range(6):
            for j in range(6 - i):
                top = table.ptilde(i, j).coeff(i + j + 1).as_sigma()
                assert top == SigmaPoly.const(top_coefficient_value(i, j))

    def test_no_constant_row(self, table):
        for i in range(5):
            for j in range(5):
                assert not table.ptilde(i, j).coeff(0)


class TestDressed:
    def test_p00(self, table):
        assert table.p(0, 0) == ThetaPoly.theta(M)

    def test_p01(self, table):
        z1 = JetPoly.z(1, M)
        expect = table.row0(1) * z1
        assert table.p(0, 1) == expect
        assert table.p(0, 1).coeff(2) == z1 * Q(1, 2)

    def test_p11_single_dressing_term(self, table):
        z1 = JetPoly.z(1, M)
        assert table.p(1, 1) == table.ptilde(1, 1) * (z1 * z1)

    def test_jet_bound(self, table):
        for i in range(4):
            for j in range(4):
                assert table.p(i, j).max_jet_index() <= max(i, j, -1)


class TestXiOracle:
    def test_row0_against_shift_expansion(self, table):
        from cubichodge.oracles import row0_shift_oracle

        ok, detail = row0_shift_oracle(table, 5, 6)
        assert ok, detail
