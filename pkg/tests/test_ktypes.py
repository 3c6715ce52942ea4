from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistor_spectra.ktypes import (BadDimensionError, Direction,
                                    InvalidWeightError, KType, Params,
                                    case1_partners, dirac_eigenvalue,
                                    enumerate_ktypes, interface_square,
                                    make_ktype, neighbor_of, neighbors,
                                    twistor_tt_eigenvalue)

P4 = Params(4, Q(1, 2))
P6 = Params(6, Q(1, 2))


class TestParams:
    def test_odd_dimension_rejected(self):
        with pytest.raises(BadDimensionError):
            Params(5, Q(1))

    def test_small_dimension_rejected(self):
        with pytest.raises(BadDimensionError):
            Params(2, Q(1))

    def test_r_parsed_exactly(self):
        assert Params(4, "7/3").r == Q(7, 3)

    def test_lattices(self):
        assert P4.on_f_lattice(Q(3, 2)) and not P4.on_f_lattice(Q(1))
        p_int = Params(4, Q(1), "int")
        assert p_int.on_f_lattice(Q(-2)) and not p_int.on_f_lattice(Q(1, 2))


class TestMakeKType:
    def test_multiplicity_two_label(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(1, 2), 0, 1)
        assert kt.multiplicity == 2

    def test_multiplicity_one_label(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(3, 2), 1, -1)
        assert kt.multiplicity == 1

    def test_j_below_lattice_bottom(self):
        with pytest.raises(InvalidWeightError):
            make_ktype(P4, 1, Q(1, 2), Q(1, 2), 1, 1)

    def test_j_off_lattice(self):
        with pytest.raises(InvalidWeightError):
            make_ktype(P4, 1, Q(1, 2), Q(1), 0, 1)

    def test_f_off_lattice(self):
        with pytest.raises(InvalidWeightError):
            make_ktype(P4, 1, Q(1), Q(1, 2), 0, 1)

    def test_json_round_trip(self):
        kt = make_ktype(P4, -1, Q(-3, 2), Q(5, 2), 1, -1)
        assert KType.from_json(kt.to_json()) == kt


class TestEigenvalues:
    def test_dirac_closed_form(self):
        assert dirac_eigenvalue(P4, Q(1, 2), 1) == Q(3, 2)
        assert dirac_eigenvalue(P4, Q(1, 2), -1) == Q(-3, 2)
        assert dirac_eigenvalue(P6, Q(3, 2), 1) == Q(7, 2)

    def test_dirac_unit_steps(self):
        js = [Q(1, 2) + k for k in range(6)]
        mags = [dirac_eigenvalue(P4, j, 1) for j in js]
        assert all(b - a == 1 for a, b in zip(mags, mags[1:]))

    def test_tt_vanishes_exactly_at_bottom(self):
        assert twistor_tt_eigenvalue(P4, Q(1, 2)) == 0
        assert twistor_tt_eigenvalue(P6, Q(1, 2)) == 0
        for j in (Q(3, 2), Q(5, 2), Q(7, 2)):
            assert twistor_tt_eigenvalue(P4, j) > 0

    def test_tt_matches_dirac_square_chain(self):
        # independent route: lambda = ((m-1)/m)(D^2 - m^2/4) with m = n-1
        # and D the sphere Dirac eigenvalue
        for params in (P4, P6):
            m = params.n - 1
            for j in (Q(1, 2), Q(3, 2), Q(5, 2), Q(9, 2)):
                D = dirac_eigenvalue(params, j, 1)
                want = Q(m - 1, m) * (D * D - Q(m * m, 4))
                assert twistor_tt_eigenvalue(params, j) == want

    def test_tt_frozen_value(self):
        assert twistor_tt_eigenvalue(P4, Q(3, 2)) == Q(8, 3)


class TestNeighbors:
    def test_interior_center_has_six(self):
        kt = make_ktype(P4, 1, Q(3, 2), Q(5, 2), 0, 1)
        got = neighbors(kt)
        assert len(got) == 6
        labels = {(nb.f, nb.j, nb.eps) for _, nb in got}
        assert (Q(5, 2), Q(3, 2), 1) in labels
        assert (Q(1, 2), Q(5, 2), -1) in labels
        assert all(nb.multiplicity == kt.multiplicity for _, nb in got)

    def test_bottom_row_absent_at_boundary(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(1, 2), 0, 1)
        got = neighbors(kt)
        assert len(got) == 4
        assert all(d.dj != -1 for d, _ in got)

    def test_middle_row_flips_eps_only(self):
        kt = make_ktype(P4, -1, Q(1, 2), Q(3, 2), 1, 1)
        for d, nb in neighbors(kt):
            if d.dj == 0:
                assert nb.eps == -kt.eps and nb.j == kt.j
            else:
                assert nb.eps == kt.eps and nb.j == kt.j + d.dj
            assert nb.q == kt.q and nb.xi == kt.xi

    @given(f2=st.integers(-4, 4), jstep=st.integers(0, 4), q=st.integers(0, 1),
           eps=st.sampled_from((-1, 1)), xi=st.sampled_from((-1, 1)))
    def test_symmetry_with_opposite_directions(self, f2, jstep, q, eps, xi):
        kt = KType(xi, Q(2 * f2 + 1, 2), Q(1, 2) + q + jstep, q, eps)
        for d, nb in neighbors(kt):
            back = Direction(-d.df, -d.dj)
            assert neighbor_of(nb, back) == kt


class TestInterfaceSquare:
    def test_boundary_center_rejected(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(1, 2), 0, 1)
        with pytest.raises(InvalidWeightError):
            interface_square(kt)

    def test_corners(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(3, 2), 0, 1)
        sq = interface_square(kt)
        assert (sq.alpha2.f, sq.alpha2.j, sq.alpha2.q) == (Q(3, 2), Q(5, 2), 0)
        assert (sq.beta1.f, sq.beta1.j, sq.beta1.q) == (Q(3, 2), Q(3, 2), 1)
        assert (sq.beta2.f, sq.beta2.j, sq.beta2.q) == (Q(1, 2), Q(5, 2), 1)
        assert sq.alpha1.multiplicity == sq.alpha2.multiplicity == 2
        assert sq.beta1.multiplicity == sq.beta2.multiplicity == 1

    def test_case1_partners(self):
        kt = make_ktype(P4, 1, Q(1, 2), Q(3, 2), 0, 1)
        partners = case1_partners(kt)
        assert {(df, b.f, b.q) for df, b in partners} == \
            {(1, Q(3, 2), 1), (-1, Q(-1, 2), 1)}
        assert case1_partners(make_ktype(P4, 1, Q(1, 2), Q(1, 2), 0, 1)) == []


class TestEnumeration:
    def test_deterministic_sorted_order(self):
        kinds = list(enumerate_ktypes(P4, Q(-3, 2), Q(3, 2), Q(5, 2)))
        assert kinds == sorted(kinds, key=KType.sort_key)
        assert kinds == list(enumerate_ktypes(P4, Q(-3, 2), Q(3, 2), Q(5, 2)))

    def test_counts(self):
        # f in {-1/2, 1/2}: q=0 has j in {1/2,3/2}, q=1 has j = 3/2; xi,eps = 4
        kinds = list(enumerate_ktypes(P4, Q(-1, 2), Q(1, 2), Q(3, 2)))
        assert len(kinds) == 2 * (2 + 1) * 4

    def test_integer_lattice(self):
        p_int = Params(4, Q(1), "int")
        kinds = list(enumerate_ktypes(p_int, Q(-1), Q(1), Q(3, 2), (0,), (1,), (1,)))
        assert {kt.f for kt in kinds} == {Q(-1), Q(0), Q(1)}
