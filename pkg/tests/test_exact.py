from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistor_spectra.exact import (GammaPoleError, GammaQuotient,
                                   NonCommensurableError, Phase,
                                   UncancelledPoleError, evaluate_numeric,
                                   format_rational, pochhammer, ratio,
                                   ratio_tagged, rational, reduce_exact)

G = GammaQuotient.single


class TestPhase:
    def test_multiplication_wraps_mod_4(self):
        assert (Phase(3) * Phase(2)).exponent == 1
        assert (Phase(1) * Phase(1)).exponent == 2
        assert (Phase(2) / Phase(3)).exponent == 3

    def test_square_of_i_folds_to_minus_one(self):
        value, residual = Phase(2).fold(Q(5))
        assert value == -5 and residual == Phase(0)

    def test_fold_keeps_odd_part(self):
        value, residual = Phase(3).fold(Q(2))
        assert value == -2 and residual == Phase(1)

    def test_str(self):
        assert [str(Phase(k)) for k in range(4)] == ["1", "i", "-1", "-i"]


class TestRationalHelpers:
    def test_parse_forms(self):
        assert rational("3/2") == Q(3, 2)
        assert rational("-7") == -7
        assert rational(Q(1, 3)) == Q(1, 3)

    def test_format(self):
        assert format_rational(Q(-3, 2)) == "-3/2"
        assert format_rational(Q(4, 2)) == "2"

    def test_division_by_zero_is_an_error(self):
        with pytest.raises(ZeroDivisionError):
            rational("1/0")


class TestRatio:
    def test_two_functional_equation_steps(self):
        value, phase = ratio(G("7/2"), G("3/2"))
        assert value == Q(15, 4) and phase == Phase(0)

    def test_identical_pole_factors_cancel(self):
        value, _ = ratio(G(-2), G(-2))
        assert value == 1

    def test_pole_pair_cancels_through_functional_equation(self):
        # Gamma(0)/Gamma(-1) -> -1 via Gamma(0) = (-1) Gamma(-1)
        value, _ = ratio(G(0), G(-1))
        assert value == -1

    def test_net_zero_reduces_to_exact_zero(self):
        value, _ = ratio(G(1), G(0))
        assert value == 0
        assert ratio_tagged(G(1), G(0)).kind == "zero"

    def test_net_pole_raises(self):
        with pytest.raises(UncancelledPoleError):
            ratio(G(0), G(1))
        assert ratio_tagged(G(0), G(1)).kind == "pole"

    def test_non_integer_spacing_rejected(self):
        with pytest.raises(NonCommensurableError):
            ratio(G("1/3"), G("1/2"))

    def test_spectral_quotient_step(self):
        # hand reduction: the four-gamma quotients at (7/2, 7/2) and
        # (5/2, 5/2) with r = 3/2, s = +1 share three factor classes and
        # leave Gamma(9/2)Gamma(5/2)/Gamma(7/2)^2 = 7/5
        top = GammaQuotient.from_args(["9/2", "3/2"], ["7/2", "-1/2"], Q(1, 2))
        bottom = GammaQuotient.from_args(["7/2", "3/2"], ["5/2", "-1/2"], Q(1, 2))
        value, _ = ratio(top, bottom)
        assert value == Q(7, 5)

    def test_prefactor_and_phase_carry_through(self):
        a = G("5/2").scale(Q(3), Phase(1))
        b = G("1/2").scale(Q(2), Phase(3))
        value, phase = ratio(a, b)
        assert value == Q(3, 2) * Q(3, 2) * Q(1, 2) and phase == Phase(2)

    @given(x=st.fractions(min_value=-10, max_value=10, max_denominator=12),
           m=st.integers(min_value=0, max_value=20))
    def test_pochhammer_identity(self, x, m):
        value, _ = ratio(G(x + m), G(x))
        assert value == pochhammer(x, m)

    @given(x=st.fractions(min_value=-6, max_value=6, max_denominator=8),
           y=st.fractions(min_value=-6, max_value=6, max_denominator=8),
           ka=st.integers(0, 8), kb=st.integers(0, 8), kc=st.integers(0, 8),
           la=st.integers(0, 8), lb=st.integers(0, 8), lc=st.integers(0, 8))
    def test_ratio_is_multiplicative(self, x, y, ka, kb, kc, la, lb, lc):
        a = G(x + ka) * G(y + la)
        b = G(x + kb) * G(y + lb)
        c = G(x + kc) * G(y + lc)
        t_ab, t_bc, t_ac = ratio_tagged(a, b), ratio_tagged(b, c), ratio_tagged(a, c)
        if all(t.kind == "finite" for t in (t_ab, t_bc, t_ac)):
            assert t_ab.value * t_bc.value == t_ac.value
        # net vanishing orders telescope even through poles and zeros
        def signed(t):
            return {"finite": 0, "zero": t.order, "pole": -t.order}[t.kind]
        assert signed(t_ab) + signed(t_bc) == signed(t_ac)


class TestGammaQuotient:
    def test_canonical_merge_and_flags(self):
        g = GammaQuotient(factors=[(Q(-3), 1), (Q(5, 2), 2), (Q(5, 2), -2), (Q(0), -1)])
        assert g.factors == ((Q(-3), 1), (Q(0), -1))
        assert g.is_pole and g.is_zero
        assert g.pole_arguments() == (Q(-3),)
        assert g.zero_arguments() == (Q(0),)

    def test_zero_prefactor_rejected(self):
        with pytest.raises(ValueError):
            GammaQuotient(prefactor=Q(0))

    def test_json_round_trip(self):
        g = GammaQuotient.from_args(["5/2"], ["1/2", "-3/2"], Q(-2, 3), Phase(1))
        assert GammaQuotient.from_json(g.to_json()) == g

    def test_reduce_exact(self):
        g = GammaQuotient.from_args(["9/2", "3"], ["5/2", "1"], Q(1, 7))
        out = reduce_exact(g)
        assert out.kind == "finite"
        assert out.value == Q(1, 7) * Q(7, 2) * Q(5, 2) * 2


class TestNumeric:
    def test_trivial_unit(self):
        g = GammaQuotient.from_args(["1/2", "1/2"], ["1/2", "1/2"])
        assert evaluate_numeric(g) == pytest.approx(1.0, rel=1e-12)

    def test_matches_exact_ratio(self):
        g = GammaQuotient.from_args(["7/2"], ["3/2"])
        assert evaluate_numeric(g) == pytest.approx(3.75, rel=1e-12)

    def test_negative_arguments(self):
        # Gamma(-1/2) = -2 sqrt(pi), Gamma(-3/2) = 4 sqrt(pi)/3: ratio -3/2...
        g = GammaQuotient.from_args(["-1/2"], ["-3/2"])
        exact, _ = ratio(G("-1/2"), G("-3/2"))
        assert exact == Q(-3, 2)
        assert evaluate_numeric(g) == pytest.approx(-1.5, rel=1e-12)

    def test_pole_raises_with_argument(self):
        with pytest.raises(GammaPoleError) as err:
            evaluate_numeric(G(-4))
        assert err.value.argument == Q(-4)

    def test_formal_zero_evaluates_to_zero(self):
        assert evaluate_numeric(G(0, exp=-1)) == 0.0

    def test_odd_phase_returns_pair(self):
        g = G("3/2").scale(1, Phase(1)) / G("3/2")
        value, phase = evaluate_numeric(g)
        assert value == pytest.approx(1.0, rel=1e-12) and phase == Phase(1)

    def test_even_phase_folds_into_sign(self):
        g = (G("3/2") / G("3/2")).scale(1, Phase(2))
        assert evaluate_numeric(g) == pytest.approx(-1.0, rel=1e-12)

    @settings(max_examples=60)
    @given(x=st.fractions(min_value=Q(1, 4), max_value=8, max_denominator=8),
           k=st.integers(0, 10), m=st.integers(0, 10))
    def test_numeric_agrees_with_exact(self, x, k, m):
        a, b = G(x + k), G(x + m)
        exact, _ = ratio(a, b)
        approx = evaluate_numeric(a / b)
        assert approx == pytest.approx(float(exact), rel=1e-10)
