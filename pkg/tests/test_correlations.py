"""Correlation tables: decomposition, coefficients, smooth restriction."""

import random
from fractions import Fraction
from math import lcm

import pytest

from ramsmooth import (
    BasicHypothesisError,
    CorrelationTable,
    SmoothContext,
    build_range_q,
    constant_one,
    correlation,
    euler_phi,
    expansion_tail_term,
    point_mass,
    ramanujan_modulus,
    ramanujan_sum,
    range_q_constant_one,
    range_q_ramanujan,
    smooth_up_to,
    spec_from_table,
    tail_split_identity,
)
from conftest import make_random_table


class TestCorrelation:
    def test_point_mass_reads_off_g(self):
        g = range_q_ramanujan(3, 5)
        for n0 in (1, 2, 7):
            for a in range(1, 20):
                assert correlation(point_mass(n0), g, 10, a) == g(n0 + a)

    def test_zero_function(self):
        f = spec_from_table("zero", "direct", {n: Fraction(0)
                                               for n in range(1, 21)})
        g = range_q_ramanujan(4, 6)
        assert all(correlation(f, g, 20, a) == 0 for a in range(1, 15))

    def test_all_ones(self):
        g = range_q_constant_one()
        assert correlation(constant_one(), g, 25, 7) == 25

    def test_range_must_fit_length(self):
        with pytest.raises(BasicHypothesisError):
            correlation(constant_one(), range_q_ramanujan(5, 5), 4, 1)
        with pytest.raises(BasicHypothesisError):
            CorrelationTable(constant_one(), range_q_ramanujan(5, 5), 4)


class TestTable:
    def test_periodicity_audited_and_visible(self):
        table = make_random_table(random.Random(7), 0)
        P = table.period
        for a in range(1, P + 1):
            assert table.values[a - 1] == table.values[a + P - 1]
            assert table.value(a) == correlation(table.f_spec, table.g,
                                                 table.N, a)

    def test_decomposition_identity_random(self):
        rng = random.Random(11)
        for tag in range(6):
            table = make_random_table(rng, tag, max_N=40,
                                      q_choices=(1, 2, 3, 4, 5, 6))
            for a in range(1, table.period + 1):
                assert table.decomposition_rhs(a) == table.value(a)

    def test_decomposition_identity_catalog(self):
        for q0, Q, N in ((3, 5, 20), (4, 6, 12), (6, 6, 30)):
            table = CorrelationTable(point_mass(2), range_q_ramanujan(q0, Q), N)
            for a in range(1, table.period + 1):
                assert table.decomposition_rhs(a) == table.value(a)

    def test_constant_g_decomposition(self):
        table = CorrelationTable(point_mass(3), range_q_constant_one(), 10)
        assert table.period == 1
        assert table.decomposition_rhs(1) == table.value(1) == 1

    def test_transform_window_matches_lazy(self):
        table = make_random_table(random.Random(3), 1, max_N=30,
                                  q_choices=(2, 3, 4))
        window = table.transform_window(80)
        for d in range(1, 81):
            assert window[d - 1] == table.transform_value(d)


class TestCoefficients:
    def test_beyond_range_vanishes(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        for ell in (6, 7, 50):
            assert table.coefficient(ell) == 0

    def test_counterexample_coefficient(self):
        q0, n0 = 3, 2
        table = CorrelationTable(point_mass(n0), range_q_ramanujan(q0, 5), 10)
        assert table.coefficient(q0) == \
            Fraction(ramanujan_sum(q0, n0), euler_phi(q0))

    def test_three_way_agreement_random(self):
        rng = random.Random(23)
        for tag in range(5):
            table = make_random_table(rng, tag, max_N=30,
                                      q_choices=(1, 2, 3, 4, 5, 6))
            for ell in range(1, table.g.Q + 3):
                formula = table.coefficient(ell)
                assert formula == table.carmichael_mean(ell)
                assert formula == table.transform_side_coefficient(ell)

    def test_carmichael_orthogonality_grid(self):
        # mean over a full period of c_l(a) c_q(n+a) collapses to
        # [q == l] c_l(n); exhaustive on l, q <= 12, n <= 24
        for ell in range(1, 13):
            for q in range(1, 13):
                L = lcm(ell, q)
                for n in range(0, 25):
                    total = sum(ramanujan_sum(ell, a) * ramanujan_sum(q, n + a)
                                for a in range(1, L + 1))
                    expected = L * ramanujan_sum(ell, n) if q == ell else 0
                    assert total == expected, (ell, q, n)


class TestSmoothRestriction:
    def test_both_paths_agree(self):
        table = make_random_table(random.Random(5), 2, max_N=30,
                                  q_choices=(2, 3, 4, 5, 6))
        for V in (2, 3, 5):
            ctx = SmoothContext(V)
            for a in range(1, 80):
                assert table.smooth_restricted(ctx, a) == \
                    table.smooth_restricted_switch(ctx, a)

    def test_first_value_is_transform_at_one(self):
        table = make_random_table(random.Random(9), 3)
        ctx = SmoothContext(3)
        assert table.smooth_restricted(ctx, 1) == table.transform_value(1)

    def test_transparent_on_smooth_shifts(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 6), 12)
        ctx = SmoothContext(5)
        for a in smooth_up_to(ctx, 60):
            assert table.smooth_restricted(ctx, a) == table.value(a)

    def test_sifted_prime_invariance(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 6), 12)
        ctx = SmoothContext(3)
        for a in range(1, 40):
            base = table.smooth_restricted(ctx, a)
            for p in (5, 7, 11):
                assert table.smooth_restricted(ctx, a * p) == base

    def test_smooth_expansion_certified(self):
        # the restricted correlation satisfies its expansion within radii
        q0 = 3
        table = CorrelationTable(point_mass(2), range_q_ramanujan(q0, 5), 10)
        ctx = SmoothContext(2)
        L, X = 1 << 10, 1 << 14
        ells = smooth_up_to(ctx, L)
        for a in smooth_up_to(ctx, 32):
            total_center = Fraction(0)
            total_radius = Fraction(0)
            for ell in ells:
                win = table.smooth_wintner(ctx, ell, X)
                c = ramanujan_sum(ell, a)
                total_center += win.center * c
                total_radius += win.radius * abs(c)
            # index tail over smooth ell > L
            from ramsmooth.smooth import best_tail_params, smooth_tail_bound
            bound = (2 ** ctx.prime_count) * table.max_abs() * ctx.smooth_harmonic
            tp = best_tail_params(ctx, Fraction(0), L)
            total_radius += a * bound * smooth_tail_bound(
                ctx, Fraction(0), tp.delta, L)
            reference = table.smooth_restricted(ctx, a)
            assert abs(reference - total_center) <= total_radius


class TestSmoothWintner:
    def test_off_support_term_free(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        got = table.smooth_wintner(SmoothContext(2), 3, 1 << 12)
        assert got.is_exact and got.center == 0

    def test_finite_support_exact(self):
        # f = c_3 against g = c_3 over a full period: C = period * c_3,
        # transform supported on divisors of 3
        table = CorrelationTable(ramanujan_modulus(3), range_q_ramanujan(3, 3), 6)
        ctx = SmoothContext(5)
        got = table.smooth_wintner(ctx, 3, 1 << 10, transform_support=3)
        assert got.is_exact and got.center == 6  # 6 * (c_3)'(3)/3 = 6*3/3... C'(3)=18
        got1 = table.smooth_wintner(ctx, 1, 1 << 10, transform_support=3)
        assert got1.is_exact
        assert got1.center == table.transform_value(1) + \
            table.transform_value(3) / 3

    def test_bad_support_claim_refuted(self):
        table = CorrelationTable(ramanujan_modulus(3), range_q_ramanujan(3, 3), 6)
        with pytest.raises(ArithmeticError):
            table.smooth_wintner(SmoothContext(5), 1, 1 << 10,
                                 transform_support=1)


class TestFullSeriesEstimate:
    def test_tracks_formula_on_counterexample(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        est = table.full_series_estimate(3, 400_000)
        target = table.coefficient(3)
        assert not est.certified
        assert abs(est.value.center - target) <= est.value.radius

    def test_window_validation(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        with pytest.raises(ValueError):
            table.full_series_estimate(3, 10)


class TestTailSplit:
    def test_zero_function_trivial(self):
        f = spec_from_table("zero", "direct",
                            {n: Fraction(0) for n in range(1, 13)})
        table = CorrelationTable(f, range_q_ramanujan(3, 5), 12)
        rec = tail_split_identity(table, SmoothContext(2), 3, 1 << 10)
        assert rec.smooth_side.center == 0 and rec.formula == 0

    def test_nonsmooth_index_term_free(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        rec = tail_split_identity(table, SmoothContext(2), 3, 1 << 12,
                                  estimate_cutoff=200_000)
        assert rec.smooth_side == rec.lhs
        assert rec.smooth_side.is_exact and rec.smooth_side.center == 0
        assert rec.consistent

    def test_smooth_index_split(self):
        table = CorrelationTable(point_mass(2), range_q_ramanujan(3, 5), 10)
        rec = tail_split_identity(table, SmoothContext(2), 2, 1 << 14,
                                  estimate_cutoff=200_000)
        assert rec.consistent


class TestExpansionTailTerm:
    def test_finite_support_vanishes(self):
        table = CorrelationTable(ramanujan_modulus(3), range_q_ramanujan(3, 3), 6)
        term = expansion_tail_term(table, SmoothContext(5), a=1, L=16,
                                   X=1 << 12, transform_support=3)
        assert term.value.center == 0 and term.value.radius == 0

    def test_reproduces_counterexample_defect(self):
        # the correction term must equal (expansion rhs) - (true value),
        # which at the canonical shift is mu^2/phi - phi
        from ramsmooth import reef_rhs
        q0, n0 = 3, 2
        table = CorrelationTable(point_mass(n0), range_q_ramanujan(q0, q0),
                                 q0 + n0)
        ctx = SmoothContext(q0)
        expected = reef_rhs(table, 1) - table.value(1)
        assert expected == Fraction(1, 2) - 2
        term = expansion_tail_term(table, ctx, a=1, L=1 << 16, X=1 << 19)
        assert term.value.center == expected
        assert term.value.radius < Fraction(1, 4)
        assert term.value.excludes(0)

    def test_window_partition(self):
        # remainders at V versus V' differ by the smooth-window mass:
        # nonsmooth_V(ell) - nonsmooth_V'(ell) = smoothwin_V'(ell) - smoothwin_V(ell),
        # checked against a direct enumeration of the window terms
        table = CorrelationTable(point_mass(2), range_q_ramanujan(5, 5), 10)
        ctx2, ctx3 = SmoothContext(2), SmoothContext(3)
        X = 1 << 14
        for ell in (1, 2, 4):
            lo = table.smooth_wintner(ctx2, ell, X)
            hi = table.smooth_wintner(ctx3, ell, X)
            window = hi - lo
            direct = Fraction(0)
            for d in smooth_up_to(ctx3, X):
                if d % ell == 0 and not ctx2.is_smooth(d):
                    direct += table.transform_value(d) / d
            assert window.contains(direct)
