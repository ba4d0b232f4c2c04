import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pthroots import binomial, compositions, series_coefficients, stirling_first_kind


class TestBinomial:
    @pytest.mark.parametrize("n,k,want", [(5, 0, 1), (4, 2, 6), (3, 5, 0), (0, 0, 1)])
    def test_examples(self, n, k, want):
        assert binomial(n, k) == want

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_matches_math_comb(self, n, k):
        want = math.comb(n, k) if k <= n else 0
        assert binomial(n, k) == want

    @given(st.integers(1, 40), st.integers(1, 40))
    def test_pascal_rule(self, n, k):
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


class TestCompositions:
    @given(st.integers(0, 8), st.integers(1, 4))
    def test_count_is_stars_and_bars(self, total, parts):
        combos = list(compositions(total, parts))
        assert len(combos) == math.comb(total + parts - 1, parts - 1)
        assert all(sum(c) == total and len(c) == parts for c in combos)
        assert len(set(combos)) == len(combos)

    def test_zero_parts(self):
        assert list(compositions(0, 0)) == [()]
        assert list(compositions(3, 0)) == []


class TestStirlingFirstKind:
    def test_signed_values(self):
        t = stirling_first_kind(3)
        assert t.value(1, 1) == 1
        assert t.value(2, 1) == -1
        assert t.value(3, 1) == 2
        assert t.value(3, 2) == -3

    def test_base_cases(self):
        t = stirling_first_kind(6)
        assert t.value(0, 0) == 1
        for k in range(1, 7):
            assert t.value(k, 0) == 0
            assert t.value(k, k) == 1

    def test_recurrence_everywhere(self):
        t = stirling_first_kind(12)
        for k in range(12):
            for l in range(k + 2):
                assert t.value(k + 1, l) == t.value(k, l - 1) - k * t.value(k, l)

    def test_falling_factorial_expansion(self):
        # x(x-1)(x-2)(x-3) evaluated through the table at a few points
        t = stirling_first_kind(4)
        for x in (-2, 1, 3, 7):
            direct = x * (x - 1) * (x - 2) * (x - 3)
            via_table = sum(t.value(4, l) * x**l for l in range(5))
            assert direct == via_table

    def test_row_sums_vanish(self):
        t = stirling_first_kind(10)
        for k in range(2, 11):
            assert sum(t.value(k, l) for l in range(k + 1)) == 0

    def test_overflow_guard(self):
        with pytest.raises(ValueError):
            stirling_first_kind(31)

    def test_out_of_triangle_reads(self):
        t = stirling_first_kind(3)
        assert t.value(2, 3) == 0
        with pytest.raises(IndexError):
            t.value(4, 0)


class TestSeriesCoefficients:
    def test_square_root_values(self):
        b = series_coefficients(2, 4).terms
        assert b[0] == 1.0
        assert b[1] == pytest.approx(-0.5)
        assert b[2] == pytest.approx(-1 / 8)
        assert b[3] == pytest.approx(-1 / 16)

    def test_cube_root_first_term(self):
        assert series_coefficients(3, 2).terms[1] == pytest.approx(-1 / 3)

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 7])
    def test_leading_one_and_negativity(self, p):
        b = series_coefficients(p, 50).terms
        assert b[0] == 1.0
        assert np.all(b[1:] < 0)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_ratio_law(self, p):
        b = series_coefficients(p, 30).terms
        for n in range(1, 29):
            assert b[n + 1] / b[n] == pytest.approx((n - 1 / p) / (n + 1), rel=1e-14)

    def test_magnitudes_decrease(self):
        b = series_coefficients(4, 200).terms
        assert np.all(np.abs(b[2:]) < np.abs(b[1:-1]))

    def test_partial_sum_tends_to_zero(self):
        # sum b_n = (1-1)^(1/p) = 0; tail at N=10000 for p=2 stays tiny
        b = series_coefficients(2, 10000).terms
        assert abs(b.sum()) < 0.02

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            series_coefficients(1, 10)
        with pytest.raises(ValueError):
            series_coefficients(2, 0)
