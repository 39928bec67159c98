import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bunching import (
    Constant,
    Gaussian,
    MonomialZero,
    Sinc,
    derivative,
    evaluate,
    far_field_source_width,
    find_zeros,
    find_zeros_numeric,
)
from bunching.wavefunctions import classify_zero_order


def max_abs_on(wf, interval, samples=5001):
    xs = np.linspace(*interval, samples)
    return max(abs(evaluate(wf, float(x))) for x in xs)


class TestConstruction:
    def test_gaussian_rejects_bad_width(self):
        with pytest.raises(ValueError):
            Gaussian(0.0, 0.0)
        with pytest.raises(ValueError):
            Gaussian(-1.0, 0.0)

    def test_sinc_rejects_bad_width(self):
        with pytest.raises(ValueError):
            Sinc(-2.0, 0.0)

    def test_monomial_rejects_zero_prefactor_and_bad_order(self):
        with pytest.raises(ValueError):
            MonomialZero(0, 0.0, 1)
        with pytest.raises(ValueError):
            MonomialZero(1.0, 0.0, 0)
        with pytest.raises(ValueError):
            MonomialZero(1.0, 0.0, 1.5)

    def test_constant_rejects_zero(self):
        with pytest.raises(ValueError):
            Constant(0)


class TestEvaluate:
    def test_sinc_center_is_exactly_one(self):
        assert evaluate(Sinc(1.0, 0.0), 0.0) == 1.0 + 0j

    @pytest.mark.parametrize("m", [-3, -1, 1, 2, 5])
    def test_sinc_lattice_zeros(self, m):
        assert abs(evaluate(Sinc(1.0, 0.0), float(m))) < 1e-15

    def test_monomial_linear(self):
        assert evaluate(MonomialZero(1.0, 0.0, 1), 0.25) == 0.25

    def test_gaussian_peak_value(self):
        # direct evaluation of the printed closed form
        assert evaluate(Gaussian(1.0, 0.0), 0.0).real == pytest.approx(
            math.pi**-0.25, rel=1e-15
        )
        assert math.pi**-0.25 == pytest.approx(0.7511, abs=5e-5)

    @given(
        d=st.floats(-50, 50, allow_nan=False),
        xi=st.floats(0.3, 3.0),
        c=st.floats(-5, 5),
    )
    @settings(max_examples=200)
    def test_sinc_mirror_symmetry(self, d, xi, c):
        wf = Sinc(xi, c)
        left, right = evaluate(wf, c - d), evaluate(wf, c + d)
        assert left.real == pytest.approx(right.real, abs=1e-14, rel=1e-14)

    @given(
        d=st.floats(1e-6, 10.0),
        n=st.integers(1, 6),
        phase=st.floats(0, 2 * math.pi),
    )
    @settings(max_examples=200)
    def test_monomial_parity(self, d, n, phase):
        c = complex(math.cos(phase), math.sin(phase))
        wf = MonomialZero(c, 0.5, n)
        plus, minus = evaluate(wf, 0.5 + d), evaluate(wf, 0.5 - d)
        expect = (-1) ** n * minus
        assert plus == pytest.approx(expect, rel=1e-14)

    @given(
        x=st.floats(-100, 100, allow_nan=False, allow_infinity=False),
        kind=st.integers(0, 3),
    )
    @settings(max_examples=300)
    def test_finite_on_finite_input(self, x, kind):
        wf = [Gaussian(1.3, 0.7), Sinc(0.8, -1.1), MonomialZero(2j, 0.3, 3), Constant(1 + 1j)][kind]
        v = evaluate(wf, x)
        assert math.isfinite(v.real) and math.isfinite(v.imag)


class TestDerivative:
    @pytest.mark.parametrize(
        "wf",
        [
            Gaussian(1.2, 0.4),
            Sinc(0.9, -0.3),
            MonomialZero(1 - 2j, 0.2, 3),
            MonomialZero(0.5, -1.0, 1),
            Constant(2j),
        ],
    )
    @pytest.mark.parametrize("x", [-1.7, 0.0, 0.2, 2.5])
    def test_matches_central_difference(self, wf, x):
        h = 1e-6
        fd = (evaluate(wf, x + h) - evaluate(wf, x - h)) / (2 * h)
        assert derivative(wf, x) == pytest.approx(fd, rel=1e-8, abs=1e-10)

    def test_sinc_derivative_at_center_is_zero(self):
        assert derivative(Sinc(1.0, 0.3), 0.3) == 0


class TestFarFieldWidth:
    def test_values(self):
        assert far_field_source_width(1000, 100, 1) == pytest.approx(10.0)
        assert far_field_source_width(2 * math.pi, 2 * math.pi, 1) == pytest.approx(1.0)
        assert far_field_source_width(1, 1, 2) == pytest.approx(0.5)

    @pytest.mark.parametrize("bad", [(0, 1, 1), (1, -2, 1), (1, 1, 0)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(ValueError):
            far_field_source_width(*bad)


class TestFindZeros:
    def test_sinc_lattice_in_interval(self):
        zs = find_zeros(Sinc(1.0, 0.3), (-3, 3))
        assert [z.location for z in zs] == pytest.approx([-2.7, -1.7, -0.7, 1.3, 2.3])
        assert all(z.order == 1 for z in zs)

    def test_gaussian_has_none(self):
        assert find_zeros(Gaussian(1.0, 0.0), (-10, 10)) == []

    def test_constant_has_none(self):
        assert find_zeros(Constant(3.0), (-10, 10)) == []

    def test_monomial_zero_in_interval(self):
        zs = find_zeros(MonomialZero(1.0, 1.5, 2), (0, 2))
        assert len(zs) == 1 and zs[0].location == 1.5 and zs[0].order == 2

    def test_monomial_zero_outside_interval(self):
        assert find_zeros(MonomialZero(1.0, 5.0, 1), (0, 2)) == []

    def test_rejects_bad_tol_and_interval(self):
        with pytest.raises(ValueError):
            find_zeros(Sinc(1.0, 0.0), (-1, 1), tol=0.0)
        with pytest.raises(ValueError):
            find_zeros(Sinc(1.0, 0.0), (1, 1))

    def test_zero_certification(self):
        for wf, iv in [
            (Sinc(0.7, 0.13), (-4, 4)),
            (MonomialZero(2 - 1j, 0.4, 3), (-1, 1)),
        ]:
            peak = max_abs_on(wf, iv)
            for z in find_zeros(wf, iv):
                assert abs(evaluate(wf, z.location)) <= 1e-12 * peak

    def test_wf_index_tagging(self):
        zs = find_zeros(Sinc(1.0, 0.0), (-2, 2), wf_index=2)
        assert all(z.wf_index == 2 for z in zs)


class TestNumericZeroAgreement:
    @pytest.mark.parametrize(
        "wf,iv",
        [
            (Sinc(1.0, 0.3), (-3, 3)),
            (Sinc(0.55, -1.2), (-2.5, 2.5)),
            (MonomialZero(1.0, 1.5, 2), (0, 2)),
            (MonomialZero(-2j, -0.25, 3), (-1, 1)),
            (MonomialZero(0.7, 0.0, 1), (-1, 1)),
        ],
    )
    def test_matches_analytic_path(self, wf, iv):
        tol = 1e-12
        analytic = find_zeros(wf, iv, tol)
        numeric = find_zeros_numeric(wf, iv, tol)
        assert len(analytic) == len(numeric)
        for za, zn in zip(analytic, numeric):
            assert abs(za.location - zn.location) <= max(tol, 1e-11)
            assert za.order == zn.order

    def test_gaussian_finds_nothing(self):
        assert find_zeros_numeric(Gaussian(1.0, 0.2), (-5, 5), 1e-12) == []

    def test_constant_finds_nothing(self):
        assert find_zeros_numeric(Constant(1 + 1j), (-5, 5), 1e-12) == []


class TestZeroOrderClassification:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_monomial_orders(self, n):
        assert classify_zero_order(MonomialZero(1.5, 0.3, n), 0.3) == n

    def test_sinc_zero_is_simple(self):
        assert classify_zero_order(Sinc(1.0, 0.0), 2.0) == 1

    def test_non_zero_rejected(self):
        with pytest.raises(ValueError):
            classify_zero_order(Gaussian(1.0, 0.0), 0.0)
