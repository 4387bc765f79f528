import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpnqrng import (
    AdcSpec,
    AnalogTrace,
    QuantizedTrace,
    analytic_min_entropy,
    bin_probability,
    code_probabilities,
    empirical_min_entropy,
    forward_variance,
    gaussian_stream,
    invert_variance,
    monte_carlo_code_histogram,
    p_boundary,
    p_center,
    phase_variance,
    quantize,
    quantum_variance_from_measurement,
)
from lpnqrng.entropy import boundary_code
from lpnqrng.errors import (
    ClassicalExceedsMeasuredError,
    EmptyTraceError,
    InvalidBinError,
    InvalidParameterError,
    NonPositiveVarianceError,
    VarianceOutOfRangeError,
)
from lpnqrng.rng import raw_stream

TWO_PI = 2.0 * math.pi

# brute-force Monte Carlo oracle, 2^24 i.i.d. draws, frozen before the
# analytic implementation existed; amplitude = range - delta
MC_SIGMA2 = TWO_PI * 9.5e6 * 6.5e-9
MC_AMPLITUDE = 127.0 / 128.0
MC_P_CENTER = 0.00504154
MC_P_CENTER_SE = 1.73e-5
MC_P_BOUNDARY = 0.00480956
MC_P_BOUNDARY_SE = 1.69e-5


class TestPhaseVariance:
    def test_values(self):
        assert phase_variance(9.5e6, 6.5e-9) == pytest.approx(0.38798, abs=1e-5)
        assert phase_variance(9.5e6, 2.5e-9) == pytest.approx(0.14923, abs=1e-5)

    def test_zero_linewidth(self):
        assert phase_variance(0.0, 123.0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(InvalidParameterError):
            phase_variance(-1.0, 1.0)


class TestBinProbability:
    @pytest.mark.parametrize("sigma2", [0.05, 0.4, 3.0])
    def test_total_probability(self, sigma2, adc8, default_amplitude):
        total = sum(bin_probability(i, sigma2, default_amplitude, adc8)
                    for i in range(adc8.code_min, adc8.code_max + 1))
        assert abs(total - 1.0) < 1e-9

    def test_matches_vectorized_form(self, adc8, default_amplitude):
        probs = code_probabilities(0.4, default_amplitude, adc8)
        for i in (-128, -84, -3, 0, 5, 84, 127):
            assert probs[i - adc8.code_min] == pytest.approx(
                bin_probability(i, 0.4, default_amplitude, adc8), abs=1e-15)

    def test_interior_symmetry(self, adc8, default_amplitude):
        for i in range(1, 84):
            a = bin_probability(i, 0.4, default_amplitude, adc8)
            b = bin_probability(-i, 0.4, default_amplitude, adc8)
            assert abs(a - b) < 1e-12

    def test_center_arcsine_limit(self, adc8):
        # variance far above (2*pi)^2: the wrapped phase is uniform and
        # Q follows the arcsine law
        a = 1.0 - adc8.delta
        want = (2.0 / math.pi) * math.asin(adc8.delta / (2.0 * a))
        assert abs(bin_probability(0, 100.0, a, adc8) - want) < 1e-3
        assert want == pytest.approx(2.51e-3, abs=1e-5)

    def test_unreachable_bin_has_zero_mass(self, adc8, default_amplitude):
        assert bin_probability(-128, 0.4, default_amplitude, adc8) == 0.0

    def test_invalid_bin(self, adc8, default_amplitude):
        with pytest.raises(InvalidBinError):
            bin_probability(128, 0.4, default_amplitude, adc8)

    def test_non_positive_variance(self, adc8, default_amplitude):
        with pytest.raises(NonPositiveVarianceError):
            bin_probability(0, 0.0, default_amplitude, adc8)

    def test_clipping_amplitude_rejected(self, adc8):
        with pytest.raises(InvalidParameterError):
            bin_probability(0, 0.4, adc8.range, adc8)


class TestPCenterPBoundary:
    def test_small_variance_limits(self, adc8, default_amplitude):
        assert p_center(1e-6, default_amplitude, adc8) > 1.0 - 1e-6
        assert p_boundary(1e-6, default_amplitude, adc8) < 1e-12

    def test_center_against_frozen_monte_carlo(self, adc8):
        pc = p_center(MC_SIGMA2, MC_AMPLITUDE, adc8)
        assert abs(pc - MC_P_CENTER) < 3 * MC_P_CENTER_SE

    def test_boundary_against_frozen_monte_carlo(self, adc8):
        pr = p_boundary(MC_SIGMA2, MC_AMPLITUDE, adc8)
        assert abs(pr - MC_P_BOUNDARY) < 3 * MC_P_BOUNDARY_SE

    def test_boundary_arcsine_limit(self, adc8):
        a = 1.0 - adc8.delta
        chi = boundary_code(a, adc8) * adc8.delta
        want = 0.5 - math.asin((chi - adc8.delta / 2.0) / a) / math.pi
        assert abs(p_boundary(100.0, a, adc8) - want) < 1e-3
        assert want == pytest.approx(2.82e-2, abs=1e-4)

    def test_boundary_is_topmost_bin(self, adc8, default_amplitude):
        i_star = boundary_code(default_amplitude, adc8)
        assert i_star == 84
        assert p_boundary(0.4, default_amplitude, adc8) == pytest.approx(
            bin_probability(i_star, 0.4, default_amplitude, adc8), abs=1e-15)

    def test_boundary_code_clamps_at_code_max(self, adc8):
        # amplitude at the very top of the interval rounds to 2^(n-1),
        # which is clamped to the highest existing code
        a = adc8.range - adc8.delta / 2.0
        assert boundary_code(a, adc8) == adc8.code_max


class TestAnalyticMinEntropy:
    def test_operating_points(self, adc8, default_amplitude):
        h1 = analytic_min_entropy(phase_variance(9.5e6, 2.5e-9),
                                  default_amplitude, adc8).h_min
        h2 = analytic_min_entropy(phase_variance(9.5e6, 6.5e-9),
                                  default_amplitude, adc8).h_min
        assert h1 == pytest.approx(6.345898, abs=1e-5)
        assert h2 == pytest.approx(7.035110, abs=1e-5)

    def test_report_consistency(self, adc8, default_amplitude):
        rep = analytic_min_entropy(0.4, default_amplitude, adc8)
        assert rep.p_max == max(rep.p_c, rep.p_r)
        assert rep.h_min == -math.log2(rep.p_max)
        assert 0.0 <= rep.h_min <= adc8.bits
        assert rep.method == "analytic"

    def test_vanishing_variance_limit(self, adc8, default_amplitude):
        assert analytic_min_entropy(1e-6, default_amplitude, adc8).h_min < 1e-6

    def test_zero_variance_rejected(self, adc8, default_amplitude):
        with pytest.raises(NonPositiveVarianceError):
            analytic_min_entropy(0.0, default_amplitude, adc8)

    def test_product_invariance_exact(self, adc8, default_amplitude):
        for dv, tl in [(9.5e6, 6.5e-9), (9.5e6, 2.5e-9)]:
            h0 = analytic_min_entropy(phase_variance(dv, tl),
                                      default_amplitude, adc8).h_min
            for c in (2.0, 5.0, 10.0):
                h = analytic_min_entropy(phase_variance(dv * c, tl / c),
                                         default_amplitude, adc8).h_min
                assert h == h0

    def test_scale_invariance_in_amplitude_and_range(self, default_amplitude):
        # only delta/A enters, and powers of two rescale exactly
        base = analytic_min_entropy(0.4, default_amplitude, AdcSpec(8, 1.0))
        for scale in (2.0, 0.5):
            scaled = analytic_min_entropy(0.4, default_amplitude * scale,
                                          AdcSpec(8, scale))
            assert scaled.h_min == base.h_min

    def test_unimodal_in_variance(self, adc8, default_amplitude):
        grid = np.logspace(-3, 2, 200)
        h = np.array([analytic_min_entropy(s2, default_amplitude, adc8).h_min
                      for s2 in grid])
        d = np.diff(h)
        signs = np.sign(np.where(np.abs(d) < 1e-9, 0.0, d))
        nz = signs[signs != 0]
        assert int(np.sum(nz[1:] != nz[:-1])) == 1
        peak = int(np.argmax(h))
        assert 0 < peak < len(grid) - 1


class TestEmpiricalMinEntropy:
    def test_constant_trace(self, adc8):
        qt = QuantizedTrace(np.full(1000, 17, dtype=np.int16), adc8, 1e-10)
        rep = empirical_min_entropy(qt)
        assert rep.h_min == 0.0
        assert rep.p_max == 1.0
        assert rep.method == "empirical"

    def test_uniform_codes(self, adc8):
        raw = raw_stream(4242, 2**22)
        codes = ((raw & np.uint64(255)).astype(np.int64) - 128).astype(np.int16)
        qt = QuantizedTrace(codes, adc8, 1e-10)
        assert empirical_min_entropy(qt).h_min == pytest.approx(8.0, abs=0.05)

    def test_against_analytic(self, adc8, default_amplitude):
        sigma2 = phase_variance(9.5e6, 6.5e-9)
        theta = gaussian_stream(777, 2**22) * math.sqrt(sigma2)
        trace = AnalogTrace(default_amplitude * np.sin(theta), 1e-10, "quantum")
        h_emp = empirical_min_entropy(quantize(trace, adc8)).h_min
        h_ana = analytic_min_entropy(sigma2, default_amplitude, adc8).h_min
        assert abs(h_emp - h_ana) <= 0.05

    def test_boundary_frequency_reported(self, adc8):
        codes = np.array([0, 0, 84, 84, 84, -84], dtype=np.int16)
        rep = empirical_min_entropy(QuantizedTrace(codes, adc8, 1e-10))
        assert rep.p_r == pytest.approx(0.5)  # topmost occupied code is 84
        assert rep.p_c == pytest.approx(2.0 / 6.0)

    def test_empty_trace(self, adc8):
        with pytest.raises(EmptyTraceError):
            empirical_min_entropy(QuantizedTrace(np.empty(0, np.int16), adc8, 1.0))


class TestMonteCarloHistogram:
    def test_total_and_determinism(self, adc8, default_amplitude):
        c1 = monte_carlo_code_histogram(0.4, default_amplitude, adc8, 10_000, 3)
        c2 = monte_carlo_code_histogram(0.4, default_amplitude, adc8, 10_000, 3)
        assert c1.sum() == 10_000
        assert np.array_equal(c1, c2)

    def test_respects_support(self, adc8, default_amplitude):
        counts = monte_carlo_code_histogram(3.0, default_amplitude, adc8, 10_000, 9)
        occupied = np.flatnonzero(counts) + adc8.code_min
        top = boundary_code(default_amplitude, adc8)
        assert occupied.min() >= -top and occupied.max() <= top


class TestVarianceRelations:
    def test_forward_values(self):
        assert forward_variance(0.5, 1.0) == pytest.approx(0.316060, abs=1e-6)
        assert forward_variance(0.0, 2.0) == 0.0
        assert forward_variance(400.0, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_invert_values(self):
        assert invert_variance(0.316060, 1.0) == pytest.approx(0.5, abs=1e-6)
        assert invert_variance(0.0, 2.0) == 0.0

    def test_invert_domain(self):
        with pytest.raises(VarianceOutOfRangeError):
            invert_variance(0.5, 1.0)

    @given(st.floats(min_value=1e-4, max_value=5.0),
           st.sampled_from([0.5, 1.0, 2.0]))
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, sigma2, amplitude):
        rt = invert_variance(forward_variance(sigma2, amplitude), amplitude)
        assert abs(rt - sigma2) < 1e-12

    def test_measurement_subtraction(self):
        assert quantum_variance_from_measurement(0.5, 0.1) == pytest.approx(0.4)
        assert quantum_variance_from_measurement(0.3, 0.3) == 0.0
        with pytest.raises(ClassicalExceedsMeasuredError):
            quantum_variance_from_measurement(0.1, 0.2)
