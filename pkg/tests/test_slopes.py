"""Slope fitting and verdict tests."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mimodof import (
    Halfspace,
    InsufficientPoints,
    RateTrace,
    SlopeEstimate,
    fit_slope,
    region_from_halfspaces,
    verdict_report,
    verify_point,
)

LOG2_PER_DB = math.log2(10.0) / 10.0


def synthetic_trace(snr_db, slope1, offset1, slope2=0.0, offset2=0.0, stderr=0.0):
    x = [s * LOG2_PER_DB for s in snr_db]
    return RateTrace(
        snr_db=tuple(snr_db),
        rate1=tuple(slope1 * xi + offset1 for xi in x),
        stderr1=(stderr,) * len(x),
        rate2=tuple(slope2 * xi + offset2 for xi in x),
        stderr2=(stderr,) * len(x),
        trials=100,
        seed=0,
    )


class TestFit:
    def test_noiseless_line_recovered(self):
        trace = synthetic_trace((30, 40, 50, 60, 70), 2.0, 5.0)
        est = fit_slope(trace)
        assert est.d1_hat == pytest.approx(2.0, abs=1e-12)
        assert est.ci[0] == pytest.approx(0.0, abs=1e-9)
        assert est.snr_window == (40.0, 70.0)

    def test_flat_trace_gives_zero(self):
        trace = synthetic_trace((30, 40, 50, 60, 70), 0.0, 3.0)
        est = fit_slope(trace)
        assert est.d1_hat == pytest.approx(0.0, abs=1e-12)

    def test_both_users_fitted(self):
        trace = synthetic_trace((30, 40, 50, 60, 70), 1.0, 0.0, slope2=1.5, offset2=2.0)
        est = fit_slope(trace)
        assert est.d1_hat == pytest.approx(1.0, abs=1e-12)
        assert est.d2_hat == pytest.approx(1.5, abs=1e-12)

    def test_window_selects_top_points(self):
        # Kinked trace: slope 0 until 40 dB, then slope 1. A window of 3
        # sees only the steep part.
        snr = (30.0, 40.0, 50.0, 60.0, 70.0)
        x = [s * LOG2_PER_DB for s in snr]
        rates = (1.0, 1.0, *(1.0 + (xi - x[1]) for xi in x[2:]))
        trace = RateTrace(snr, rates, (0,) * 5, (0,) * 5, (0,) * 5, 10, 0)
        est = fit_slope(trace, window=3)
        assert est.d1_hat == pytest.approx(1.0, abs=1e-12)
        assert est.snr_window == (50.0, 70.0)

    def test_per_point_noise_inflates_ci(self):
        quiet = synthetic_trace((30, 40, 50, 60, 70), 1.0, 0.0, stderr=0.0)
        noisy = synthetic_trace((30, 40, 50, 60, 70), 1.0, 0.0, stderr=0.05)
        assert fit_slope(noisy).ci[0] > fit_slope(quiet).ci[0]

    def test_short_window_rejected(self):
        trace = synthetic_trace((30, 40, 50), 1.0, 0.0)
        with pytest.raises(InsufficientPoints):
            fit_slope(trace, window=2)
        short = synthetic_trace((30, 40), 1.0, 0.0)
        with pytest.raises(InsufficientPoints):
            fit_slope(short)

    @given(
        st.lists(st.integers(-50, 50), min_size=4, max_size=4),
        st.integers(-100, 100),
    )
    @settings(max_examples=200, deadline=None)
    def test_affine_invariance_exact(self, rates, shift):
        # Integer rates and shifts are exact in binary floating point, so
        # the fitted slope must not move at all.
        snr = (40.0, 50.0, 60.0, 70.0)
        base = [float(r) for r in rates]
        shifted = [float(r + shift) for r in rates]
        lo = min(min(base), min(shifted))
        base = [r - lo for r in base]
        shifted_trace = [r - lo for r in shifted]
        t1 = RateTrace(snr, base, (0,) * 4, (0,) * 4, (0,) * 4, 10, 0)
        t2 = RateTrace(snr, shifted_trace, (0,) * 4, (0,) * 4, (0,) * 4, 10, 0)
        assert fit_slope(t1).d1_hat == fit_slope(t2).d1_hat


class TestVerdicts:
    REGION = region_from_halfspaces([Halfspace(1, 1, 2)])

    def estimate(self, d1, d2):
        return SlopeEstimate(d1_hat=d1, d2_hat=d2, ci=(0.0, 0.0), snr_window=(40.0, 70.0))

    def test_three_verdicts(self):
        assert verify_point(self.estimate(0.5, 0.5), self.REGION) == "inside"
        assert verify_point(self.estimate(1.02, 0.99), self.REGION) == "boundary"
        assert verify_point(self.estimate(1.5, 1.0), self.REGION) == "outside"

    def test_origin_is_inside(self):
        assert verify_point(self.estimate(0.0, 0.0), self.REGION) == "inside"

    def test_tolerance_widens_boundary(self):
        est = self.estimate(1.2, 1.0)
        assert verify_point(est, self.REGION, tol=0.1) == "outside"
        assert verify_point(est, self.REGION, tol=0.3) == "boundary"

    def test_bad_tol_rejected(self):
        with pytest.raises(ValueError):
            verify_point(self.estimate(0, 0), self.REGION, tol=0.0)

    def test_report_fields(self):
        region = region_from_halfspaces([Halfspace(1, 1, 2)], tag="demo-region")
        report = verdict_report(
            {"channel": "bc"}, {"kind": "time-division"}, self.estimate(1.0, 1.0), region
        )
        assert report["region_tag"] == "demo-region"
        assert report["verdict"] == "boundary"
        assert report["estimate"] == [1.0, 1.0]
        assert report["ci"] == [0.0, 0.0]
        assert report["config"] == {"channel": "bc"}
