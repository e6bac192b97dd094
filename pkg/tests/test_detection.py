import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockbell.bell import ab_correlator
from fockbell.detection import (
    PixelModel,
    accumulated_probability,
    aligned_limit_check,
    counting_factor,
    jitter_pattern,
    linear_profile,
    mismatch_sweep,
    outcome_weight,
    parity_correlator,
    saturating_profile,
)
from fockbell.model import AngleSettings, FockBellError, OutcomeCounts, SourceSpec

ANG = AngleSettings(0.4, -0.3)


def test_time_zero_gives_zero():
    model = PixelModel.aligned(2, ANG)
    assert accumulated_probability(model, [0, 2], 1, 1, 0.0) == 0


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=3, max_size=3), st.sampled_from([linear_profile, saturating_profile(3.0)]))
def test_monotonic_in_time(ts, profile):
    model = PixelModel.aligned(2, ANG, profile=profile)
    pixels = [0, 2, 4]  # two on detector 1, one on detector 2
    values = [accumulated_probability(model, pixels, 2, 1, t) for t in sorted(ts)]
    assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))


def test_linear_profile_scales_as_power():
    model = PixelModel.aligned(3, ANG)
    a = accumulated_probability(model, [0, 1, 6], 2, 1, 0.2)
    b = accumulated_probability(model, [0, 1, 6], 2, 1, 0.4)
    assert b / a == pytest.approx(8.0, rel=1e-12)


@pytest.mark.parametrize("src", [SourceSpec(1, 1), SourceSpec(2, 1), SourceSpec(2, 2)])
def test_aligned_phases_reproduce_engine(src):
    model = PixelModel.aligned(src.total, ANG, 0.3, -0.2)
    assert aligned_limit_check(model, src, ANG, 0.3, -0.2) < 1e-12
    assert aligned_limit_check(model.scaled(0.37), src, ANG, 0.3, -0.2) < 1e-12


def test_broken_grouping_detected():
    src = SourceSpec(2, 1)
    n = 4 * src.total
    offsets = [0.0] * n
    offsets[1] = math.pi
    model = PixelModel.aligned(src.total, ANG, offsets=offsets)
    assert aligned_limit_check(model, src, ANG) > 1e-6


def test_scaling_couplings():
    model = PixelModel.aligned(2, ANG)
    m = OutcomeCounts((1, 0, 1, 0))
    base = outcome_weight(model, SourceSpec(1, 1), m)
    assert outcome_weight(model.scaled(0.5), SourceSpec(1, 1), m) == pytest.approx(0.25 * base, rel=1e-13)


def test_guards():
    model = PixelModel.aligned(2, ANG, pixel_count=10)
    with pytest.warns(UserWarning):
        accumulated_probability(model, [0, 2], 1, 1, 1.0)
    big = PixelModel.aligned(2, ANG)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        accumulated_probability(big, [0, 2], 1, 1, 1.0)
    with pytest.raises(FockBellError):
        accumulated_probability(big, [0, 0], 1, 1, 1.0)
    with pytest.raises(FockBellError):
        accumulated_probability(big, [0, 2], 1, 1, 2.0)
    with pytest.raises(FockBellError):
        accumulated_probability(big, [0], 1, 1, 1.0)
    with pytest.raises(FockBellError):
        PixelModel(100, (0.0,), (-1.0,))


def test_counting_factor():
    assert math.exp(counting_factor(10**6, 1, 1, "exact")) == pytest.approx(1e12, rel=1e-12)
    assert math.exp(counting_factor(10**6, 1, 1, "stirling")) == pytest.approx(1e12, rel=1e-12)
    with pytest.raises(FockBellError):
        counting_factor(3, 4, 0)
    with pytest.raises(FockBellError):
        counting_factor(10, 1, 1, "other")


@pytest.mark.parametrize("m1,m2", [(1, 1), (2, 3), (4, 4), (0, 4)])
def test_counting_ratio_tends_to_one(m1, m2):
    qs = [10, 100, 1000, 10**4, 10**5, 10**6]
    gaps = [abs(counting_factor(q, m1, m2, "exact") - counting_factor(q, m1, m2, "stirling")) for q in qs]
    assert all(b <= a + 1e-9 for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-4


def test_jitter_patterns():
    assert list(jitter_pattern(4)) == [0.5, -0.5, 0.5, -0.5]
    assert np.allclose(jitter_pattern(3, "grid"), [-0.5, 0, 0.5])
    r = jitter_pattern(8, "random", seed=3)
    assert np.array_equal(r, jitter_pattern(8, "random", seed=3)) and np.all(np.abs(r) <= 0.5)
    with pytest.raises(FockBellError):
        jitter_pattern(2, "spiral")


def test_mismatch_sweep():
    src = SourceSpec(1, 1)
    curve = mismatch_sweep(src, ANG, [0.0, math.pi / 2, math.pi])
    assert curve[0][1] == pytest.approx(ab_correlator(src, ANG.zeta, ANG.theta), abs=1e-12)
    assert abs(curve[-1][1]) < abs(curve[0][1])
    with pytest.raises(FockBellError):
        mismatch_sweep(src, ANG, [4.0])


def test_common_offset_shifts_setting():
    src = SourceSpec(1, 1)
    delta = 0.35
    n = 4 * src.total
    offsets = [delta] * (n // 2) + [0.0] * (n // 2)  # region A only
    shifted = PixelModel.aligned(src.total, ANG, offsets=offsets)
    ref = AngleSettings(ANG.zeta + delta, ANG.theta)
    assert parity_correlator(shifted, src) == pytest.approx(ab_correlator(src, ref.zeta, ref.theta), abs=1e-12)
    assert parity_correlator(shifted, src) == pytest.approx(parity_correlator(PixelModel.aligned(src.total, ref), src), abs=1e-12)
