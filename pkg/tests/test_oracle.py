import math
from fractions import Fraction

import pytest

from fockbell.altstates import GeneralTwoModeState, general_state_distribution
from fockbell.engine import amplitude, distribution, evaluate_setting_poly
from fockbell.model import AngleSettings, FockBellError, Geometry, LossSpec, Placement, SourceSpec, build_network
from fockbell.oracle import MAX_N, oracle_amplitude, oracle_distribution, oracle_probability_exact, oracle_superposition_probability

FIG1 = build_network(Geometry.FIG1)


def test_known_values():
    assert oracle_amplitude(FIG1, SourceSpec(1, 1), (1, 0, 0, 1)) == 0
    zero = AngleSettings()
    assert evaluate_setting_poly(oracle_probability_exact(FIG1, SourceSpec(1, 1), (2, 0, 0, 0)), zero) == Fraction(1, 8)
    assert evaluate_setting_poly(oracle_probability_exact(FIG1, SourceSpec(1, 1), (1, 0, 1, 0)), zero) == Fraction(1, 4)


def test_refuses_large_inputs():
    with pytest.raises(FockBellError):
        oracle_distribution(FIG1, SourceSpec(MAX_N, 1))


@pytest.mark.parametrize(
    "kind,src",
    [
        (Geometry.FIG1, SourceSpec(3, 2)),
        (Geometry.GHZ, SourceSpec(2, 1, 1)),
        (Geometry.HARDY_DD, SourceSpec(3, 3)),
        (Geometry.HARDY_DPD, SourceSpec(2, 2)),
    ],
)
def test_amplitudes_agree_at_generic_angles(kind, src):
    ang = AngleSettings(0.31, -1.7, 0.9 if kind is Geometry.GHZ else None)
    omap = build_network(kind, ang)
    for m in distribution(omap, src).entries:
        assert oracle_amplitude(omap, src, m) == pytest.approx(amplitude(omap, src, m), abs=1e-13)


def test_lossy_full_map_agrees():
    loss = LossSpec(Fraction(1, 4), Placement.AT_DETECTORS)
    omap = build_network(Geometry.DETECTOR_LOSS, loss=loss, include_unobserved=True)
    a = distribution(omap, SourceSpec(2, 1))
    b = oracle_distribution(omap, SourceSpec(2, 1))
    assert all(a.polynomials[m] == b.polynomials[m] for m in a.entries)
    assert b.total() == 1


def test_superposition_matches_general_state():
    n, phi0 = 3, 0.8
    state = GeneralTwoModeState.phase(n, phi0)
    ang = AngleSettings(0.5, -0.25)
    dist = general_state_distribution(state, ang)
    omap = FIG1.at(ang)
    for m, p in dist.entries.items():
        assert oracle_superposition_probability(omap, n, state.x, m) == pytest.approx(p, abs=1e-14)
    assert math.isclose(sum(dist.entries.values()), 1.0, abs_tol=1e-13)
