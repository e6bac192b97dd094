import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockbell.bell import (
    TSIRELSON,
    ab_closed_form,
    ab_coefficient,
    ab_correlator,
    ab_from_distribution,
    bchsh_q,
    correlator_function,
    maximize_full,
    maximize_q,
    maximize_symmetric,
    parity,
    symmetric_layout,
)
from fockbell.engine import marginal_m
from fockbell.model import AngleSettings, FockBellError, LossSpec, Placement, SourceSpec


def test_parity():
    assert parity((1, 0, 1, 0)) == (1, 1)
    assert parity((0, 1, 0, 1)) == (-1, -1)
    assert parity((0, 2, 1, 1)) == (1, -1)


def test_correlator_examples():
    assert ab_correlator(SourceSpec(1, 1), 0.0, 0.0, detected=2, conditioned=True) == 1
    assert ab_correlator(SourceSpec(1, 1), 0.3, 0.1, LossSpec(Fraction(1, 2), Placement.AT_SOURCES), detected=1) == 0
    assert ab_coefficient(SourceSpec(2, 1), detected=2, conditioned=True) == Fraction(2, 3)
    assert ab_coefficient(SourceSpec(2, 2), detected=2, conditioned=True) == Fraction(2, 3)


def test_coefficient_matches_parity_sum_over_distribution():
    for src, m in [(SourceSpec(2, 2), 2), (SourceSpec(2, 1), 2), (SourceSpec(3, 2), 4), (SourceSpec(3, 1), 2)]:
        loss = LossSpec(Fraction(2, 3), Placement.AT_SOURCES)
        direct = ab_from_distribution(src, AngleSettings(), loss, m, conditioned=True)
        assert direct == ab_coefficient(src, loss, m, conditioned=True)


def test_coefficient_vanishes_outside_allowed_counts():
    assert ab_coefficient(SourceSpec(3, 1), detected=4) == 0  # M > 2 N_beta
    assert ab_coefficient(SourceSpec(2, 2), detected=3) == 0  # odd M


def test_conditioned_is_unconditioned_over_marginal():
    loss = LossSpec(Fraction(3, 7), Placement.AT_SOURCES)
    for src in (SourceSpec(3, 3), SourceSpec(4, 2)):
        for m in range(src.total + 1):
            un = ab_coefficient(src, loss, m)
            co = ab_coefficient(src, loss, m, conditioned=True)
            assert co == un / marginal_m(src, loss, m)


def test_closed_form():
    assert ab_closed_form(2, 0.0, 0.0) == 1
    assert ab_closed_form(2, math.pi / 2, math.pi / 2) == pytest.approx(0, abs=1e-16)
    with pytest.raises(FockBellError):
        ab_closed_form(3, 0, 0)


def test_closed_form_matches_correlator_on_grid():
    for n in (2, 4, 6, 8):
        src = SourceSpec(n // 2, n // 2)
        for x in np.linspace(-math.pi, math.pi, 100):
            assert ab_correlator(src, x, 0.2, conditioned=True) == pytest.approx(ab_closed_form(n, x, 0.2), abs=1e-12)


def test_correlator_matches_distribution_at_generic_angles():
    ang = AngleSettings(0.7, -0.3)
    src = SourceSpec(2, 2)
    direct = ab_from_distribution(src, ang)
    assert float(direct) == pytest.approx(ab_correlator(src, ang.zeta, ang.theta), abs=1e-14)


def test_bchsh_q_examples():
    e = lambda w: math.cos(w) ** 2  # noqa: E731
    assert bchsh_q(e, *symmetric_layout(math.pi / 4)) == pytest.approx(1.0)
    assert bchsh_q(e, 0.4, 0.4, 0.4, 0.4) == pytest.approx(2.0)
    assert bchsh_q(lambda w: 0.0, 0.1, 0.2, 0.3, 0.4) == 0


def test_symmetric_layout_reduces_q():
    e = correlator_function(4)
    for w in (0.2, 0.5, 1.0):
        assert bchsh_q(lambda x: float(e(x)), *symmetric_layout(w)) == pytest.approx(float(3 * e(w) - e(3 * w)))


def test_maximize_two_particles():
    res = maximize_q(2)
    # cos^2(w/2) layout: 1 + sqrt(2) exactly at w = pi/4
    assert res.q_max == pytest.approx(1 + math.sqrt(2), abs=1e-12)
    assert res.omega_star == pytest.approx(math.pi / 4, abs=1e-7)
    assert res.settings == symmetric_layout(res.omega_star)


def test_maximize_deterministic():
    assert maximize_q(6) == maximize_q(6)


def test_single_missed_particle_never_violates():
    assert maximize_q(2, detected=1).q_max <= 2
    for n in range(1, 11):
        assert maximize_q(n, detected=n - 1).q_max <= 2 + 1e-12


def test_full_search_does_not_beat_symmetric_layout():
    for n in (2, 4):
        sym = maximize_q(n).q_max
        full = maximize_q(n, full_search=True).q_max
        assert full <= sym + 1e-7


def test_tsirelson_guard():
    with pytest.raises(ArithmeticError):
        maximize_symmetric(lambda w: 2.0 * np.cos(np.asarray(w)))
    with pytest.raises(ArithmeticError):
        maximize_full(lambda w: 2.0 * math.cos(w))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 40))
def test_quantum_bound(n):
    res = maximize_q(2 * n)
    assert 2 < res.q_max <= TSIRELSON
