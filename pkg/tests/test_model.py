import math
from fractions import Fraction

import numpy as np
import pytest

from fockbell.model import (
    AngleSettings,
    FockBellError,
    Geometry,
    LossSpec,
    OutcomeCounts,
    OutputMap,
    Placement,
    SourceSpec,
    build_network,
    check_orthonormal,
    compositions,
)

ALL_KINDS = list(Geometry)


def _loss_for(kind):
    return {
        Geometry.SOURCE_LOSS: LossSpec(Fraction(1, 2), Placement.AT_SOURCES),
        Geometry.DETECTOR_LOSS: LossSpec(Fraction(1, 2), Placement.AT_DETECTORS),
    }.get(kind)


def _angles_for(kind):
    return AngleSettings(0.3, -0.7, 1.1 if kind is Geometry.GHZ else None)


def test_fig1_rows_at_zero():
    v = build_network(Geometry.FIG1).matrix()
    assert v[0] == pytest.approx([0.5j, 0.5j])
    assert v[1] == pytest.approx([-0.5, 0.5])
    assert v[2] == pytest.approx([0.5j, 0.5j])


def test_primed_hardy_outer_rows():
    v = build_network(Geometry.HARDY_DPDP, AngleSettings(0.9, 0.4)).matrix()
    s = 1 / math.sqrt(2)
    assert v[0] == pytest.approx([1j * s, 0])
    assert v[3] == pytest.approx([0, 1j * s])


def test_unprimed_hardy_rows():
    v = build_network(Geometry.HARDY_DD).matrix()
    assert v[0] == pytest.approx([-math.sqrt(3) / 2, 1j / (2 * math.sqrt(3))])
    assert v[1] == pytest.approx([0, -1 / math.sqrt(6)])
    assert v[2] == pytest.approx([-1 / math.sqrt(6), 0])


def test_source_loss_at_full_transmission_is_fig1():
    ang = AngleSettings(0.4, 1.3)
    a = build_network(Geometry.SOURCE_LOSS, ang, LossSpec(1, Placement.AT_SOURCES)).matrix()
    b = build_network(Geometry.FIG1, ang).matrix()
    assert np.allclose(a, b, atol=0)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_orthonormal(kind):
    omap = build_network(kind, _angles_for(kind), _loss_for(kind))
    check = check_orthonormal(omap)
    assert check.ok and check.max_deviation < 1e-12


@pytest.mark.parametrize("kind", [Geometry.SOURCE_LOSS, Geometry.DETECTOR_LOSS])
def test_lossy_full_map_is_isometric(kind):
    omap = build_network(kind, _angles_for(kind), _loss_for(kind), include_unobserved=True)
    assert check_orthonormal(omap)
    assert omap.n_detectors == 4 and omap.n_rows > 4


def test_perturbed_map_fails_check():
    omap = build_network(Geometry.FIG1)

    class Perturbed(OutputMap):
        def matrix(self):
            v = super().matrix()
            v[0, 0] += 1e-3
            return v

    bad = Perturbed(omap.kind, omap.rows, omap.angles)
    check = check_orthonormal(bad)
    assert not check and check.max_deviation > 1e-4


def test_chi_only_for_ghz():
    with pytest.raises(FockBellError):
        build_network(Geometry.FIG1, AngleSettings(0, 0, 0.1))
    with pytest.raises(FockBellError):
        build_network(Geometry.GHZ, AngleSettings(0, 0))


def test_loss_placement_must_match():
    with pytest.raises(FockBellError):
        build_network(Geometry.SOURCE_LOSS, loss=LossSpec(Fraction(1, 2), Placement.AT_DETECTORS))
    with pytest.raises(FockBellError):
        build_network(Geometry.FIG1, loss=LossSpec(Fraction(1, 2), Placement.AT_SOURCES))
    with pytest.raises(FockBellError):
        build_network(Geometry.FIG1, include_unobserved=True)


def test_value_objects():
    assert AngleSettings(3 * math.pi, 0).zeta == pytest.approx(-math.pi)
    assert AngleSettings(math.pi / 2, -math.pi / 2).quarter_turns() == {"zeta": 1, "theta": 3, "chi": 0}
    assert AngleSettings(0.1, 0).quarter_turns() is None
    with pytest.raises(FockBellError):
        LossSpec(Fraction(3, 2), Placement.AT_SOURCES)
    with pytest.raises(FockBellError):
        OutcomeCounts((1, -1))
    with pytest.raises(FockBellError):
        SourceSpec(-1, 2)
    m = OutcomeCounts((2, 1, 0, 3))
    assert (m.m_a, m.m_b, m.total, m.factorial_product()) == (3, 3, 6, 12)


def test_compositions_count_and_order():
    c = list(compositions(4, 4))
    assert len(c) == math.comb(7, 3)
    assert c == sorted(c)
    assert all(sum(x) == 4 for x in c)
