"""Hardy-type impossibility with switchable detector sets.

Each side can read its two detectors either after its 1/3-transmission beam
splitter (unprimed) or before it (primed).  Outcomes are written
``(m_1, m_2, m_3, m_4)`` over the active detector set, first Alice's pair then
Bob's.  Both sources hold ``N/2`` particles and only runs with ``N/2``
detections per side are kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Distribution, amplitude_polynomial, distribution
from .model import AngleSettings, FockBellError, Geometry, OutcomeCounts, SourceSpec, build_network

CONFIGS = {
    "DD": Geometry.HARDY_DD,
    "DD'": Geometry.HARDY_DDP,
    "D'D": Geometry.HARDY_DPD,
    "D'D'": Geometry.HARDY_DPDP,
}


def _geometry(config) -> Geometry:
    if isinstance(config, Geometry):
        if not config.is_hardy:
            raise FockBellError(f"{config.value} is not a Hardy configuration")
        return config
    try:
        return CONFIGS[config]
    except KeyError:
        raise FockBellError(f"unknown Hardy configuration {config!r}; use one of {sorted(CONFIGS)}") from None


def _checked(n: int, outcome) -> OutcomeCounts:
    if n <= 0 or n % 2:
        raise FockBellError(f"N={n} must be positive and even")
    m = outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)
    if len(m) != 4:
        raise FockBellError("Hardy outcomes have four entries")
    if m.m_a != n // 2 or m.m_b != n // 2:
        raise FockBellError(f"outcome {tuple(m)} must have N/2 = {n // 2} counts on each side")
    return m


def hardy_amplitude_exact(config, n: int, outcome) -> tuple[Fraction, object]:
    """``(scale2, value)`` with amplitude ``sqrt(scale2) * value``.

    The amplitude is the overlap with the normalized output Fock state, so
    the unnormalized probability is ``scale2 * |value|^2``.
    """
    kind = _geometry(config)
    m = _checked(n, outcome)
    omap = build_network(kind)
    scale2, poly = amplitude_polynomial(omap, SourceSpec(n // 2, n // 2), m)
    # Hardy maps carry no setting phases, so the polynomial is a number
    value = poly.scalar()
    return Fraction(scale2) / m.factorial_product(), value


def hardy_amplitude(config, n: int, outcome) -> complex:
    scale2, value = hardy_amplitude_exact(config, n, outcome)
    return math.sqrt(scale2) * complex(value)


def hardy_distribution(config, n: int) -> Distribution:
    """Renormalized distribution on ``m_1 + m_2 = m_3 + m_4 = N/2``."""
    kind = _geometry(config)
    if n <= 0 or n % 2:
        raise FockBellError(f"N={n} must be positive and even")
    h = n // 2
    return distribution(build_network(kind, AngleSettings()), SourceSpec(h, h), support="regions", region_counts=(h, h), normalize=True)


def hardy_probability(config, n: int, outcome, normalized: bool = True):
    m = _checked(n, outcome)
    if normalized:
        return hardy_distribution(config, n)[m]
    scale2, value = hardy_amplitude_exact(config, n, m)
    if isinstance(value, complex):
        return float(scale2) * abs(value) ** 2
    return scale2 * value * value


@dataclass
class HardyReport:
    """Quantum facts and the local-realistic inference built on them."""

    n: int
    dd_amplitude: object = None
    dd_probability: object = None
    ddp_forced: bool = False
    dpd_forced: bool = False
    dpdp_probability: object = None
    lr_requires: str = ""
    qm_probability: object = None
    contradiction: bool = False
    chain: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dd_amplitude": str(self.dd_amplitude),
            "dd_probability": str(self.dd_probability),
            "ddp_forced": self.ddp_forced,
            "dpd_forced": self.dpd_forced,
            "dpdp_probability": str(self.dpdp_probability),
            "lr_requires": self.lr_requires,
            "qm_probability": str(self.qm_probability),
            "contradiction": self.contradiction,
            "chain": list(self.chain),
        }


def hardy_report(n: int) -> HardyReport:
    """Assemble the N-particle Hardy argument for ``N/2`` odd."""
    if n <= 0 or n % 2:
        raise FockBellError(f"N={n} must be positive and even")
    h = n // 2
    if h % 2 == 0:
        raise FockBellError(f"the argument needs N/2 odd (N={n})")
    rep = HardyReport(n)

    # both primed: all particles at D2' and D3'
    dpdp = hardy_distribution("D'D'", n)
    rep.dpdp_probability = dpdp[(0, h, h, 0)]

    # Alice unprimed with N/2 at D2 forces Bob's primed counts to D3'
    ddp = hardy_distribution("DD'", n)
    rep.ddp_forced = all(ddp[(0, h, h - k, k)] == 0 for k in range(1, h + 1)) and ddp[(0, h, h, 0)] != 0
    # mirror image for Bob unprimed with N/2 at D3
    dpd = hardy_distribution("D'D", n)
    rep.dpd_forced = all(dpd[(k, h - k, h, 0)] == 0 for k in range(1, h + 1)) and dpd[(0, h, h, 0)] != 0

    scale2, value = hardy_amplitude_exact("DD", n, (0, h, h, 0))
    rep.dd_amplitude = value * _sqrt_fraction(scale2)
    rep.dd_probability = hardy_distribution("DD", n)[(0, h, h, 0)]

    rep.chain = [
        f"DD: N/2 at D2 and N/2 at D3 occurs with probability {rep.dd_probability}",
        f"DD': N/2 at D2 implies N/2 at D3' ({'certain' if rep.ddp_forced else 'not certain'})",
        f"D'D: N/2 at D3 implies N/2 at D2' ({'certain' if rep.dpd_forced else 'not certain'})",
        "local realism: some runs give N/2 at D2' and N/2 at D3'",
        f"D'D': quantum probability of that event is {rep.dpdp_probability}",
    ]
    lr_possible = rep.dd_probability != 0 and rep.ddp_forced and rep.dpd_forced
    rep.lr_requires = "possible" if lr_possible else "not implied"
    rep.qm_probability = rep.dpdp_probability
    rep.contradiction = lr_possible and rep.qm_probability == 0
    return rep


def _sqrt_fraction(x: Fraction):
    """Exact square root when ``x`` is a rational square, float otherwise."""
    x = Fraction(x)
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return math.sqrt(x)
