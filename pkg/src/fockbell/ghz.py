"""Three sources, three detection regions, and the GHZ sign argument."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Distribution, distribution
from .model import AngleSettings, FockBellError, Geometry, SourceSpec, build_network

# settings (zeta, theta, chi) for the sign argument: three "odd" ones, one "even"
CONTRADICTION_SETTINGS = (
    (math.pi / 2, math.pi / 2, 0.0),
    (math.pi / 2, 0.0, math.pi / 2),
    (0.0, math.pi / 2, math.pi / 2),
    (0.0, 0.0, 0.0),
)


def _third(n: int) -> int:
    if n <= 0 or n % 3:
        raise FockBellError(f"N={n} must be a positive multiple of 3")
    return n // 3


def ghz_distribution(n: int, angles: AngleSettings) -> Distribution:
    """Outcomes with ``N/3`` detections per region, renormalized on that set."""
    k = _third(n)
    if angles.chi is None:
        raise FockBellError("GHZ settings need chi")
    omap = build_network(Geometry.GHZ, angles)
    return distribution(omap, SourceSpec(k, k, k), support="regions", region_counts=(k, k, k), normalize=True)


def restricted_distribution(source: SourceSpec, angles: AngleSettings, region_counts: tuple[int, int, int]) -> Distribution:
    """As :func:`ghz_distribution` for arbitrary populations and region counts."""
    omap = build_network(Geometry.GHZ, angles)
    return distribution(omap, source, support="regions", region_counts=region_counts, normalize=True)


def parity3(outcome) -> int:
    return (-1) ** (outcome[1] + outcome[3] + outcome[5])


def abc_from_distribution(dist: Distribution):
    """``sum (-1)^{m_2 + m_4 + m_6} P(m)``; exact at quarter-turn settings."""
    return sum(parity3(m) * p for m, p in dist.entries.items())


def abc_correlator(n: int, zeta: float, theta: float, chi: float) -> float:
    """Ratio of cubed-binomial sums weighted by ``cos((N/3 - 2q) x)``.

    Only ``x = zeta + theta + chi`` enters.
    """
    k = _third(n)
    x = zeta + theta + chi
    weights = [math.comb(k, q) ** 3 for q in range(k + 1)]
    num = math.fsum(w * math.cos((k - 2 * q) * x) for q, w in enumerate(weights))
    return num / sum(weights)


def abc_harmonics(n: int) -> dict[int, Fraction]:
    """Exact cosine-series coefficients ``{h: c_h}`` with ``<ABC> = sum c_h cos(h x)``."""
    k = _third(n)
    weights = [math.comb(k, q) ** 3 for q in range(k + 1)]
    total = sum(weights)
    out: dict[int, Fraction] = {}
    for q, w in enumerate(weights):
        h = abs(k - 2 * q)
        out[h] = out.get(h, Fraction(0)) + Fraction(w, total)
    return dict(sorted(out.items()))


@dataclass
class GHZReport:
    n: int
    values: dict[tuple[float, float, float], object] = field(default_factory=dict)
    quantum: int = 0
    local_realism: int = 0
    contradiction: bool = False

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "quantum": self.quantum,
            "local_realism": self.local_realism,
            "contradiction": self.contradiction,
            "values": [list(k) + [float(v)] for k, v in self.values.items()],
        }


def ghz_contradiction(n: int) -> GHZReport:
    """Check the GHZ sign argument for ``N/3`` odd.

    Quantum mechanics gives ``<ABC> = -1`` at the three settings with two
    quarter turns and ``+1`` with none.  Perfect correlations let local
    realism assign a definite product to each setting; multiplying the three
    ``-1`` equations squares out the quarter-turn results and forces
    ``A(0) B(0) C(0) = -1``.
    """
    k = _third(n)
    if k % 2 == 0:
        raise FockBellError(f"the sign argument needs N/3 odd (N={n})")
    report = GHZReport(n)
    for s in CONTRADICTION_SETTINGS:
        dist = ghz_distribution(n, AngleSettings(*s))
        report.values[s] = abc_from_distribution(dist)
    vals = list(report.values.values())
    if any(v != -1 for v in vals[:3]) or vals[3] != 1:
        raise ArithmeticError(f"unexpected correlator values {vals}")
    # product of the three odd-setting equations; each quarter-turn value appears twice
    report.local_realism = int(vals[0] * vals[1] * vals[2])
    report.quantum = int(vals[3])
    report.contradiction = report.quantum != report.local_realism
    return report
