"""Pixel-level detection: accumulation in time, alignment and counting.

Each detected particle lands on one pixel ``j`` with relative phase
``phi_j`` between the two condensate waves and accumulated coupling
``p_j(t)``.  The coincidence probability for a given set of pixels is the
``(lambda, Lambda)`` average of
``cos((N_beta - N_alpha) Lambda) * prod_j p_j(t) {cos Lambda + cos(phi_j - Lambda - lambda)}``.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bell import parity
from .engine import probability
from .model import AngleSettings, FockBellError, Geometry, OutcomeCounts, SourceSpec, build_network, compositions
from .poly import PhasePolynomial

_VARS = ("lam", "Lam")

Profile = Callable[[float, float, float], float]


def linear_profile(p_bar: float, t: float, t_end: float) -> float:
    """``p_bar * clamp(t / t_end, 0, 1)``."""
    return p_bar * min(max(t / t_end, 0.0), 1.0)


def saturating_profile(rate: float = 5.0) -> Profile:
    """Smooth profile ``p_bar (1 - exp(-rate t/T)) / (1 - exp(-rate))``, linear near 0."""
    norm = -math.expm1(-rate)

    def profile(p_bar: float, t: float, t_end: float) -> float:
        s = min(max(t / t_end, 0.0), 1.0)
        return p_bar * -math.expm1(-rate * s) / norm

    return profile


@dataclass(frozen=True)
class PixelModel:
    """Pixels available to the detected particles.

    Attributes
    ----------
    pixel_count : int
        Pixels per detector, used for the dilution guard and counting factors.
    phases : tuple of float
        Relative phase on each modeled pixel.
    p_bar : tuple of float
        Final coupling of each modeled pixel.
    detector : tuple of int
        Detector index (0..3) of each modeled pixel; empty when unused.
    t_end : float
        Time at which every coupling has saturated.
    area : float
        Common pixel area; enters as ``area**N``.
    profile : callable
        ``profile(p_bar, t, t_end)``; must vanish at 0 and be non-decreasing.
    """

    pixel_count: int
    phases: tuple[float, ...]
    p_bar: tuple[float, ...]
    detector: tuple[int, ...] = ()
    t_end: float = 1.0
    area: float = 1.0
    profile: Profile = field(default=linear_profile, compare=False)

    def __post_init__(self):
        if len(self.phases) != len(self.p_bar):
            raise FockBellError("phases and p_bar must have one entry per pixel")
        if self.detector and len(self.detector) != len(self.phases):
            raise FockBellError("detector labels must cover every pixel")
        if any(p < 0 for p in self.p_bar):
            raise FockBellError("couplings must be non-negative")
        if self.t_end <= 0:
            raise FockBellError("t_end must be positive")

    @property
    def n_pixels(self) -> int:
        return len(self.phases)

    def coupling(self, j: int, t: float) -> float:
        return self.profile(self.p_bar[j], t, self.t_end)

    def pixels_of(self, det: int) -> list[int]:
        return [j for j, d in enumerate(self.detector) if d == det]

    def scaled(self, c: float) -> "PixelModel":
        return PixelModel(self.pixel_count, self.phases, tuple(c * p for p in self.p_bar), self.detector, self.t_end, self.area, self.profile)

    @classmethod
    def aligned(
        cls,
        per_detector: int,
        angles: AngleSettings,
        phi_a: float = 0.0,
        phi_b: float = 0.0,
        p_bar: float = 1.0,
        pixel_count: int = 10_000,
        offsets: Sequence[float] | None = None,
        profile: Profile = linear_profile,
        t_end: float = 1.0,
    ) -> "PixelModel":
        """Four pixel groups with phases ``phi_A - zeta (+pi)``, ``phi_B + theta (+pi)``.

        ``offsets`` (one per pixel, detector-major) shift each pixel's local
        setting, modelling imperfect wavefront alignment.
        """
        base = (phi_a - angles.zeta, phi_a - angles.zeta + math.pi, phi_b + angles.theta, phi_b + angles.theta + math.pi)
        n = 4 * per_detector
        offsets = [0.0] * n if offsets is None else list(offsets)
        if len(offsets) != n:
            raise FockBellError(f"need {n} offsets")
        phases, dets = [], []
        for d in range(4):
            for k in range(per_detector):
                off = offsets[d * per_detector + k]
                # the offset acts on the local setting: zeta -> zeta + off, theta -> theta + off
                phases.append(base[d] - off if d < 2 else base[d] + off)
                dets.append(d)
        return cls(pixel_count, tuple(phases), (p_bar,) * n, tuple(dets), t_end, 1.0, profile)


def _phase_average(phases: Sequence[float], d: int) -> float:
    """Exact ``(lambda, Lambda)`` average of the pixel integrand."""
    terms_cos = {(0, 0, 1): 0.5, (0, 0, -1): 0.5}
    acc = PhasePolynomial(_VARS, {(0, 0, d): 0.5, (0, 0, -d): 0.5}) if d else PhasePolynomial.constant(_VARS, 1.0)
    for phi in phases:
        e = complex(math.cos(phi), math.sin(phi))
        f = PhasePolynomial(_VARS, dict(terms_cos))
        # cos(phi - Lambda - lambda) = (e^{i phi} e^{-i(lambda + Lambda)} + c.c.)/2
        f = f + PhasePolynomial(_VARS, {(0, -1, -1): e / 2, (0, 1, 1): e.conjugate() / 2})
        acc = acc * f
    val = acc.constant_term(*_VARS).scalar()
    return complex(val).real


def accumulated_probability(model: PixelModel, pixels: Sequence[int], n_alpha: int, n_beta: int, t: float) -> float:
    """Coincidence probability accumulated up to ``t`` on the given pixels.

    Defined up to a setting-independent constant, as the detector phase
    model leaves the overall normalization open.
    """
    n = n_alpha + n_beta
    if len(pixels) != n:
        raise FockBellError(f"need one pixel per particle ({n}), got {len(pixels)}")
    if len(set(pixels)) != len(pixels):
        raise FockBellError("pixel assignment overlaps")
    if any(not 0 <= j < model.n_pixels for j in pixels):
        raise FockBellError("pixel index out of range")
    if not 0 <= t <= model.t_end:
        raise FockBellError(f"t={t} outside [0, {model.t_end}]")
    if model.pixel_count < 100 * n * n:
        warnings.warn(f"pixel_count={model.pixel_count} is not much larger than N^2={n * n}", stacklevel=2)
    weight = model.area ** n
    for j in pixels:
        weight *= model.coupling(j, t)
    if weight == 0:
        return 0.0
    return weight * _phase_average([model.phases[j] for j in pixels], n_beta - n_alpha)


def _outcome_pixels(model: PixelModel, m: OutcomeCounts) -> list[int]:
    chosen = []
    for d, k in enumerate(m):
        pool = model.pixels_of(d)
        if len(pool) < k:
            raise FockBellError(f"detector {d + 1} has only {len(pool)} pixels for {k} counts")
        chosen.extend(pool[:k])
    return chosen


def outcome_weight(model: PixelModel, source: SourceSpec, m: OutcomeCounts, t: float | None = None, average: bool = False) -> float:
    """Probability of the counts ``m`` at time ``t`` with the reduced counting factor.

    Uses the first ``m_j`` pixels of each detector, or with ``average=True``
    the mean over every choice of pixels within each detector.
    """
    t = model.t_end if t is None else t
    count = 1.0 / m.factorial_product()
    if not average:
        return count * accumulated_probability(model, _outcome_pixels(model, m), source.n_alpha, source.n_beta, t)
    pools = [model.pixels_of(d) for d in range(4)]
    choices = [list(itertools.combinations(pool, k)) for pool, k in zip(pools, m)]
    total, n_cfg = 0.0, 0
    for combo in itertools.product(*choices):
        px = [j for part in combo for j in part]
        total += accumulated_probability(model, px, source.n_alpha, source.n_beta, t)
        n_cfg += 1
    return count * total / n_cfg


def aligned_limit_check(model: PixelModel, source: SourceSpec, angles: AngleSettings, phi_a: float = 0.0, phi_b: float = 0.0) -> float:
    """Max relative spread of ``pixel probability / engine probability``.

    The engine is evaluated at ``(zeta - phi_A, theta + phi_B)``, the
    settings the grouped pixel phases correspond to.  Outcomes where the
    engine gives zero must give zero here too; otherwise the deviation is
    reported as infinite.
    """
    omap = build_network(Geometry.FIG1, AngleSettings(angles.zeta - phi_a, angles.theta + phi_b))
    ratios = []
    scale = 0.0
    pairs = []
    for c in compositions(source.total, 4):
        m = OutcomeCounts(c)
        pw = outcome_weight(model, source, m)
        pe = float(probability(omap, source, m))
        pairs.append((pw, pe))
        scale = max(scale, abs(pw))
    for pw, pe in pairs:
        if pe <= 1e-15:
            if abs(pw) > 1e-12 * max(scale, 1e-300):
                return math.inf
            continue
        ratios.append(pw / pe)
    if not ratios:
        return 0.0
    ref = ratios[0]
    return max(abs(r / ref - 1.0) for r in ratios)


def counting_factor(q_pix: int, m1: int, m2: int, mode: str = "exact") -> float:
    """Natural log of the number of pixel configurations in one region.

    ``exact`` is ``log[C(Q, m1) C(Q, m2)]``; ``stirling`` is the reduced
    ``log[Q^{m1 + m2} / (m1! m2!)]``.
    """
    if min(q_pix, m1, m2) < 0:
        raise FockBellError("counts must be non-negative")
    if m1 + m2 > q_pix:
        raise FockBellError(f"m1 + m2 = {m1 + m2} exceeds the pixel count {q_pix}")
    if mode == "exact":
        lg = math.lgamma
        return (lg(q_pix + 1) - lg(m1 + 1) - lg(q_pix - m1 + 1)) + (lg(q_pix + 1) - lg(m2 + 1) - lg(q_pix - m2 + 1))
    if mode == "stirling":
        return (m1 + m2) * math.log(q_pix) - math.lgamma(m1 + 1) - math.lgamma(m2 + 1)
    raise FockBellError(f"unknown mode {mode!r}")


def jitter_pattern(n: int, kind: str = "alternating", seed: int = 0) -> np.ndarray:
    """Deterministic unit-spread offsets in ``[-1/2, 1/2]``."""
    if kind == "alternating":
        return np.array([0.5 if k % 2 == 0 else -0.5 for k in range(n)])
    if kind == "grid":
        return np.linspace(-0.5, 0.5, n) if n > 1 else np.zeros(n)
    if kind == "random":
        return np.random.default_rng(seed).uniform(-0.5, 0.5, n)
    raise FockBellError(f"unknown jitter pattern {kind!r}")


def parity_correlator(model: PixelModel, source: SourceSpec, average: bool = True) -> float:
    """``<AB>`` from pixel-level outcome weights, renormalized over outcomes."""
    num = den = 0.0
    for c in compositions(source.total, 4):
        m = OutcomeCounts(c)
        w = outcome_weight(model, source, m, average=average)
        a, b = parity(m)
        num += a * b * w
        den += w
    if den <= 0:
        raise ArithmeticError("no probability on the outcome set")
    return num / den


def mismatch_sweep(
    source: SourceSpec,
    angles: AngleSettings,
    sigmas: Sequence[float],
    per_detector: int | None = None,
    pattern: str = "alternating",
    seed: int = 0,
    pixel_count: int = 10_000,
) -> list[tuple[float, float]]:
    """Parity correlator against the per-pixel setting jitter amplitude ``sigma``."""
    per_detector = source.total if per_detector is None else per_detector
    unit = jitter_pattern(4 * per_detector, pattern, seed)
    out = []
    for sigma in sigmas:
        if not 0 <= sigma <= math.pi:
            raise FockBellError("sigma must lie in [0, pi]")
        model = PixelModel.aligned(per_detector, angles, offsets=list(sigma * unit), pixel_count=pixel_count)
        out.append((float(sigma), parity_correlator(model, source)))
    return out
