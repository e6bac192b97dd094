"""Outcome amplitudes and probabilities by constant-term extraction.

Two exact routes are provided:

* the amplitude route, valid for any ``OutputMap``: expand
  ``prod_j Omega_j^{m_j}`` with ``Omega_j = sum_s v_js x_s`` and read off the
  coefficient that matches the source populations;
* the (lambda, Lambda) double-integral route for the two-source geometry,
  with or without losses, where the integrand is a product of
  ``cos(Lambda) +/- cos(setting +/- lambda)`` factors.

Setting phases stay symbolic (``zeta``, ``theta``, ``chi`` exponents) so a
single expansion serves every angle; numbers are produced at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from .model import (
    SETTINGS,
    AngleSettings,
    FockBellError,
    LossSpec,
    OutcomeCounts,
    OutputMap,
    Placement,
    SourceSpec,
    compositions,
)
from .poly import PhasePolynomial

# float fallback threshold for the double-integral route
QUADRATURE_THRESHOLD = 64

_MU = "mu"
_LAM = "lam"        # classical phase
_BIG_LAM = "Lam"    # quantum angle
_SOURCE_VARS = ("lam_alpha", "lam_beta", "lam_gamma")


def _fact_prod(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out *= math.factorial(v)
    return out


def _as_outcome(outcome) -> OutcomeCounts:
    return outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)


@dataclass
class Distribution:
    """Outcome probabilities on a declared support.

    ``entries`` holds numbers (``Fraction`` when exact, ``float`` otherwise).
    When ``polynomials`` is present it maps each outcome to its probability
    as an exact polynomial in the setting phases.
    """

    entries: dict[OutcomeCounts, object]
    support: str
    polynomials: dict[OutcomeCounts, PhasePolynomial] | None = None
    labels: tuple[str, ...] = field(default=())

    def total(self):
        return sum(self.entries.values())

    def total_polynomial(self) -> PhasePolynomial:
        if self.polynomials is None:
            raise ValueError("distribution carries no polynomials")
        polys = list(self.polynomials.values())
        acc = PhasePolynomial(polys[0].variables)
        for p in polys:
            acc = acc + p
        return acc

    def nonzero(self) -> dict[OutcomeCounts, object]:
        if self.polynomials is not None:
            return {k: v for k, v in self.entries.items() if not self.polynomials[k].is_zero()}
        return {k: v for k, v in self.entries.items() if v != 0}

    def expectation(self, weight: Callable[[OutcomeCounts], float]):
        return sum(weight(m) * p for m, p in self.entries.items())

    def __getitem__(self, outcome):
        return self.entries[_as_outcome(outcome)]

    def __len__(self) -> int:
        return len(self.entries)

    def sorted_items(self):
        return sorted(self.entries.items())


def evaluate_setting_poly(poly: PhasePolynomial, angles: AngleSettings):
    """Exact value when every angle is a multiple of pi/2, float otherwise."""
    q = angles.quarter_turns()
    if q is not None and all(
        isinstance(c, (int, Fraction)) for c in poly.terms.values()
    ):
        p = poly
        for var in poly.variables:
            p = p.substitute_quarter_turns(var, q.get(var, 0))
        val = p.scalar()
        if isinstance(val, complex):
            if abs(val.imag) > 1e-12 * max(1.0, abs(val)):
                raise ArithmeticError(f"expected a real value, got {val}")
            return val.real
        return val
    return poly.real_value(angles.as_dict())


# ---------------------------------------------------------------------------
# amplitude route
# ---------------------------------------------------------------------------

def _check_outcome(omap: OutputMap, source: SourceSpec, m: OutcomeCounts) -> None:
    if len(m) != omap.n_rows:
        raise FockBellError(f"outcome has {len(m)} entries, map has {omap.n_rows} output modes")
    if source.n_sources != omap.n_sources:
        raise FockBellError(f"map has {omap.n_sources} sources, source spec has {source.n_sources}")
    if m.total != source.total:
        raise FockBellError(f"outcome total {m.total} differs from particle number {source.total}")


def amplitude_polynomial(omap: OutputMap, source: SourceSpec, outcome) -> tuple[object, PhasePolynomial]:
    """Matrix element ``<0| prod a_j^{m_j} |N_alpha, N_beta(, N_gamma)>``.

    Returns ``(scale2, poly)`` with the amplitude equal to
    ``sqrt(scale2) * poly(settings)``; ``poly`` is exact.
    """
    m = _as_outcome(outcome)
    _check_outcome(omap, source, m)
    counts = source.counts
    scale2 = _fact_prod(counts)
    for row, mj in zip(omap.rows, m):
        if mj:
            scale2 = scale2 * row.scale2 ** mj

    if omap.n_sources == 2:
        # phase-integral form: Omega_j(mu) = v_ja e^{i mu} + v_jb e^{-i mu},
        # keep the coefficient of e^{i (N_alpha - N_beta) mu}
        variables = SETTINGS + (_MU,)
        up = PhasePolynomial.monomial(variables, {_MU: 1})
        down = PhasePolynomial.monomial(variables, {_MU: -1})
        product = PhasePolynomial.constant(variables)
        for row, mj in zip(omap.rows, m):
            if mj == 0:
                continue
            omega = row.entries[0].extend(variables) * up + row.entries[1].extend(variables) * down
            product = product * omega ** mj
        poly = product.coefficient(_MU, counts[0] - counts[1])
    else:
        svars = _SOURCE_VARS[: omap.n_sources]
        variables = SETTINGS + svars
        lifts = [PhasePolynomial.monomial(variables, {v: 1}) for v in svars]
        product = PhasePolynomial.constant(variables)
        for row, mj in zip(omap.rows, m):
            if mj == 0:
                continue
            omega = PhasePolynomial(variables)
            for entry, lift in zip(row.entries, lifts):
                if entry:
                    omega = omega + entry.extend(variables) * lift
            product = product * omega ** mj
        poly = product
        for v, n in zip(svars, counts):
            poly = poly.coefficient(v, n)
    return scale2, poly


def amplitude(omap: OutputMap, source: SourceSpec, outcome) -> complex:
    scale2, poly = amplitude_polynomial(omap, source, outcome)
    return math.sqrt(float(scale2)) * poly.evaluate(omap.angles.as_dict())


def probability_polynomial(omap: OutputMap, source: SourceSpec, outcome) -> PhasePolynomial:
    """``|amplitude|^2 / prod m_j!`` as an exact polynomial in the settings."""
    m = _as_outcome(outcome)
    scale2, poly = amplitude_polynomial(omap, source, m)
    denom = m.factorial_product()
    factor = Fraction(1, denom) * scale2 if isinstance(scale2, (int, Fraction)) else scale2 / denom
    return (poly * poly.conj()) * factor


def probability(omap: OutputMap, source: SourceSpec, outcome):
    return evaluate_setting_poly(probability_polynomial(omap, source, outcome), omap.angles)


def distribution(
    omap: OutputMap,
    source: SourceSpec,
    support: str = "all",
    region_counts: tuple[int, ...] | None = None,
    normalize: bool = False,
) -> Distribution:
    """All outcomes on the chosen support.

    ``support="all"`` enumerates every way of placing the N particles in the
    map's output modes.  ``support="regions"`` keeps only outcomes whose
    consecutive detector pairs receive ``region_counts`` particles; with
    ``normalize=True`` the result is renormalized by explicit summation.
    """
    n = source.total
    if support == "all":
        outcomes = (OutcomeCounts(c) for c in compositions(n, omap.n_rows))
        note = f"all outcomes with sum m_j = {n}"
    elif support == "regions":
        if region_counts is None or 2 * len(region_counts) != omap.n_rows:
            raise FockBellError("regions support needs one count per detector pair")
        if sum(region_counts) != n:
            raise FockBellError("region counts must add up to the particle number")

        def gen():
            per_region = [[(k, c - k) for k in range(c + 1)] for c in region_counts]
            for combo in _product(per_region):
                yield OutcomeCounts(x for pair in combo for x in pair)

        outcomes = gen()
        note = "region counts " + ", ".join(str(c) for c in region_counts)
    else:
        raise FockBellError(f"unknown support {support!r}")

    polys = {m: probability_polynomial(omap, source, m) for m in outcomes}
    if normalize:
        total = PhasePolynomial(SETTINGS)
        for p in polys.values():
            total = total + p
        if not total.is_constant():
            raise ArithmeticError("support probability depends on the settings; cannot renormalize by a constant")
        norm = total.scalar()
        if norm == 0:
            raise FockBellError("declared support has zero probability")
        polys = {m: p / norm for m, p in polys.items()}
        note += " (renormalized)"
    entries = {m: evaluate_setting_poly(p, omap.angles) for m, p in polys.items()}
    return Distribution(entries, note, polys, omap.labels)


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# (lambda, Lambda) double-integral route
# ---------------------------------------------------------------------------

_DI_VARS = SETTINGS + (_LAM, _BIG_LAM)


@lru_cache(maxsize=1)
def _channel_factors() -> tuple[PhasePolynomial, ...]:
    """``2 cos(Lambda) +/- 2 cos(zeta + lambda)`` and ``... cos(theta - lambda)``."""
    two_cos_big = PhasePolynomial.cosine(_DI_VARS, {_BIG_LAM: 1})
    a = PhasePolynomial.cosine(_DI_VARS, {"zeta": 1, _LAM: 1})
    b = PhasePolynomial.cosine(_DI_VARS, {"theta": 1, _LAM: -1})
    return (two_cos_big + a, two_cos_big - a, two_cos_big + b, two_cos_big - b)


def _population_factor(source: SourceSpec) -> PhasePolynomial:
    """``2 cos((N_beta - N_alpha) Lambda)``."""
    d = source.n_beta - source.n_alpha
    return PhasePolynomial.cosine(_DI_VARS, {_BIG_LAM: d})


def _check_lossy_inputs(source: SourceSpec, m: OutcomeCounts) -> None:
    if source.n_sources != 2:
        raise FockBellError("the double-integral route needs exactly two sources")
    if len(m) != 4:
        raise FockBellError("the double-integral route needs four detector counts")
    if m.total > source.total:
        raise FockBellError(f"detected {m.total} particles but only {source.total} were emitted")


def _finish(poly: PhasePolynomial) -> PhasePolynomial:
    return poly.constant_term(_LAM, _BIG_LAM)


@lru_cache(maxsize=None)
def _factor_power(j: int, k: int) -> PhasePolynomial:
    if k == 0:
        return PhasePolynomial.constant(_DI_VARS)
    return _factor_power(j, k - 1) * _channel_factors()[j]


@lru_cache(maxsize=None)
def _missed_sum(j: int, k: int) -> PhasePolynomial:
    """``sum prod_{i >= j} F_i^{k_i} / k_i!`` over ``k_j + ... + k_4 = k``."""
    if j == 3:
        return _factor_power(3, k) / math.factorial(k)
    acc = PhasePolynomial(_DI_VARS)
    for kj in range(k + 1):
        acc = acc + _factor_power(j, kj) * _missed_sum(j + 1, k - kj) / math.factorial(kj)
    return acc


@lru_cache(maxsize=4096)
def _double_integral_core(n_alpha: int, n_beta: int, m: tuple, placement: Placement) -> PhasePolynomial:
    """Transmission-free part: constant term times every combinatorial factor."""
    n, big_m = n_alpha + n_beta, sum(m)
    integrand = _population_factor(SourceSpec(n_alpha, n_beta))
    for j, mj in enumerate(m):
        if mj:
            integrand = integrand * _factor_power(j, mj)
    base = Fraction(math.factorial(n_alpha) * math.factorial(n_beta), _fact_prod(m))
    if placement is Placement.AT_SOURCES:
        two_cos_big = PhasePolynomial.cosine(_DI_VARS, {_BIG_LAM: 1})
        integrand = integrand * two_cos_big ** (n - big_m)
        # every cosine above was doubled: 2^{N-2M} / 2^{1 + (N-M) + M}
        scale = base / math.factorial(n - big_m) / 2 ** (2 * big_m + 1)
    elif placement is Placement.AT_DETECTORS:
        # missed particles summed over every split among the four missed channels
        integrand = integrand * _missed_sum(0, n - big_m)
        scale = base / 2 ** (2 * n + 1)
    else:
        raise FockBellError("placement must be at-sources or at-detectors")
    return _finish(integrand) * scale


def double_integral_polynomial(source: SourceSpec, outcome, t=1, placement: Placement | str = Placement.AT_SOURCES) -> PhasePolynomial:
    """Detection probability with losses, exact in the setting phases.

    With ``placement="at-sources"`` the unobserved particles enter as a
    ``cos(Lambda)^{N-M}`` factor; with ``"at-detectors"`` they are summed
    explicitly over every way of distributing them among the missed
    channels.  Both give the same polynomial.
    """
    m = _as_outcome(outcome)
    _check_lossy_inputs(source, m)
    placement = Placement(placement)
    n, big_m = source.total, m.total
    r = 1 - t
    if isinstance(t, (int, Fraction)):
        weight = Fraction(t) ** big_m * Fraction(r) ** (n - big_m)
    else:
        weight = t ** big_m * r ** (n - big_m)
    core = _double_integral_core(source.n_alpha, source.n_beta, tuple(m), placement)
    return core * weight


def double_integral_probability(source: SourceSpec, outcome, angles: AngleSettings, loss: LossSpec | None = None):
    t = 1 if loss is None else loss.t
    placement = Placement.AT_SOURCES if loss is None or loss.placement is Placement.NONE else loss.placement
    return evaluate_setting_poly(double_integral_polynomial(source, outcome, t, placement), angles)


def quadrature_probability(source: SourceSpec, outcome, angles: AngleSettings, t: float = 1.0) -> float:
    """Float fallback: uniform trapezoid rule on the periodic integrand.

    The integrand has degree at most 2N in Lambda and N in lambda, so
    ``2N + 2`` nodes per variable integrate it exactly up to rounding.
    """
    m = _as_outcome(outcome)
    _check_lossy_inputs(source, m)
    n, big_m = source.total, m.total
    k = 2 * n + 2
    nodes = 2 * np.pi * np.arange(k) / k
    lam, big = np.meshgrid(nodes, nodes, indexing="ij")
    cb = np.cos(big)
    ca = np.cos(angles.zeta + lam)
    cth = np.cos(angles.theta - lam)
    integrand = np.cos((source.n_beta - source.n_alpha) * big) * cb ** (n - big_m)
    for f, mj in zip((cb + ca, cb - ca, cb + cth, cb - cth), m):
        integrand = integrand * f ** mj
    avg = float(integrand.mean())
    t = float(t)
    r = 1.0 - t
    log_pref = (
        math.lgamma(source.n_alpha + 1)
        + math.lgamma(source.n_beta + 1)
        - sum(math.lgamma(x + 1) for x in m)
        - math.lgamma(n - big_m + 1)
        + (n - 2 * big_m) * math.log(2)
    )
    w = (t ** big_m) * (r ** (n - big_m))
    return math.exp(log_pref) * w * avg


def probability_lossy(source: SourceSpec, outcome, loss: LossSpec, angles: AngleSettings, method: str = "auto"):
    """Probability of the detected counts ``m_1..m_4`` with ``M <= N``."""
    if loss.placement is Placement.NONE:
        raise FockBellError("probability_lossy needs a loss placement")
    if method == "auto":
        method = "exact" if source.total <= QUADRATURE_THRESHOLD else "quadrature"
    if method == "exact":
        return evaluate_setting_poly(double_integral_polynomial(source, outcome, loss.t, loss.placement), angles)
    if method == "quadrature":
        return quadrature_probability(source, outcome, angles, loss.t)
    raise FockBellError(f"unknown method {method!r}")


def lossy_distribution(source: SourceSpec, loss: LossSpec, angles: AngleSettings, detected: int | None = None) -> Distribution:
    """Distribution of detected counts; all ``M <= N`` or a fixed ``M``."""
    n = source.total
    totals = range(n + 1) if detected is None else [detected]
    polys = {}
    for big_m in totals:
        if not 0 <= big_m <= n:
            raise FockBellError(f"M={big_m} out of range")
        for c in compositions(big_m, 4):
            m = OutcomeCounts(c)
            polys[m] = double_integral_polynomial(source, m, loss.t, loss.placement)
    entries = {m: evaluate_setting_poly(p, angles) for m, p in polys.items()}
    note = "all M <= N" if detected is None else f"M = {detected}"
    return Distribution(entries, note, polys, ("1", "2", "3", "4"))


def marginal_m(source: SourceSpec, loss: LossSpec, detected: int):
    """Probability that exactly ``M`` particles are detected."""
    n = source.total
    if not 0 <= detected <= n:
        raise FockBellError(f"M={detected} out of range [0, {n}]")
    t = loss.t
    r = 1 - t
    return math.comb(n, detected) * t ** detected * r ** (n - detected)


# ---------------------------------------------------------------------------
# classical-phase limit
# ---------------------------------------------------------------------------

_CL_VARS = SETTINGS + (_LAM,)


def classical_limit_raw_polynomial(outcome) -> PhasePolynomial:
    """``(1/prod m!) avg_lambda prod [1 +/- cos(.)]^{m_j}`` before normalization."""
    m = _as_outcome(outcome)
    if len(m) != 4:
        raise FockBellError("the classical limit is defined for four detectors")
    two = PhasePolynomial.constant(_CL_VARS, 2)
    a = PhasePolynomial.cosine(_CL_VARS, {"zeta": 1, _LAM: 1})
    b = PhasePolynomial.cosine(_CL_VARS, {"theta": 1, _LAM: -1})
    integrand = PhasePolynomial.constant(_CL_VARS)
    for f, mj in zip((two + a, two - a, two + b, two - b), m):
        if mj:
            integrand = integrand * f ** mj
    return integrand.constant_term(_LAM) * Fraction(1, m.factorial_product() * 2 ** m.total)


def classical_limit_distribution(detected: int, angles: AngleSettings) -> Distribution:
    """Classical-phase model on the fixed-M support, normalized by summation."""
    raw = {OutcomeCounts(c): classical_limit_raw_polynomial(c) for c in compositions(detected, 4)}
    total = PhasePolynomial(SETTINGS)
    for p in raw.values():
        total = total + p
    norm = total.scalar()
    polys = {m: p / norm for m, p in raw.items()}
    entries = {m: evaluate_setting_poly(p, angles) for m, p in polys.items()}
    return Distribution(entries, f"M = {detected} (classical phase, renormalized)", polys, ("1", "2", "3", "4"))


def classical_limit_probability(outcome, angles: AngleSettings):
    m = _as_outcome(outcome)
    return classical_limit_distribution(m.total, angles)[m]


def total_variation(p: Mapping, q: Mapping) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)


def conditional_on_m(source: SourceSpec, loss: LossSpec, angles: AngleSettings, detected: int) -> Distribution:
    """Lossy distribution restricted to ``M`` detections and divided by its marginal."""
    dist = lossy_distribution(source, loss, angles, detected)
    marg = marginal_m(source, loss, detected)
    polys = {m: p / marg for m, p in dist.polynomials.items()}
    entries = {m: evaluate_setting_poly(p, angles) for m, p in polys.items()}
    return Distribution(entries, f"M = {detected} (conditioned)", polys, dist.labels)
