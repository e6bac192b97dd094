"""Parity correlations and the BCHSH functional.

Alice's result is the parity ``(-1)^{m_2}`` of her second detector and Bob's
is ``(-1)^{m_4}``.  For two Fock sources the product average depends on the
settings only through ``omega = zeta + theta``; the symmetric BCHSH layout
then reduces ``Q`` to ``3 E(omega) - E(3 omega)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import optimize

from .engine import lossy_distribution, marginal_m
from .model import AngleSettings, FockBellError, LossSpec, OutcomeCounts, Placement, SourceSpec

TSIRELSON = 2.0 * math.sqrt(2.0)
_GUARD = 1e-9


@dataclass(frozen=True)
class QResult:
    """Best BCHSH value found.

    Attributes
    ----------
    q_max : float
        Largest ``Q``.
    omega_star : float
        Angle difference at the optimum (symmetric layout); for a full
        four-angle search this is ``phi_a - phi_b``.
    settings : tuple of float
        ``(phi_a, phi_a', phi_b, phi_b')`` reaching ``q_max``.
    """

    q_max: float
    omega_star: float
    settings: tuple[float, float, float, float]


def parity(outcome) -> tuple[int, int]:
    m = outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)
    if len(m) < 4:
        raise FockBellError("parity needs four detector counts")
    return (-1) ** m[1], (-1) ** m[3]


def _default_loss(loss: LossSpec | None) -> LossSpec:
    if loss is None or loss.placement is Placement.NONE:
        return LossSpec(1, Placement.AT_SOURCES)
    return loss


def ab_coefficient(source: SourceSpec, loss: LossSpec | None = None, detected: int | None = None, conditioned: bool = False):
    """Prefactor ``c`` in ``<AB> = c * cos((zeta + theta)/2)^M``.

    Zero unless ``M`` is even and ``M <= 2 N_alpha``, ``M <= 2 N_beta``.
    Exact (``Fraction``) when the transmission is rational.
    """
    loss = _default_loss(loss)
    n = source.total
    big_m = n if detected is None else detected
    if not 0 <= big_m <= n:
        raise FockBellError(f"M={big_m} out of range [0, {n}]")
    na, nb = source.n_alpha, source.n_beta
    if big_m % 2 or big_m > 2 * na or big_m > 2 * nb:
        return Fraction(0)
    h = big_m // 2
    f = math.factorial
    core = Fraction(f(na) * f(nb), f(na - h) * f(nb - h) * f(h) ** 2)
    if conditioned:
        return core * Fraction(f(big_m) * f(n - big_m), f(n))
    t = loss.t
    r = 1 - t
    return core * t ** big_m * r ** (n - big_m)


def ab_correlator(
    source: SourceSpec,
    zeta: float,
    theta: float,
    loss: LossSpec | None = None,
    detected: int | None = None,
    conditioned: bool = False,
) -> float:
    """Closed-form parity product average.

    ``conditioned=True`` divides by the probability of detecting ``M``.
    """
    big_m = source.total if detected is None else detected
    c = ab_coefficient(source, loss, big_m, conditioned)
    return float(c) * math.cos((zeta + theta) / 2) ** big_m


def ab_from_distribution(
    source: SourceSpec,
    angles: AngleSettings,
    loss: LossSpec | None = None,
    detected: int | None = None,
    conditioned: bool = False,
):
    """Same average summed directly over the engine's lossy distribution."""
    loss = _default_loss(loss)
    big_m = source.total if detected is None else detected
    dist = lossy_distribution(source, loss, angles, big_m)
    total = sum(parity(m)[0] * parity(m)[1] * p for m, p in dist.entries.items())
    if conditioned:
        total = total / marginal_m(source, loss, big_m)
    return total


def ab_closed_form(n: int, zeta: float, theta: float) -> float:
    if n % 2:
        raise FockBellError("closed form needs N even (N_alpha = N_beta = N/2)")
    return math.cos((zeta + theta) / 2) ** n


def bchsh_q(e: Callable[[float], float], phi_a: float, phi_a2: float, phi_b: float, phi_b2: float) -> float:
    """``E(a-b) + E(a-b') + E(a'-b) - E(a'-b')``."""
    return e(phi_a - phi_b) + e(phi_a - phi_b2) + e(phi_a2 - phi_b) - e(phi_a2 - phi_b2)


def symmetric_layout(omega: float) -> tuple[float, float, float, float]:
    """Angles with ``a-b = b-a' = b'-a = omega``, so ``b'-a' = 3 omega``."""
    return omega, -omega, 0.0, 2.0 * omega


def _guard(q: float) -> float:
    if q > TSIRELSON + _GUARD:
        raise ArithmeticError(f"Q={q} exceeds the quantum bound 2*sqrt(2)")
    return q


def maximize_symmetric(e: Callable, grid: int = 10_001, upper: float = math.pi / 2, xtol: float = 1e-10) -> QResult:
    """Maximize ``3E(w) - E(3w)`` over ``w`` in ``(0, upper]``.

    ``e`` must accept numpy arrays.  A dense grid picks the basin (ties go to
    the smaller ``w``) and a bounded scalar search polishes it.
    """
    w = np.linspace(upper / grid, upper, grid)
    q = 3.0 * e(w) - e(3.0 * w)
    k = int(np.argmax(q))
    lo = w[max(k - 1, 0)] if k > 0 else w[0] * 1e-6
    hi = w[min(k + 1, grid - 1)]
    best_w, best_q = float(w[k]), float(q[k])
    if hi > lo:
        res = optimize.minimize_scalar(
            lambda x: -(3.0 * e(np.asarray(x)) - e(np.asarray(3.0 * x))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": xtol},
        )
        if -res.fun > best_q:
            best_w, best_q = float(res.x), float(-res.fun)
    return QResult(_guard(best_q), best_w, symmetric_layout(best_w))


def maximize_full(e: Callable, starts: int = 24, seed: int = 0) -> QResult:
    """Unconstrained search over all four angles (multi-start Nelder-Mead)."""
    rng = np.random.default_rng(seed)

    def neg(x):
        return -bchsh_q(e, *x)

    best = None
    inits = [np.array(symmetric_layout(w)) for w in np.linspace(0.05, 1.5, 8)]
    inits += [rng.uniform(-math.pi, math.pi, 4) for _ in range(starts)]
    for x0 in inits:
        res = optimize.minimize(neg, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 20_000})
        if best is None or res.fun < best.fun - 1e-15:
            best = res
    x = tuple(float(v) for v in best.x)
    return QResult(_guard(float(-best.fun)), x[0] - x[2], x)


def correlator_function(
    n: int,
    detected: int | None = None,
    conditioned: bool = True,
    source: SourceSpec | None = None,
    loss: LossSpec | None = None,
) -> Callable:
    """``E(omega)`` with ``omega = zeta + theta`` for the two-source model.

    Without ``source``, equal populations are used when ``N`` is even and
    ``N_alpha = N_beta + 1`` when ``N`` is odd.
    """
    if source is None:
        source = SourceSpec((n + 1) // 2, n // 2)
    elif source.total != n:
        raise FockBellError("source total differs from N")
    big_m = n if detected is None else detected
    if big_m == n and n >= 10_000:
        # prefactor is 1 only for equal populations; avoid huge factorials
        if source.n_alpha != source.n_beta:
            return lambda w: 0.0 * np.asarray(w, dtype=float)
        c = 1.0
    else:
        c = float(ab_coefficient(source, loss, big_m, conditioned))

    def e(w):
        return c * np.cos(np.asarray(w, dtype=float) / 2.0) ** big_m

    return e


def maximize_q(
    n: int,
    detected: int | None = None,
    conditioned: bool = True,
    source: SourceSpec | None = None,
    loss: LossSpec | None = None,
    full_search: bool = False,
) -> QResult:
    """Largest BCHSH value for ``N`` particles with ``M`` detected."""
    e = correlator_function(n, detected, conditioned, source, loss)
    if full_search:
        return maximize_full(lambda x: float(e(x)))
    return maximize_symmetric(e)


def optimal_omega(n: int) -> float:
    """Large-N optimum ``sqrt(ln 3 / N)``."""
    return math.sqrt(math.log(3.0) / n)


def q_at(n: int, omega: float, detected: int | None = None, conditioned: bool = True) -> float:
    e = correlator_function(n, detected, conditioned)
    return float(3.0 * e(omega) - e(3.0 * omega))
