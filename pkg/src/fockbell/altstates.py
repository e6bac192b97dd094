"""Non-Fock inputs: coherent pairs, phase states and general two-mode states.

All of these share the four-detector layout of the basic interferometer.
Coherent inputs have no fixed particle number, so they are exposed through
distributions conditioned on ``M`` detections.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from .bell import QResult, TSIRELSON
from .engine import Distribution, evaluate_setting_poly
from .model import SETTINGS, AngleSettings, FockBellError, OutcomeCounts, compositions
from .poly import PhasePolynomial, multinomial

_LAM = "lam"
_BIG = "Lam"
_VARS = SETTINGS + (_LAM, _BIG)
_CL_VARS = SETTINGS + (_LAM,)


def _as_outcome(outcome) -> OutcomeCounts:
    return outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)


# ---------------------------------------------------------------------------
# general two-mode states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralTwoModeState:
    """``sum_q x_q |q, N - q>`` in the normalized Fock basis.

    Attributes
    ----------
    n : int
        Total particle number.
    x : tuple of complex
        ``N + 1`` coefficients, ``x[q]`` multiplying ``|q, N - q>``.
    phi0 : float or None
        Set for phase states built by :meth:`phase`.
    """

    n: int
    x: tuple[complex, ...]
    phi0: float | None = None

    def __post_init__(self):
        if self.n < 0:
            raise FockBellError("N must be non-negative")
        if len(self.x) != self.n + 1:
            raise FockBellError(f"need {self.n + 1} coefficients, got {len(self.x)}")
        norm = math.fsum(abs(v) ** 2 for v in self.x)
        if abs(norm - 1.0) > 1e-12:
            raise FockBellError(f"state is not normalized (sum |x_q|^2 = {norm})")

    @classmethod
    def fock(cls, n_alpha: int, n_beta: int) -> "GeneralTwoModeState":
        n = n_alpha + n_beta
        x = [0j] * (n + 1)
        x[n_alpha] = 1 + 0j
        return cls(n, tuple(x))

    @classmethod
    def phase(cls, n: int, phi0: float) -> "GeneralTwoModeState":
        """``2^{-N/2} (e^{i phi0} a_alpha^+ + a_beta^+)^N |0> / sqrt(N!)``."""
        x = tuple(
            math.sqrt(math.comb(n, q) / 2 ** n) * cmath.exp(1j * q * phi0) for q in range(n + 1)
        )
        return cls(n, x, phi0)


def _channel_halves(vars_: tuple[str, ...], big: bool) -> list[PhasePolynomial]:
    """Doubled factors ``2c +/- 2cos(zeta + lam)``, ``2c +/- 2cos(theta - lam)``.

    ``c`` is ``cos(Lambda)`` when ``big`` is set and 1 otherwise.
    """
    if big:
        c2 = PhasePolynomial.cosine(vars_, {_BIG: 1})
    else:
        c2 = PhasePolynomial.constant(vars_, 2)
    a = PhasePolynomial.cosine(vars_, {"zeta": 1, _LAM: 1})
    b = PhasePolynomial.cosine(vars_, {"theta": 1, _LAM: -1})
    return [c2 + a, c2 - a, c2 + b, c2 - b]


def kernel_polynomial(state: GeneralTwoModeState) -> PhasePolynomial:
    """Cross-term kernel ``G(lambda, Lambda)`` including off-diagonal pairs."""
    n = state.n
    roots = [math.sqrt(math.factorial(q) * math.factorial(n - q)) for q in range(n + 1)]
    terms = {}
    for q, xq in enumerate(state.x):
        if xq == 0:
            continue
        for qp, xqp in enumerate(state.x):
            if xqp == 0:
                continue
            c = complex(xq * xqp.conjugate()) * roots[q] * roots[qp]
            key = (0, 0, 0, 0, qp - q, n - q - qp)
            terms[key] = terms.get(key, 0) + c
    return PhasePolynomial(_VARS, terms)


def general_state_polynomial(state: GeneralTwoModeState, outcome, kernel: PhasePolynomial | None = None) -> PhasePolynomial:
    m = _as_outcome(outcome)
    if len(m) != 4 or m.total != state.n:
        raise FockBellError(f"outcome must have four counts adding to N={state.n}")
    g = kernel if kernel is not None else kernel_polynomial(state)
    integrand = g
    for f, mj in zip(_channel_halves(_VARS, True), m):
        if mj:
            integrand = integrand * f ** mj
    # each factor above is doubled: 2^{-N} * 2^{-N}
    return integrand.constant_term(_LAM, _BIG) / (m.factorial_product() * 4 ** state.n)


def general_state_distribution(state: GeneralTwoModeState, angles: AngleSettings) -> Distribution:
    g = kernel_polynomial(state)
    polys = {}
    for c in compositions(state.n, 4):
        m = OutcomeCounts(c)
        polys[m] = general_state_polynomial(state, m, g)
    entries = {m: p.real_value(angles.as_dict()) for m, p in polys.items()}
    return Distribution(entries, f"all outcomes with sum m_j = {state.n} (general state)", polys, ("1", "2", "3", "4"))


def phase_state_probability(n: int, phi0: float, outcome, angles: AngleSettings) -> float:
    """Product form for a phase state: no quantum angle survives."""
    m = _as_outcome(outcome)
    if len(m) != 4 or m.total != n:
        raise FockBellError(f"outcome must have four counts adding to N={n}")
    ca = math.cos(angles.zeta + phi0)
    cb = math.cos(angles.theta - phi0)
    value = math.factorial(n) / (4 ** n * m.factorial_product())
    for base, k in zip((1 + ca, 1 - ca, 1 + cb, 1 - cb), m):
        value *= base ** k
    return value


# ---------------------------------------------------------------------------
# coherent pairs
# ---------------------------------------------------------------------------

def coherent_channel_probabilities(phi_alpha: float, phi_beta: float, angles: AngleSettings) -> tuple[float, ...]:
    rel = phi_alpha - phi_beta
    ca = math.cos(angles.zeta + rel)
    cb = math.cos(angles.theta - rel)
    return ((1 + ca) / 4, (1 - ca) / 4, (1 + cb) / 4, (1 - cb) / 4)


def coherent_probability(phi_alpha: float, phi_beta: float, outcome, angles: AngleSettings) -> float:
    """Multinomial over the four channels, conditioned on ``M`` detections."""
    m = _as_outcome(outcome)
    if len(m) != 4:
        raise FockBellError("outcome must have four counts")
    value = float(multinomial(m))
    for p, k in zip(coherent_channel_probabilities(phi_alpha, phi_beta, angles), m):
        value *= p ** k
    return value


def coherent_averaged_polynomial(outcome) -> PhasePolynomial:
    """Average of :func:`coherent_probability` over the relative phase."""
    m = _as_outcome(outcome)
    if len(m) != 4:
        raise FockBellError("outcome must have four counts")
    integrand = PhasePolynomial.constant(_CL_VARS)
    for f, mj in zip(_channel_halves(_CL_VARS, False), m):
        if mj:
            integrand = integrand * f ** mj
    return integrand.constant_term(_LAM) * Fraction(multinomial(m), 8 ** m.total)


def coherent_averaged_probability(outcome, angles: AngleSettings):
    return evaluate_setting_poly(coherent_averaged_polynomial(outcome), angles)


def coherent_averaged_distribution(detected: int, angles: AngleSettings) -> Distribution:
    polys = {OutcomeCounts(c): coherent_averaged_polynomial(c) for c in compositions(detected, 4)}
    entries = {m: evaluate_setting_poly(p, angles) for m, p in polys.items()}
    return Distribution(entries, f"M = {detected} (phase-averaged coherent pair)", polys, ("1", "2", "3", "4"))


def coherent_averaged_correlator_polynomial(detected: int) -> PhasePolynomial:
    acc = PhasePolynomial(SETTINGS)
    for c in compositions(detected, 4):
        p = coherent_averaged_polynomial(c)
        acc = acc + (p if (c[1] + c[3]) % 2 == 0 else -p)
    return acc


def classical_bchsh_search(detected: int, starts: int = 32, seed: int = 0) -> QResult:
    """Four-angle BCHSH search for the phase-averaged coherent model.

    Alice's setting is ``zeta`` and Bob's ``theta``; the correlator is the
    exact parity sum, evaluated as a trigonometric polynomial.
    """
    from scipy import optimize

    poly = coherent_averaged_correlator_polynomial(detected)
    items = [(key, complex(c)) for key, c in poly.terms.items()]
    iz, it = SETTINGS.index("zeta"), SETTINGS.index("theta")

    def e(z: float, t: float) -> float:
        s = 0j
        for key, c in items:
            ph = key[1 + iz] * z + key[1 + it] * t
            s += (1j if key[0] else 1) * c * cmath.exp(1j * ph)
        return s.real

    def q(x):
        a, a2, b, b2 = x
        return e(a, b) + e(a, b2) + e(a2, b) - e(a2, b2)

    rng = np.random.default_rng(seed)
    inits = [rng.uniform(-math.pi, math.pi, 4) for _ in range(starts)]
    inits += [np.array([w, -w, 0.0, 2 * w]) for w in np.linspace(0.05, 1.5, 8)]
    best_x, best_q = None, -np.inf
    for x0 in inits:
        res = optimize.minimize(lambda x: -q(x), x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13})
        if -res.fun > best_q:
            best_q, best_x = float(-res.fun), tuple(float(v) for v in res.x)
    if best_q > TSIRELSON + 1e-9:
        raise ArithmeticError("Q above the quantum bound")
    return QResult(best_q, best_x[0] + best_x[2], best_x)
