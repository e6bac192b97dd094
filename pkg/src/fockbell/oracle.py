"""Brute-force reference amplitudes.

Each detector factor ``(sum_s v_js a_s)^{m_j}`` is expanded by the multinomial
theorem and the vacuum matrix element is taken term by term, keeping only the
index choices that use every source particle exactly once.  No phase
integrals, no shared polynomial class: coefficients live in plain dicts
``{setting exponents: (re, im)}`` with ``Fraction`` parts.

This is slow on purpose and refuses large inputs.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from typing import Sequence

from .engine import Distribution
from .model import SETTINGS, AngleSettings, FockBellError, OutcomeCounts, OutputMap, SourceSpec, compositions
from .poly import PhasePolynomial

MAX_N = 12

_Gauss = tuple  # (Fraction, Fraction)
_Poly = dict    # {exponents: _Gauss}


def _gmul(a: _Gauss, b: _Gauss) -> _Gauss:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _padd(acc: _Poly, key: tuple, val: _Gauss) -> None:
    old = acc.get(key)
    if old is None:
        new = val
    else:
        new = (old[0] + val[0], old[1] + val[1])
    if new[0] == 0 and new[1] == 0:
        acc.pop(key, None)
    else:
        acc[key] = new


def _pmul(a: _Poly, b: _Poly) -> _Poly:
    out: _Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            _padd(out, tuple(x + y for x, y in zip(ka, kb)), _gmul(va, vb))
    return out


def _ppow(a: _Poly, n: int) -> _Poly:
    out: _Poly = {(0,) * len(SETTINGS): (Fraction(1), Fraction(0))}
    for _ in range(n):
        out = _pmul(out, a)
    return out


def _entry_to_dict(entry: PhasePolynomial) -> _Poly:
    """Read a map entry into oracle form (i_power folded into the imaginary part)."""
    out: _Poly = {}
    for key, c in entry.terms.items():
        ipow, exps = key[0], key[1:]
        c = Fraction(c)
        _padd(out, exps, (Fraction(0), c) if ipow else (c, Fraction(0)))
    return out


def _check(omap: OutputMap, source: SourceSpec, m: OutcomeCounts) -> None:
    if source.total > MAX_N:
        raise FockBellError(f"oracle refuses N={source.total} > {MAX_N}")
    if len(m) != omap.n_rows:
        raise FockBellError("outcome length does not match the map")
    if omap.n_sources != source.n_sources:
        raise FockBellError("source count does not match the map")
    if m.total != source.total:
        raise FockBellError(f"outcome total {m.total} differs from N={source.total}")


def _row_splits(mj: int, n_src: int, nonzero: Sequence[bool]):
    for p in compositions(mj, n_src):
        if all(k == 0 or nz for k, nz in zip(p, nonzero)):
            yield p


def oracle_amplitude_exact(omap: OutputMap, source: SourceSpec, outcome) -> tuple[object, _Poly]:
    """``(scale2, sum)`` with amplitude ``sqrt(scale2) * sum(settings)``."""
    m = outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)
    _check(omap, source, m)
    n_src = omap.n_sources
    counts = source.counts
    entries = [[_entry_to_dict(e) for e in row.entries] for row in omap.rows]
    nonzero = [[bool(d) for d in row] for row in entries]

    scale2 = 1
    for n in counts:
        scale2 *= math.factorial(n)
    for row, mj in zip(omap.rows, m):
        if mj:
            scale2 = scale2 * row.scale2 ** mj

    per_row = [list(_row_splits(mj, n_src, nz)) for mj, nz in zip(m, nonzero)]
    total: _Poly = {}
    for choice in itertools.product(*per_row):
        used = [sum(p[s] for p in choice) for s in range(n_src)]
        if used != list(counts):
            continue
        term: _Poly = {(0,) * len(SETTINGS): (Fraction(1), Fraction(0))}
        for j, p in enumerate(choice):
            mult = math.factorial(m[j])
            for k in p:
                mult //= math.factorial(k)
            term = _pmul(term, {(0,) * len(SETTINGS): (Fraction(mult), Fraction(0))})
            for s, k in enumerate(p):
                if k:
                    term = _pmul(term, _ppow(entries[j][s], k))
        for key, val in term.items():
            _padd(total, key, val)
    return scale2, total


def _eval(poly: _Poly, angles: AngleSettings) -> complex:
    vals = angles.as_dict()
    out = 0j
    for exps, (re, im) in poly.items():
        phase = sum(e * vals.get(v, 0.0) for v, e in zip(SETTINGS, exps))
        out += complex(float(re), float(im)) * cmath.exp(1j * phase)
    return out


def oracle_amplitude(omap: OutputMap, source: SourceSpec, outcome) -> complex:
    scale2, poly = oracle_amplitude_exact(omap, source, outcome)
    return math.sqrt(float(scale2)) * _eval(poly, omap.angles)


def as_phase_polynomial(poly: _Poly) -> PhasePolynomial:
    terms = {}
    for exps, (re, im) in poly.items():
        if re:
            terms[(0,) + exps] = re
        if im:
            terms[(1,) + exps] = im
    return PhasePolynomial(SETTINGS, terms)


def _conj(poly: _Poly) -> _Poly:
    return {tuple(-e for e in k): (re, -im) for k, (re, im) in poly.items()}


def oracle_probability_exact(omap: OutputMap, source: SourceSpec, outcome) -> PhasePolynomial:
    """Exact probability as a setting polynomial, built from oracle sums."""
    m = outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)
    scale2, poly = oracle_amplitude_exact(omap, source, m)
    sq = _pmul(poly, _conj(poly))
    denom = m.factorial_product()
    factor = Fraction(1, denom) * scale2 if isinstance(scale2, (int, Fraction)) else scale2 / denom
    return as_phase_polynomial(sq) * factor


def _value(p: PhasePolynomial, angles: AngleSettings):
    q = angles.quarter_turns()
    if q is not None and all(isinstance(c, (int, Fraction)) for c in p.terms.values()):
        for var in SETTINGS:
            p = p.substitute_quarter_turns(var, q.get(var, 0))
        v = p.scalar()
        return v.real if isinstance(v, complex) else v
    return p.real_value(angles.as_dict())


def oracle_distribution(omap: OutputMap, source: SourceSpec) -> Distribution:
    """Every outcome with ``sum m_j = N``, probabilities from the oracle."""
    if source.total > MAX_N:
        raise FockBellError(f"oracle refuses N={source.total} > {MAX_N}")
    polys = {}
    for c in compositions(source.total, omap.n_rows):
        m = OutcomeCounts(c)
        polys[m] = oracle_probability_exact(omap, source, m)
    entries = {m: _value(p, omap.angles) for m, p in polys.items()}
    return Distribution(entries, f"all outcomes with sum m_j = {source.total} (oracle)", polys, omap.labels)


def oracle_superposition_probability(omap: OutputMap, n: int, x: Sequence[complex], outcome) -> float:
    """Two-source input ``sum_q x_q |q, n - q>`` with normalized Fock kets.

    Float result; used to check the general two-mode state path.
    """
    if omap.n_sources != 2:
        raise FockBellError("superposed inputs are defined for two sources")
    if len(x) != n + 1:
        raise FockBellError("need n + 1 coefficients")
    m = outcome if isinstance(outcome, OutcomeCounts) else OutcomeCounts(outcome)
    amp = 0j
    for q, xq in enumerate(x):
        if xq:
            amp += xq * oracle_amplitude(omap, SourceSpec(q, n - q), m)
    return abs(amp) ** 2 / m.factorial_product()
