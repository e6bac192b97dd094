"""Closed-form phase integrals and the normalization chain they imply.

Everything here is exact rational arithmetic; the chain checks sum engine
probabilities region by region and compare each partial sum with its
closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import double_integral_polynomial, marginal_m
from .model import LossSpec, OutcomeCounts, Placement, SourceSpec
from .poly import PhasePolynomial


def wallis_k(n: int) -> Fraction:
    """Average of ``cos(x)^n`` over a period."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2:
        return Fraction(0)
    return Fraction(math.factorial(n), 2 ** n * math.factorial(n // 2) ** 2)


def norm_j(m: int, d: int) -> Fraction:
    """Average of ``cos(d x) cos(x)^m`` over a period."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if (m - d) % 2 or abs(d) > m:
        return Fraction(0)
    return Fraction(math.factorial(m), 2 ** m * math.factorial((m + d) // 2) * math.factorial((m - d) // 2))


def region_total(n: int, m_a: int, m_b: int) -> Fraction:
    """Probability of ``m_A`` counts on Alice's side and ``m_B`` on Bob's, no loss."""
    if m_a + m_b != n:
        return Fraction(0)
    return Fraction(math.factorial(n), 2 ** n * math.factorial(m_a) * math.factorial(m_b))


def region_total_lossy(n: int, m_a: int, m_b: int, t) -> Fraction:
    """Same with transmission ``t``; ``M = m_A + m_B <= N``."""
    big_m = m_a + m_b
    if big_m > n:
        return Fraction(0)
    t = Fraction(t)
    return Fraction(math.factorial(n), math.factorial(m_a) * math.factorial(m_b) * math.factorial(n - big_m) * 2 ** big_m) * t ** big_m * (1 - t) ** (n - big_m)


def _region_sum(source: SourceSpec, m_a: int, m_b: int, t, placement: Placement) -> PhasePolynomial:
    acc = None
    for m1 in range(m_a + 1):
        for m3 in range(m_b + 1):
            p = double_integral_polynomial(source, OutcomeCounts((m1, m_a - m1, m3, m_b - m3)), t, placement)
            acc = p if acc is None else acc + p
    return acc


@dataclass
class ChainReport:
    source: SourceSpec
    t: object
    mismatches: list[str] = field(default_factory=list)
    steps: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _constant(poly: PhasePolynomial):
    if not poly.is_constant():
        return None
    return poly.scalar()


def check_ideal_chain(source: SourceSpec) -> ChainReport:
    """Region sums and the grand total for the lossless distribution."""
    n = source.total
    rep = ChainReport(source, 1)
    total = Fraction(0)
    for m_a in range(n + 1):
        m_b = n - m_a
        got = _constant(_region_sum(source, m_a, m_b, 1, Placement.AT_SOURCES))
        want = region_total(n, m_a, m_b)
        rep.steps += 1
        if got != want:
            rep.mismatches.append(f"m_A={m_a}, m_B={m_b}: {got} != {want}")
        total += want
    rep.steps += 1
    if total != 1:
        rep.mismatches.append(f"grand total {total} != 1")
    return rep


def check_lossy_chain(source: SourceSpec, t, placement: Placement | str = Placement.AT_SOURCES) -> ChainReport:
    """Region sums, the M-marginal and the grand total with losses."""
    n = source.total
    placement = Placement(placement)
    t = Fraction(t)
    rep = ChainReport(source, t)
    loss = LossSpec(t, placement)
    grand = Fraction(0)
    for big_m in range(n + 1):
        marg = Fraction(0)
        for m_a in range(big_m + 1):
            m_b = big_m - m_a
            got = _constant(_region_sum(source, m_a, m_b, t, placement))
            want = region_total_lossy(n, m_a, m_b, t)
            rep.steps += 1
            if got != want:
                rep.mismatches.append(f"M={big_m}, m_A={m_a}: {got} != {want}")
            marg += got if got is not None else 0
        rep.steps += 1
        if marg != marginal_m(source, loss, big_m):
            rep.mismatches.append(f"M={big_m}: marginal {marg} != binomial")
        grand += marg
    rep.steps += 1
    if grand != 1:
        rep.mismatches.append(f"grand total {grand} != 1")
    return rep


__all__ = [
    "wallis_k",
    "norm_j",
    "region_total",
    "region_total_lossy",
    "check_ideal_chain",
    "check_lossy_chain",
    "ChainReport",
]
