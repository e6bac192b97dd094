"""Exact outcome statistics for interferometers fed by Fock-state condensates."""

from .bell import QResult, ab_closed_form, ab_correlator, bchsh_q, maximize_q, parity
from .engine import (
    Distribution,
    amplitude,
    classical_limit_probability,
    distribution,
    marginal_m,
    probability,
    probability_lossy,
)
from .ghz import abc_correlator, ghz_contradiction, ghz_distribution
from .hardy import hardy_amplitude, hardy_report
from .model import (
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
)
from .oracle import oracle_amplitude, oracle_distribution
from .poly import PhasePolynomial

__all__ = [
    "AngleSettings",
    "Distribution",
    "FockBellError",
    "Geometry",
    "LossSpec",
    "OutcomeCounts",
    "OutputMap",
    "PhasePolynomial",
    "Placement",
    "QResult",
    "SourceSpec",
    "ab_closed_form",
    "ab_correlator",
    "abc_correlator",
    "amplitude",
    "bchsh_q",
    "build_network",
    "check_orthonormal",
    "classical_limit_probability",
    "distribution",
    "ghz_contradiction",
    "ghz_distribution",
    "hardy_amplitude",
    "hardy_report",
    "marginal_m",
    "maximize_q",
    "oracle_amplitude",
    "oracle_distribution",
    "parity",
    "probability",
    "probability_lossy",
]
