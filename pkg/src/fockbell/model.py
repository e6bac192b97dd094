"""Domain types and the interferometer geometries.

Mode maps are stored exactly.  Each detector row ``j`` carries a squared
row scale ``scale2`` (a ``Fraction`` for the ideal geometries, or whatever
type the transmission ``t`` has for the lossy ones) and one entry per source
mode.  Entries are ``PhasePolynomial`` objects over the setting phases
``zeta``, ``theta``, ``chi`` with Gaussian-integer coefficients, so that::

    v[j][s] = sqrt(scale2[j]) * entry[j][s](zeta, theta, chi)

Factoring the (possibly irrational) row norms out of the entries keeps every
amplitude a Gaussian-integer polynomial times a common per-outcome scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .poly import PhasePolynomial

SETTINGS = ("zeta", "theta", "chi")

TWO_PI = 2.0 * math.pi


class FockBellError(ValueError):
    """Raised when inputs violate an operation's domain constraints."""


class Geometry(str, Enum):
    FIG1 = "fig1"
    SOURCE_LOSS = "fig2-source-loss"
    DETECTOR_LOSS = "fig2-2-detector-loss"
    GHZ = "fig3-ghz"
    HARDY_DD = "fig4-hardy-DD"
    HARDY_DDP = "fig4-hardy-DD'"
    HARDY_DPD = "fig4-hardy-D'D"
    HARDY_DPDP = "fig4-hardy-D'D'"

    @property
    def is_hardy(self) -> bool:
        return self.value.startswith("fig4")

    @property
    def is_lossy(self) -> bool:
        return self in (Geometry.SOURCE_LOSS, Geometry.DETECTOR_LOSS)

    @property
    def n_sources(self) -> int:
        return 3 if self is Geometry.GHZ else 2


class Placement(str, Enum):
    NONE = "none"
    AT_SOURCES = "at-sources"
    AT_DETECTORS = "at-detectors"


def _reduce_angle(x: float) -> float:
    y = (float(x) + math.pi) % TWO_PI - math.pi
    # -pi and pi are the same setting; keep the half-open interval
    if y >= math.pi:
        y -= TWO_PI
    return y


@dataclass(frozen=True)
class SourceSpec:
    n_alpha: int
    n_beta: int
    n_gamma: int | None = None

    def __post_init__(self):
        for name in ("n_alpha", "n_beta", "n_gamma"):
            v = getattr(self, name)
            if v is None:
                continue
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise FockBellError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def counts(self) -> tuple[int, ...]:
        if self.n_gamma is None:
            return (self.n_alpha, self.n_beta)
        return (self.n_alpha, self.n_beta, self.n_gamma)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def n_sources(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class AngleSettings:
    """Phase-shifter settings, stored reduced into [-pi, pi)."""

    zeta: float = 0.0
    theta: float = 0.0
    chi: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "zeta", _reduce_angle(self.zeta))
        object.__setattr__(self, "theta", _reduce_angle(self.theta))
        if self.chi is not None:
            object.__setattr__(self, "chi", _reduce_angle(self.chi))

    def as_dict(self) -> dict[str, float]:
        d = {"zeta": self.zeta, "theta": self.theta}
        d["chi"] = 0.0 if self.chi is None else self.chi
        return d

    def quarter_turns(self, tol: float = 1e-12) -> dict[str, int] | None:
        """Integer multiples of pi/2 for every angle, or None if any is not one."""
        out = {}
        for k, v in self.as_dict().items():
            q = v / (math.pi / 2)
            r = round(q)
            if abs(q - r) > tol:
                return None
            out[k] = int(r) % 4
        return out


@dataclass(frozen=True)
class LossSpec:
    t: float | Fraction = 1
    placement: Placement = Placement.NONE

    def __post_init__(self):
        object.__setattr__(self, "placement", Placement(self.placement))
        if not 0 <= self.t <= 1:
            raise FockBellError(f"transmission must lie in [0, 1], got {self.t!r}")

    @property
    def r(self):
        return 1 - self.t

    @classmethod
    def none(cls) -> "LossSpec":
        return cls(1, Placement.NONE)


class OutcomeCounts(tuple):
    """Per-detector counts ``(m_1, ..., m_J)``; ordering is lexicographic."""

    def __new__(cls, counts: Iterable[int]):
        counts = tuple(int(c) for c in counts)
        if any(c < 0 for c in counts):
            raise FockBellError(f"detector counts must be non-negative: {counts}")
        return super().__new__(cls, counts)

    @property
    def m_a(self) -> int:
        return self[0] + self[1]

    @property
    def m_b(self) -> int:
        return self[2] + self[3]

    @property
    def total(self) -> int:
        return sum(self)

    def factorial_product(self) -> int:
        out = 1
        for m in self:
            out *= math.factorial(m)
        return out


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative ints summing to ``total``, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class MapRow:
    label: str
    scale2: object
    entries: tuple[PhasePolynomial, ...]


@dataclass(frozen=True)
class OutputMap:
    kind: Geometry
    rows: tuple[MapRow, ...]
    angles: AngleSettings
    loss: LossSpec = field(default_factory=LossSpec.none)
    # rows beyond this index are undetected channels (diverted or missed)
    n_detected: int | None = None

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_detectors(self) -> int:
        return self.n_rows if self.n_detected is None else self.n_detected

    @property
    def n_sources(self) -> int:
        return len(self.rows[0].entries)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rows)

    def coefficient(self, j: int, s: int) -> complex:
        row = self.rows[j]
        return math.sqrt(float(row.scale2)) * row.entries[s].evaluate(self.angles.as_dict())

    def matrix(self) -> np.ndarray:
        """Complex-float view of ``v[j][s]`` at the stored angles."""
        return np.array(
            [[self.coefficient(j, s) for s in range(self.n_sources)] for j in range(self.n_rows)],
            dtype=complex,
        )

    def at(self, angles: AngleSettings) -> "OutputMap":
        return OutputMap(self.kind, self.rows, angles, self.loss, self.n_detected)

    def expected_gram(self) -> np.ndarray:
        eye = np.eye(self.n_sources)
        if self.kind.is_lossy and self.n_detected is None:
            return float(self.loss.t) * eye
        return eye


def _row(label: str, scale2, entries: Sequence[tuple[int, int, dict]]) -> MapRow:
    """Build a row from ``(coeff, i_power, exponents)`` triples; coeff 0 means empty."""
    polys = []
    for coeff, ipow, exps in entries:
        if coeff == 0:
            polys.append(PhasePolynomial(SETTINGS))
        else:
            polys.append(PhasePolynomial.monomial(SETTINGS, exps, coeff, ipow))
    return MapRow(label, scale2, tuple(polys))


_Z = {"zeta": 1}
_W = {"theta": 1}
_X = {"chi": 1}
_1: dict = {}

# (coeff, power of i, setting exponents) per source column
_FIG1_ROWS = (
    ("1", ((1, 1, _Z), (1, 1, _1))),    # (i e^{i zeta}, i) / 2
    ("2", ((-1, 0, _Z), (1, 0, _1))),   # (-e^{i zeta}, 1) / 2
    ("3", ((1, 1, _1), (1, 1, _W))),    # (i, i e^{i theta}) / 2
    ("4", ((1, 0, _1), (-1, 0, _W))),   # (1, -e^{i theta}) / 2
)

_GHZ_ROWS = (
    ("1", ((1, 0, _Z), (-1, 1, _1), (0, 0, _1))),
    ("2", ((1, 1, _Z), (-1, 0, _1), (0, 0, _1))),
    ("3", ((0, 0, _1), (1, 0, _W), (-1, 1, _1))),
    ("4", ((0, 0, _1), (1, 1, _W), (-1, 0, _1))),
    ("5", ((-1, 0, _1), (0, 0, _1), (1, 0, _X))),
    ("6", ((1, 1, _1), (0, 0, _1), (1, 1, _X))),
)

# Hardy detectors: label -> (scale2, entries)
_HARDY = {
    "D1": (Fraction(1, 12), ((-3, 0, _1), (1, 1, _1))),
    "D2": (Fraction(1, 6), ((0, 0, _1), (-1, 0, _1))),
    "D3": (Fraction(1, 6), ((-1, 0, _1), (0, 0, _1))),
    "D4": (Fraction(1, 12), ((1, 1, _1), (-3, 0, _1))),
    "D1'": (Fraction(1, 2), ((1, 1, _1), (0, 0, _1))),
    "D2'": (Fraction(1, 4), ((-1, 0, _1), (1, 1, _1))),
    "D3'": (Fraction(1, 4), ((1, 1, _1), (-1, 0, _1))),
    "D4'": (Fraction(1, 2), ((0, 0, _1), (1, 1, _1))),
}

_HARDY_SETS = {
    Geometry.HARDY_DD: ("D1", "D2", "D3", "D4"),
    Geometry.HARDY_DDP: ("D1", "D2", "D3'", "D4'"),
    Geometry.HARDY_DPD: ("D1'", "D2'", "D3", "D4"),
    Geometry.HARDY_DPDP: ("D1'", "D2'", "D3'", "D4'"),
}

_EXPECTED_PLACEMENT = {
    Geometry.SOURCE_LOSS: Placement.AT_SOURCES,
    Geometry.DETECTOR_LOSS: Placement.AT_DETECTORS,
}


def build_network(
    kind: Geometry | str,
    angles: AngleSettings | None = None,
    loss: LossSpec | None = None,
    include_unobserved: bool = False,
) -> OutputMap:
    """Detector-mode map for one of the interferometer geometries.

    Vacuum input ports are dropped.  For the lossy geometries the returned
    rows are the four detected channels; ``include_unobserved=True`` appends
    the diverted (source loss) or missed (detector loss) channels so that the
    full map is isometric.
    """
    kind = Geometry(kind)
    angles = angles if angles is not None else AngleSettings()
    loss = loss if loss is not None else LossSpec.none()

    if (angles.chi is not None) != (kind is Geometry.GHZ):
        raise FockBellError(f"chi must be given exactly for the three-source geometry (kind={kind.value})")
    expected = _EXPECTED_PLACEMENT.get(kind, Placement.NONE)
    if loss.placement is not expected:
        raise FockBellError(f"geometry {kind.value} needs loss placement {expected.value}, got {loss.placement.value}")
    if include_unobserved and not kind.is_lossy:
        raise FockBellError("include_unobserved only applies to the lossy geometries")

    if kind is Geometry.FIG1:
        rows = tuple(_row(lbl, Fraction(1, 4), e) for lbl, e in _FIG1_ROWS)
        return OutputMap(kind, rows, angles, loss)

    if kind.is_lossy:
        t, r = loss.t, loss.r
        rows = [_row(lbl, t * Fraction(1, 4), e) for lbl, e in _FIG1_ROWS]
        n_detected = None
        if include_unobserved:
            n_detected = 4
            if kind is Geometry.SOURCE_LOSS:
                rows.append(_row("5", r, ((1, 1, _1), (0, 0, _1))))
                rows.append(_row("6", r, ((0, 0, _1), (1, 1, _1))))
            else:
                for lbl, e in _FIG1_ROWS:
                    # a_j' = i sqrt(R) * (ideal row j)
                    shifted = tuple((c, ip + 1, ex) for c, ip, ex in e)
                    rows.append(_row(lbl + "'", r * Fraction(1, 4), shifted))
        return OutputMap(kind, tuple(rows), angles, loss, n_detected)

    if kind is Geometry.GHZ:
        rows = tuple(_row(lbl, Fraction(1, 4), e) for lbl, e in _GHZ_ROWS)
        return OutputMap(kind, rows, angles, loss)

    rows = tuple(_row(lbl, *_HARDY[lbl]) for lbl in _HARDY_SETS[kind])
    return OutputMap(kind, rows, angles, loss)


@dataclass(frozen=True)
class OrthonormalityCheck:
    ok: bool
    max_deviation: float

    def __bool__(self) -> bool:
        return self.ok


def check_orthonormal(omap: OutputMap, tol: float = 1e-12) -> OrthonormalityCheck:
    """Compare the column Gram matrix with the geometry's expected Gram."""
    v = omap.matrix()
    gram = v.conj().T @ v
    dev = float(np.max(np.abs(gram - omap.expected_gram())))
    return OrthonormalityCheck(dev <= tol, dev)
