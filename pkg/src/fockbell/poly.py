"""Laurent polynomials in unit-modulus phase variables.

Every phase integral in this package has an integrand that is a finite
trigonometric polynomial, so ``(1/2pi) * integral d(x)`` over a period is the
coefficient of the zero-frequency monomial.  ``PhasePolynomial`` stores such
integrands as ``{key: coefficient}`` maps where a key is
``(i_power, e_0, e_1, ...)``: ``i_power`` is 0 or 1 (a factor of the
imaginary unit, so that Gaussian-integer arithmetic stays in plain Python
integers) and ``e_k`` is the integer exponent of ``exp(1j * var_k)``.

Coefficients may be ``int``, ``fractions.Fraction`` (exact path) or
``complex``/``float`` (float path); the algebra does not care.
"""

from __future__ import annotations

import cmath
import math
from operator import add
from fractions import Fraction
from typing import Iterable, Mapping

Number = int | Fraction | float | complex


class PhasePolynomial:
    """Sparse Laurent polynomial over named phase variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Number] | None = None):
        self.variables = tuple(variables)
        self.terms: dict[tuple, Number] = {}
        if terms:
            n = len(self.variables) + 1
            for key, c in terms.items():
                if len(key) != n or key[0] not in (0, 1):
                    raise ValueError(f"bad monomial key {key!r} for variables {self.variables}")
                if c != 0:
                    self.terms[key] = self.terms.get(key, 0) + c
            self._prune()

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, variables: Iterable[str], value: Number = 1) -> "PhasePolynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) + (0,) * len(variables): value})

    @classmethod
    def monomial(
        cls,
        variables: Iterable[str],
        exponents: Mapping[str, int] | None = None,
        coeff: Number = 1,
        i_power: int = 0,
    ) -> "PhasePolynomial":
        """``coeff * 1j**i_power * prod exp(1j*e*var)``."""
        variables = tuple(variables)
        exponents = dict(exponents or {})
        unknown = set(exponents) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        i_power %= 4
        if i_power >= 2:
            coeff = -coeff
            i_power -= 2
        key = (i_power,) + tuple(exponents.get(v, 0) for v in variables)
        return cls(variables, {key: coeff})

    @classmethod
    def cosine(cls, variables: Iterable[str], exponents: Mapping[str, int], coeff: Number = 1) -> "PhasePolynomial":
        """``2 * coeff * cos(sum e*var)``, kept with integer coefficients."""
        variables = tuple(variables)
        neg = {k: -v for k, v in exponents.items()}
        return cls.monomial(variables, exponents, coeff) + cls.monomial(variables, neg, coeff)

    def zero(self) -> "PhasePolynomial":
        return PhasePolynomial(self.variables)

    def one(self) -> "PhasePolynomial":
        return PhasePolynomial.constant(self.variables, 1)

    # -- helpers ----------------------------------------------------------
    def _prune(self) -> None:
        self.terms = {k: c for k, c in self.terms.items() if c != 0}

    def _check(self, other: "PhasePolynomial") -> None:
        if other.variables != self.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "PhasePolynomial":
        if isinstance(other, PhasePolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, float, complex)):
            return PhasePolynomial.constant(self.variables, other)
        return NotImplemented

    def copy(self) -> "PhasePolynomial":
        p = PhasePolynomial(self.variables)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # mutable-ish container semantics

    def __repr__(self) -> str:
        if not self.terms:
            return f"PhasePolynomial({self.variables}, 0)"
        parts = []
        for key, c in sorted(self.terms.items()):
            mono = "*".join(
                f"e^({e}i{v})" for v, e in zip(self.variables, key[1:]) if e != 0
            )
            unit = "i*" if key[0] else ""
            parts.append(f"{c}*{unit}{mono}" if mono else f"{c}{'*i' if key[0] else ''}")
        return f"PhasePolynomial({self.variables}, " + " + ".join(parts) + ")"

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        p = PhasePolynomial(self.variables)
        p.terms = out
        p._prune()
        return p

    __radd__ = __add__

    def __neg__(self):
        p = PhasePolynomial(self.variables)
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, float, complex)):
            p = PhasePolynomial(self.variables)
            p.terms = {k: c * other for k, c in self.terms.items()}
            p._prune()
            return p
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, Number] = {}
        get = out.get
        right = list(other.terms.items())
        for ka, ca in self.terms.items():
            for kb, cb in right:
                k = tuple(map(add, ka, kb))
                if k[0] == 2:
                    k = (0,) + k[1:]
                    out[k] = get(k, 0) - ca * cb
                else:
                    out[k] = get(k, 0) + ca * cb
        p = PhasePolynomial(self.variables)
        p.terms = out
        p._prune()
        return p

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(1, other)
            return self * other
        if isinstance(other, Fraction):
            return self * (1 / other)
        if isinstance(other, (float, complex)):
            return self * (1 / other)
        return NotImplemented

    def __pow__(self, n: int) -> "PhasePolynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self) -> "PhasePolynomial":
        """Complex conjugate for real values of every phase variable."""
        out: dict[tuple, Number] = {}
        for k, c in self.terms.items():
            cc = c.conjugate() if isinstance(c, complex) else c
            if k[0]:
                cc = -cc
            key = (k[0],) + tuple(-e for e in k[1:])
            out[key] = out.get(key, 0) + cc
        p = PhasePolynomial(self.variables)
        p.terms = out
        p._prune()
        return p

    # -- variable manipulation -------------------------------------------
    def degree(self, var: str) -> int:
        idx = self.variables.index(var) + 1
        return max((abs(k[idx]) for k in self.terms), default=0)

    def exponents(self, var: str) -> set[int]:
        idx = self.variables.index(var) + 1
        return {k[idx] for k in self.terms}

    def coefficient(self, var: str, exponent: int) -> "PhasePolynomial":
        """Coefficient of ``exp(1j*exponent*var)``, as a polynomial in the other variables."""
        idx = self.variables.index(var) + 1
        rest = self.variables[: idx - 1] + self.variables[idx:]
        out: dict[tuple, Number] = {}
        for k, c in self.terms.items():
            if k[idx] == exponent:
                key = k[:idx] + k[idx + 1:]
                out[key] = out.get(key, 0) + c
        p = PhasePolynomial(rest)
        p.terms = out
        p._prune()
        return p

    def constant_term(self, *variables: str) -> "PhasePolynomial":
        """Average over a full period of each listed variable."""
        p = self
        for v in variables:
            p = p.coefficient(v, 0)
        return p

    def extend(self, variables: Iterable[str]) -> "PhasePolynomial":
        """Re-express over a superset of variables (new ones get exponent 0)."""
        variables = tuple(variables)
        missing = set(self.variables) - set(variables)
        if missing:
            raise ValueError(f"cannot drop variables {sorted(missing)}")
        pos = [self.variables.index(v) + 1 if v in self.variables else None for v in variables]
        out = {}
        for k, c in self.terms.items():
            key = (k[0],) + tuple(k[i] if i is not None else 0 for i in pos)
            out[key] = c
        p = PhasePolynomial(variables)
        p.terms = out
        return p

    def substitute(self, var: str, target: str, factor: int = 1) -> "PhasePolynomial":
        """Replace ``var`` by ``factor * target`` and drop ``var``."""
        idx = self.variables.index(var) + 1
        tdx = self.variables.index(target) + 1
        rest = self.variables[: idx - 1] + self.variables[idx:]
        out: dict[tuple, Number] = {}
        for k, c in self.terms.items():
            k2 = list(k)
            k2[tdx] += factor * k[idx]
            key = tuple(k2[:idx] + k2[idx + 1:])
            out[key] = out.get(key, 0) + c
        p = PhasePolynomial(rest)
        p.terms = out
        p._prune()
        return p

    def substitute_quarter_turns(self, var: str, quarter_turns: int) -> "PhasePolynomial":
        """Set ``var = quarter_turns * pi/2`` exactly and drop it."""
        idx = self.variables.index(var) + 1
        rest = self.variables[: idx - 1] + self.variables[idx:]
        out: dict[tuple, Number] = {}
        for k, c in self.terms.items():
            f = k[0] + (k[idx] * quarter_turns) % 4
            f %= 4
            if f >= 2:
                c = -c
                f -= 2
            key = (f,) + k[1:idx] + k[idx + 1:]
            out[key] = out.get(key, 0) + c
        p = PhasePolynomial(rest)
        p.terms = out
        p._prune()
        return p

    # -- evaluation -------------------------------------------------------
    def scalar(self) -> complex | Number:
        """Value of a polynomial with no non-zero exponents.

        Returns an exact real number when the imaginary part vanishes
        identically and the coefficients are exact.
        """
        re: Number = 0
        im: Number = 0
        for k, c in self.terms.items():
            if any(k[1:]):
                raise ValueError("polynomial is not constant")
            if k[0]:
                im += c
            else:
                re += c
        if isinstance(re, complex) or isinstance(im, complex):
            return re + 1j * im
        if im == 0:
            return re
        return complex(re, im)

    def is_constant(self) -> bool:
        return all(not any(k[1:]) for k in self.terms)

    def evaluate(self, values: Mapping[str, float] | None = None) -> complex:
        """Numerical value for the given phase angles (missing ones default to 0)."""
        values = values or {}
        angles = [float(values.get(v, 0.0)) for v in self.variables]
        total = 0j
        for k, c in self.terms.items():
            phase = sum(e * a for e, a in zip(k[1:], angles))
            unit = 1j if k[0] else 1
            total += complex(c) * unit * cmath.exp(1j * phase)
        return total

    def real_value(self, values: Mapping[str, float] | None = None) -> float:
        return self.evaluate(values).real

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    def to_float(self) -> "PhasePolynomial":
        p = PhasePolynomial(self.variables)
        p.terms = {k: complex(c) for k, c in self.terms.items()}
        return p

    def chop(self, tol: float) -> "PhasePolynomial":
        p = PhasePolynomial(self.variables)
        p.terms = {k: c for k, c in self.terms.items() if abs(complex(c)) > tol}
        return p


def multinomial(counts: Iterable[int]) -> int:
    counts = list(counts)
    out = math.factorial(sum(counts))
    for c in counts:
        out //= math.factorial(c)
    return out
