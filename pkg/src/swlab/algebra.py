"""Exact arithmetic substrate.

Rationals are ``fractions.Fraction`` (always reduced, positive denominator).
``DensityPoly`` is a Laurent polynomial in one formal variable X with rational
coefficients; density polynomials and their X-derivatives live here.
``SymbolicReal`` is a finite Q-linear combination over a small basis of real
constants (1, log p, log v1, log det v, the two Lambda log-derivatives and the
archimedean calibration constant) plus a float fallback, so that coefficient
identities can be asserted exactly in the log basis.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction

# Symbol keys for SymbolicReal terms.  LogPrime(p) is the string "log(p)".
SYM_UNIT = "1"
SYM_LOG_V1 = "log_v1"
SYM_LOG_DET_V = "log_det_v"
SYM_LAMBDA_NEG1 = "lambda'(-1)/lambda(-1)"
SYM_LAMBDA_2 = "lambda'(2)/lambda(2)"
SYM_KAPPA_INF = "kappa_inf"


def sym_log_prime(p: int) -> str:
    return f"log({p})"


def _is_log_prime(sym: str) -> bool:
    return sym.startswith("log(") and sym.endswith(")")


# Logarithmic derivatives of Lambda(s) = pi^(-s/2) Gamma(s/2) zeta(s).
# Embedded 30-digit literals; regenerate with scripts/regen_constants.py.
# Lambda'(2)/Lambda(2) = -log(pi)/2 + psi(1)/2 + zeta'(2)/zeta(2), and the
# functional equation Lambda(s) = Lambda(1-s) gives the value at -1 as the
# negative.
LAMBDA_PRIME_RATIO_AT_2 = -1.43093376846999932377483408074
LAMBDA_PRIME_RATIO_AT_NEG1 = 1.43093376846999932377483408074


def lambda_constants() -> tuple[float, float]:
    """Return (Lambda'(-1)/Lambda(-1), Lambda'(2)/Lambda(2))."""
    return (LAMBDA_PRIME_RATIO_AT_NEG1, LAMBDA_PRIME_RATIO_AT_2)


class DensityPoly:
    """Laurent polynomial in X over Q, stored as {exponent: coefficient}.

    Zero coefficients are never stored.  Instances are immutable in practice:
    all arithmetic returns new objects.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self.coeffs = clean

    @staticmethod
    def const(c) -> "DensityPoly":
        return DensityPoly({0: Fraction(c)})

    @staticmethod
    def monomial(c, e: int) -> "DensityPoly":
        return DensityPoly({e: Fraction(c)})

    @staticmethod
    def x() -> "DensityPoly":
        return DensityPoly({1: Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DensityPoly.const(other)
        if not isinstance(other, DensityPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other) -> "DensityPoly":
        if isinstance(other, (int, Fraction)):
            other = DensityPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return DensityPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "DensityPoly":
        return DensityPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "DensityPoly":
        return self + (-other if isinstance(other, DensityPoly) else DensityPoly.const(-Fraction(other)))

    def __rsub__(self, other) -> "DensityPoly":
        return DensityPoly.const(other) - self

    def __mul__(self, other) -> "DensityPoly":
        if isinstance(other, (int, Fraction)):
            return DensityPoly({e: c * Fraction(other) for e, c in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return DensityPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "DensityPoly":
        """Multiply by X^k."""
        return DensityPoly({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, x) -> Rational:
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self.coeffs.items():
            if e < 0 and x == 0:
                raise ZeroDivisionError("evaluation at 0 with negative exponents")
            total += c * x**e
        return total

    def derivative(self) -> "DensityPoly":
        return DensityPoly({e - 1: c * e for e, c in self.coeffs.items() if e != 0})

    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def divexact(self, other: "DensityPoly") -> "DensityPoly":
        """Exact division; raises ValueError on a nonzero remainder."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        # Work with ordinary polynomials by clearing X-powers.
        a = self.shift(-self.min_exp()) if self else DensityPoly()
        b = other.shift(-other.min_exp())
        shift = (self.min_exp() - other.min_exp()) if self else 0
        rem = dict(a.coeffs)
        out: dict[int, Fraction] = {}
        lead_e = b.max_exp()
        lead_c = b.coeffs[lead_e]
        while rem:
            e = max(rem)
            if e < lead_e:
                raise ValueError("nonexact polynomial division")
            q = rem[e] / lead_c
            qe = e - lead_e
            out[qe] = q
            for be, bc in b.coeffs.items():
                k = be + qe
                v = rem.get(k, Fraction(0)) - q * bc
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return DensityPoly(out).shift(shift)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*X")
            else:
                parts.append(f"{c}*X^{e}")
        return " + ".join(parts).replace("+ -", "- ")


def interpolate(points: Iterable[tuple[Rational, Rational]]) -> DensityPoly:
    """Lagrange interpolation through exact rational points."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    result = DensityPoly()
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        num = DensityPoly.const(yi)
        den = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            num = num * DensityPoly({1: Fraction(1), 0: -xj})
            den *= xi - xj
        result = result + num * (Fraction(1) / den)
    return result


def poly_derivative_at(poly: DensityPoly, x0) -> Rational:
    return poly.derivative().evaluate(Fraction(x0))


class SymbolicReal:
    """Finite Q-linear combination of named real constants plus a float part."""

    __slots__ = ("terms", "float_part")

    def __init__(self, terms: Mapping[str, Rational] | None = None, float_part: float = 0.0):
        clean = {}
        if terms:
            for s, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[s] = c
        self.terms = clean
        self.float_part = float(float_part)

    @staticmethod
    def zero() -> "SymbolicReal":
        return SymbolicReal()

    @staticmethod
    def rational(c) -> "SymbolicReal":
        return SymbolicReal({SYM_UNIT: Fraction(c)})

    @staticmethod
    def term(symbol: str, c=1) -> "SymbolicReal":
        return SymbolicReal({symbol: Fraction(c)})

    @staticmethod
    def from_float(x: float) -> "SymbolicReal":
        return SymbolicReal(float_part=x)

    def __add__(self, other) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal.rational(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Fraction(0)) + c
        return SymbolicReal(out, self.float_part + other.float_part)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicReal":
        return SymbolicReal({s: -c for s, c in self.terms.items()}, -self.float_part)

    def __sub__(self, other) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal.rational(other)
        return self + (-other)

    def __mul__(self, c) -> "SymbolicReal":
        c = Fraction(c)
        return SymbolicReal({s: v * c for s, v in self.terms.items()}, self.float_part * float(c))

    __rmul__ = __mul__

    def scale_float(self, x: float) -> "SymbolicReal":
        """Multiply by an inexact scalar: the whole value degrades to float."""
        return SymbolicReal.from_float(self.evaluate() * x)

    def is_exact(self) -> bool:
        return self.float_part == 0.0

    def exact_equal(self, other: "SymbolicReal") -> bool:
        return self.terms == other.terms and self.float_part == other.float_part

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return self.exact_equal(other)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.float_part))

    def coefficient(self, symbol: str) -> Rational:
        return self.terms.get(symbol, Fraction(0))

    def evaluate(self, log_v1: float = 0.0, log_det_v: float = 0.0, kappa_inf: float = 0.0) -> float:
        lam_neg1, lam_2 = lambda_constants()
        total = self.float_part
        for s, c in self.terms.items():
            c = float(c)
            if s == SYM_UNIT:
                total += c
            elif s == SYM_LOG_V1:
                total += c * log_v1
            elif s == SYM_LOG_DET_V:
                total += c * log_det_v
            elif s == SYM_LAMBDA_NEG1:
                total += c * lam_neg1
            elif s == SYM_LAMBDA_2:
                total += c * lam_2
            elif s == SYM_KAPPA_INF:
                total += c * kappa_inf
            elif _is_log_prime(s):
                total += c * math.log(int(s[4:-1]))
            else:
                raise ValueError(f"unknown symbol {s!r}")
        return total

    def as_sorted_terms(self) -> list[tuple[str, Rational]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        parts = [f"{c}*{s}" for s, c in self.as_sorted_terms()]
        if self.float_part or not parts:
            parts.append(f"{self.float_part!r}")
        return " + ".join(parts)
