"""Exact number and series foundation.

Everything downstream (blow-up simulation, jet matrices, series
expansions) runs on the three types defined here:

* ``GaussianRational`` -- elements of Q(i) with ``fractions.Fraction``
  components.  Reality tests are exact comparisons, never floats.
* ``TruncatedSeries`` -- power series in t over Q(i) whose coefficients
  are *known* strictly below a truncation order and *unknown* (not zero!)
  from it on.  Every operation computes the tightest sound truncation.
* ``IntegerSeries`` -- plain integer coefficient vectors supporting
  division by (1 - t^m) via the usual recurrence; carrier of the
  Poincare series expansions.

Plain rationals are ``fractions.Fraction`` throughout the package: it
already guarantees lowest terms and a positive denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, PrecisionExhausted

INFINITE_ORDER = math.inf


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element re + im*i of Q(i)."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "GaussianRational":
        return GaussianRational(_frac(re), _frac(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        if other.is_zero():
            raise InvariantViolation("division by zero in Q(i)")
        norm = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"{self.re}{sign}{imag}"


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


class TruncatedSeries:
    """A power series sum_k c_k t^k with exactly known low-order part.

    ``truncation`` is the first order whose coefficient is unknown
    (``None`` means the series is an exact polynomial: *all* coefficients
    are known).  Coefficients at orders >= truncation are unknown, not
    zero; requesting one raises :class:`PrecisionExhausted`.
    """

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: dict[int, GaussianRational], truncation: int | None):
        if truncation is None:
            self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
        else:
            self.coeffs = {
                k: v for k, v in coeffs.items() if k < truncation and not v.is_zero()
            }
        self.truncation = truncation

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_terms(terms: dict[int, GaussianRational], truncation=None) -> "TruncatedSeries":
        return TruncatedSeries(dict(terms), truncation)

    @staticmethod
    def monomial(exponent: int, coeff: GaussianRational = GR_ONE, truncation=None) -> "TruncatedSeries":
        return TruncatedSeries({exponent: coeff}, truncation)

    @staticmethod
    def zero(truncation=None) -> "TruncatedSeries":
        return TruncatedSeries({}, truncation)

    # -- interrogation ------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    def _tbound(self):
        return INFINITE_ORDER if self.truncation is None else self.truncation

    def order_lower_bound(self):
        """A sound lower bound for ord(self), never raising."""
        if self.coeffs:
            return min(self.coeffs)
        return self._tbound()

    def order(self):
        """Exact ord(self); INFINITE_ORDER for the exact zero series."""
        if self.coeffs:
            return min(self.coeffs)
        if self.is_exact:
            return INFINITE_ORDER
        raise PrecisionExhausted(
            f"series vanishes up to truncation order {self.truncation}; "
            "its order is undetermined"
        )

    def coefficient(self, exponent: int) -> GaussianRational:
        if self.truncation is not None and exponent >= self.truncation:
            raise PrecisionExhausted(
                f"coefficient of t^{exponent} is beyond truncation order {self.truncation}"
            )
        return self.coeffs.get(exponent, GR_ZERO)

    def known_coefficients(self) -> dict[int, GaussianRational]:
        return dict(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        inner = " + ".join(f"({v})*t^{k}" for k, v in sorted(self.coeffs.items()))
        tr = "" if self.is_exact else f" + O(t^{self.truncation})"
        return f"<series {inner or '0'}{tr}>"

    # -- arithmetic ---------------------------------------------------

    def truncate(self, order: int) -> "TruncatedSeries":
        if self.truncation is not None and self.truncation <= order:
            return self
        return TruncatedSeries(self.coeffs, order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        t = min(self._tbound(), other._tbound())
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, GR_ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TruncatedSeries(out, None if math.isinf(t) else int(t))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries({k: -v for k, v in self.coeffs.items()}, self.truncation)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c: GaussianRational) -> "TruncatedSeries":
        if c.is_zero():
            # zero times anything is exactly zero, even unknown tails
            return TruncatedSeries.zero()
        return TruncatedSeries({k: v * c for k, v in self.coeffs.items()}, self.truncation)

    def shift(self, amount: int) -> "TruncatedSeries":
        t = None if self.truncation is None else self.truncation + amount
        return TruncatedSeries({k + amount: v for k, v in self.coeffs.items()}, t)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.is_exact and not self.coeffs) or (other.is_exact and not other.coeffs):
            return TruncatedSeries.zero()
        t = min(
            self._tbound() + other.order_lower_bound(),
            other._tbound() + self.order_lower_bound(),
        )
        out: dict[int, GaussianRational] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if k >= t:
                    continue
                s = out.get(k, GR_ZERO) + a * b
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return TruncatedSeries(out, None if math.isinf(t) else int(t))

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not other.coeffs:
            if other.is_exact:
                raise InvariantViolation("division by the zero series")
            raise PrecisionExhausted(
                "divisor vanishes up to its truncation order; leading term unknown"
            )
        m = min(other.coeffs)
        lead = other.coeffs[m]
        if len(other.coeffs) == 1 and other.is_exact:
            # exact monomial divisor: a shift and a scale, no truncation loss
            return self.shift(-m).scale(GR_ONE / lead)
        if self.is_exact and not self.coeffs:
            return TruncatedSeries.zero()
        if self.is_exact and other.is_exact:
            raise InvariantViolation(
                "division of exact polynomials by a multi-term series has no "
                "finite representation; truncate the dividend first"
            )
        # q = self / other via the ascending recurrence
        #   q_k = (s_{k+m} - sum_{j>m} u_j q_{k+m-j}) / u_m
        lb_s = self.order_lower_bound()
        t_q = min(self._tbound() - m, other._tbound() + lb_s - 2 * m)
        q: dict[int, GaussianRational] = {}
        k = lb_s - m
        rest = [(j, c) for j, c in other.coeffs.items() if j != m]
        while k < t_q:
            acc = self.coeffs.get(k + m, GR_ZERO)
            for j, c in rest:
                qi = q.get(k + m - j)
                if qi is not None:
                    acc = acc - c * qi
            val = acc / lead
            if not val.is_zero():
                q[k] = val
            k += 1
        return TruncatedSeries(q, None if math.isinf(t_q) else int(t_q))


class IntegerSeries:
    """Integer coefficient vector c_0..c_order of a series in t."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        data = list(coeffs)
        if len(data) < order + 1:
            data.extend([0] * (order + 1 - len(data)))
        self.coeffs = data[: order + 1]
        self.order = order

    @staticmethod
    def one(order: int) -> "IntegerSeries":
        return IntegerSeries([1], order)

    def coefficient(self, k: int) -> int:
        if k < 0:
            return 0
        if k > self.order:
            raise PrecisionExhausted(f"coefficient {k} beyond computed order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1] and self.order == other.order

    def __add__(self, other: "IntegerSeries") -> "IntegerSeries":
        n = min(self.order, other.order)
        return IntegerSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __sub__(self, other: "IntegerSeries") -> "IntegerSeries":
        n = min(self.order, other.order)
        return IntegerSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n)

    def __mul__(self, other: "IntegerSeries") -> "IntegerSeries":
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return IntegerSeries(out, n)

    def scale(self, c: int) -> "IntegerSeries":
        return IntegerSeries([c * a for a in self.coeffs], self.order)

    def mul_one_minus_power(self, m: int) -> "IntegerSeries":
        """Multiply by (1 - t^m)."""
        if m <= 0:
            raise ValueError("exponent must be positive")
        out = list(self.coeffs)
        for k in range(self.order, m - 1, -1):
            out[k] -= self.coeffs[k - m]
        return IntegerSeries(out, self.order)

    def div_one_minus_power(self, m: int) -> "IntegerSeries":
        """Divide by (1 - t^m) via c'_k = c_k + c'_{k-m}."""
        if m <= 0:
            raise ValueError("exponent must be positive")
        out = list(self.coeffs)
        for k in range(m, self.order + 1):
            out[k] += out[k - m]
        return IntegerSeries(out, self.order)
