"""Exact truncated univariate power series over rational coefficients.

A :class:`Series` stores the coefficients of x^0 .. x^order as
:class:`fractions.Fraction` values, so every operation is exact.  Results
of binary operations are truncated at the minimum order of the operands;
nothing is ever rounded.  Instances are immutable and safe to share
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Union

from .errors import BadConstantTerm, NonzeroInnerConstant, ZeroConstantDivisor

Rational = Union[int, Fraction]

_HALF = Fraction(1, 2)


def _mul_lists(a: List[Fraction], b: List[Fraction], n: int) -> List[Fraction]:
    """Cauchy product of coefficient lists, truncated at degree n."""
    out = [Fraction(0)] * (n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if not ai:
            continue
        top = min(len(b), n + 1 - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def _div_lists(num: List[Fraction], den: List[Fraction], n: int) -> List[Fraction]:
    """Coefficients of num/den through degree n; den[0] must be nonzero."""
    inv0 = 1 / den[0]
    out = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            dj = den[j]
            if dj:
                acc -= dj * out[k - j]
        out[k] = acc * inv0
    return out


class Series:
    """A univariate formal power series truncated at a fixed order."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        cs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant coefficient")
        self._coeffs = cs

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([Fraction(0)] * (order + 1))

    @classmethod
    def constant(cls, value: Rational, order: int) -> "Series":
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = Fraction(value)
        return cls(coeffs)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: Rational = 1) -> "Series":
        """The series coeff * x^exponent (zero if the exponent exceeds order)."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        coeffs = [Fraction(0)] * (order + 1)
        if exponent <= order:
            coeffs[exponent] = Fraction(coeff)
        return cls(coeffs)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def constant_term(self) -> Fraction:
        return self._coeffs[0]

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} outside truncation order {self.order}")
        return self._coeffs[k]

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def integer_coeffs(self) -> List[int]:
        """Coefficients as ints; raises ValueError if any denominator is not 1."""
        out = []
        for i, c in enumerate(self._coeffs):
            if c.denominator != 1:
                raise ValueError(f"coefficient of x^{i} is not an integer: {c}")
            out.append(c.numerator)
        return out

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return Series(self._coeffs[: order + 1])

    def _padded(self, order: int) -> List[Fraction]:
        # internal zero-extension; only sound inside Newton-style iterations
        return list(self._coeffs) + [Fraction(0)] * (order - self.order)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __add__(self, other) -> "Series":
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return Series([self._coeffs[k] + other._coeffs[k] for k in range(n + 1)])
        if isinstance(other, (int, Fraction)):
            coeffs = list(self._coeffs)
            coeffs[0] += other
            return Series(coeffs)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self._coeffs])

    def __sub__(self, other) -> "Series":
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return Series([self._coeffs[k] - other._coeffs[k] for k in range(n + 1)])
        if isinstance(other, (int, Fraction)):
            coeffs = list(self._coeffs)
            coeffs[0] -= other
            return Series(coeffs)
        return NotImplemented

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return Series(_mul_lists(list(self._coeffs), list(other._coeffs), n))
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self._coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            raise ValueError("negative powers are not supported; divide explicitly")
        result = Series.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("scalar division by zero")
            inv = Fraction(1, 1) / other
            return Series([c * inv for c in self._coeffs])
        if isinstance(other, Series):
            if other._coeffs[0] == 0:
                raise ZeroConstantDivisor(
                    "divisor has zero constant term; use shifted_div for a "
                    "common-valuation quotient"
                )
            n = min(self.order, other.order)
            return Series(_div_lists(list(self._coeffs), list(other._coeffs), n))
        return NotImplemented

    def shifted_div(self, den: "Series") -> "Series":
        """Quotient self/den after cancelling den's valuation x^v from both.

        Requires valuation(self) >= valuation(den); this is the explicit
        entry point for quotients such as (z + z^2)/z whose plain division
        would hit a zero constant term.
        """
        v = den.valuation()
        if v is None:
            raise ZeroConstantDivisor("shifted division by the zero series")
        if v == 0:
            return self / den
        sv = self.valuation()
        if sv is not None and sv < v:
            raise ZeroConstantDivisor(
                f"numerator valuation {sv} below denominator valuation {v}"
            )
        n = min(self.order, den.order) - v
        num = list(self._coeffs[v:])
        d = list(den._coeffs[v:])
        return Series(_div_lists(num, d, n))

    # ------------------------------------------------------------------
    # analytic operations
    # ------------------------------------------------------------------

    def sqrt(self) -> "Series":
        """Square root with constant term +1, by order-doubling Newton steps."""
        if self._coeffs[0] != 1:
            raise BadConstantTerm(
                f"sqrt requires constant term 1, got {self._coeffs[0]}"
            )
        n = self.order
        s = [Fraction(1)]
        correct = 0
        while correct < n:
            correct = min(2 * correct + 1, n)
            a = list(self._coeffs[: correct + 1])
            s = s + [Fraction(0)] * (correct + 1 - len(s))
            quot = _div_lists(a, s, correct)
            s = [(s[k] + quot[k]) * _HALF for k in range(correct + 1)]
        return Series(s)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(x)), truncated at the minimum of the two orders."""
        if inner._coeffs[0] != 0:
            raise NonzeroInnerConstant(
                "composition requires the inner series to have zero constant term"
            )
        n = min(self.order, inner.order)
        coes = list(inner._coeffs[: n + 1])
        acc = [Fraction(0)] * (n + 1)
        for c in reversed(self._coeffs[: n + 1]):
            acc = _mul_lists(acc, coes, n)
            acc[0] += c
        return Series(acc)

    # ------------------------------------------------------------------
    # serialisation and comparison
    # ------------------------------------------------------------------

    def to_csv(self) -> str:
        """Rows ``index,numerator,denominator``, or ``index,integer`` when
        every denominator is 1.  No header, newline-terminated."""
        if all(c.denominator == 1 for c in self._coeffs):
            lines = [f"{k},{c.numerator}" for k, c in enumerate(self._coeffs)]
        else:
            lines = [
                f"{k},{c.numerator},{c.denominator}"
                for k, c in enumerate(self._coeffs)
            ]
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"Series([{head}{tail}], order={self.order})"
