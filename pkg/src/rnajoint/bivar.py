"""Exact bivariate polynomials in (x, y) with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Tuple


def _norm(c):
    if isinstance(c, int):
        return c
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


class BivarPoly:
    """Sparse exact polynomial in two variables.

    Keys are ``(i, j)`` exponent pairs for x^i y^j; zero coefficients are
    never stored, so degree bounds are always tight.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[Tuple[int, int], object]):
        clean = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            c = _norm(c)
            if c:
                clean[(int(i), int(j))] = c
        self._terms = clean

    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls({})

    @classmethod
    def constant(cls, value) -> "BivarPoly":
        return cls({(0, 0): value})

    @classmethod
    def x_power(cls, k: int, coeff=1) -> "BivarPoly":
        return cls({(k, 0): coeff})

    @classmethod
    def y_power(cls, k: int, coeff=1) -> "BivarPoly":
        return cls({(0, k): coeff})

    # ------------------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Tuple[int, int], object]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, i: int, j: int) -> Fraction:
        return Fraction(self._terms.get((i, j), 0))

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=0)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def y_degrees(self) -> Tuple[int, ...]:
        """Sorted distinct powers of y appearing in the polynomial."""
        return tuple(sorted({j for _, j in self._terms}))

    # ------------------------------------------------------------------

    def __add__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            acc = out.get(k, 0) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        res = BivarPoly.zero()
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        res = BivarPoly.zero()
        res._terms = {k: -c for k, c in self._terms.items()}
        return res

    def __sub__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BivarPoly":
        return (-self) + other

    def __mul__(self, other) -> "BivarPoly":
        if isinstance(other, (int, Fraction)):
            c = _norm(other)
            res = BivarPoly.zero()
            if c:
                res._terms = {k: v * c for k, v in self._terms.items()}
            return res
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out: Dict[Tuple[int, int], object] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                acc = out.get(k, 0) + c1 * c2
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        res = BivarPoly.zero()
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivarPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = BivarPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------------

    def eval(self, x, y):
        """Evaluate at numeric (x, y); works for Fraction, float or mpf."""
        by_j: Dict[int, list] = {}
        for (i, j), c in self._terms.items():
            by_j.setdefault(j, []).append((i, c))
        xpows = {0: 1}

        def xp(e):
            if e not in xpows:
                half = xp(e // 2)
                xpows[e] = half * half * (x if e % 2 else 1)
            return xpows[e]

        total = 0
        for j in sorted(by_j):
            inner = 0
            for i, c in by_j[j]:
                inner += c * xp(i)
            total += inner * (y**j)
        return total

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"BivarPoly({len(self._terms)} terms, degx={self.degree_x}, degy={self.degree_y})"
