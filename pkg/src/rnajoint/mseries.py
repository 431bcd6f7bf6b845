"""Sparse truncated multivariate series in the four variables (x, z, u, v).

Storage is a map from exponent tuples to exact rational coefficients; a
missing key means a zero coefficient.  Truncation is described by a
:class:`CapConfig`: optional per-variable degree caps plus an optional
weighted-degree bound ``sum(weights[i] * e[i]) <= weighted_bound``.  The
weighted bound is what makes substitution of positive-valuation series
certifiable: a dropped monomial is guaranteed to land beyond the requested
univariate order.

Arithmetic is only defined between series sharing the same config, which
keeps truncation semantics unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import (
    BadConstantTerm,
    DegreeCapTooLow,
    NonzeroInnerConstant,
    ZeroConstantDivisor,
)
from .series import Series

Monomial = Tuple[int, int, int, int]
NVARS = 4
VAR_NAMES = ("x", "z", "u", "v")

ORIGIN: Monomial = (0, 0, 0, 0)


def _norm_coeff(c):
    """Keep integer values as int (fast path); reduce everything else."""
    if isinstance(c, int):
        return c
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class CapConfig:
    """Truncation description for an :class:`MSeries`.

    ``var_caps[i] is None`` means the i-th variable is uncapped, which is
    only sound when the stored object is exact in that direction (e.g. a
    polynomial, or a series whose support is bounded by another variable).
    """

    var_caps: Tuple[Optional[int], ...] = (None, None, None, None)
    weights: Optional[Tuple[int, int, int, int]] = None
    weighted_bound: Optional[int] = None

    def __post_init__(self):
        if len(self.var_caps) != NVARS:
            raise ValueError("var_caps must have four entries")
        if (self.weights is None) != (self.weighted_bound is None):
            raise ValueError("weights and weighted_bound must be given together")
        if self.weights is not None:
            if len(self.weights) != NVARS or any(w < 1 for w in self.weights):
                raise ValueError("weights must be four positive integers")

    def admits(self, mono: Monomial) -> bool:
        for e, cap in zip(mono, self.var_caps):
            if cap is not None and e > cap:
                return False
        if self.weights is not None:
            if sum(w * e for w, e in zip(self.weights, mono)) > self.weighted_bound:
                return False
        return True

    def weighted_degree(self, mono: Monomial) -> int:
        if self.weights is None:
            return sum(mono)
        return sum(w * e for w, e in zip(self.weights, mono))

    def max_total_degree(self) -> Optional[int]:
        """Upper bound on the total degree of any admissible monomial."""
        bounds = []
        if all(cap is not None for cap in self.var_caps):
            bounds.append(sum(self.var_caps))
        if self.weights is not None:
            bounds.append(self.weighted_bound // min(self.weights))
        return min(bounds) if bounds else None


#: Config storing every monomial exactly; suitable for polynomials only.
POLYNOMIAL = CapConfig()


def total_degree_config(bound: int) -> CapConfig:
    """All-ones weighted cap: keep monomials of total degree <= bound."""
    return CapConfig(weights=(1, 1, 1, 1), weighted_bound=bound)


class MSeries:
    """Immutable sparse multivariate series truncated per a :class:`CapConfig`."""

    __slots__ = ("_terms", "_config")

    def __init__(self, terms: Dict[Monomial, object], config: CapConfig = POLYNOMIAL):
        clean: Dict[Monomial, object] = {}
        for mono, coeff in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != NVARS or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono}")
            if not config.admits(mono):
                continue
            c = _norm_coeff(coeff)
            if c:
                clean[mono] = c
        self._terms = clean
        self._config = config

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, config: CapConfig = POLYNOMIAL) -> "MSeries":
        return cls({}, config)

    @classmethod
    def constant(cls, value, config: CapConfig = POLYNOMIAL) -> "MSeries":
        return cls({ORIGIN: value}, config)

    @classmethod
    def monomial(
        cls, mono: Monomial, config: CapConfig = POLYNOMIAL, coeff=1
    ) -> "MSeries":
        return cls({tuple(mono): coeff}, config)

    @classmethod
    def variable(cls, name: str, config: CapConfig = POLYNOMIAL) -> "MSeries":
        idx = VAR_NAMES.index(name)
        mono = tuple(1 if i == idx else 0 for i in range(NVARS))
        return cls({mono: 1}, config)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def config(self) -> CapConfig:
        return self._config

    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return Fraction(self._terms.get(tuple(mono), 0))

    def integer_terms(self) -> Dict[Monomial, int]:
        """Terms as plain ints; raises ValueError on a fractional coefficient."""
        out = {}
        for mono, c in self._terms.items():
            f = Fraction(c)
            if f.denominator != 1:
                raise ValueError(f"coefficient of {mono} is not an integer: {f}")
            out[mono] = f.numerator
        return out

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(ORIGIN, 0))

    def min_total_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return min(sum(m) for m in self._terms)

    def with_config(self, config: CapConfig) -> "MSeries":
        """Re-truncate into another config.

        Only sound when the current series is exact (POLYNOMIAL config) or
        the target config is the same; anything else would launder unknown
        coefficients into a region claimed as exact.
        """
        if config == self._config:
            return self
        if self._config != POLYNOMIAL:
            raise ValueError("can only re-truncate an exact polynomial")
        return MSeries(self._terms, config)

    # ------------------------------------------------------------------
    # ring operations (same-config only)
    # ------------------------------------------------------------------

    def _require_same_config(self, other: "MSeries"):
        if self._config != other._config:
            raise ValueError("operands carry different cap configs")

    def __add__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            other = MSeries.constant(other, self._config)
        if not isinstance(other, MSeries):
            return NotImplemented
        self._require_same_config(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            acc = out.get(mono, 0) + c
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        res = MSeries.zero(self._config)
        res._terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "MSeries":
        res = MSeries.zero(self._config)
        res._terms = {m: -c for m, c in self._terms.items()}
        return res

    def __sub__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            other = MSeries.constant(other, self._config)
        if not isinstance(other, MSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MSeries":
        return (-self) + other

    def __mul__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            c = _norm_coeff(other)
            res = MSeries.zero(self._config)
            if c:
                res._terms = {m: v * c for m, v in self._terms.items()}
            return res
        if not isinstance(other, MSeries):
            return NotImplemented
        self._require_same_config(other)
        cfg = self._config
        out: Dict[Monomial, object] = {}
        if cfg.weights is not None:
            # sort one factor by weighted degree for early cutoff
            bound = cfg.weighted_bound
            bw = sorted(
                (cfg.weighted_degree(m), m, c) for m, c in other._terms.items()
            )
            for m1, c1 in self._terms.items():
                d1 = cfg.weighted_degree(m1)
                for d2, m2, c2 in bw:
                    if d1 + d2 > bound:
                        break
                    mono = (
                        m1[0] + m2[0],
                        m1[1] + m2[1],
                        m1[2] + m2[2],
                        m1[3] + m2[3],
                    )
                    if not cfg.admits(mono):
                        continue
                    acc = out.get(mono, 0) + c1 * c2
                    if acc:
                        out[mono] = acc
                    else:
                        out.pop(mono, None)
        else:
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    mono = (
                        m1[0] + m2[0],
                        m1[1] + m2[1],
                        m1[2] + m2[2],
                        m1[3] + m2[3],
                    )
                    if not cfg.admits(mono):
                        continue
                    acc = out.get(mono, 0) + c1 * c2
                    if acc:
                        out[mono] = acc
                    else:
                        out.pop(mono, None)
        res = MSeries.zero(cfg)
        res._terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MSeries":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = MSeries.constant(1, self._config)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # inverse and square root (bounded configs only)
    # ------------------------------------------------------------------

    def _require_bounded(self, opname: str):
        if self._config.max_total_degree() is None:
            raise ValueError(f"{opname} requires a bounded cap config")

    def inverse(self) -> "MSeries":
        c0 = self._terms.get(ORIGIN, 0)
        if not c0:
            raise ZeroConstantDivisor("inverse of a series with zero constant term")
        self._require_bounded("inverse")
        c0 = Fraction(c0)
        # 1/(c0 (1 + q)) with q of positive total degree: geometric series
        q = self * (Fraction(1) / c0) - 1
        acc = MSeries.constant(1, self._config)
        term = MSeries.constant(1, self._config)
        sign = 1
        while True:
            term = term * q
            if term.is_zero():
                break
            sign = -sign
            acc = acc + (term if sign > 0 else -term)
        return acc * Fraction(1, c0)

    def __truediv__(self, other) -> "MSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("scalar division by zero")
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, MSeries):
            return NotImplemented
        return self * other.inverse()

    def sqrt(self) -> "MSeries":
        """Square root with constant term +1 via the binomial series."""
        if self._terms.get(ORIGIN, 0) != 1:
            raise BadConstantTerm("sqrt requires constant term 1")
        self._require_bounded("sqrt")
        p = self - 1
        acc = MSeries.constant(1, self._config)
        term = MSeries.constant(1, self._config)
        coef = Fraction(1)
        k = 0
        while True:
            k += 1
            coef = coef * (Fraction(1, 2) - (k - 1)) / k
            term = term * p
            if term.is_zero():
                break
            acc = acc + term * coef
        return acc

    # ------------------------------------------------------------------
    # marker erasure (diagnostic)
    # ------------------------------------------------------------------

    def erase_markers(self) -> Dict[Tuple[int, int], Fraction]:
        """Set u = v = 1: returns the (x, z) coefficient map as a plain dict."""
        out: Dict[Tuple[int, int], Fraction] = {}
        for (t, h, _a1, _a2), c in self._terms.items():
            key = (t, h)
            out[key] = out.get(key, Fraction(0)) + c
        return {k: Fraction(v) for k, v in out.items() if v}

    # ------------------------------------------------------------------
    # comparison
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MSeries):
            return NotImplemented
        return self._config == other._config and self._terms == other._terms

    def __hash__(self):
        return hash((self._config, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"MSeries({len(self._terms)} terms, config={self._config})"


def mcompose(g: MSeries, subs: Tuple[Series, Series, Series, Series]) -> Series:
    """Substitute four univariate series into g, returning a univariate series.

    Every substituted series must vanish at the origin.  The result order is
    the minimum order among the substitutions; g's cap config must certify
    that no dropped monomial can contribute below that order, otherwise
    DegreeCapTooLow is raised.
    """
    if len(subs) != NVARS:
        raise ValueError("mcompose needs exactly four substitution series")
    order = min(s.order for s in subs)
    vals = []
    for s in subs:
        if s.constant_term != 0:
            raise NonzeroInnerConstant(
                "substituted series must have zero constant term"
            )
        v = s.valuation()
        vals.append(order + 1 if v is None else v)

    cfg = g.config
    for i, cap in enumerate(cfg.var_caps):
        if cap is not None and vals[i] * (cap + 1) <= order:
            raise DegreeCapTooLow(
                f"cap {cap} on {VAR_NAMES[i]} cannot certify order {order}"
            )
    if cfg.weights is not None:
        if any(w > v for w, v in zip(cfg.weights, vals)):
            raise DegreeCapTooLow(
                "weighted cap uses weights above the substitution valuations"
            )
        if cfg.weighted_bound < order:
            raise DegreeCapTooLow(
                f"weighted bound {cfg.weighted_bound} below requested order {order}"
            )

    # Horner over nested variables; powers of each substitution are cached.
    pows = [{0: Series.one(order)} for _ in range(NVARS)]

    def power(i: int, e: int) -> Series:
        cache = pows[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * subs[i].truncate(order)
        return cache[e]

    def level(items, depth: int) -> Series:
        # items: dict exponent -> (sub-map or coefficient)
        acc = Series.zero(order)
        for e, val in items.items():
            part = (
                level(val, depth + 1)
                if isinstance(val, dict)
                else Series.constant(val, order)
            )
            acc = acc + part * power(depth, e)
        return acc

    nested: Dict = {}
    for (t, h, a1, a2), c in g.terms().items():
        nested.setdefault(t, {}).setdefault(h, {}).setdefault(a1, {})[a2] = c
    if not nested:
        return Series.zero(order)
    return level(nested, 0)
