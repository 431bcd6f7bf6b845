"""Enumeration of canonical secondary structures on a single backbone.

Structures are partial noncrossing matchings with a minimum arc length and
a minimum stack length.  The closed-form generating function is computed
with exact series arithmetic; an independent brute-force enumerator over
explicit matchings provides the ground truth for every coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Tuple

import mpmath as mp

from .bivar import BivarPoly
from .errors import CapExceeded, OutOfDomain, RootNotFound
from .series import Series

#: largest backbone length the brute-force enumerator will accept by default
ORACLE_CAP = 18

Arc = Tuple[int, int]


@dataclass(frozen=True)
class SecondaryParams:
    """Constraint pair: minimum stack length and minimum arc length.

    ``min_arc`` must be at least 2 because the closed form sums backbone
    gaps of length 2..min_arc; smaller values are not defined.
    """

    sigma: int
    min_arc: int

    def __post_init__(self):
        if self.sigma < 1:
            raise ValueError(f"sigma must be >= 1, got {self.sigma}")
        if self.min_arc < 2:
            raise ValueError(f"min_arc must be >= 2, got {self.min_arc}")


# ----------------------------------------------------------------------
# closed-form generating function
# ----------------------------------------------------------------------


def u_poly(params: SecondaryParams) -> Tuple[BivarPoly, BivarPoly]:
    """Numerator and denominator of the stack-weight rational function.

    u(z) = (z^2)^(sigma-1) / (z^(2 sigma) - z^2 + 1); for sigma = 1 the
    denominator collapses to 1.
    """
    s = params.sigma
    num = BivarPoly.x_power(2 * (s - 1))
    den = BivarPoly.x_power(2 * s) - BivarPoly.x_power(2) + BivarPoly.constant(1)
    return num, den


@lru_cache(maxsize=None)
def catalan_gf(order: int) -> Series:
    """Generating function of noncrossing complete matchings, (1-sqrt(1-4z))/(2z)."""
    one = Series.one(order + 1)
    root = (one - Series.monomial(1, order + 1, 4)).sqrt()
    return (one - root).shifted_div(Series.monomial(1, order + 1, 2))


def _u_series(sigma: int, order: int) -> Series:
    num = Series.monomial(2 * (sigma - 1), order)
    den = (
        Series.monomial(2 * sigma, order)
        - Series.monomial(2, order)
        + Series.one(order)
    )
    return num / den


@lru_cache(maxsize=None)
def _secondary_gf(sigma: int, min_arc: int, order: int) -> Series:
    one = Series.one(order)
    u = _u_series(sigma, order)
    gaps = Series.zero(order)
    for h in range(2, min_arc + 1):
        gaps = gaps + Series.monomial(h, order)
    v = one - Series.monomial(1, order) + u * gaps
    vinv = one / v
    arg = u * Series.monomial(2, order) * vinv * vinv
    return vinv * catalan_gf(order).compose(arg)


def secondary_gf(params: SecondaryParams, order: int) -> Series:
    """Counting series of structures with arc length >= min_arc and stack
    length >= sigma, indexed by backbone length."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _secondary_gf(params.sigma, params.min_arc, order)


# ----------------------------------------------------------------------
# brute-force oracle
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _matchings(length: int, min_arc: int) -> Tuple[Tuple[Arc, ...], ...]:
    """All partial noncrossing matchings on 0..length-1 with arc length
    >= min_arc, memoized per (length, min_arc)."""
    if length <= 0:
        return ((),)
    out: List[Tuple[Arc, ...]] = []
    for rest in _matchings(length - 1, min_arc):
        out.append(tuple((i + 1, j + 1) for i, j in rest))
    for j in range(min_arc, length):
        for inner in _matchings(j - 1, min_arc):
            shifted_inner = tuple((i + 1, k + 1) for i, k in inner)
            for outer in _matchings(length - 1 - j, min_arc):
                out.append(
                    ((0, j),)
                    + shifted_inner
                    + tuple((i + j + 1, k + j + 1) for i, k in outer)
                )
    return tuple(out)


def iter_matchings(n: int, min_arc: int) -> Iterable[Tuple[Arc, ...]]:
    """Matchings on vertices 0..n-1 as tuples of (i, j) arcs."""
    return _matchings(n, min_arc)


def stack_lengths(arcs: Iterable[Arc]) -> List[int]:
    """Lengths of the maximal parallel runs in a noncrossing matching."""
    aset = set(arcs)
    runs = []
    for i, j in aset:
        if (i - 1, j + 1) in aset:
            continue
        r = 1
        while (i + r, j - r) in aset:
            r += 1
        runs.append(r)
    return runs


def min_stack_ok(arcs: Iterable[Arc], sigma: int) -> bool:
    return all(r >= sigma for r in stack_lengths(arcs))


def count_secondary_bruteforce(
    params: SecondaryParams, n: int, cap: int = ORACLE_CAP
) -> int:
    """Exact count by exhaustive generation; the stack constraint is checked
    on each completed matching rather than during branching."""
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the oracle cap {cap}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(
        1 for m in _matchings(n, params.min_arc) if min_stack_ok(m, params.sigma)
    )


# ----------------------------------------------------------------------
# high-precision evaluation and the dominant singularity
# ----------------------------------------------------------------------


def _uv_numeric(params: SecondaryParams, x):
    s = params.sigma
    u = x ** (2 * (s - 1)) / (x ** (2 * s) - x**2 + 1)
    v = 1 - x + u * mp.fsum(x**h for h in range(2, params.min_arc + 1))
    return u, v


def secondary_eval(params: SecondaryParams, x, precision_bits: int = 128):
    """Closed-form value of the counting series at a real point.

    Valid strictly below the dominant singularity, where the square-root
    argument stays below 1/4 on its principal branch.
    """
    with mp.workprec(precision_bits):
        xv = mp.mpf(x)
        if xv < 0:
            raise OutOfDomain("negative evaluation point")
        if xv == 0:
            return mp.mpf(1)
        u, v = _uv_numeric(params, xv)
        if v <= 0:
            raise OutOfDomain("series denominator vanished before the point")
        w = u * xv**2 / v**2
        if 4 * w >= 1:
            raise OutOfDomain(
                f"square-root argument {mp.nstr(4 * w, 8)} reached 1 at x={mp.nstr(xv, 8)}"
            )
        f = (1 - mp.sqrt(1 - 4 * w)) / (2 * w)
        return f / v


def _sing_equation(params: SecondaryParams, x):
    # positive infinity once v crosses zero: the crossing happened earlier
    u, v = _uv_numeric(params, x)
    if v <= 0:
        return mp.inf
    return u * x**2 / v**2 - mp.mpf(1) / 4


def secondary_singularity(
    params: SecondaryParams, precision_bits: int = 128, tol: float = 1e-15
):
    """Radius of convergence: minimal positive root of (sqrt(u) x / v)^2 = 1/4,
    bracketed by a scan over (0, 1) and refined by bisection."""
    with mp.workprec(precision_bits):
        step = mp.mpf("0.0005")
        lo = step
        flo = _sing_equation(params, lo)
        if flo >= 0:
            raise RootNotFound("no negative starting value near the origin")
        hi = None
        xcur = lo
        while xcur < 1:
            xnext = xcur + step
            fnext = _sing_equation(params, xnext)
            if fnext >= 0:
                lo, hi = xcur, xnext
                break
            xcur = xnext
        if hi is None:
            raise RootNotFound("no sign change of the branch equation in (0, 1)")
        target = mp.mpf(tol)
        while hi - lo > target:
            mid = (lo + hi) / 2
            if _sing_equation(params, mid) < 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2
