"""Two-backbone interaction structures: composition of shapes with
secondary-structure fillings.

The counting series H(x) for stack length >= sigma and arc length
>= sigma + 2 is obtained by substituting three derived series (eta for
arcs, eta1/eta2 for the marked classes) into the shape quadratic.  The
primary route solves the substituted quadratic directly in one variable;
an independent route substitutes into the four-variable shape series and
must agree coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .mseries import CapConfig, mcompose
from .secondary import SecondaryParams, secondary_gf
from .series import Series
from .shapes import shape_gf_grammar


@dataclass(frozen=True)
class InflationBundle:
    """Building-block series for expanding a shape into full structures.

    K/Kstar: a stack of >= sigma parallel arcs (interior/intermolecular);
    N/Nstar: induced stacks, i.e. stacks forced apart by nonempty fillings;
    M/Mstar: stems, a stack followed by any number of induced stacks;
    eta, eta1, eta2: per-arc substitution series entering the shape series.
    """

    sigma: int
    order: int
    T: Series
    eta: Series
    eta1: Series
    eta2: Series
    M: Series
    Mstar: Series
    K: Series
    Kstar: Series
    N: Series
    Nstar: Series


def _check(cond: bool, what: str):
    if not cond:
        raise ArithmeticError(f"inflation bundle inconsistency: {what}")


@lru_cache(maxsize=None)
def build_bundle(sigma: int, order: int) -> InflationBundle:
    """Construct all bundle series to the given order and verify the
    defining identities exactly before returning."""
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    n = order
    one = Series.one(n)
    x2 = Series.monomial(2, n)
    x2s = Series.monomial(2 * sigma, n)

    T = secondary_gf(SecondaryParams(sigma, sigma + 2), n)
    T2 = T * T
    T4 = T2 * T2

    K = Series.monomial(2 * sigma, n) / (one - x2)
    N = K * (T2 - one)
    M = K / (one - N)

    denom = one - x2 - x2s * (T2 - one)
    eta = (x2s * T2) / denom
    eta1 = (x2 - one - x2s + (one + x2s) * T2) / T2
    eta2 = (
        one
        - x2
        + x2s
        + (2 * x2 - 2 * one - 3 * x2s) * T2
        + (one + 2 * x2s) * T4
    ) / T4

    bundle = InflationBundle(
        sigma=sigma,
        order=n,
        T=T,
        eta=eta,
        eta1=eta1,
        eta2=eta2,
        M=M,
        Mstar=M,
        K=K,
        Kstar=K,
        N=N,
        Nstar=N,
    )

    # construction-time verification of the defining identities
    _check(eta.constant_term == 0, "eta constant term")
    _check(eta1.constant_term == 0, "eta1 constant term")
    _check(eta2.constant_term == 0, "eta2 constant term")
    if n >= 2 * sigma:
        _check(eta.valuation() == 2 * sigma, "eta valuation")
    _check(M * (one - N) == K, "M (1 - N) = K")
    _check(eta1 * eta == eta - x2s, "eta1 eta = eta - x^(2 sigma)")
    _check(
        eta2 * eta * T2 == eta * T2 - x2s * (2 * T2 - one),
        "eta2 eta T^2 = eta T^2 - x^(2 sigma)(2 T^2 - 1)",
    )
    _check(eta == M * T2, "eta = M T^2")
    return bundle


def quadratic_coefficients(
    bundle: InflationBundle,
) -> Tuple[Series, Series, Series]:
    """The shape quadratic's coefficients with (x, z, u, v) replaced by
    (eta, eta, eta1, eta2); all three are univariate series."""
    eta, eta1, eta2 = bundle.eta, bundle.eta1, bundle.eta2
    one = Series.one(bundle.order)
    ep1 = eta + one
    a = eta * (eta + 2) * ep1
    marked = (2 * eta * eta1 + eta * eta * eta2) * eta * ep1
    b = -(eta * (eta + 2) * ep1 * ep1 + ep1 * ep1 - marked)
    c = ep1 * ep1 * ep1
    return a, b, c


@lru_cache(maxsize=None)
def joint_gf(sigma: int, order: int) -> Series:
    """Counting series of interaction structures by total vertex count.

    Solves the substituted quadratic via the origin-regular closed form
    2C' / (-B' + sqrt(B'^2 - 4 A'C')); A' vanishes at the origin so the
    naive root formula would divide by a zero constant term.
    """
    bundle = build_bundle(sigma, order)
    a, b, c = quadratic_coefficients(bundle)
    root = (b * b - 4 * a * c).sqrt()
    g1 = (2 * c) / (-b + root)
    return bundle.T * bundle.T * g1


def _grammar_weights(bundle: InflationBundle) -> Tuple[int, int, int, int]:
    # a series that vanishes to the truncation order cannot feed anything
    # back below it, so its weight may be taken as order + 1
    fallback = bundle.order + 1
    w1 = bundle.eta1.valuation()
    w2 = bundle.eta2.valuation()
    return (
        max(2 * bundle.sigma, 1),
        max(2 * bundle.sigma, 1),
        fallback if w1 is None else w1,
        fallback if w2 is None else w2,
    )


def joint_gf_via_mseries(sigma: int, order: int) -> Series:
    """Same series through the four-variable route: the shape series is
    computed under a weighted cap matching the substitution valuations and
    then composed with (eta, eta, eta1, eta2)."""
    bundle = build_bundle(sigma, order)
    weights = _grammar_weights(bundle)
    config = CapConfig(weights=weights, weighted_bound=order)
    g = shape_gf_grammar(config)
    composed = mcompose(g, (bundle.eta, bundle.eta, bundle.eta1, bundle.eta2))
    return bundle.T * bundle.T * composed
