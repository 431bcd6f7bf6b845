"""Refined interaction shapes and their four-variable counting series.

A shape is a two-backbone diagram in which every vertex is an arc
endpoint, every interior arc covers at least one intermolecular arc, all
stacks (interior and intermolecular) have length exactly one, and the
usual joint-diagram axioms hold.  Shapes are counted by x^t z^h u^a1 v^a2
where t is the number of interior arcs, h the number of intermolecular
arcs, and a1/a2 mark intermolecular arcs hugged by a length-2 interior
arc on one side or on both sides.

The series is produced along two independent routes, a production-system
fixed point and a closed quadratic form, plus a brute-force diagram
enumerator that validates both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .errors import CapExceeded, NoConvergence
from .mseries import CapConfig, MSeries

Arc = Tuple[int, int]
ShapeKey = Tuple[int, int, int, int]

#: hard ceiling for the brute-force enumerator (runtime grows fast beyond)
BRUTEFORCE_LIMIT = 5


# ----------------------------------------------------------------------
# shape diagrams
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeDiagram:
    """A shape with 1-based vertices; arcs are stored sorted."""

    n: int
    m: int
    r_arcs: Tuple[Arc, ...]
    s_arcs: Tuple[Arc, ...]
    ext_arcs: Tuple[Arc, ...]

    @classmethod
    def build(cls, n, m, r_arcs, s_arcs, ext_arcs) -> "ShapeDiagram":
        return cls(
            n,
            m,
            tuple(sorted(tuple(a) for a in r_arcs)),
            tuple(sorted(tuple(a) for a in s_arcs)),
            tuple(sorted(tuple(a) for a in ext_arcs)),
        )

    def stats(self) -> ShapeKey:
        a1, a2 = marker_counts(self)
        return (
            len(self.r_arcs) + len(self.s_arcs),
            len(self.ext_arcs),
            a1,
            a2,
        )


def _noncrossing(arcs: Tuple[Arc, ...]) -> bool:
    for (i, j), (a, b) in itertools.combinations(arcs, 2):
        if i < a < j < b or a < i < b < j:
            return False
    return True


def _zigzag_free(r_arcs, s_arcs, ext_arcs) -> bool:
    for i, j in r_arcs:
        below_r = {e for e in ext_arcs if i < e[0] < j}
        if not below_r:
            continue
        for a, b in s_arcs:
            below_s = {e for e in ext_arcs if a < e[1] < b}
            if below_r & below_s and not (below_r <= below_s or below_s <= below_r):
                return False
    return True


def is_valid_shape(d: ShapeDiagram) -> bool:
    """Check the shape axioms (see module docstring)."""
    ends_r: List[int] = []
    ends_s: List[int] = []
    for i, j in d.r_arcs:
        if not 1 <= i < j <= d.n:
            return False
        ends_r += [i, j]
    for i, j in d.s_arcs:
        if not 1 <= i < j <= d.m:
            return False
        ends_s += [i, j]
    for k, kp in d.ext_arcs:
        if not (1 <= k <= d.n and 1 <= kp <= d.m):
            return False
        ends_r.append(k)
        ends_s.append(kp)
    # complete coverage, each vertex used exactly once
    if sorted(ends_r) != list(range(1, d.n + 1)):
        return False
    if sorted(ends_s) != list(range(1, d.m + 1)):
        return False
    if not (_noncrossing(d.r_arcs) and _noncrossing(d.s_arcs)):
        return False
    # intermolecular arcs must be mutually monotone
    ext = sorted(d.ext_arcs)
    for (k1, p1), (k2, p2) in zip(ext, ext[1:]):
        if not (k1 < k2 and p1 < p2):
            return False
    # stacks of length exactly one
    rset, sset, eset = set(d.r_arcs), set(d.s_arcs), set(d.ext_arcs)
    if any((i + 1, j - 1) in rset for i, j in rset):
        return False
    if any((i + 1, j - 1) in sset for i, j in sset):
        return False
    if any((k + 1, p + 1) in eset for k, p in eset):
        return False
    # every interior arc covers an intermolecular endpoint
    for i, j in d.r_arcs:
        if not any(i < e[0] < j for e in d.ext_arcs):
            return False
    for i, j in d.s_arcs:
        if not any(i < e[1] < j for e in d.ext_arcs):
            return False
    return _zigzag_free(d.r_arcs, d.s_arcs, d.ext_arcs)


def marker_counts(d: ShapeDiagram) -> Tuple[int, int]:
    """Count intermolecular arcs with a length-2 interior arc immediately
    above them on exactly one backbone (a1) or on both backbones (a2)."""
    rset, sset = set(d.r_arcs), set(d.s_arcs)
    a1 = a2 = 0
    for k, kp in d.ext_arcs:
        top = (k - 1, k + 1) in rset
        bottom = (kp - 1, kp + 1) in sset
        if top and bottom:
            a2 += 1
        elif top or bottom:
            a1 += 1
    return a1, a2


# ----------------------------------------------------------------------
# brute-force enumeration
# ----------------------------------------------------------------------


def _perfect_matchings(vertices: Tuple[int, ...]) -> Iterator[Tuple[Arc, ...]]:
    """Noncrossing perfect matchings of an ordered vertex tuple."""
    if not vertices:
        yield ()
        return
    first = vertices[0]
    for idx in range(1, len(vertices), 2):
        partner = vertices[idx]
        for inner in _perfect_matchings(vertices[1:idx]):
            for outer in _perfect_matchings(vertices[idx + 1 :]):
                yield ((first, partner),) + inner + outer


def iter_shapes(t: int, h: int) -> Iterator[ShapeDiagram]:
    """All shapes with exactly t interior and h intermolecular arcs."""
    if t == 0 and h == 0:
        yield ShapeDiagram.build(0, 0, (), (), ())
        return
    if h == 0:
        return  # interior arcs need intermolecular descendants
    for t_top in range(t + 1):
        t_bot = t - t_top
        n, m = 2 * t_top + h, 2 * t_bot + h
        for ext_top in itertools.combinations(range(1, n + 1), h):
            interior_top = tuple(v for v in range(1, n + 1) if v not in ext_top)
            for r_arcs in _perfect_matchings(interior_top):
                for ext_bot in itertools.combinations(range(1, m + 1), h):
                    interior_bot = tuple(
                        v for v in range(1, m + 1) if v not in ext_bot
                    )
                    for s_arcs in _perfect_matchings(interior_bot):
                        ext = tuple(zip(ext_top, ext_bot))
                        d = ShapeDiagram.build(n, m, r_arcs, s_arcs, ext)
                        if is_valid_shape(d):
                            yield d


def enumerate_shapes_bruteforce(
    max_interior: int = 4, max_exterior: int = 4
) -> Dict[ShapeKey, int]:
    """Exact shape counts keyed by (t, h, a1, a2) for t <= max_interior,
    h <= max_exterior."""
    if max_interior > BRUTEFORCE_LIMIT or max_exterior > BRUTEFORCE_LIMIT:
        raise CapExceeded(
            f"brute-force caps limited to {BRUTEFORCE_LIMIT}, "
            f"got ({max_interior}, {max_exterior})"
        )
    if max_interior < 0 or max_exterior < 0:
        raise ValueError("caps must be nonnegative")
    counts: Dict[ShapeKey, int] = {}
    for t in range(max_interior + 1):
        for h in range(max_exterior + 1):
            for d in iter_shapes(t, h):
                key = d.stats()
                counts[key] = counts.get(key, 0) + 1
    return counts


# ----------------------------------------------------------------------
# quadratic coefficients and the closed form
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeABC:
    """Exact polynomial coefficients of the quadratic satisfied by the series."""

    a: MSeries
    b: MSeries
    c: MSeries


def shape_abc() -> ShapeABC:
    """A = x(x+2)(z+1); B = -(x(x+2)(z+1)^2 + (x+1)^2 - (2xu + x^2 v) z(z+1));
    C = (x+1)^2 (z+1)."""
    x = MSeries.variable("x")
    z = MSeries.variable("z")
    u = MSeries.variable("u")
    v = MSeries.variable("v")
    zp1 = z + 1
    a = x * (x + 2) * zp1
    marked = (2 * x * u + x * x * v) * z * zp1
    b = -(x * (x + 2) * zp1 * zp1 + (x + 1) * (x + 1) - marked)
    c = (x + 1) * (x + 1) * zp1
    return ShapeABC(a, b, c)


def shape_gf_closed(config: CapConfig) -> MSeries:
    """Series solution of A G^2 + B G + C = 0 with G(0,0,0,0) = 1.

    A vanishes at the origin, so instead of (-B - sqrt(B^2 - 4AC)) / (2A)
    we use the rationalised, origin-regular form 2C / (-B + sqrt(B^2-4AC)),
    whose denominator has constant term 2.
    """
    abc = shape_abc()
    a = abc.a.with_config(config)
    b = abc.b.with_config(config)
    c = abc.c.with_config(config)
    disc = b * b - 4 * a * c
    root = disc.sqrt()
    return (2 * c) * (-b + root).inverse()


# ----------------------------------------------------------------------
# production-system fixed point
# ----------------------------------------------------------------------


@dataclass
class ShapeGrammarState:
    """One iterate of the production system, all components truncated alike."""

    g: MSeries
    g_rc: MSeries
    g_dt: MSeries
    g_c: MSeries
    g_tri_down: MSeries
    g_tri_up: MSeries
    g_square: MSeries
    interaction: MSeries
    iteration: int


def solve_shape_grammar(config: CapConfig) -> ShapeGrammarState:
    """Iterate the productions until the truncated state is stationary.

    Every production raises the combined (x, z) degree, so the state must
    stabilise within max_total_degree + 2 rounds; running past that bound
    indicates an implementation bug and raises NoConvergence.
    """
    limit = config.max_total_degree()
    if limit is None:
        raise ValueError("grammar iteration requires a bounded cap config")
    x = MSeries.variable("x", config)
    z = MSeries.variable("z", config)
    xzu = MSeries.monomial((1, 1, 1, 0), config)
    x2zv = MSeries.monomial((2, 1, 0, 1), config)
    interaction = 1 + z
    x_sq = x * x

    g = interaction
    g_c = MSeries.zero(config)
    for iteration in range(limit + 3):
        g_dt = g - interaction - g_c
        tri_down = xzu + x * g_dt
        tri_up = xzu + x * g_dt
        square = x2zv + x_sq * g_dt
        g_c_new = tri_down + tri_up + square
        g_rc = g * g_c_new
        g_new = g_rc * interaction + interaction
        if g_new == g and g_c_new == g_c:
            return ShapeGrammarState(
                g=g,
                g_rc=g_rc,
                g_dt=g_dt,
                g_c=g_c,
                g_tri_down=tri_down,
                g_tri_up=tri_up,
                g_square=square,
                interaction=interaction,
                iteration=iteration,
            )
        g, g_c = g_new, g_c_new
    raise NoConvergence(
        f"production system did not stabilise within {limit + 3} rounds"
    )


def shape_gf_grammar(config: CapConfig) -> MSeries:
    """Fixed point of the production system; must agree with the closed form."""
    return solve_shape_grammar(config).g
