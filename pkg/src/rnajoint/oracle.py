"""Ground-truth enumeration of two-backbone interaction diagrams.

Everything here is deliberately naive: diagrams are generated explicitly
and checked against the validity predicates, so the module is independent
of every generating-function computation it validates.  Vertices are
1-based on both backbones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .errors import CapExceeded, InvalidDiagram
from .secondary import iter_matchings, min_stack_ok, stack_lengths
from .shapes import ShapeDiagram

Arc = Tuple[int, int]

#: default size caps for the exhaustive joint-structure search
DEFAULT_JOINT_CAPS = {1: 9, 2: 10}
DEFAULT_JOINT_CAP_OTHER = 10


@dataclass(frozen=True)
class JointDiagram:
    """Two backbones of n and m vertices plus three arc sets.

    ``r_arcs``/``s_arcs`` pair vertices within the top/bottom backbone,
    ``i_arcs`` pair a top vertex with a bottom vertex.
    """

    n: int
    m: int
    r_arcs: Tuple[Arc, ...]
    s_arcs: Tuple[Arc, ...]
    i_arcs: Tuple[Arc, ...]

    @classmethod
    def build(cls, n, m, r_arcs=(), s_arcs=(), i_arcs=()) -> "JointDiagram":
        return cls(
            n,
            m,
            tuple(sorted(tuple(a) for a in r_arcs)),
            tuple(sorted(tuple(a) for a in s_arcs)),
            tuple(sorted(tuple(a) for a in i_arcs)),
        )

    @property
    def total_size(self) -> int:
        return self.n + self.m


# ----------------------------------------------------------------------
# validity predicates
# ----------------------------------------------------------------------


def _endpoints_ok(d: JointDiagram) -> bool:
    seen_r: Set[int] = set()
    seen_s: Set[int] = set()
    for i, j in d.r_arcs:
        if not (1 <= i < j <= d.n) or i in seen_r or j in seen_r:
            return False
        seen_r.update((i, j))
    for i, j in d.s_arcs:
        if not (1 <= i < j <= d.m) or i in seen_s or j in seen_s:
            return False
        seen_s.update((i, j))
    for k, kp in d.i_arcs:
        if not (1 <= k <= d.n and 1 <= kp <= d.m):
            return False
        if k in seen_r or kp in seen_s:
            return False
        seen_r.add(k)
        seen_s.add(kp)
    return True


def _noncrossing(arcs: Sequence[Arc]) -> bool:
    for (i, j), (a, b) in itertools.combinations(arcs, 2):
        if i < a < j < b or a < i < b < j:
            return False
    return True


def _exterior_monotone(i_arcs: Sequence[Arc]) -> bool:
    ext = sorted(i_arcs)
    return all(p1 < p2 for (_, p1), (_, p2) in zip(ext, ext[1:]))


def _zigzag_free(d: JointDiagram) -> bool:
    # two interior arcs (one per backbone) sharing a descendant must have
    # nested descendant sets
    below_r = {
        arc: {e for e in d.i_arcs if arc[0] < e[0] < arc[1]} for arc in d.r_arcs
    }
    below_s = {
        arc: {e for e in d.i_arcs if arc[0] < e[1] < arc[1]} for arc in d.s_arcs
    }
    for r, dr in below_r.items():
        if not dr:
            continue
        for s, ds in below_s.items():
            if dr & ds and not (dr <= ds or ds <= dr):
                return False
    return True


def is_joint_structure(d: JointDiagram) -> bool:
    """The size-free axioms: partial matching, noncrossing on each
    backbone, monotone intermolecular arcs, no zig-zag."""
    return (
        d.n >= 0
        and d.m >= 0
        and _endpoints_ok(d)
        and _noncrossing(d.r_arcs)
        and _noncrossing(d.s_arcs)
        and _exterior_monotone(d.i_arcs)
        and _zigzag_free(d)
    )


def exterior_stack_lengths(i_arcs: Sequence[Arc]) -> List[int]:
    """Lengths of maximal runs of diagonally adjacent intermolecular arcs."""
    s = set(i_arcs)
    runs = []
    for k, kp in s:
        if (k - 1, kp - 1) in s:
            continue
        r = 1
        while (k + r, kp + r) in s:
            r += 1
        runs.append(r)
    return runs


def is_valid_joint(d: JointDiagram, sigma: int) -> bool:
    """Full membership test: joint-structure axioms plus arc length
    >= sigma + 2 for interior arcs and stack length >= sigma for every
    maximal run, interior and intermolecular."""
    if not is_joint_structure(d):
        return False
    min_arc = sigma + 2
    for i, j in d.r_arcs:
        if j - i < min_arc:
            return False
    for i, j in d.s_arcs:
        if j - i < min_arc:
            return False
    if any(r < sigma for r in stack_lengths(d.r_arcs)):
        return False
    if any(r < sigma for r in stack_lengths(d.s_arcs)):
        return False
    if any(r < sigma for r in exterior_stack_lengths(d.i_arcs)):
        return False
    return True


# ----------------------------------------------------------------------
# exhaustive generation
# ----------------------------------------------------------------------


def _backbone_candidates(length: int, sigma: int):
    """Canonical single-backbone structures (1-based) with their free vertices."""
    out = []
    for arcs0 in iter_matchings(length, sigma + 2):
        if not min_stack_ok(arcs0, sigma):
            continue
        arcs = tuple((i + 1, j + 1) for i, j in arcs0)
        used = {v for a in arcs for v in a}
        free = tuple(v for v in range(1, length + 1) if v not in used)
        out.append((arcs, free))
    return out


def iter_joint_structures(sigma: int, s: int) -> Iterator[JointDiagram]:
    """Every valid diagram with total size s, grouped by backbone split."""
    for n in range(s + 1):
        m = s - n
        for r_arcs, free_r in _backbone_candidates(n, sigma):
            for s_arcs, free_s in _backbone_candidates(m, sigma):
                kmax = min(len(free_r), len(free_s))
                for k in range(kmax + 1):
                    for top in itertools.combinations(free_r, k):
                        for bottom in itertools.combinations(free_s, k):
                            i_arcs = tuple(zip(top, bottom))
                            if any(
                                r < sigma
                                for r in exterior_stack_lengths(i_arcs)
                            ):
                                continue
                            d = JointDiagram.build(n, m, r_arcs, s_arcs, i_arcs)
                            if _zigzag_free(d):
                                yield d


def count_joint_bruteforce(sigma: int, s: int, cap: Optional[int] = None) -> int:
    """Number of valid diagrams with total size s, by exhaustive search."""
    if cap is None:
        cap = DEFAULT_JOINT_CAPS.get(sigma, DEFAULT_JOINT_CAP_OTHER)
    if s > cap:
        raise CapExceeded(f"size {s} exceeds the oracle cap {cap}")
    if s < 0:
        raise ValueError("size must be nonnegative")
    return sum(1 for _ in iter_joint_structures(sigma, s))


# ----------------------------------------------------------------------
# tight-block decomposition
# ----------------------------------------------------------------------


class TightKind(Enum):
    SINGLE = "single"  # a lone intermolecular arc
    TOP = "top"  # spanning arc on the top backbone only
    BOTTOM = "bottom"  # spanning arc on the bottom backbone only
    BOTH = "both"  # spanning arcs on both backbones


@dataclass(frozen=True)
class TightBlock:
    kind: TightKind
    r_range: Tuple[int, int]
    s_range: Tuple[int, int]
    r_arcs: Tuple[Arc, ...]
    s_arcs: Tuple[Arc, ...]
    i_arcs: Tuple[Arc, ...]


@dataclass(frozen=True)
class SecondarySegment:
    backbone: str  # "R" or "S"
    start: int
    end: int
    arcs: Tuple[Arc, ...]


Piece = Union["TightBlock", "SecondarySegment"]


def _components(d: JointDiagram) -> List[Set[Arc]]:
    """Partition the intermolecular arcs into tight-closure components."""
    parent: Dict[Arc, Arc] = {e: e for e in d.i_arcs}

    def find(a: Arc) -> Arc:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: Arc, b: Arc):
        parent[find(a)] = find(b)

    for i, j in d.r_arcs:
        members = [e for e in d.i_arcs if i < e[0] < j]
        for e in members[1:]:
            union(members[0], e)
    for i, j in d.s_arcs:
        members = [e for e in d.i_arcs if i < e[1] < j]
        for e in members[1:]:
            union(members[0], e)
    groups: Dict[Arc, Set[Arc]] = {}
    for e in d.i_arcs:
        groups.setdefault(find(e), set()).add(e)
    return list(groups.values())


def decompose(d: JointDiagram) -> List[Piece]:
    """Split a diagram into tight blocks and maximal secondary segments.

    Pieces carry their absolute vertex ranges and all contained arcs, so
    that reassemble() restores the diagram exactly.  Ordered by leftmost
    top-backbone position, with bottom-only segments after top pieces at
    the same rank.
    """
    if not is_joint_structure(d):
        raise InvalidDiagram("not a joint structure")

    blocks: List[TightBlock] = []
    covered_r: Set[int] = set()
    covered_s: Set[int] = set()
    for comp in _components(d):
        anc_r = [a for a in d.r_arcs if any(a[0] < e[0] < a[1] for e in comp)]
        anc_s = [a for a in d.s_arcs if any(a[0] < e[1] < a[1] for e in comp)]
        r_pts = [e[0] for e in comp] + [v for a in anc_r for v in a]
        s_pts = [e[1] for e in comp] + [v for a in anc_s for v in a]
        r_lo, r_hi = min(r_pts), max(r_pts)
        s_lo, s_hi = min(s_pts), max(s_pts)
        # induced content: everything inside the ranges belongs to the block
        in_r = tuple(a for a in d.r_arcs if r_lo <= a[0] and a[1] <= r_hi)
        in_s = tuple(a for a in d.s_arcs if s_lo <= a[0] and a[1] <= s_hi)
        in_e = tuple(
            e for e in d.i_arcs if r_lo <= e[0] <= r_hi or s_lo <= e[1] <= s_hi
        )
        if set(in_e) != comp:
            raise InvalidDiagram("tight closures overlap")
        for a in d.r_arcs:
            if a not in in_r and (r_lo <= a[0] <= r_hi or r_lo <= a[1] <= r_hi):
                raise InvalidDiagram("interior arc straddles a block boundary")
        for a in d.s_arcs:
            if a not in in_s and (s_lo <= a[0] <= s_hi or s_lo <= a[1] <= s_hi):
                raise InvalidDiagram("interior arc straddles a block boundary")

        if len(comp) == 1 and not anc_r and not anc_s:
            kind = TightKind.SINGLE
        else:
            span_r = (r_lo, r_hi) in set(d.r_arcs)
            span_s = (s_lo, s_hi) in set(d.s_arcs)
            if span_r and span_s:
                kind = TightKind.BOTH
            elif span_r:
                kind = TightKind.TOP
            elif span_s:
                kind = TightKind.BOTTOM
            else:
                raise InvalidDiagram("tight block matches none of the four kinds")
        blocks.append(
            TightBlock(kind, (r_lo, r_hi), (s_lo, s_hi), in_r, in_s, tuple(sorted(comp)))
        )
        covered_r.update(range(r_lo, r_hi + 1))
        covered_s.update(range(s_lo, s_hi + 1))

    segments: List[SecondarySegment] = []
    for backbone, size, covered, arcs in (
        ("R", d.n, covered_r, d.r_arcs),
        ("S", d.m, covered_s, d.s_arcs),
    ):
        start = None
        for v in range(1, size + 2):
            if v <= size and v not in covered:
                if start is None:
                    start = v
            elif start is not None:
                inside = tuple(a for a in arcs if start <= a[0] and a[1] <= v - 1)
                segments.append(SecondarySegment(backbone, start, v - 1, inside))
                start = None

    def sort_key(piece):
        if isinstance(piece, TightBlock):
            return (0, piece.r_range[0])
        return (0, piece.start) if piece.backbone == "R" else (1, piece.start)

    return sorted(blocks + segments, key=sort_key)


def reassemble(pieces: Sequence[Piece], n: int, m: int) -> JointDiagram:
    """Rebuild a diagram from decompose() output, checking exact coverage."""
    r_arcs: List[Arc] = []
    s_arcs: List[Arc] = []
    i_arcs: List[Arc] = []
    seen_r: Set[int] = set()
    seen_s: Set[int] = set()
    for piece in pieces:
        if isinstance(piece, TightBlock):
            r_arcs += piece.r_arcs
            s_arcs += piece.s_arcs
            i_arcs += piece.i_arcs
            rng_r = range(piece.r_range[0], piece.r_range[1] + 1)
            rng_s = range(piece.s_range[0], piece.s_range[1] + 1)
        elif isinstance(piece, SecondarySegment):
            if piece.backbone == "R":
                r_arcs += piece.arcs
                rng_r, rng_s = range(piece.start, piece.end + 1), range(0)
            else:
                s_arcs += piece.arcs
                rng_r, rng_s = range(0), range(piece.start, piece.end + 1)
        else:
            raise InvalidDiagram(f"unknown piece {piece!r}")
        for v in rng_r:
            if v in seen_r:
                raise InvalidDiagram("pieces overlap on the top backbone")
            seen_r.add(v)
        for v in rng_s:
            if v in seen_s:
                raise InvalidDiagram("pieces overlap on the bottom backbone")
            seen_s.add(v)
    if seen_r != set(range(1, n + 1)) or seen_s != set(range(1, m + 1)):
        raise InvalidDiagram("pieces do not cover the backbones")
    return JointDiagram.build(n, m, r_arcs, s_arcs, i_arcs)


# ----------------------------------------------------------------------
# shape projection
# ----------------------------------------------------------------------


def project_shape(d: JointDiagram) -> ShapeDiagram:
    """The shape of a diagram: drop purely intramolecular content, then
    collapse every stack (interior and intermolecular) to a single arc."""
    if not is_joint_structure(d):
        raise InvalidDiagram("not a joint structure")

    rel_r = [a for a in d.r_arcs if any(a[0] < e[0] < a[1] for e in d.i_arcs)]
    rel_s = [a for a in d.s_arcs if any(a[0] < e[1] < a[1] for e in d.i_arcs)]
    rv = sorted({v for a in rel_r for v in a} | {e[0] for e in d.i_arcs})
    sv = sorted({v for a in rel_s for v in a} | {e[1] for e in d.i_arcs})
    r_arcs = set(rel_r)
    s_arcs = set(rel_s)
    e_arcs = set(d.i_arcs)

    while True:
        pos_r = {v: k for k, v in enumerate(rv)}
        pos_s = {v: k for k, v in enumerate(sv)}
        merged = False
        for arcs, pos, verts in ((r_arcs, pos_r, rv), (s_arcs, pos_s, sv)):
            by_pos = {(pos[i], pos[j]): (i, j) for i, j in arcs}
            for (a, b), orig in by_pos.items():
                inner = by_pos.get((a + 1, b - 1))
                if inner is not None:
                    arcs.remove(inner)
                    verts.remove(inner[0])
                    verts.remove(inner[1])
                    merged = True
                    break
            if merged:
                break
        if merged:
            continue
        by_pos_e = {(pos_r[k], pos_s[kp]): (k, kp) for k, kp in e_arcs}
        for (a, b), orig in by_pos_e.items():
            nxt = by_pos_e.get((a + 1, b + 1))
            if nxt is not None:
                e_arcs.remove(nxt)
                rv.remove(nxt[0])
                sv.remove(nxt[1])
                merged = True
                break
        if not merged:
            break

    pos_r = {v: k + 1 for k, v in enumerate(rv)}
    pos_s = {v: k + 1 for k, v in enumerate(sv)}
    return ShapeDiagram.build(
        len(rv),
        len(sv),
        ((pos_r[i], pos_r[j]) for i, j in r_arcs),
        ((pos_s[i], pos_s[j]) for i, j in s_arcs),
        ((pos_r[k], pos_s[kp]) for k, kp in e_arcs),
    )
