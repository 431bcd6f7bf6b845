"""Diagram-level ground truth: validity, counting, decomposition, projection."""

import random

import pytest

from rnajoint import (
    CapExceeded,
    InvalidDiagram,
    JointDiagram,
    SecondarySegment,
    TightBlock,
    TightKind,
    build_bundle,
    count_joint_bruteforce,
    decompose,
    is_joint_structure,
    is_valid_joint,
    is_valid_shape,
    iter_joint_structures,
    joint_gf,
    project_shape,
    reassemble,
)

EMPTY = JointDiagram.build(0, 0)

# a two-stack over an intermolecular two-stack: its inner interior arc has
# length 3, below the canonical minimum of 4
SHORT_INNER_ARC = JointDiagram.build(
    6, 2, r_arcs=[(1, 6), (2, 5)], i_arcs=[(3, 1), (4, 2)]
)

# three intermolecular arcs whose interior ancestors overlap without nesting
ZIGZAG = JointDiagram.build(
    6, 5, r_arcs=[(1, 5)], s_arcs=[(2, 5)], i_arcs=[(2, 1), (3, 3), (6, 4)]
)

# two one-sided hugs and one two-sided hug, all arcs of length exactly 3
HUGGED = JointDiagram.build(
    8, 5, r_arcs=[(1, 4), (5, 8)], s_arcs=[(2, 5)], i_arcs=[(2, 1), (6, 3)]
)


# ----------------------------------------------------------------------
# validity
# ----------------------------------------------------------------------


def test_empty_diagram_is_valid():
    for sigma in (1, 2, 5):
        assert is_valid_joint(EMPTY, sigma)


def test_short_inner_arc_rejected_for_sigma2():
    # stacks all have length 2, so only the arc-length bound fails
    assert is_joint_structure(SHORT_INNER_ARC)
    assert is_valid_joint(SHORT_INNER_ARC, 1)
    assert not is_valid_joint(SHORT_INNER_ARC, 2)


def test_zigzag_rejected():
    assert not is_joint_structure(ZIGZAG)
    assert not is_valid_joint(ZIGZAG, 1)


def test_hugged_diagram_valid_for_sigma1():
    assert is_valid_joint(HUGGED, 1)
    assert not is_valid_joint(HUGGED, 2)  # stacks of length one


def test_endpoints_are_exclusive():
    shared = JointDiagram.build(3, 1, r_arcs=[(1, 3)], i_arcs=[(1, 1)])
    assert not is_joint_structure(shared)


def test_crossing_arcs_rejected():
    crossing = JointDiagram.build(4, 0, r_arcs=[(1, 3), (2, 4)])
    assert not is_joint_structure(crossing)
    skew = JointDiagram.build(2, 2, i_arcs=[(1, 2), (2, 1)])
    assert not is_joint_structure(skew)


def test_build_canonicalises_arc_order():
    a = JointDiagram.build(4, 2, i_arcs=[(3, 2), (1, 1)])
    b = JointDiagram.build(4, 2, i_arcs=[(1, 1), (3, 2)])
    assert a == b


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------


def test_tiny_sizes():
    assert count_joint_bruteforce(2, 0) == 1
    assert count_joint_bruteforce(2, 1) == 2
    assert count_joint_bruteforce(2, 2) == 3  # no arcs admissible yet
    assert count_joint_bruteforce(1, 2) == 4  # the single intermolecular arc


def test_default_caps():
    with pytest.raises(CapExceeded):
        count_joint_bruteforce(2, 11)
    with pytest.raises(CapExceeded):
        count_joint_bruteforce(1, 10)


@pytest.mark.parametrize("sigma,smax", [(2, 8), (1, 7), (3, 8)])
def test_oracle_matches_series(sigma, smax):
    series = joint_gf(sigma, smax).integer_coeffs()
    for s in range(smax + 1):
        assert count_joint_bruteforce(sigma, s) == series[s]


# ----------------------------------------------------------------------
# decomposition
# ----------------------------------------------------------------------


def test_pure_secondary_decomposes_into_two_segments():
    d = JointDiagram.build(5, 3, r_arcs=[(1, 5)], s_arcs=[(1, 3)])
    pieces = decompose(d)
    assert [type(p) for p in pieces] == [SecondarySegment, SecondarySegment]
    assert pieces[0].backbone == "R" and pieces[0].arcs == ((1, 5),)
    assert pieces[1].backbone == "S" and pieces[1].arcs == ((1, 3),)


def test_lone_intermolecular_arc_is_a_single_block():
    d = JointDiagram.build(1, 1, i_arcs=[(1, 1)])
    pieces = decompose(d)
    assert len(pieces) == 1
    block = pieces[0]
    assert isinstance(block, TightBlock)
    assert block.kind is TightKind.SINGLE
    assert block.r_range == (1, 1) and block.s_range == (1, 1)


def test_block_kinds():
    top = JointDiagram.build(3, 1, r_arcs=[(1, 3)], i_arcs=[(2, 1)])
    assert decompose(top)[0].kind is TightKind.TOP
    bottom = JointDiagram.build(1, 3, s_arcs=[(1, 3)], i_arcs=[(1, 2)])
    assert decompose(bottom)[0].kind is TightKind.BOTTOM
    both = JointDiagram.build(
        3, 3, r_arcs=[(1, 3)], s_arcs=[(1, 3)], i_arcs=[(2, 2)]
    )
    assert decompose(both)[0].kind is TightKind.BOTH


def test_hugged_decomposition_mixes_blocks():
    pieces = decompose(HUGGED)
    blocks = [p for p in pieces if isinstance(p, TightBlock)]
    assert {b.kind for b in blocks} == {TightKind.TOP, TightKind.BOTH}
    # every intermolecular arc sits in exactly one block
    seen = [e for b in blocks for e in b.i_arcs]
    assert sorted(seen) == list(HUGGED.i_arcs)


def test_decompose_requires_valid_diagram():
    with pytest.raises(InvalidDiagram):
        decompose(JointDiagram.build(4, 0, r_arcs=[(1, 3), (2, 4)]))


def test_roundtrip_on_random_valid_diagrams():
    pool = []
    for s in range(8):
        pool.extend(iter_joint_structures(1, s))
    for s in range(10):
        pool.extend(iter_joint_structures(2, s))
    rng = random.Random(20240817)
    sample = rng.sample(pool, 200)
    for d in sample:
        assert reassemble(decompose(d), d.n, d.m) == d


# ----------------------------------------------------------------------
# shape projection
# ----------------------------------------------------------------------


def test_pure_secondary_projects_to_empty_shape():
    d = JointDiagram.build(6, 4, r_arcs=[(1, 5)], s_arcs=[(1, 4), (2, 3)])
    shape = project_shape(d)
    assert shape.stats() == (0, 0, 0, 0)
    assert shape.n == shape.m == 0


def test_hugged_projection_statistics():
    shape = project_shape(HUGGED)
    assert shape.stats() == (3, 2, 1, 1)
    assert is_valid_shape(shape)


def test_stack_collapse():
    d = JointDiagram.build(
        8, 2, r_arcs=[(1, 8), (2, 7), (3, 6)], i_arcs=[(4, 1), (5, 2)]
    )
    shape = project_shape(d)
    assert shape.stats() == (1, 1, 1, 0)


def test_interleaved_stem_collapse():
    # stack, then an induced stack separated by unpaired stretches: one stem
    d = JointDiagram.build(
        10, 1, r_arcs=[(1, 10), (3, 8)], i_arcs=[(5, 1)]
    )
    shape = project_shape(d)
    assert shape.stats() == (1, 1, 1, 0)


@pytest.mark.parametrize("sigma,smax", [(1, 6), (2, 8)])
def test_projection_always_yields_valid_shapes(sigma, smax):
    for s in range(smax + 1):
        for d in iter_joint_structures(sigma, s):
            assert is_valid_shape(project_shape(d))


def test_fiber_counts_match_inflation_series():
    smax = 8
    bundle = build_bundle(1, smax)
    t2 = bundle.T * bundle.T
    fibers = {}
    for s in range(smax + 1):
        for d in iter_joint_structures(1, s):
            key = (project_shape(d), s)
            fibers[key] = fibers.get(key, 0) + 1
    assert len({shape for shape, _ in fibers}) > 3
    # the fibers partition the diagrams of every size
    for s in range(smax + 1):
        total = sum(c for (_, size), c in fibers.items() if size == s)
        assert total == count_joint_bruteforce(1, s)
    for (shape, s), count in fibers.items():
        t, h, a1, a2 = shape.stats()
        fiber_gf = (
            t2
            * bundle.eta ** (t + h)
            * bundle.eta1**a1
            * bundle.eta2**a2
        )
        assert int(fiber_gf[s]) == count, (shape, s)
