"""Cover cohomology on the coordinate charts, with stabilization checks."""

import pytest

from branegauge.cech import (
    DEFAULT_CECH_BOUND,
    cech_cohomology_dim,
    cech_level,
    chart_subsets,
    coboundary_tracker,
)
from branegauge.errors import CechStabilizationError, ShapeError
from branegauge.modules import twist
from branegauge.projective import (
    ProjectiveSpace,
    cotangent_sheaf,
    generator,
)

from _oracles import line_bundle_h


def test_chart_subsets_shape():
    # a p-cochain lives on subsets of p+1 charts
    assert chart_subsets(3, 1) == [(0, 1), (0, 2), (1, 2)]
    assert chart_subsets(3, 2) == [(0, 1, 2)]
    assert chart_subsets(2, 2) == []


def test_level_dims_grow_with_bound():
    p = ProjectiveSpace(1)
    o = p.structure_sheaf(0)
    d2 = cech_level(o, 1, 2).dim
    d3 = cech_level(o, 1, 3).dim
    assert d3 > d2


def test_line_bundle_cohomology_on_the_line():
    p = ProjectiveSpace(1)
    for a in range(-4, 4):
        o = p.structure_sheaf(a)
        for i in (0, 1):
            want = line_bundle_h(1, a, i)
            assert cech_cohomology_dim(o, i, bound=4) == want


def test_line_bundle_cohomology_on_the_plane():
    p = ProjectiveSpace(2)
    cases = [
        (0, 0, 1), (0, 1, 0), (0, 2, 0),
        (-3, 2, 1), (-4, 2, 3),
        (1, 0, 3), (-1, 0, 0), (-1, 1, 0),
    ]
    for a, i, want in cases:
        assert want == line_bundle_h(2, a, i)  # keep the oracle honest
        assert cech_cohomology_dim(p.structure_sheaf(a), i) == want


def test_cotangent_cohomology():
    for n in (1, 2, 3):
        p = ProjectiveSpace(n)
        om = cotangent_sheaf(p)
        assert cech_cohomology_dim(om, 0) == 0
        assert cech_cohomology_dim(om, 1) == 1


def test_skyscraper_cohomology():
    p = ProjectiveSpace(2)
    sky = generator(3, p).module
    assert cech_cohomology_dim(sky, 0) == 1
    assert cech_cohomology_dim(sky, 1) == 0
    assert cech_cohomology_dim(sky, 2) == 0


def test_torsion_generator_has_no_cohomology_in_top_degree():
    p = ProjectiveSpace(2)
    s2 = generator(2, p).module
    assert cech_cohomology_dim(s2, 0) == 0
    assert cech_cohomology_dim(s2, 1) == 0


def test_degree_outside_range_is_zero():
    p = ProjectiveSpace(1)
    o = p.structure_sheaf(0)
    assert cech_cohomology_dim(o, -1) == 0
    assert cech_cohomology_dim(o, 5) == 0


def test_stabilization_error_when_window_too_small():
    # h^1(O(-5)) on the line needs a wide window: 0 at bound 2, 2 at bound 3,
    # the true value 4 from bound 4 on
    p = ProjectiveSpace(1)
    o = p.structure_sheaf(-5)
    with pytest.raises(CechStabilizationError):
        cech_cohomology_dim(o, 1, bound=2)
    assert cech_cohomology_dim(o, 1, bound=4) == 4


def test_bound_must_be_positive():
    p = ProjectiveSpace(1)
    with pytest.raises(ShapeError):
        cech_cohomology_dim(p.structure_sheaf(0), 0, bound=0)


def test_default_bound_is_exported():
    assert DEFAULT_CECH_BOUND >= 2


def test_coboundary_tracker_level_consistency():
    p = ProjectiveSpace(1)
    o = p.structure_sheaf(-2)
    level, tracker = coboundary_tracker(o, 1, 3)
    assert level.dim > 0
    # rank of the coboundary span never exceeds the level dimension
    assert tracker.rank <= level.dim
