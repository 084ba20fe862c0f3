import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternspace.errors import DimensionMismatch, UnboundedRegion, ValidationError
from patternspace.field import Scalar, Vector
from patternspace.regions import (
    All,
    Ball,
    Empty,
    Intersection,
    Points,
    ball,
    bounding_box,
    box,
    contains_box,
    intervals_1d,
    parse_region,
    points,
    region_contains,
    region_intersect,
    region_translate,
    region_union,
)
from patternspace.sampling import random_region
from patternspace.spaces import space_by_name


def v(*xs):
    return Vector(tuple(Scalar(Fraction(x)) for x in xs))


def test_closed_ball_contains_its_boundary():
    assert region_contains(ball(v(0), 1), v(1))
    assert not region_contains(ball(v(0), 1), v(Fraction(101, 100)))


def test_empty_contains_nothing():
    assert not region_contains(Empty(), v(0))
    assert not region_contains(Empty(), v(3, 4))


def test_intersection_of_two_balls():
    C = Intersection((ball(v(0), 2), ball(v(3), 2)))
    assert region_contains(C, v(Fraction(3, 2)))
    assert not region_contains(C, v(Fraction(1, 2)))


def test_intersect_identities():
    C = ball(v(0), 1)
    assert region_intersect(All(), C) == C
    assert region_intersect(C, All()) == C
    assert region_intersect(Empty(), C) == Empty()


def test_intersection_membership_agrees_pointwise():
    rng = random.Random(5)
    C = region_intersect(ball(v(0), 1), ball(v(0), 2))
    for _ in range(100):
        x = v(Fraction(rng.randint(-300, 300), 100))
        assert C.contains(x) == ball(v(0), 1).contains(x)


def test_translation():
    assert region_translate(v(0), ball(v(0), 1)) == ball(v(0), 1)
    assert region_translate(v(2), ball(v(0), 1)) == ball(v(2), 1)
    assert region_translate(v(1), points([v(0), v(3)])) == points([v(1), v(4)])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        region_contains(ball(v(0), 1), v(0, 0))
    with pytest.raises(DimensionMismatch):
        region_intersect(ball(v(0), 1), ball(v(0, 0), 1))


def test_bounding_boxes():
    assert bounding_box(Empty()) is None
    with pytest.raises(UnboundedRegion):
        bounding_box(All())
    assert bounding_box(ball(v(1, 2), 1)) == (v(0, 1), v(2, 3))
    assert bounding_box(region_union(box(v(0), v(1)), points([v(5)]))) == (v(0), v(5))
    assert bounding_box(Intersection((All(), box(v(0), v(2)), box(v(1), v(3))))) == (v(1), v(2))
    assert bounding_box(Intersection((box(v(0), v(1)), box(v(2), v(3))))) is None


def test_union_normalization():
    assert region_union() == Empty()
    assert region_union(Empty(), ball(v(0), 1)) == ball(v(0), 1)
    assert region_union(ball(v(0), 1), All()) == All()
    assert points([]) == Empty()


def test_intervals_normal_form():
    C = region_union(box(v(0), v(1)), box(v(1), v(2)), points([v(5)]))
    assert intervals_1d(C) == [(Scalar(0), Scalar(2)), (Scalar(5), Scalar(5))]
    assert intervals_1d(All()) == [(None, None)]


def test_contains_box():
    C = region_union(box(v(0, 0), v(1, 2)), box(v(1, 0), v(2, 2)))
    assert contains_box(C, v(0, 0), v(2, 2))
    assert not contains_box(C, v(0, 0), v(3, 2))
    assert contains_box(ball(v(0), 2), v(-2), v(2))
    assert not contains_box(ball(v(0, 0), 1), v(0, 0), v(1, 1))


@pytest.mark.parametrize(
    "text",
    ["ball:0:5", "ball:0,0:3/2", "box:0,0:1,r2", "points:1;2;1/2", "all", "empty"],
)
def test_parse_region(text):
    C = parse_region(text)
    assert C is not None


@pytest.mark.parametrize("bad", ["ball:0", "box:0", "circle:0:1", "ball:x:1"])
def test_parse_region_rejects(bad):
    with pytest.raises(ValidationError):
        parse_region(bad)


# -- properties ---------------------------------------------------------------------------


def _brute_contains_box_1d(C, lo, hi, steps=64):
    span = hi[0] - lo[0]
    return all(C.contains(Vector((lo[0] + span * Fraction(k, steps),))) for k in range(steps + 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_contains_box_1d_agrees_with_sampling(seed):
    rng = random.Random(seed)
    C = random_region(rng, space_by_name("pointset", 1))
    a, b = sorted(Fraction(rng.randint(-16, 16), 4) for _ in range(2))
    lo, hi = v(a), v(b)
    # sampling at a grid finer than the region's own grid is exact for these terms
    assert contains_box(C, lo, hi) == _brute_contains_box_1d(C, lo, hi)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_translation_commutes_with_membership(seed):
    rng = random.Random(seed)
    space = space_by_name("pointset", rng.choice((1, 2)))
    C = random_region(rng, space)
    g = v(*[Fraction(rng.randint(-8, 8), 4) for _ in range(space.dim)])
    x = v(*[Fraction(rng.randint(-16, 16), 4) for _ in range(space.dim)])
    assert C.translate(g).contains(x + g) == C.contains(x)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_intersect_and_union_are_pointwise(seed):
    rng = random.Random(seed)
    space = space_by_name("pointset", 2)
    A, B = random_region(rng, space), random_region(rng, space)
    for _ in range(10):
        x = v(*[Fraction(rng.randint(-20, 20), 4) for _ in range(2)])
        assert region_intersect(A, B).contains(x) == (A.contains(x) and B.contains(x))
        assert region_union(A, B).contains(x) == (A.contains(x) or B.contains(x))


def test_points_region_dim():
    assert Points(frozenset([v(1, 2)])).dim() == 2
    assert Ball(v(0), Scalar(1)).dim() == 1
