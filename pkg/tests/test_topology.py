import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternspace.errors import NotCauchyAtStep, UnboundedRegion, ValidationError
from patternspace.field import Scalar, SqrtValue, Vector
from patternspace.generators import fibonacci_point_set, integers, square_lattice
from patternspace.patterns import point_set, word_pattern
from patternspace.regions import ball, parse_region
from patternspace.topology import (
    CauchySchedule,
    EntourageSpec,
    cauchy_limit,
    entourage_axiom_suite,
    hausdorff_check,
    in_entourage,
    local_matching_distance,
    match_radius,
    one_sided_distance,
)

Z = integers().pattern()
K3 = parse_region("ball:0:3")


def shift(x, *rest):
    return Vector((F(x),) + tuple(F(r) for r in rest))


def test_witness_for_a_small_shift():
    w = in_entourage(Z, Z.act(shift(F(1, 20))), K3, F(1, 10))
    assert w is not None and w.least
    # P ∧ K = (gamma Q) ∧ K with Q = Z + 1/20
    assert w.gamma == shift(F(-1, 20))
    assert w.norm == Scalar(F(1, 20))


def test_half_shift_is_not_close():
    assert in_entourage(Z, Z.act(shift(F(1, 2))), K3, F(1, 10)) is None


def test_entourage_spec():
    spec = EntourageSpec(K3, F(1, 10))
    assert in_entourage(Z, Z, spec).gamma == shift(0)
    assert spec.enlarged() == ball(Vector((0,)), Scalar(F(31, 10)))
    with pytest.raises(ValidationError):
        EntourageSpec(K3, 0)
    with pytest.raises(UnboundedRegion):
        EntourageSpec(parse_region("all"), 1)


def test_empty_window_can_be_vacated():
    P = point_set([10])
    Q = point_set([0])
    w = in_entourage(P, Q, parse_region("ball:0:1/2"), F(3, 4))
    assert w is not None and not w.least
    assert not Q.act(w.gamma).cut(parse_region("ball:0:1/2")).atoms
    assert in_entourage(P, Q, parse_region("ball:0:1"), F(1, 2)) is None


def test_symbolic_entourage_uses_integer_shifts():
    P = word_pattern("abab", alphabet="ab")
    Q = word_pattern("abab", start=1, alphabet="ab")
    assert in_entourage(P, Q, parse_region("box:1:2"), F(1, 2)) is None
    assert in_entourage(P, Q, parse_region("box:1:2"), 2).gamma == Vector((Scalar(-1),))


def test_match_radius():
    extra = point_set(list(range(-20, 21)) + [F(1, 2)])
    assert match_radius(Z, extra, shift(0), 20) == SqrtValue(F(1, 4))
    assert match_radius(Z, Z, shift(0), 20) is None


def test_distance_examples():
    d = local_matching_distance(Z, Z.act(shift(F(1, 10))), 20)
    assert d.value == Scalar(F(1, 10)) and d.certified_to == 20
    assert local_matching_distance(Z, point_set(list(range(-25, 26)) + [F(1, 2)]), 20).value == 1
    exact = local_matching_distance(Z, Z, 20)
    assert exact.value == 0 and exact.certified_to is None


def test_distance_is_capped_at_one():
    assert one_sided_distance(Z, Z.act(shift(F(1, 2))), 10) <= Scalar(1)
    assert local_matching_distance(point_set([0]), point_set([]), 5).value == 1


def test_two_dimensional_distance():
    L = square_lattice().pattern()
    d = local_matching_distance(L, L.act(shift(F(3, 40), F(1, 10))), 6)
    assert d.value == Scalar(F(1, 8))


def test_cauchy_run_on_dyadic_shifts():
    base = fibonacci_point_set().pattern()
    patterns = [base.act(shift(F(1, 2 ** (n + 1)))) for n in range(1, 7)]
    run = cauchy_limit(patterns, CauchySchedule(6))
    assert all(run.checks["xi_bounds"]) and all(run.checks["window_equalities"])
    assert run.xi(6) == shift(0)
    # the limit is the first pattern shifted by s_1 - s_N
    expect = base.act(shift(F(1, 128))).cut(parse_region("ball:0:4"))
    assert run.limit.cut(parse_region("ball:0:4")) == expect


def test_non_cauchy_sequence_fails_with_the_step():
    patterns = [Z, Z, Z.act(shift(F(1, 2))), Z]
    with pytest.raises(NotCauchyAtStep) as info:
        cauchy_limit(patterns)
    assert info.value.step == 2


def test_cauchy_needs_two_patterns():
    with pytest.raises(ValidationError):
        cauchy_limit([Z])


def test_hausdorff_examples():
    v = hausdorff_check(Z, Z.act(shift(F(1, 10))), 20)
    assert v.distinct and in_entourage(Z, Z.act(shift(F(1, 10))), v.K, v.v) is None
    assert v.lower_bound <= local_matching_distance(Z, Z.act(shift(F(1, 10))), 20).value
    same = hausdorff_check(Z, point_set(range(-25, 26)), 20)
    assert not same.distinct and same.checked_to == 20


def test_entourage_axiom_suite_small():
    report = entourage_axiom_suite(seed=11, samples=25)
    assert set(report) == {"diagonal", "symmetry", "intersection", "composition"}
    assert all(entry["checked"] == 25 and entry["violations"] == 0 for entry in report.values())


# -- properties ----------------------------------------------------------------------------


def _pattern(rng):
    pts = {F(rng.randint(-24, 24), 4) for _ in range(rng.randint(1, 8))}
    return point_set(sorted(pts))


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_entourages_are_monotone(seed):
    rng = random.Random(seed)
    P = _pattern(rng)
    Q = P.act(shift(F(rng.randint(-4, 4), 16)))
    r = F(rng.randint(1, 12), 4)
    v = F(rng.randint(1, 8), 16)
    small, large = parse_region(f"ball:0:{r}"), parse_region(f"ball:0:{r + 1}")
    if in_entourage(P, Q, large, v) is not None:
        assert in_entourage(P, Q, small, v) is not None
    if in_entourage(P, Q, small, v) is not None:
        assert in_entourage(P, Q, small, v * 2) is not None


@settings(max_examples=120, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_witnesses_verify_and_distance_is_symmetric(seed):
    rng = random.Random(seed)
    P, Q = _pattern(rng), _pattern(rng)
    if rng.random() < 0.5:
        Q = P.act(shift(F(rng.randint(-4, 4), 16)))
    K = parse_region(f"ball:0:{F(rng.randint(1, 12), 4)}")
    w = in_entourage(P, Q, K, F(1, 4))
    if w is not None:
        assert P.cut(K) == Q.act(w.gamma).cut(K)
        assert w.gamma.norm2() <= F(1, 16)
    assert local_matching_distance(P, Q, 8).value == local_matching_distance(Q, P, 8).value
