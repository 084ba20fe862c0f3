import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternspace.errors import UnboundedRegion, ValidationError
from patternspace.field import Scalar, Vector, golden_ratio
from patternspace.generators import (
    PRESETS,
    LatticeGenerator,
    PeriodicWordGenerator,
    ShiftedRowsGenerator,
    SubstitutionGenerator1D,
    fibonacci_point_set,
    fibonacci_tiling,
    fibonacci_word,
    generator_from_description,
    integers,
    materialize,
    preset,
    square_lattice,
)
from patternspace.patterns import point_set
from patternspace.regions import All, ball, box, parse_region

PHI = (1 + math.sqrt(5)) / 2


def fib_oracle(n):
    """Right half of the Fibonacci fixed point by plain string rewriting."""
    w = "a"
    while len(w) < n:
        w = "".join({"a": "ab", "b": "a"}[c] for c in w)
    return w[:n]


def test_integers_in_ball():
    P = materialize(integers(), parse_region("ball:0:5/2"))
    assert P == point_set([-2, -1, 0, 1, 2])


def test_materialize_needs_bounded_region():
    with pytest.raises(UnboundedRegion):
        materialize(integers(), All())


def test_square_lattice_count():
    P = materialize(square_lattice(), ball(Vector((0, 0)), 2))
    # lattice points with x^2 + y^2 <= 4
    assert len(P) == sum(1 for x in range(-2, 3) for y in range(-2, 3) if x * x + y * y <= 4)


def test_lattice_with_motif():
    G = preset("periodic:2:0;1/2")
    assert G.materialize(parse_region("box:0:4")) == point_set([0, F(1, 2), 2, F(5, 2), 4])


def test_fibonacci_word_matches_rewriting():
    assert fibonacci_word().word(0, 200) == fib_oracle(200)


def test_fibonacci_gaps_follow_letters():
    P = materialize(fibonacci_point_set(), box(Vector((0,)), Vector((60,))))
    xs = [float(a.pos[0]) for a in P.atoms]
    word = fib_oracle(len(xs) - 1)
    for (x, y), c in zip(zip(xs, xs[1:]), word):
        assert y - x == pytest.approx(PHI if c == "a" else 1.0)
    assert xs[0] == 0.0


def test_fibonacci_point_set_is_exact():
    P = materialize(fibonacci_point_set(), box(Vector((0,)), Vector((5,))))
    phi = golden_ratio()
    # a b a a b ...: 0, phi, phi + 1, 2 phi + 1
    assert [a.pos[0] for a in P.atoms] == [Scalar(0), phi, phi + 1, 2 * phi + 1]


def test_fibonacci_tiling_starts_a_then_b():
    T = materialize(fibonacci_tiling(), box(Vector((0,)), Vector((3,))))
    labels = [t.label for t in T.atoms]
    assert labels == ["a", "b"]
    assert T.atoms[0].hi == T.atoms[1].lo


def test_fibonacci_left_half_is_legal():
    w = fibonacci_word().word(-40, 80)
    assert "bb" not in w and "aaa" not in w


def test_inflation_factor_is_phi():
    assert fibonacci_point_set().inflation_factor() == golden_ratio()


def test_substitution_rejects_unfixed_seed():
    with pytest.raises(ValidationError):
        SubstitutionGenerator1D(rule=(("a", "ab"), ("b", "a")), lengths=(("a", 1), ("b", 1)), seed=("a", "b"), power=1)


def test_periodic_word():
    G = PeriodicWordGenerator("ab")
    assert "".join(a.tag for a in G.materialize(parse_region("box:-2:3")).atoms) == "ababab"


def shifted_rows_oracle(alpha, mode, lo, hi):
    """Points of the shifted-rows set in a box, from floats."""
    n = 0
    for k in range(math.ceil(lo[1]), math.floor(hi[1]) + 1):
        off = alpha * (k * k if mode == "quadratic" else k)
        for m in range(math.floor(lo[0] - off) - 1, math.ceil(hi[0] - off) + 2):
            if lo[0] <= m + off <= hi[0]:
                n += 1
    return n


@pytest.mark.parametrize("mode", ["quadratic", "linear"])
def test_shifted_rows_counts(mode):
    G = ShiftedRowsGenerator(mode=mode)
    P = G.materialize(box(Vector((-2, -2)), Vector((2, 2))))
    assert len(P) == shifted_rows_oracle(math.sqrt(2), mode, (-2, -2), (2, 2))
    if mode == "linear":
        assert len(P) == 21


def test_shifted_rows_row_offsets():
    G = ShiftedRowsGenerator()
    assert G.offset(3) == 9 * Scalar.sqrt(2)
    assert ShiftedRowsGenerator(mode="linear").offset(3) == 3 * Scalar.sqrt(2)
    with pytest.raises(ValidationError):
        ShiftedRowsGenerator(mode="cubic")


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_windows_are_consistent(seed):
    rng = random.Random(seed)
    name = rng.choice(sorted(PRESETS))
    G = preset(name)
    dim = G.dim
    c = Vector(tuple(Scalar(F(rng.randint(-40, 40), 4)) for _ in range(dim)))
    r = Scalar(F(rng.randint(1, 24), 4))
    inner, outer = ball(c, r), ball(c, r + 3)
    assert G.materialize(outer).cut(inner) == G.materialize(inner)


def test_generated_pattern_cut_and_shift():
    Z = integers().pattern()
    W = parse_region("ball:0:1")
    assert Z.act(Vector((F(1, 2),))).cut(W) == point_set([F(-1, 2), F(1, 2)])
    assert Z.act(Vector((1,))) == Z.act(Vector((1,)))


@pytest.mark.parametrize("name", sorted(PRESETS) + ["periodic:1", "periodic-word:abb"])
def test_descriptions_round_trip(name):
    G = preset(name)
    again = generator_from_description(G.describe())
    W = box(Vector((-3,) * G.dim), Vector((3,) * G.dim))
    assert again.materialize(W) == G.materialize(W)


@pytest.mark.parametrize("bad", ["penrose", "periodic:", "periodic:1:2:3"])
def test_unknown_presets(bad):
    with pytest.raises(ValidationError):
        preset(bad)


def test_lattice_rejects_dependent_basis():
    with pytest.raises(ValidationError):
        LatticeGenerator((Vector((1, 0)), Vector((2, 0))), ())


def test_symbolic_generated_pattern_rejects_fractional_shift():
    with pytest.raises(ValidationError):
        fibonacci_word().pattern().act(Vector((F(1, 2),)))
