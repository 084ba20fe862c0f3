import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patternspace.errors import ValidationError
from patternspace.field import Scalar, SqrtValue, Vector
from patternspace.generators import PRESETS, preset
from patternspace.patterns import Weight, comb, multi, patch, point_set, word_pattern
from patternspace.regions import box, parse_region
from patternspace.sampling import random_pattern, random_region
from patternspace.serialize import (
    decode_pattern,
    decode_region,
    decode_scalar,
    decode_sqrt,
    decode_vector,
    dumps,
    encode_pattern,
    encode_region,
    encode_scalar,
    encode_sqrt,
    encode_vector,
    load_pattern,
    write_atomic,
)
from patternspace.spaces import space_by_name


def roundtrip(P):
    return decode_pattern(json.loads(dumps(encode_pattern(P))))


def test_scalar_encoding():
    x = Scalar(F(3, 2), F(-1, 2), 5)
    assert encode_scalar(x) == {"a": [3, 2], "b": [-1, 2], "D": 5}
    assert decode_scalar(encode_scalar(x)) == x
    assert decode_scalar("3/2-1/2r5") == x
    assert decode_scalar(4) == Scalar(4)


def test_vector_and_sqrt_encoding():
    v = Vector((F(1, 2), Scalar.sqrt(2)))
    assert decode_vector(encode_vector(v)) == v
    assert decode_vector("1/2,r2", 2) == v
    with pytest.raises(ValidationError):
        decode_vector("1,2", 1)
    assert decode_sqrt(encode_sqrt(SqrtValue(2))) == SqrtValue(2)
    assert encode_sqrt(SqrtValue(F(1, 100))) == {"sqrt_of": "1/100"}
    assert decode_sqrt(encode_sqrt(SqrtValue.infinity())).infinite


@pytest.mark.parametrize(
    "P",
    [
        point_set([0, F(1, 2), Scalar.sqrt(2)]),
        point_set([(0, 1), (2, 3)]),
        patch([(0, 1, "a"), (1, 2, "b")], labels="ab"),
        patch([((0, 0), (1, 1))]),
        word_pattern("abba"),
        comb({0: 1, 3: Weight(2, -1)}),
        multi({0: [0, 2], 1: [1]}),
    ],
)
def test_finite_patterns_round_trip(P):
    assert roundtrip(P) == P


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_generated_patterns_round_trip(name):
    G = preset(name)
    g = F(1) if G.kind == "symbolic" else F(1, 3)
    P = G.pattern().act(Vector((g,) * G.dim)).cut(parse_region("all"))
    again = roundtrip(P)
    W = box(Vector((-4,) * G.dim), Vector((4,) * G.dim))
    assert again.cut(W) == P.cut(W)


def test_region_round_trip():
    for text in ["ball:0:5", "box:0,0:1,r2", "points:1;2;1/2", "all", "empty"]:
        C = parse_region(text)
        assert decode_region(encode_region(C)) == C
    assert decode_region("ball:0:1") == parse_region("ball:0:1")


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"atoms": []},
        {"kind": "hexagons"},
        {"kind": "symbolic", "atoms": []},
        {"kind": "multi", "atoms": [{"at": [0], "index": 3}], "index_set": [0]},
        {"kind": "pointset", "atoms": [{"a": "x"}]},
    ],
)
def test_bad_patterns_are_rejected(obj):
    with pytest.raises(ValidationError):
        decode_pattern(obj)


def test_dumps_is_sorted_and_stable():
    text = dumps({"b": 1, "a": [2]})
    assert text.index('"a"') < text.index('"b"') and text.endswith("\n")


def test_write_atomic_and_load(tmp_path):
    path = tmp_path / "p.json"
    write_atomic(str(path), dumps(encode_pattern(point_set([1, 2]))))
    assert load_pattern(str(path)) == point_set([1, 2])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        load_pattern(str(bad))
    with pytest.raises(ValidationError):
        load_pattern(str(tmp_path / "missing.json"))


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_patterns_and_regions_round_trip(seed):
    rng = random.Random(seed)
    name = rng.choice(["pointset", "lf", "patch", "labeled-patch", "symbolic", "comb", "multi"])
    space = space_by_name(name, 1 if name == "symbolic" else rng.choice((1, 2)))
    P = random_pattern(rng, space)
    assert roundtrip(P) == P
    C = random_region(rng, space)
    assert decode_region(json.loads(dumps(encode_region(C)))) == C
