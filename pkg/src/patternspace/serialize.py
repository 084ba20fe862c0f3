"""JSON encoding of scalars, vectors, regions and patterns.

Scalars are ``{"a": [num, den], "b": [num, den], "D": int}``; decoders also
accept literal strings such as ``"3/2+1/2r5"``.  Vectors are arrays of
scalars, regions are tagged term trees, and patterns are tagged by ``kind``
(or ``"generated"`` for a generator description plus a translation).
Encoding then decoding gives back an equal object.
"""

from __future__ import annotations

import json
import os
import tempfile

from .errors import ValidationError
from .field import Scalar, SqrtValue, Vector, format_scalar, parse_scalar
from .patterns import (
    FinitePattern,
    GeneratedPattern,
    Site,
    Tile,
    Weight,
)
from .regions import All, Ball, Box, Empty, Intersection, Points, Region, Union

# -- scalars and vectors --------------------------------------------------------


def _pair(q):
    return [int(q.numerator), int(q.denominator)]


def encode_scalar(x) -> dict:
    x = Scalar.coerce(x)
    return {"a": _pair(x.a), "b": _pair(x.b), "D": x.D}


def decode_scalar(obj) -> Scalar:
    if isinstance(obj, Scalar):
        return obj
    if isinstance(obj, str):
        return parse_scalar(obj)
    if isinstance(obj, bool):
        raise ValidationError("booleans are not scalars")
    if isinstance(obj, int):
        return Scalar(obj)
    if isinstance(obj, dict):
        try:
            a, b, D = obj["a"], obj.get("b", [0, 1]), obj.get("D", 1)
            return Scalar(_rational(a), _rational(b), int(D))
        except (KeyError, TypeError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad scalar {obj!r}: {exc}") from None
    raise ValidationError(f"bad scalar {obj!r}")


def _rational(pair):
    from fractions import Fraction

    if isinstance(pair, int) and not isinstance(pair, bool):
        return Fraction(pair)
    if isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair):
        if pair[1] == 0:
            raise ValidationError("zero denominator")
        return Fraction(pair[0], pair[1])
    raise ValidationError(f"bad rational {pair!r}")


def encode_vector(v: Vector) -> list:
    return [encode_scalar(c) for c in v]


def decode_vector(obj, dim: int | None = None) -> Vector:
    if isinstance(obj, str):
        from .field import parse_vector

        v = parse_vector(obj)
    elif isinstance(obj, list):
        v = Vector(tuple(decode_scalar(c) for c in obj))
    else:
        v = Vector((decode_scalar(obj),))
    if dim is not None and v.dim != dim:
        raise ValidationError(f"expected a {dim}-dimensional vector, got {v.dim}")
    return v


def encode_sqrt(s: SqrtValue) -> dict:
    if s.infinite:
        return {"sqrt_of": "inf"}
    return {"sqrt_of": format_scalar(s.q)}


def decode_sqrt(obj) -> SqrtValue:
    if not isinstance(obj, dict) or "sqrt_of" not in obj:
        raise ValidationError(f"bad square-root value {obj!r}")
    if obj["sqrt_of"] == "inf":
        return SqrtValue.infinity()
    return SqrtValue(decode_scalar(obj["sqrt_of"]))


# -- regions -------------------------------------------------------------------------


def encode_region(C: Region) -> dict:
    if isinstance(C, Empty):
        return {"region": "empty"}
    if isinstance(C, All):
        return {"region": "all"}
    if isinstance(C, Ball):
        return {"region": "ball", "center": encode_vector(C.center), "radius": encode_scalar(C.radius)}
    if isinstance(C, Box):
        return {"region": "box", "lo": encode_vector(C.lo), "hi": encode_vector(C.hi)}
    if isinstance(C, Points):
        return {"region": "points", "points": [encode_vector(p) for p in sorted(C.points)]}
    if isinstance(C, Union):
        return {"region": "union", "parts": [encode_region(p) for p in C.parts]}
    if isinstance(C, Intersection):
        return {"region": "intersection", "parts": [encode_region(p) for p in C.parts]}
    raise ValidationError(f"cannot encode region {C!r}")


def decode_region(obj) -> Region:
    from .regions import parse_region

    if isinstance(obj, str):
        return parse_region(obj)
    if not isinstance(obj, dict) or "region" not in obj:
        raise ValidationError(f"bad region {obj!r}")
    tag = obj["region"]
    try:
        if tag == "empty":
            return Empty()
        if tag == "all":
            return All()
        if tag == "ball":
            return Ball(decode_vector(obj["center"]), decode_scalar(obj["radius"]))
        if tag == "box":
            return Box(decode_vector(obj["lo"]), decode_vector(obj["hi"]))
        if tag == "points":
            return Points(frozenset(decode_vector(p) for p in obj["points"]))
        if tag == "union":
            return Union(tuple(decode_region(p) for p in obj["parts"]))
        if tag == "intersection":
            return Intersection(tuple(decode_region(p) for p in obj["parts"]))
    except KeyError as exc:
        raise ValidationError(f"region {tag!r} is missing {exc}") from None
    raise ValidationError(f"unknown region tag {tag!r}")


# -- generators ------------------------------------------------------------------------


def _encode_value(x):
    if isinstance(x, Scalar):
        return encode_scalar(x)
    if isinstance(x, Vector):
        return encode_vector(x)
    if isinstance(x, dict):
        return {str(k): _encode_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode_value(v) for v in x]
    return x


def encode_generator(G) -> dict:
    return _encode_value(G.describe())


def decode_generator(obj):
    from .generators import generator_from_description

    if not isinstance(obj, dict):
        raise ValidationError(f"bad generator description {obj!r}")
    desc = dict(obj)
    kind = desc.get("generator")
    if kind == "lattice":
        desc["basis"] = [decode_vector(v) for v in desc.get("basis", [])]
        desc["motif"] = [decode_vector(v) for v in desc.get("motif", [])]
    elif kind == "substitution":
        desc["lengths"] = {k: decode_scalar(v) for k, v in desc.get("lengths", {}).items()}
    elif kind == "shifted-rows":
        desc["alpha"] = decode_scalar(desc.get("alpha", "r2"))
    try:
        return generator_from_description(desc)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad generator description: {exc}") from None


# -- patterns -------------------------------------------------------------------------------


def _tag_key(t):
    return (type(t).__name__, str(t))


def _encode_atom(kind, a):
    if kind == "patch":
        out = {"lo": encode_vector(a.lo), "hi": encode_vector(a.hi)}
        if a.label is not None:
            out["label"] = a.label
        return out
    if kind == "pointset":
        return encode_vector(a.pos)
    if kind == "symbolic":
        return {"at": int(a.pos[0].floor()), "symbol": a.tag}
    if kind == "comb":
        return {"at": encode_vector(a.pos), "weight": [encode_scalar(a.tag.re), encode_scalar(a.tag.im)]}
    if kind == "multi":
        return {"at": encode_vector(a.pos), "index": a.tag}
    raise ValidationError(f"unknown pattern kind {kind!r}")


def encode_pattern(P) -> dict:
    if isinstance(P, GeneratedPattern):
        out = {
            "kind": "generated",
            "generator": encode_generator(P.generator),
            "shift": encode_vector(P.shift),
        }
        if not isinstance(P.clip, All):
            out["clip"] = encode_region(P.clip)
        return out
    out = {"kind": P.kind, "dim": P.dim, "atoms": [_encode_atom(P.kind, a) for a in P.atoms]}
    if P.context is not None:
        key = "alphabet" if P.kind == "symbolic" else "labels" if P.kind == "patch" else "index_set"
        out[key] = sorted(P.context, key=_tag_key)
    return out


def decode_pattern(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValidationError("a pattern must be a JSON object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "generated":
            G = decode_generator(obj["generator"])
            shift = decode_vector(obj["shift"], G.dim) if "shift" in obj else None
            clip = decode_region(obj["clip"]) if "clip" in obj else None
            return GeneratedPattern(G, shift, clip)
        dim = int(obj.get("dim", 1))
        raw = obj.get("atoms", [])
        if kind == "pointset":
            atoms = [Site(decode_vector(a, dim)) for a in raw]
            return FinitePattern("pointset", dim, atoms)
        if kind == "patch":
            labels = obj.get("labels")
            atoms = [Tile(decode_vector(a["lo"], dim), decode_vector(a["hi"], dim), a.get("label")) for a in raw]
            from .patterns import patch

            return patch(atoms, dim, labels)
        if kind == "symbolic":
            from .patterns import symbolic

            alphabet = obj.get("alphabet")
            if alphabet is None:
                raise ValidationError("symbolic patterns need an alphabet")
            return symbolic([(decode_scalar(a["at"]), a["symbol"]) for a in raw], alphabet)
        if kind == "comb":
            from .patterns import comb

            items = []
            for a in raw:
                w = a["weight"]
                w = Weight(decode_scalar(w[0]), decode_scalar(w[1])) if isinstance(w, list) else Weight(decode_scalar(w))
                items.append((decode_vector(a["at"], dim), w))
            return comb(items, dim)
        if kind == "multi":
            idx = obj.get("index_set")
            if idx is None:
                raise ValidationError("multi patterns need an index_set")
            idx = frozenset(idx)
            atoms = []
            for a in raw:
                if a["index"] not in idx:
                    raise ValidationError(f"index {a['index']!r} is not in the index set")
                atoms.append(Site(decode_vector(a["at"], dim), a["index"]))
            return FinitePattern("multi", dim, atoms, idx)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"bad {kind} pattern: {exc}") from None
    raise ValidationError(f"unknown pattern kind {kind!r}")


# -- files -------------------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory and rename it into place."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None


def load_pattern(path: str):
    return decode_pattern(load_json(path))
