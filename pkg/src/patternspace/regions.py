"""Closed regions of R^d as a small term algebra.

Every cut performed by the library uses one of these terms: the empty set,
the whole space, closed balls, closed boxes, finite point sets and finite
unions or intersections of those.  Membership is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DimensionMismatch, UnboundedRegion, ValidationError
from .field import Scalar, Vector, as_vector, parse_scalar, parse_vector


class Region:
    """Base class; concrete terms are frozen dataclasses below."""

    def contains(self, x: Vector) -> bool:
        raise NotImplementedError

    def translate(self, v: Vector) -> "Region":
        raise NotImplementedError

    def dim(self):
        return None

    def is_bounded(self) -> bool:
        try:
            bounding_box(self)
        except UnboundedRegion:
            return False
        return True


@dataclass(frozen=True)
class Empty(Region):
    def contains(self, x):
        return False

    def translate(self, v):
        return self


@dataclass(frozen=True)
class All(Region):
    def contains(self, x):
        return True

    def translate(self, v):
        return self


@dataclass(frozen=True)
class Ball(Region):
    """Closed ball ``{y : |y - center| <= radius}``."""

    center: Vector
    radius: Scalar

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        object.__setattr__(self, "radius", Scalar.coerce(self.radius))
        if self.radius.sign() < 0:
            raise ValidationError("ball radius must be non-negative")

    def dim(self):
        return self.center.dim

    def contains(self, x):
        _same_dim(self.center, x)
        return (x - self.center).norm2() <= self.radius * self.radius

    def translate(self, v):
        return Ball(self.center + v, self.radius)


@dataclass(frozen=True)
class Box(Region):
    """Closed axis-parallel box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""

    lo: Vector
    hi: Vector

    def __post_init__(self):
        object.__setattr__(self, "lo", as_vector(self.lo))
        object.__setattr__(self, "hi", as_vector(self.hi))
        _same_dim(self.lo, self.hi)

    def dim(self):
        return self.lo.dim

    def contains(self, x):
        _same_dim(self.lo, x)
        return all(l <= c <= h for l, c, h in zip(self.lo, x, self.hi))

    def translate(self, v):
        return Box(self.lo + v, self.hi + v)

    def is_degenerate_empty(self) -> bool:
        return any(l > h for l, h in zip(self.lo, self.hi))


@dataclass(frozen=True)
class Points(Region):
    points: frozenset

    def __post_init__(self):
        object.__setattr__(self, "points", frozenset(as_vector(p) for p in self.points))

    def dim(self):
        for p in self.points:
            return p.dim
        return None

    def contains(self, x):
        return x in self.points

    def translate(self, v):
        return Points(frozenset(p + v for p in self.points))


@dataclass(frozen=True)
class Union(Region):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def dim(self):
        return _first_dim(self.parts)

    def contains(self, x):
        return any(p.contains(x) for p in self.parts)

    def translate(self, v):
        return Union(tuple(p.translate(v) for p in self.parts))


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def dim(self):
        return _first_dim(self.parts)

    def contains(self, x):
        return all(p.contains(x) for p in self.parts)

    def translate(self, v):
        return Intersection(tuple(p.translate(v) for p in self.parts))


def _first_dim(parts):
    for p in parts:
        d = p.dim()
        if d is not None:
            return d
    return None


def _same_dim(a: Vector, b: Vector):
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension {a.dim} vs {b.dim}")


# -- the operations -------------------------------------------------------------


def region_contains(C: Region, x) -> bool:
    x = as_vector(x)
    d = C.dim()
    if d is not None and d != x.dim:
        raise DimensionMismatch(f"region of dimension {d}, point of dimension {x.dim}")
    return C.contains(x)


def region_intersect(C1: Region, C2: Region) -> Region:
    """Intersection term; ``All`` is the identity and ``Empty`` absorbs."""
    if isinstance(C1, All):
        return C2
    if isinstance(C2, All):
        return C1
    if isinstance(C1, Empty) or isinstance(C2, Empty):
        return Empty()
    if C1 == C2:
        return C1
    d1, d2 = C1.dim(), C2.dim()
    if d1 is not None and d2 is not None and d1 != d2:
        raise DimensionMismatch(f"dimension {d1} vs {d2}")
    parts = []
    for c in (C1, C2):
        parts.extend(c.parts if isinstance(c, Intersection) else (c,))
    return Intersection(tuple(parts))


def region_union(*regions: Region) -> Region:
    parts = []
    for c in regions:
        if isinstance(c, All):
            return c
        if isinstance(c, Empty):
            continue
        parts.extend(c.parts if isinstance(c, Union) else (c,))
    if not parts:
        return Empty()
    if len(parts) == 1:
        return parts[0]
    return Union(tuple(parts))


def region_translate(g, C: Region) -> Region:
    return C.translate(as_vector(g))


def ball(center, radius) -> Ball:
    return Ball(as_vector(center), Scalar.coerce(radius))


def box(lo, hi) -> Box:
    return Box(as_vector(lo), as_vector(hi))


def points(pts) -> Region:
    pts = frozenset(as_vector(p) for p in pts)
    return Points(pts) if pts else Empty()


# -- bounding boxes -----------------------------------------------------------


def bounding_box(C: Region):
    """Return ``(lo, hi)`` with ``C`` inside the closed box, or ``None`` if ``C`` is empty.

    Raises :class:`UnboundedRegion` when no finite box exists.
    """
    if isinstance(C, Empty):
        return None
    if isinstance(C, All):
        raise UnboundedRegion("the whole space is unbounded")
    if isinstance(C, Ball):
        r = C.radius
        return (
            Vector._make(tuple(c - r for c in C.center)),
            Vector._make(tuple(c + r for c in C.center)),
        )
    if isinstance(C, Box):
        if C.is_degenerate_empty():
            return None
        return C.lo, C.hi
    if isinstance(C, Points):
        if not C.points:
            return None
        pts = list(C.points)
        d = pts[0].dim
        lo = tuple(min(p[i] for p in pts) for i in range(d))
        hi = tuple(max(p[i] for p in pts) for i in range(d))
        return Vector._make(lo), Vector._make(hi)
    if isinstance(C, Union):
        boxes = [bounding_box(p) for p in C.parts]
        boxes = [b for b in boxes if b is not None]
        if not boxes:
            return None
        d = boxes[0][0].dim
        lo = tuple(min(b[0][i] for b in boxes) for i in range(d))
        hi = tuple(max(b[1][i] for b in boxes) for i in range(d))
        return Vector._make(lo), Vector._make(hi)
    if isinstance(C, Intersection):
        boxes = []
        for p in C.parts:
            try:
                b = bounding_box(p)
            except UnboundedRegion:
                continue
            if b is None:
                return None
            boxes.append(b)
        if not boxes:
            raise UnboundedRegion("intersection of unbounded regions")
        d = boxes[0][0].dim
        lo = tuple(max(b[0][i] for b in boxes) for i in range(d))
        hi = tuple(min(b[1][i] for b in boxes) for i in range(d))
        if any(l > h for l, h in zip(lo, hi)):
            return None
        return Vector._make(lo), Vector._make(hi)
    raise ValidationError(f"unknown region term {C!r}")


def require_bounded(C: Region):
    bb = bounding_box(C)
    return bb


# -- one-dimensional normal form --------------------------------------------------

# A closed subset of the line built from the terms above is a finite union of
# closed intervals [l, h] (l == h for isolated points); None marks infinity.


def intervals_1d(C: Region):
    if isinstance(C, Empty):
        return []
    if isinstance(C, All):
        return [(None, None)]
    if isinstance(C, Ball):
        c = C.center[0]
        return [(c - C.radius, c + C.radius)]
    if isinstance(C, Box):
        return [] if C.lo[0] > C.hi[0] else [(C.lo[0], C.hi[0])]
    if isinstance(C, Points):
        return _normalize([(p[0], p[0]) for p in C.points])
    if isinstance(C, Union):
        out = []
        for p in C.parts:
            out.extend(intervals_1d(p))
        return _normalize(out)
    if isinstance(C, Intersection):
        cur = [(None, None)]
        for p in C.parts:
            cur = _intersect_lists(cur, intervals_1d(p))
            if not cur:
                break
        return cur
    raise ValidationError(f"unknown region term {C!r}")


def _lo_key(l):
    return (0, 0) if l is None else (1, l)


def _normalize(ivs):
    ivs = sorted(ivs, key=lambda iv: _lo_key(iv[0]))
    out = []
    for l, h in ivs:
        if out:
            pl, ph = out[-1]
            if ph is None or (l is not None and l <= ph):
                if ph is not None and (h is None or h > ph):
                    out[-1] = (pl, h)
                continue
        out.append((l, h))
    return out


def _intersect_lists(A, B):
    out = []
    for al, ah in A:
        for bl, bh in B:
            l = bl if al is None else (al if bl is None else max(al, bl))
            h = bh if ah is None else (ah if bh is None else min(ah, bh))
            if l is None or h is None or l <= h:
                out.append((l, h))
    return _normalize(out)


def _interval_covered(ivs, lo, hi) -> bool:
    for l, h in ivs:
        if (l is None or l <= lo) and (h is None or h >= hi):
            return True
    return False


# -- box containment ------------------------------------------------------------


def contains_box(C: Region, lo: Vector, hi: Vector) -> bool:
    """Decide whether the closed box ``[lo, hi]`` lies inside ``C``.

    For a closed ``C`` this is the same as containing the open box, which is
    what cutting a patch needs.  Exact in dimension 1 and for every term
    other than a union in dimension 2; a two-dimensional union is decided by
    splitting the box along the edges of the union's boxes and asking each
    cell to fit in one part, which never answers yes wrongly.
    """
    if lo.dim == 1:
        return _interval_covered(intervals_1d(C), lo[0], hi[0])
    return _contains_box_2d(C, lo, hi)


def _contains_box_2d(C, lo, hi) -> bool:
    if isinstance(C, Empty):
        return False
    if isinstance(C, All):
        return True
    if isinstance(C, Ball):
        return all(
            C.contains(Vector._make((x, y))) for x in (lo[0], hi[0]) for y in (lo[1], hi[1])
        )
    if isinstance(C, Box):
        return all(cl <= l and h <= ch for cl, l, h, ch in zip(C.lo, lo, hi, C.hi))
    if isinstance(C, Points):
        return lo == hi and C.contains(lo)
    if isinstance(C, Intersection):
        return all(_contains_box_2d(p, lo, hi) for p in C.parts)
    if isinstance(C, Union):
        if any(_contains_box_2d(p, lo, hi) for p in C.parts):
            return True
        cuts = [set([lo[i], hi[i]]) for i in range(2)]
        for p in C.parts:
            try:
                bb = bounding_box(p)
            except UnboundedRegion:
                continue
            if bb is None:
                continue
            for i in range(2):
                for t in (bb[0][i], bb[1][i]):
                    if lo[i] < t < hi[i]:
                        cuts[i].add(t)
        xs, ys = sorted(cuts[0]), sorted(cuts[1])
        if len(xs) == 2 and len(ys) == 2:
            return False
        for (x0, x1), (y0, y1) in product(zip(xs, xs[1:]), zip(ys, ys[1:])):
            clo = Vector._make((x0, y0))
            chi = Vector._make((x1, y1))
            if not any(_contains_box_2d(p, clo, chi) for p in C.parts):
                return False
        return True
    raise ValidationError(f"unknown region term {C!r}")


def region_includes(C: Region, S: Region) -> bool:
    """Decide ``S ⊆ C`` for the support-shaped regions ``S`` produced by patterns.

    ``S`` may be empty, a finite point set, a closed box or a union of those.
    """
    if isinstance(S, Empty):
        return True
    if isinstance(C, All):
        return True
    if isinstance(S, Points):
        return all(C.contains(p) for p in S.points)
    if isinstance(S, Box):
        if S.is_degenerate_empty():
            return True
        return contains_box(C, S.lo, S.hi)
    if isinstance(S, Ball):
        lo, hi = bounding_box(S)
        if lo.dim == 1:
            return contains_box(C, lo, hi)
    if isinstance(S, Union):
        return all(region_includes(C, p) for p in S.parts)
    raise ValidationError(f"cannot decide inclusion of {type(S).__name__}")


def expand_box(lo: Vector, hi: Vector, r) -> tuple:
    r = Scalar.coerce(r)
    return (
        Vector._make(tuple(c - r for c in lo)),
        Vector._make(tuple(c + r for c in hi)),
    )


# -- text form used by the command line ---------------------------------------------


def parse_region(text: str) -> Region:
    """Parse ``ball:<center>:<radius>``, ``box:<lo>:<hi>``, ``points:<p>;<p>``,
    ``all`` or ``empty``.  Coordinates are comma-separated scalar literals."""
    text = text.strip()
    if text == "all":
        return All()
    if text == "empty":
        return Empty()
    kind, _, rest = text.partition(":")
    try:
        if kind == "ball":
            c, r = rest.split(":")
            return Ball(parse_vector(c), parse_scalar(r))
        if kind == "box":
            lo, hi = rest.split(":")
            return Box(parse_vector(lo), parse_vector(hi))
        if kind == "points":
            pts = [parse_vector(p) for p in rest.split(";") if p.strip()]
            return points(pts)
    except ValueError as exc:
        raise ValidationError(f"bad region {text!r}: {exc}") from exc
    raise ValidationError(f"bad region {text!r}")
