"""Seeded random scalars, regions, translations and patterns for the harnesses."""

from __future__ import annotations

import random
from fractions import Fraction

from .field import Scalar, Vector
from .patterns import FinitePattern, Site, Tile, Weight
from .regions import All, Ball, Box, Empty, Intersection, Points, Union
from .spaces import PatternSpace

SQRT2 = Scalar(0, 1, 2)


def random_scalar(rng: random.Random, lo=-4, hi=4, denom=4, irrational=False) -> Scalar:
    x = Scalar(Fraction(rng.randint(lo * denom, hi * denom), denom))
    if irrational and rng.random() < 0.25:
        x = x + SQRT2 * Fraction(rng.choice((-1, 1)), rng.choice((2, 4, 8)))
    return x


def random_vector(rng, dim, irrational=False, span=4) -> Vector:
    return Vector._make(tuple(random_scalar(rng, -span, span, irrational=irrational) for _ in range(dim)))


def random_translation(rng, space: PatternSpace) -> Vector:
    if space.kind == "symbolic":
        return Vector._make((Scalar(rng.randint(-5, 5)),))
    return random_vector(rng, space.dim, irrational=True, span=3)


def random_region(rng, space: PatternSpace, depth: int = 2, near=()):
    dim = space.dim
    integral = space.kind == "symbolic"
    roll = rng.random()
    if depth > 0 and roll < 0.2:
        parts = tuple(random_region(rng, space, depth - 1, near) for _ in range(rng.randint(2, 3)))
        return Union(parts) if rng.random() < 0.5 else Intersection(parts)
    if roll < 0.25:
        return All()
    if roll < 0.3:
        return Empty()
    if roll < 0.4:
        pool = list(near)
        pts = set()
        for _ in range(rng.randint(1, 4)):
            if pool and rng.random() < 0.6:
                pts.add(rng.choice(pool))
            else:
                pts.add(_grid_point(rng, dim, integral))
        return Points(frozenset(pts))
    if roll < 0.7:
        c = _grid_point(rng, dim, integral)
        r = random_scalar(rng, 0, 5, denom=2, irrational=True)
        if r.sign() < 0:
            r = -r
        return Ball(c, r)
    lo = _grid_point(rng, dim, integral)
    ext = tuple(random_scalar(rng, 0, 6, denom=2) for _ in range(dim))
    hi = Vector._make(tuple(l + e for l, e in zip(lo, ext)))
    return Box(lo, hi)


def _grid_point(rng, dim, integral=False) -> Vector:
    if integral:
        return Vector._make((Scalar(rng.randint(-6, 6)),))
    return Vector._make(tuple(Scalar(Fraction(rng.randint(-16, 16), 4)) for _ in range(dim)))


def random_pattern(rng, space: PatternSpace, max_atoms: int = 8) -> FinitePattern:
    """A random finite pattern that belongs to ``space``."""
    kind = space.kind
    dim = space.dim
    n = rng.randint(0, max_atoms)
    if kind == "patch":
        return _random_patch(rng, space, n)
    if kind == "symbolic":
        alphabet = sorted(space.context)
        positions = rng.sample(range(-8, 9), min(n, 17))
        sites = [Site(Vector._make((Scalar(x),)), rng.choice(alphabet)) for x in positions]
        return FinitePattern("symbolic", 1, sites, space.context)
    # point-like kinds use a grid of pitch 1/4, which keeps points 1/4 apart
    cells = set()
    while len(cells) < n:
        cells.add(tuple(rng.randint(-16, 16) for _ in range(dim)))
    positions = [Vector._make(tuple(Scalar(Fraction(c, 4)) for c in cell)) for cell in sorted(cells)]
    if kind == "pointset":
        sites = [Site(p) for p in positions]
    elif kind == "comb":
        sites = []
        for p in positions:
            re = Fraction(rng.randint(-3, 3), 2)
            im = Fraction(rng.randint(-3, 3), 2) if rng.random() < 0.3 else 0
            if re == 0 and im == 0:
                re = Fraction(1)
            sites.append(Site(p, Weight(re, im)))
    elif kind == "multi":
        idx = sorted(space.context)
        sites = [Site(p, rng.choice(idx)) for p in positions]
    else:
        raise ValueError(kind)
    return FinitePattern(kind, dim, sites, space.context)


def _random_patch(rng, space, n) -> FinitePattern:
    labels = sorted(space.context) if space.context else [None]
    dim = space.dim
    if dim == 1:
        breaks = sorted(set(Fraction(rng.randint(-24, 24), 4) for _ in range(n + 1)))
        tiles = []
        for a, b in zip(breaks, breaks[1:]):
            if rng.random() < 0.7:
                tiles.append(Tile(Vector._make((Scalar(a),)), Vector._make((Scalar(b),)), rng.choice(labels)))
        return FinitePattern("patch", 1, tiles, space.context)
    k = max(2, int(n ** 0.5) + 1)
    xs = sorted(set(Fraction(rng.randint(-12, 12), 2) for _ in range(k)))
    ys = sorted(set(Fraction(rng.randint(-12, 12), 2) for _ in range(k)))
    tiles = []
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            if rng.random() < 0.6:
                lo = Vector._make((Scalar(x0), Scalar(y0)))
                hi = Vector._make((Scalar(x1), Scalar(y1)))
                tiles.append(Tile(lo, hi, rng.choice(labels)))
    return FinitePattern("patch", 2, tiles, space.context)


def random_subpattern(rng, P: FinitePattern) -> FinitePattern:
    keep = [a for a in P.atoms if rng.random() < 0.5]
    return FinitePattern(P.kind, P.dim, keep, P.context, _sorted=True)


def random_compatible_family(rng, space, size=None):
    """Sub-patterns of one random pattern; any two are compatible."""
    base = random_pattern(rng, space)
    size = rng.randint(0, 4) if size is None else size
    return [random_subpattern(rng, base) for _ in range(size)]


def region_near(P: FinitePattern):
    """Anchors of ``P``; regions built from them make cuts non-trivial."""
    return [a.anchor for a in P.atoms]
