"""Concrete pattern spaces.

Each space knows how to cut, compare, glue and validate patterns of one
kind.  Point sets come in three flavours: locally finite (no separation
required), ``r``-uniformly discrete for a fixed ``r`` and uniformly discrete
for some unspecified ``r``.  Separation is strict everywhere:
``|x - y| > r`` for distinct points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    ContextMismatch,
    IncompatibleFamily,
    NoSupremum,
    UnboundedOperand,
    ValidationError,
)
from .field import Scalar, SqrtValue, Vector
from .patterns import (
    BLANK,
    FinitePattern,
    Weight,
    require_finite,
)
from .regions import Ball, Box, Region, bounding_box


def _min_separation2(positions):
    """Smallest squared distance between distinct positions and the pair realizing it."""
    pts = sorted(set(positions))
    best = None
    pair = None
    if not pts:
        return None, None
    if pts[0].dim == 1:
        for a, b in zip(pts, pts[1:]):
            d2 = (b - a).norm2()
            if best is None or d2 < best:
                best, pair = d2, (a, b)
        return best, pair
    for a, b in combinations(pts, 2):
        d2 = (b - a).norm2()
        if best is None or d2 < best:
            best, pair = d2, (a, b)
    return best, pair


def _separated(x: Vector, y: Vector, r2: Scalar) -> bool:
    return x == y or (x - y).norm2() > r2


class PatternSpace:
    """Common behaviour; subclasses fix ``kind`` and the compatibility rule."""

    kind = ""

    def __init__(self, dim: int = 1, context=None):
        self.dim = dim
        self.context = context

    @property
    def name(self) -> str:
        return self.kind

    # -- the contract ------------------------------------------------------------

    def check(self, P):
        if P.kind != self.kind or P.dim != self.dim or P.context != self.context:
            raise ContextMismatch(
                f"{P.kind}/{P.dim}d pattern does not belong to the {self.name} space"
            )
        return P

    def cut(self, P, C: Region):
        return self.check(P).cut(C)

    def support(self, P) -> Region:
        return self.check(P).support()

    def act(self, g, P):
        return self.check(P).act(g)

    def equals(self, P, Q) -> bool:
        return P == Q

    def zero(self) -> FinitePattern:
        return FinitePattern(self.kind, self.dim, (), self.context)

    def atoms(self, P):
        P = require_finite(self.check(P), "atoms")
        return P.atom_patterns()

    def contains(self, P) -> bool:
        """Whether a finite pattern satisfies the space's defining constraints."""
        return True

    def compatible(self, P, Q) -> bool:
        return True

    def find_incompatible(self, family):
        for i, j in combinations(range(len(family)), 2):
            if not self.compatible(family[i], family[j]):
                return i, j
        return None

    def supremum(self, family):
        """Glue a finite pairwise compatible family; the empty family gives zero."""
        members = list(family)
        for P in members:
            require_finite(self.check(P), "supremum")
        bad = self.find_incompatible(members)
        if bad is not None:
            i, j = bad
            raise IncompatibleFamily(
                f"members {i} and {j} are not compatible",
                pair=(i, j),
                witness={"pair": [i, j]},
            )
        return self._glue(members)

    def _glue(self, members):
        atoms = []
        for P in members:
            atoms.extend(P.atoms)
        return FinitePattern(self.kind, self.dim, atoms, self.context)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, self.dim))


class PointSetSpace(PatternSpace):
    """LF(X) when ``r`` is None and ``uniformly_discrete`` is false;
    UD_r(X) when ``r`` is given; UD(X) when only ``uniformly_discrete`` is set."""

    kind = "pointset"

    def __init__(self, dim: int = 1, r=None, uniformly_discrete: bool = False):
        super().__init__(dim)
        self.r = None if r is None else Scalar.coerce(r)
        self.uniformly_discrete = uniformly_discrete or r is not None

    @property
    def name(self):
        if self.r is not None:
            return f"UD_{self.r}"
        return "UD" if self.uniformly_discrete else "LF"

    def contains(self, P) -> bool:
        if self.r is None:
            return True
        return validate_ud(P, self.r)

    def compatible(self, P, Q) -> bool:
        if self.r is None:
            return True
        r2 = self.r * self.r
        return all(_separated(x, y, r2) for x in P.points for y in Q.points)

    def supremum(self, family):
        if isinstance(family, TruncatedFamily) and self.uniformly_discrete and self.r is None:
            _truncation_check(family)
        return super().supremum(list(family))


class PatchSpace(PatternSpace):
    """Patches of open boxes; with ``labels`` the labeled variant."""

    kind = "patch"

    def __init__(self, dim: int = 1, labels=None):
        super().__init__(dim, None if labels is None else frozenset(labels))

    def contains(self, P) -> bool:
        return bool(patch_validate(P))

    def compatible(self, P, Q) -> bool:
        return _tiles_compatible(P.atoms, Q.atoms)


class SymbolicSpace(PatternSpace):
    """Finitely supported maps from integer positions to an alphabet, blank elsewhere."""

    kind = "symbolic"

    def __init__(self, alphabet):
        alphabet = frozenset(alphabet)
        if BLANK in alphabet:
            raise ValidationError("the blank symbol cannot belong to the alphabet")
        super().__init__(1, alphabet)

    def compatible(self, P, Q) -> bool:
        here = {a.pos: a.tag for a in P.atoms}
        return all(here.get(b.pos, b.tag) == b.tag for b in Q.atoms)


class CombSpace(PatternSpace):
    """Finitely supported weighted Dirac combs with ``r``-uniformly discrete support."""

    kind = "comb"

    def __init__(self, dim: int = 1, r=None):
        super().__init__(dim)
        self.r = None if r is None else Scalar.coerce(r)

    def contains(self, P) -> bool:
        if self.r is None:
            return True
        return validate_ud(P, self.r)

    def compatible(self, P, Q) -> bool:
        r2 = None if self.r is None else self.r * self.r
        weights = {a.pos: a.tag for a in P.atoms}
        for b in Q.atoms:
            w = weights.get(b.pos)
            if w is not None and w != b.tag:
                return False
        if r2 is None:
            return True
        return all(_separated(a.pos, b.pos, r2) for a in P.atoms for b in Q.atoms)


class MultiSpace(PatternSpace):
    """Indexed families of point sets whose union is jointly ``r``-uniformly discrete."""

    kind = "multi"

    def __init__(self, index_set, dim: int = 1, r=None):
        super().__init__(dim, frozenset(index_set))
        self.r = None if r is None else Scalar.coerce(r)

    def contains(self, P) -> bool:
        if self.r is None:
            return True
        r2 = self.r * self.r
        pos = sorted({a.pos for a in P.atoms})
        return all(_separated(x, y, r2) for x, y in combinations(pos, 2))

    def compatible(self, P, Q) -> bool:
        if self.r is None:
            return True
        r2 = self.r * self.r
        return all(_separated(a.pos, b.pos, r2) for a in P.atoms for b in Q.atoms)


def _tiles_compatible(A, B) -> bool:
    for s in A:
        for t in B:
            if s.same_box(t):
                if s.label != t.label:
                    return False
            elif s.overlaps(t):
                return False
    return True


def default_space(P) -> PatternSpace:
    """The least restrictive space a pattern belongs to."""
    if P.kind == "pointset":
        return PointSetSpace(P.dim)
    if P.kind == "patch":
        return PatchSpace(P.dim, P.context)
    if P.kind == "symbolic":
        return SymbolicSpace(P.context)
    if P.kind == "comb":
        return CombSpace(P.dim)
    if P.kind == "multi":
        return MultiSpace(P.context, P.dim)
    raise ValidationError(f"unknown pattern kind {P.kind!r}")


SPACE_NAMES = ("pointset", "patch", "symbolic", "comb", "multi")


def space_by_name(name: str, dim: int = 1) -> PatternSpace:
    """Spaces used by the randomized harness and the command line."""
    if name in ("pointset", "point-set", "ud"):
        return PointSetSpace(dim, r=Scalar(Fraction(1, 8)))
    if name == "lf":
        return PointSetSpace(dim)
    if name == "patch":
        return PatchSpace(dim)
    if name == "labeled-patch":
        return PatchSpace(dim, labels=("a", "b"))
    if name == "symbolic":
        return SymbolicSpace(("a", "b"))
    if name == "comb":
        return CombSpace(dim, r=Scalar(Fraction(1, 8)))
    if name == "multi":
        return MultiSpace((0, 1), dim, r=Scalar(Fraction(1, 8)))
    raise ValidationError(f"unknown space {name!r}")


# -- validators --------------------------------------------------------------------


def validate_ud(P, r) -> bool:
    """Whether distinct points of ``P`` are pairwise more than ``r`` apart."""
    if not P.is_finite():
        raise UnboundedOperand("uniform discreteness of an infinite pattern needs a window")
    r = Scalar.coerce(r)
    best, _ = _min_separation2(a.pos for a in P.atoms)
    return best is None or best > r * r


@dataclass
class DeloneVerdict:
    uniformly_discrete: bool
    relatively_dense: bool
    centers_checked: int
    close_pair: tuple | None = None
    empty_ball_center: Vector | None = None

    def __bool__(self):
        return self.uniformly_discrete and self.relatively_dense


def validate_delone(P, r, R, window: Region) -> DeloneVerdict:
    """Check ``r``-uniform discreteness and ``R``-relative density on a window.

    Ball centers run over the grid of pitch ``R/2`` anchored at the window's
    lower corner, restricted to the window shrunk by ``R``; density is only
    certified there.  When that grid is empty the window's midpoint is used.
    """
    r = Scalar.coerce(r)
    R = Scalar.coerce(R)
    bb = bounding_box(window)
    if bb is None:
        raise ValidationError("Delone check needs a nonempty window")
    local = P.cut(window)
    best, pair = _min_separation2(a.pos for a in local.atoms)
    ud = best is None or best > r * r
    lo, hi = bb
    step = R / 2
    axes = []
    for i in range(len(lo)):
        a, b = lo[i] + R, hi[i] - R
        vals = []
        if a <= b:
            k = 0
            while lo[i] + k * step <= b:
                t = lo[i] + k * step
                if t >= a:
                    vals.append(t)
                k += 1
        axes.append(vals)
    if len(axes) == 1:
        centers = [Vector._make((x,)) for x in axes[0]]
    else:
        centers = [Vector._make((x, y)) for x in axes[0] for y in axes[1]]
    centers = [c for c in centers if window.contains(c)]
    if not centers:
        centers = [Vector._make(tuple((l + h) / 2 for l, h in zip(lo, hi)))]
    positions = [a.pos for a in local.atoms]
    R2 = R * R
    for c in centers:
        if not any((x - c).norm2() <= R2 for x in positions):
            return DeloneVerdict(ud, False, len(centers), pair if not ud else None, c)
    return DeloneVerdict(ud, True, len(centers), pair if not ud else None)


@dataclass
class PatchVerdict:
    valid: bool
    bad_pair: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def patch_validate(P) -> PatchVerdict:
    """Tiles must be pairwise equal or disjoint; equal boxes must share a label."""
    tiles = require_finite(P, "patch validation").atoms
    if P.dim == 1:
        # sorted by left end, so only neighbours in a sweep can overlap
        reach = None
        for i, t in enumerate(tiles):
            if reach is not None:
                j = reach
                s = tiles[j]
                if s.same_box(t):
                    return PatchVerdict(False, (s, t), "equal boxes with different labels")
                if t.lo[0] < s.hi[0]:
                    return PatchVerdict(False, (s, t), "overlapping tiles")
            if reach is None or t.hi[0] > tiles[reach].hi[0]:
                reach = i
        return PatchVerdict(True)
    for s, t in combinations(tiles, 2):
        if s.same_box(t):
            return PatchVerdict(False, (s, t), "equal boxes with different labels")
        if s.overlaps(t):
            return PatchVerdict(False, (s, t), "overlapping tiles")
    return PatchVerdict(True)


def comb_cut(P, C: Region):
    if P.kind != "comb":
        raise ContextMismatch("comb_cut needs a comb")
    return P.cut(C)


def multi_cut(P, C: Region):
    if P.kind != "multi":
        raise ContextMismatch("multi_cut needs a multi pattern")
    return P.cut(C)


# -- truncations of infinite families ----------------------------------------------


class TruncatedFamily(list):
    """An ordered finite truncation of an infinite family.

    Gluing a truncation in UD(X) asks whether a single separation radius
    could serve the whole infinite family.  The answer is no when the
    members' internal separations strictly decrease along the order and
    the glued set's closest pair sits in the last member: the infimum over
    the infinite family is then not witnessed by any fixed positive radius.
    """


def _truncation_check(family):
    seps = []
    for P in family:
        best, pair = _min_separation2(a.pos for a in P.atoms)
        seps.append((best, pair))
    known = [s for s in seps if s[0] is not None]
    if len(known) < 2:
        return
    decreasing = all(b[0] < a[0] for a, b in zip(known, known[1:]))
    glued_best, glued_pair = _min_separation2(a.pos for P in family for a in P.atoms)
    last_best, last_pair = known[-1]
    if decreasing and glued_best == last_best:
        raise NoSupremum(
            "separations of the members decrease to zero along the family; "
            "no single radius keeps the union uniformly discrete",
            witness={
                "pair": [str(p) for p in glued_pair],
                "separation": str(SqrtValue(glued_best)),
                "members": len(family),
            },
        )
