"""Pattern values: finite patterns of each kind and generator-backed patterns.

A finite pattern is a canonical sorted tuple of atoms.  Point-like atoms are
:class:`Site` objects (a position plus an optional tag: a symbol, a weight or
a component index); tiles are :class:`Tile` objects (an open box with an
optional label).  Sorting uses the lexicographic order of positions, which
translations preserve, so shifting a pattern never needs a re-sort.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

from .errors import ContextMismatch, DimensionMismatch, UnboundedOperand, UnboundedRegion, ValidationError
from .field import Scalar, SqrtValue, Vector, as_vector
from .regions import (
    All,
    Ball,
    Box,
    Empty,
    Points,
    Region,
    bounding_box,
    contains_box,
    region_intersect,
    region_union,
)

BLANK = "*"


class Weight:
    """A nonzero complex number with real and imaginary parts in the field."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Scalar.coerce(re)
        self.im = Scalar.coerce(im)
        if not self.re and not self.im:
            raise ValidationError("comb weights must be nonzero")

    def __eq__(self, other):
        return isinstance(other, Weight) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return f"{self.re}" if not self.im else f"{self.re}+({self.im})i"

    __repr__ = __str__


class Site:
    """A point atom: position and tag (``None`` for plain points)."""

    __slots__ = ("pos", "tag", "_fit2")

    def __init__(self, pos, tag=None):
        self.pos = pos
        self.tag = tag
        self._fit2 = None

    @property
    def anchor(self) -> Vector:
        return self.pos

    def fit2(self) -> Scalar:
        """Squared radius of the smallest origin ball containing the atom."""
        f = self._fit2
        if f is None:
            f = self._fit2 = self.pos.norm2()
        return f

    def inside(self, C: Region) -> bool:
        return C.contains(self.pos)

    def shifted(self, v: Vector) -> "Site":
        return Site(self.pos + v, self.tag)

    def footprint(self):
        return self.pos, self.pos

    def key(self):
        return (self.pos, "" if self.tag is None else str(self.tag))

    def __eq__(self, other):
        return isinstance(other, Site) and self.pos == other.pos and self.tag == other.tag

    def __hash__(self):
        return hash((self.pos, self.tag))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Site({self.pos}, {self.tag!r})" if self.tag is not None else f"Site({self.pos})"


class Tile:
    """An open, nonempty, bounded axis-parallel box with an optional label."""

    __slots__ = ("lo", "hi", "label", "_fit2")

    def __init__(self, lo, hi, label=None):
        lo = as_vector(lo)
        hi = as_vector(hi)
        if lo.dim != hi.dim:
            raise DimensionMismatch("tile corners differ in dimension")
        if not all(l < h for l, h in zip(lo, hi)):
            raise ValidationError(f"tile needs lo < hi componentwise, got {lo} and {hi}")
        self.lo = lo
        self.hi = hi
        self.label = label
        self._fit2 = None

    @property
    def anchor(self) -> Vector:
        return self.lo

    @property
    def pos(self) -> Vector:
        return self.lo

    def fit2(self) -> Scalar:
        f = self._fit2
        if f is None:
            best = None
            corners = [self.lo, self.hi]
            if self.lo.dim == 2:
                corners += [
                    Vector._make((self.lo[0], self.hi[1])),
                    Vector._make((self.hi[0], self.lo[1])),
                ]
            for c in corners:
                n = c.norm2()
                if best is None or n > best:
                    best = n
            f = self._fit2 = best
        return f

    def inside(self, C: Region) -> bool:
        return contains_box(C, self.lo, self.hi)

    def shifted(self, v: Vector) -> "Tile":
        t = object.__new__(Tile)
        t.lo = self.lo + v
        t.hi = self.hi + v
        t.label = self.label
        t._fit2 = None
        return t

    def footprint(self):
        return self.lo, self.hi

    def overlaps(self, other: "Tile") -> bool:
        """Open boxes meet iff every coordinate interval overlaps in an open set."""
        return all(a < d and c < b for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi))

    def same_box(self, other: "Tile") -> bool:
        return self.lo == other.lo and self.hi == other.hi

    def key(self):
        return (self.lo, self.hi, "" if self.label is None else str(self.label))

    def __eq__(self, other):
        return (
            isinstance(other, Tile)
            and self.lo == other.lo
            and self.hi == other.hi
            and self.label == other.label
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self.label))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        lab = "" if self.label is None else f", {self.label!r}"
        return f"Tile({self.lo}, {self.hi}{lab})"


KINDS = ("pointset", "patch", "symbolic", "comb", "multi")


class Pattern:
    kind: str
    dim: int

    def is_finite(self) -> bool:
        return True


class FinitePattern(Pattern):
    """A finite pattern of one kind, stored as sorted distinct atoms.

    ``context`` carries the declared alphabet, label set or index set; it is
    part of equality so patterns of different spaces never compare equal.
    """

    __slots__ = ("kind", "dim", "atoms", "context", "_hash", "_xs")

    def __init__(self, kind, dim, atoms, context=None, _sorted=False):
        if kind not in KINDS:
            raise ValidationError(f"unknown pattern kind {kind!r}")
        if dim not in (1, 2):
            raise DimensionMismatch(f"only d in {{1, 2}} is supported, got {dim}")
        if not _sorted:
            atoms = sorted(set(atoms), key=lambda a: a.key())
            for a in atoms:
                if a.anchor.dim != dim:
                    raise DimensionMismatch(f"atom {a!r} is not in dimension {dim}")
        self.kind = kind
        self.dim = dim
        self.atoms = tuple(atoms)
        self.context = context
        self._hash = None
        self._xs = None

    def _derive(self, atoms, _sorted=True) -> "FinitePattern":
        return FinitePattern(self.kind, self.dim, atoms, self.context, _sorted=_sorted)

    # -- the pattern-space operations ----------------------------------------

    def cut(self, C: Region) -> "FinitePattern":
        if isinstance(C, All):
            return self
        if isinstance(C, Empty):
            return self._derive(())
        d = C.dim()
        if d is not None and d != self.dim:
            raise DimensionMismatch(f"region of dimension {d} on a pattern of dimension {self.dim}")
        atoms = self.atoms
        if atoms:
            # atoms are sorted by anchor, so bisect on the first coordinate
            # of the bounding box before the exact membership test
            try:
                bb = bounding_box(C)
            except UnboundedRegion:
                bb = False
            if bb is None:
                return self._derive(())
            if bb:
                atoms = self._slice_1d(bb[0][0], bb[1][0])
                if self.dim == 2:
                    ylo, yhi = bb[0][1], bb[1][1]
                    atoms = [a for a in atoms if ylo <= a.anchor[1] <= yhi]
        return self._derive(tuple(a for a in atoms if a.inside(C)))

    def _slice_1d(self, lo: Scalar, hi: Scalar):
        """Atoms whose anchor lies in ``[lo, hi]``, a superset of those inside."""
        if self._xs is None:
            self._xs = [a.anchor[0] for a in self.atoms]
        i = bisect_left(self._xs, lo)
        j = bisect_right(self._xs, hi)
        return self.atoms[i:j]

    def support(self) -> Region:
        if not self.atoms:
            return Empty()
        if self.kind == "patch":
            return region_union(*(Box(t.lo, t.hi) for t in self.atoms))
        return Points(frozenset(a.pos for a in self.atoms))

    def act(self, g) -> "FinitePattern":
        v = as_vector(g, self.dim)
        if v.is_zero():
            return self
        _check_symbolic_shift(self.kind, v)
        return self._derive(tuple(a.shifted(v) for a in self.atoms))

    def is_zero(self) -> bool:
        return not self.atoms

    def atom_patterns(self):
        return [self._derive((a,)) for a in self.atoms]

    def anchors(self):
        return [a.anchor for a in self.atoms]

    def window_atoms(self, C: Region):
        return self.cut(C).atoms

    # -- kind-specific views ---------------------------------------------------

    @property
    def points(self):
        return [a.pos for a in self.atoms]

    @property
    def tiles(self):
        return list(self.atoms)

    def symbol_at(self, x) -> str:
        x = as_vector(x, self.dim)
        for a in self.atoms:
            if a.pos == x:
                return a.tag
        return BLANK

    def components(self):
        """For multi patterns: ``{index: [positions]}`` over the declared index set."""
        out = {i: [] for i in (self.context or ())}
        for a in self.atoms:
            out.setdefault(a.tag, []).append(a.pos)
        return out

    # -- value semantics ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FinitePattern):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.dim == other.dim
            and self.context == other.context
            and self.atoms == other.atoms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.kind, self.dim, self.context, self.atoms))
        return h

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        body = ", ".join(repr(a) for a in self.atoms[:6])
        more = ", ..." if len(self.atoms) > 6 else ""
        return f"{self.kind}[{body}{more}]"


def _check_symbolic_shift(kind, v: Vector):
    if kind == "symbolic" and not all(c.is_rational() and c.a.denominator == 1 for c in v):
        raise ValidationError("symbolic patterns only move by integer translations")


class GeneratedPattern(Pattern):
    """An infinite pattern described by a generator, a translation and a clip region.

    ``cut`` by a bounded region materializes an exact finite pattern;
    ``support`` and other whole-pattern questions raise
    :class:`UnboundedOperand`.
    """

    def __init__(self, generator, shift=None, clip: Region | None = None):
        self.generator = generator
        self.kind = generator.kind
        self.dim = generator.dim
        self.context = generator.context
        self.shift = Vector.zero(self.dim) if shift is None else as_vector(shift, self.dim)
        _check_symbolic_shift(self.kind, self.shift)
        self.clip = All() if clip is None else clip

    def is_finite(self) -> bool:
        return False

    def cut(self, C: Region):
        if isinstance(C, Empty):
            return FinitePattern(self.kind, self.dim, (), self.context)
        try:
            bb = bounding_box(C)
        except Exception:
            bb = False
        if bb is None:
            return FinitePattern(self.kind, self.dim, (), self.context)
        if bb is False:
            if isinstance(C, All):
                return self
            return GeneratedPattern(self.generator, self.shift, region_intersect(self.clip, C))
        W = region_intersect(C, self.clip)
        local = self.generator.materialize(W.translate(-self.shift))
        return local.act(self.shift)

    def support(self):
        raise UnboundedOperand("support of a generator-backed pattern is unbounded")

    def act(self, g):
        v = as_vector(g, self.dim)
        if v.is_zero():
            return self
        _check_symbolic_shift(self.kind, v)
        return GeneratedPattern(self.generator, self.shift + v, self.clip.translate(v))

    def atom_patterns(self):
        raise UnboundedOperand("a generator-backed pattern has infinitely many atoms")

    def is_zero(self):
        return False

    def __eq__(self, other):
        if not isinstance(other, GeneratedPattern):
            return NotImplemented
        return (
            self.generator == other.generator
            and self.shift == other.shift
            and self.clip == other.clip
        )

    def __hash__(self):
        return hash((self.generator, self.shift))

    def __repr__(self):
        return f"GeneratedPattern({self.generator!r}, shift={self.shift})"


# -- constructors ----------------------------------------------------------------


def _dim_of(items, dim):
    if dim is not None:
        return dim
    for x in items:
        return x.dim
    return 1


def point_set(pts, dim=None) -> FinitePattern:
    vs = [as_vector(p) for p in pts]
    d = _dim_of(vs, dim)
    return FinitePattern("pointset", d, [Site(v) for v in vs])


def patch(tiles, dim=None, labels=None) -> FinitePattern:
    ts = []
    for t in tiles:
        if isinstance(t, Tile):
            ts.append(t)
        else:
            ts.append(Tile(*t))
    d = _dim_of([t.lo for t in ts], dim)
    ctx = None if labels is None else frozenset(labels)
    if ctx is not None:
        for t in ts:
            if t.label not in ctx:
                raise ValidationError(f"label {t.label!r} not in the declared label set")
    return FinitePattern("patch", d, ts, ctx)


def symbolic(mapping, alphabet) -> FinitePattern:
    """A finitely supported map from integer positions to symbols (blank elsewhere)."""
    alphabet = frozenset(alphabet)
    if BLANK in alphabet:
        raise ValidationError("the blank symbol cannot belong to the alphabet")
    sites = []
    items = mapping.items() if isinstance(mapping, dict) else mapping
    for x, s in items:
        if s == BLANK:
            continue
        if s not in alphabet:
            raise ValidationError(f"symbol {s!r} not in the alphabet")
        v = as_vector(x, 1)
        if not (v[0].is_rational() and v[0].a.denominator == 1):
            raise ValidationError("symbolic positions must be integers")
        sites.append(Site(v, s))
    positions = [s.pos for s in sites]
    if len(set(positions)) != len(positions):
        raise ValidationError("a symbolic pattern assigns one symbol per position")
    return FinitePattern("symbolic", 1, sites, alphabet)


def word_pattern(word: str, start: int = 0, alphabet=None) -> FinitePattern:
    alphabet = alphabet if alphabet is not None else set(word) - {BLANK}
    return symbolic({start + i: ch for i, ch in enumerate(word)}, alphabet)


def comb(weights, dim=None) -> FinitePattern:
    """``weights`` maps positions to :class:`Weight` (or to a real scalar)."""
    sites = []
    items = weights.items() if isinstance(weights, dict) else weights
    for x, w in items:
        if not isinstance(w, Weight):
            w = Weight(w)
        sites.append(Site(as_vector(x), w))
    d = _dim_of([s.pos for s in sites], dim)
    positions = [s.pos for s in sites]
    if len(set(positions)) != len(positions):
        raise ValidationError("a comb carries one weight per point")
    return FinitePattern("comb", d, sites)


def multi(components, index_set=None, dim=None) -> FinitePattern:
    """``components`` maps an index to an iterable of positions."""
    idx = frozenset(index_set if index_set is not None else components.keys())
    sites = []
    for i, pts in components.items():
        if i not in idx:
            raise ValidationError(f"index {i!r} is not in the index set")
        for p in pts:
            sites.append(Site(as_vector(p), i))
    d = _dim_of([s.pos for s in sites], dim)
    return FinitePattern("multi", d, sites, idx)


def empty_like(P) -> FinitePattern:
    return FinitePattern(P.kind, P.dim, (), P.context)


def ball_window(P, r) -> FinitePattern:
    """``P ∧ B(0, r)`` as a finite pattern."""
    return P.cut(Ball(Vector.zero(P.dim), Scalar.coerce(r)))


def fit_radius(atom) -> SqrtValue:
    return SqrtValue(atom.fit2())


def require_finite(P, what="operation"):
    if not P.is_finite():
        raise UnboundedOperand(f"{what} needs a finite pattern or a bounding region")
    return P


def same_context(P, Q):
    if P.kind != Q.kind or P.dim != Q.dim:
        raise ContextMismatch(f"cannot combine {P.kind}/{P.dim}d with {Q.kind}/{Q.dim}d")
    if P.context != Q.context:
        raise ContextMismatch("patterns declare different alphabets, labels or index sets")
