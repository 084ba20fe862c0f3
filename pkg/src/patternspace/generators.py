"""Generators of infinite patterns and their exact materialization on bounded windows.

Three families are provided: periodic patterns (lattices with a motif, and
periodic words), one-dimensional substitution patterns (the Fibonacci
presets among them), and the shifted-rows point set in the plane, which is
uniformly discrete and relatively dense but has infinitely many local
configurations.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cached_property

from .errors import UnboundedRegion, ValidationError
from .field import Scalar, Vector, as_vector, golden_ratio
from .patterns import FinitePattern, GeneratedPattern, Site, Tile
from .regions import Region, bounding_box


class Generator:
    kind: str
    dim: int
    context = None

    def materialize(self, C: Region) -> FinitePattern:
        bb = bounding_box(C)
        if bb is None:
            return FinitePattern(self.kind, self.dim, (), self.context)
        atoms = self._atoms_in_box(*bb)
        return FinitePattern(self.kind, self.dim, atoms, self.context).cut(C)

    def _atoms_in_box(self, lo: Vector, hi: Vector):
        raise NotImplementedError

    def pattern(self, shift=None) -> GeneratedPattern:
        return GeneratedPattern(self, shift)


def materialize(G, C: Region) -> FinitePattern:
    """``G ∧ C`` for a bounded region ``C``; accepts a generator or a generated pattern."""
    try:
        bounding_box(C)
    except UnboundedRegion:
        raise UnboundedRegion("materialization needs a bounded region") from None
    if isinstance(G, GeneratedPattern):
        return G.cut(C)
    return G.materialize(C)


# -- periodic patterns ------------------------------------------------------------


def _det2(b):
    return b[0][0] * b[1][1] - b[0][1] * b[1][0]


@dataclass(frozen=True)
class LatticeGenerator(Generator):
    """Points ``sum n_i b_i + m`` for integer ``n_i`` and ``m`` in the motif."""

    basis: tuple
    motif: tuple
    kind: str = "pointset"

    def __post_init__(self):
        basis = tuple(as_vector(b) for b in self.basis)
        motif = tuple(as_vector(m) for m in self.motif) or (Vector.zero(basis[0].dim),)
        d = basis[0].dim
        if len(basis) != d or any(b.dim != d for b in basis + motif):
            raise ValidationError("a lattice in R^d needs d basis vectors of dimension d")
        if d == 1 and not basis[0][0]:
            raise ValidationError("degenerate lattice basis")
        if d == 2 and not _det2((basis[0].coords, basis[1].coords)):
            raise ValidationError("degenerate lattice basis")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "motif", tuple(sorted(set(motif))))

    @property
    def dim(self):
        return self.basis[0].dim

    def _coefficient_ranges(self, lo, hi, m):
        """Integer ranges of lattice coefficients whose points can fall in ``[lo, hi]``."""
        if self.dim == 1:
            b = self.basis[0][0]
            ends = [(lo[0] - m[0]) / b, (hi[0] - m[0]) / b]
            return [range(min(ends).ceil(), max(ends).floor() + 1)]
        (a, c), (b, d) = self.basis[0].coords, self.basis[1].coords
        det = a * d - b * c
        coeffs = []
        for x in (lo[0], hi[0]):
            for y in (lo[1], hi[1]):
                px, py = x - m[0], y - m[1]
                # solve n1*(a, c) + n2*(b, d) = (px, py)
                coeffs.append(((px * d - py * b) / det, (a * py - c * px) / det))
        r1 = range(min(t[0] for t in coeffs).floor(), max(t[0] for t in coeffs).ceil() + 1)
        r2 = range(min(t[1] for t in coeffs).floor(), max(t[1] for t in coeffs).ceil() + 1)
        return [r1, r2]

    def _atoms_in_box(self, lo, hi):
        out = []
        for m in self.motif:
            ranges = self._coefficient_ranges(lo, hi, m)
            if self.dim == 1:
                b = self.basis[0]
                out.extend(Site(m + b.scale(n)) for n in ranges[0])
            else:
                b1, b2 = self.basis
                for n1 in ranges[0]:
                    base = m + b1.scale(n1)
                    for n2 in ranges[1]:
                        p = base + b2.scale(n2)
                        if all(l <= c <= h for l, c, h in zip(lo, p, hi)):
                            out.append(Site(p))
        return out

    def describe(self):
        return {"generator": "lattice", "basis": list(self.basis), "motif": list(self.motif)}

    def periods(self):
        return self.basis


def integers() -> LatticeGenerator:
    """The integer lattice in R^1."""
    return LatticeGenerator((Vector((1,)),), (Vector((0,)),))


def square_lattice() -> LatticeGenerator:
    return LatticeGenerator((Vector((1, 0)), Vector((0, 1))), (Vector((0, 0)),))


@dataclass(frozen=True)
class PeriodicWordGenerator(Generator):
    """The bi-infinite word ``...www...`` with ``word[0]`` at position 0."""

    word: str
    kind: str = "symbolic"
    dim: int = 1

    def __post_init__(self):
        if not self.word or "*" in self.word:
            raise ValidationError("a periodic word needs at least one non-blank letter")

    @property
    def context(self):
        return frozenset(self.word)

    def symbol(self, n: int) -> str:
        return self.word[n % len(self.word)]

    def _atoms_in_box(self, lo, hi):
        return [
            Site(Vector._make((Scalar(n),)), self.symbol(n))
            for n in range(lo[0].ceil(), hi[0].floor() + 1)
        ]

    def describe(self):
        return {"generator": "periodic-word", "word": self.word}


# -- substitutions -------------------------------------------------------------------


def _apply(rule, word, times):
    for _ in range(times):
        word = "".join(rule[c] for c in word)
    return word


@dataclass(frozen=True, eq=False)
class SubstitutionGenerator1D(Generator):
    """A two-sided fixed point of a power of a substitution, laid out on the line.

    The seed ``(left, right)`` must be a legal two-letter word with
    ``sigma^power(left)`` ending in ``left`` and ``sigma^power(right)``
    starting with ``right``.  The right half-word starts at 0 and extends to
    the right; the left half-word ends at 0.  ``output`` selects the
    realisation: left endpoints (``points``), intervals (``tiles``,
    labeled when ``labeled``), or letters at integer positions (``symbols``).
    """

    rule: tuple
    lengths: tuple
    seed: tuple = ("a", "a")
    power: int = 2
    output: str = "points"
    labeled: bool = True
    name: str = "substitution"

    def __post_init__(self):
        rule = dict(self.rule)
        lengths = {k: Scalar.coerce(v) for k, v in dict(self.lengths).items()}
        if set(rule) != set(lengths):
            raise ValidationError("every letter needs both an image and a length")
        for k, img in rule.items():
            if not img or any(c not in rule for c in img):
                raise ValidationError(f"bad image for {k!r}")
        left, right = self.seed
        if not _apply(rule, left, self.power).endswith(left) or not _apply(rule, right, self.power).startswith(right):
            raise ValidationError("the seed is not fixed by the chosen power of the substitution")
        if self.output not in ("points", "tiles", "symbols"):
            raise ValidationError(f"unknown output {self.output!r}")
        if any(v.sign() <= 0 for v in lengths.values()):
            raise ValidationError("tile lengths must be positive")
        object.__setattr__(self, "rule", tuple(sorted(rule.items())))
        object.__setattr__(self, "lengths", tuple(sorted(lengths.items())))
        object.__setattr__(self, "_cache", {})

    def __eq__(self, other):
        return isinstance(other, SubstitutionGenerator1D) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def _ident(self):
        return (self.rule, self.lengths, self.seed, self.power, self.output, self.labeled)

    @property
    def kind(self):
        return {"points": "pointset", "tiles": "patch", "symbols": "symbolic"}[self.output]

    @property
    def dim(self):
        return 1

    @property
    def context(self):
        letters = frozenset(dict(self.rule))
        if self.output == "symbols":
            return letters
        if self.output == "tiles" and self.labeled:
            return letters
        return None

    @cached_property
    def rule_map(self) -> dict:
        return dict(self.rule)

    @cached_property
    def length_map(self) -> dict:
        return dict(self.lengths)

    def inflation_factor(self) -> Scalar:
        """The Perron eigenvalue, read off from the length of ``sigma(s)``."""
        s = self.seed[1]
        img = self.rule_map[s]
        total = sum((self.length_map[c] for c in img), Scalar(0))
        return total / self.length_map[s]

    # half-words grow by whole applications of sigma^power and are cached

    def _half(self, side: str, reach):
        """Positions and letters of the half-word covering ``[0, reach]`` on ``side``."""
        cached = self._cache.get(side)
        if cached is not None and cached[2] >= reach:
            return cached
        letter = self.seed[1] if side == "right" else self.seed[0]
        word = letter
        lengths = self.length_map
        total = lengths[letter]
        while total < reach:
            word = _apply(self.rule_map, word, self.power)
            total = sum((lengths[c] for c in word), Scalar(0))
        xs = []
        if side == "right":
            x = Scalar(0)
            for c in word:
                xs.append(x)
                x = x + lengths[c]
            entry = (xs, word, total)
        else:
            x = Scalar(0)
            rev = []
            for c in reversed(word):
                x = x - lengths[c]
                rev.append(x)
            xs = list(reversed(rev))
            entry = (xs, word, total)
        self._cache[side] = entry
        return entry

    def _cells(self, lo: Scalar, hi: Scalar):
        """Cells ``(start, letter, index)`` meeting ``[lo, hi]``; index counts from 0 rightwards."""
        out = []
        if hi >= 0:
            xs, word, _ = self._half("right", hi + 1)
            i = max(bisect_right(xs, lo) - 1, 0)
            j = bisect_right(xs, hi)
            out.extend((xs[k], word[k], k) for k in range(i, j))
        if lo < 0:
            xs, word, _ = self._half("left", -lo + 1)
            n = len(word)
            i = max(bisect_right(xs, lo) - 1, 0)
            j = bisect_right(xs, hi) if hi < 0 else n
            j = min(max(j, i), n)
            out = [(xs[k], word[k], k - n) for k in range(i, j)] + out
        return out

    def _symbols_cells(self, lo: int, hi: int):
        out = []
        if hi >= 0:
            need = hi + 1
            word = self.seed[1]
            while len(word) < need:
                word = _apply(self.rule_map, word, self.power)
            out.extend((k, word[k]) for k in range(max(lo, 0), hi + 1))
        if lo < 0:
            need = -lo
            word = self.seed[0]
            while len(word) < need:
                word = _apply(self.rule_map, word, self.power)
            n = len(word)
            out = [(k, word[n + k]) for k in range(lo, min(hi, -1) + 1)] + out
        return out

    def _atoms_in_box(self, lo, hi):
        a, b = lo[0], hi[0]
        if self.output == "symbols":
            return [
                Site(Vector._make((Scalar(k),)), c) for k, c in self._symbols_cells(a.ceil(), b.floor())
            ]
        lengths = self.length_map
        out = []
        for x, c, _ in self._cells(a, b):
            if self.output == "points":
                if a <= x <= b:
                    out.append(Site(Vector._make((x,))))
            else:
                label = c if self.labeled else None
                end = x + lengths[c]
                if a <= x and end <= b:
                    out.append(Tile(Vector._make((x,)), Vector._make((end,)), label))
        return out

    def word(self, start: int, length: int) -> str:
        """Letters at integer positions ``start .. start + length - 1``."""
        return "".join(c for _, c in self._symbols_cells(start, start + length - 1))

    def describe(self):
        return {
            "generator": "substitution",
            "name": self.name,
            "rule": dict(self.rule),
            "lengths": dict(self.lengths),
            "seed": list(self.seed),
            "power": self.power,
            "output": self.output,
            "labeled": self.labeled,
        }


FIBONACCI_RULE = (("a", "ab"), ("b", "a"))


def _fibonacci(output, labeled=True):
    return SubstitutionGenerator1D(
        rule=FIBONACCI_RULE,
        lengths=(("a", golden_ratio()), ("b", Scalar(1))),
        seed=("a", "a"),
        power=2,
        output=output,
        labeled=labeled,
        name="fibonacci",
    )


def fibonacci_point_set() -> SubstitutionGenerator1D:
    """Left endpoints of the Fibonacci tiling (lengths phi for a, 1 for b)."""
    return _fibonacci("points")


def fibonacci_tiling(labeled: bool = True) -> SubstitutionGenerator1D:
    return _fibonacci("tiles", labeled)


def fibonacci_word() -> SubstitutionGenerator1D:
    return _fibonacci("symbols")


# -- the shifted-rows set -----------------------------------------------------------------


@dataclass(frozen=True)
class ShiftedRowsGenerator(Generator):
    """Rows ``{(n + f(k) alpha, k) : n, k integers}`` in the plane.

    With ``mode="quadratic"`` (default) ``f(k) = k^2``: neighbouring rows are
    offset by ``(2k + 1) alpha`` modulo 1, which never repeats for irrational
    ``alpha``, so radius-2 clusters fall into infinitely many translation
    classes.  ``mode="linear"`` uses ``f(k) = k``, which is a lattice.
    """

    alpha: Scalar = field(default_factory=lambda: Scalar(0, 1, 2))
    mode: str = "quadratic"
    kind: str = "pointset"
    dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "alpha", Scalar.coerce(self.alpha))
        if self.mode not in ("quadratic", "linear"):
            raise ValidationError(f"unknown mode {self.mode!r}")

    def offset(self, k: int) -> Scalar:
        return self.alpha * (k * k if self.mode == "quadratic" else k)

    def _atoms_in_box(self, lo, hi):
        out = []
        for k in range(lo[1].ceil(), hi[1].floor() + 1):
            off = self.offset(k)
            y = Scalar(k)
            for n in range((lo[0] - off).ceil(), (hi[0] - off).floor() + 1):
                out.append(Site(Vector._make((off + n, y))))
        return out

    def describe(self):
        return {"generator": "shifted-rows", "alpha": self.alpha, "mode": self.mode}


PRESETS = {
    "integers": integers,
    "fibonacci": fibonacci_point_set,
    "fibonacci-tiling": fibonacci_tiling,
    "fibonacci-word": fibonacci_word,
    "shifted-rows": ShiftedRowsGenerator,
}


def preset(name: str) -> Generator:
    """Named generators; ``periodic:<basis>:<motif>`` builds a lattice from
    ``;``-separated vectors and ``periodic-word:<word>`` a periodic word."""
    from .field import parse_vector

    if name in PRESETS:
        return PRESETS[name]()
    if name.startswith("periodic-word:"):
        return PeriodicWordGenerator(name.split(":", 1)[1])
    if name.startswith("periodic:"):
        parts = name.split(":")
        if len(parts) not in (2, 3):
            raise ValidationError(f"bad periodic spec {name!r}")
        basis = tuple(parse_vector(v) for v in parts[1].split(";"))
        motif = tuple(parse_vector(v) for v in parts[2].split(";")) if len(parts) == 3 else ()
        return LatticeGenerator(basis, motif)
    raise ValidationError(f"unknown preset {name!r}")


def generator_from_description(desc: dict) -> Generator:
    kind = desc.get("generator")
    if kind == "lattice":
        return LatticeGenerator(tuple(desc["basis"]), tuple(desc["motif"]))
    if kind == "periodic-word":
        return PeriodicWordGenerator(desc["word"])
    if kind == "substitution":
        return SubstitutionGenerator1D(
            rule=tuple(sorted(desc["rule"].items())),
            lengths=tuple(sorted(desc["lengths"].items())),
            seed=tuple(desc["seed"]),
            power=int(desc["power"]),
            output=desc["output"],
            labeled=bool(desc.get("labeled", True)),
            name=desc.get("name", "substitution"),
        )
    if kind == "shifted-rows":
        return ShiftedRowsGenerator(desc["alpha"], desc.get("mode", "quadratic"))
    raise ValidationError(f"unknown generator description {kind!r}")

