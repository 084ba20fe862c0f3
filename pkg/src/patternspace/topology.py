"""The local matching uniform structure.

Two patterns are ``(K, V)``-close when some translation ``g`` with
``|g| <= v`` makes them agree on the compact set ``K``:
``P ∧ K = (g Q) ∧ K``.  This module decides that relation exactly, derives
a metric from it, checks the entourage axioms on samples, separates
distinct patterns, and runs the gluing construction that turns a Cauchy
sequence into its limit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonAtomisticSpace, NotCauchyAtStep, UnboundedRegion, ValidationError
from .field import Scalar, SqrtValue, Vector, as_vector
from .patterns import FinitePattern, GeneratedPattern, empty_like, same_context
from .regions import (
    Ball,
    Box,
    Region,
    bounding_box,
    expand_box,
    intervals_1d,
    region_union,
)
from .spaces import PatternSpace, default_space

ONE = Scalar(1)


@dataclass(frozen=True)
class EntourageSpec:
    """``U_{K,V}`` with ``K`` a bounded region and ``V`` the closed ball of radius ``v`` about ``e``."""

    K: Region
    v: Scalar

    def __post_init__(self):
        object.__setattr__(self, "v", Scalar.coerce(self.v))
        if self.v.sign() <= 0:
            raise ValidationError("the group neighbourhood needs a positive radius")
        bounding_box(self.K)  # raises UnboundedRegion for unbounded K

    def enlarged(self) -> Region:
        """``V^{-1} K`` for a ball ``K``: the ball with radius increased by ``v``."""
        if isinstance(self.K, Ball):
            return Ball(self.K.center, self.K.radius + self.v)
        raise ValidationError("V^-1 K is only formed for balls")


@dataclass(frozen=True)
class MatchWitness:
    """A translation ``gamma`` with ``P ∧ K = (gamma Q) ∧ K`` and ``|gamma| <= v``.

    ``least`` is true when ``gamma`` is the least such translation in the
    order (squared norm, then coordinates); windows where ``P ∧ K`` is
    empty admit a continuum of witnesses and report one of them.
    """

    gamma: Vector
    K: Region
    v: Scalar
    least: bool = True

    @property
    def norm(self) -> SqrtValue:
        return SqrtValue(self.gamma.norm2())


def _candidate_key(g: Vector):
    return (g.norm2(), g.coords)


def window_for(Q, K: Region, v) -> FinitePattern:
    """``Q`` cut to a box that contains ``g^{-1} K`` for every ``|g| <= v``."""
    bb = bounding_box(K)
    if bb is None:
        return empty_like(Q)
    lo, hi = expand_box(bb[0], bb[1], v)
    return Q.cut(Box(lo, hi))


def _agrees(PK: FinitePattern, Qw: FinitePattern, g: Vector, K: Region) -> bool:
    return Qw.act(g).cut(K) == PK


def in_entourage(P, Q, K, v=None):
    """Return a :class:`MatchWitness` if ``(P, Q)`` lies in ``U_{K,V}``, else ``None``.

    ``K`` may be an :class:`EntourageSpec`, in which case ``v`` is taken from it.
    When ``P ∧ K`` is nonempty its smallest atom ``p0`` must be the image of
    some atom ``q`` of ``Q``, so the candidates ``p0 - q`` (filtered by
    norm) are complete; they are tried in increasing order.
    """
    if isinstance(K, EntourageSpec):
        K, v = K.K, K.v
    v = Scalar.coerce(v)
    same_context(P, Q)
    if bounding_box(K) is None:
        return MatchWitness(Vector.zero(P.dim), K, v)
    PK = P.cut(K)
    Qw = window_for(Q, K, v)
    v2 = v * v
    if PK.atoms:
        p0 = min(PK.atoms, key=lambda a: (a.fit2(), a.key()))
        cands = set()
        for q in Qw.atoms:
            if type(q) is not type(p0) or _tag(q) != _tag(p0):
                continue
            g = p0.anchor - q.anchor
            if g.norm2() <= v2:
                cands.add(g)
        for g in sorted(cands, key=_candidate_key):
            if _agrees(PK, Qw, g, K):
                return MatchWitness(g, K, v)
        return None
    # P ∧ K is empty: find a shift that moves every atom of Q out of K
    zero = Vector.zero(P.dim)
    if not Qw.cut(K).atoms:
        return MatchWitness(zero, K, v)
    if P.kind == "symbolic":
        n = v.floor()
        for k in sorted(range(-n, n + 1), key=lambda k: (abs(k), k)):
            g = Vector._make((Scalar(k),))
            if not Qw.act(g).cut(K).atoms:
                return MatchWitness(g, K, v)
        return None
    if P.dim == 1:
        g = _vacating_shift_1d(Qw, K, v)
        return None if g is None else MatchWitness(g, K, v, least=False)
    for g in _probe_shifts_2d(v):
        if not Qw.act(g).cut(K).atoms:
            return MatchWitness(g, K, v, least=False)
    return None


def _vacating_shift_1d(Qw: FinitePattern, K: Region, v: Scalar):
    """A shift ``|g| <= v`` leaving no atom of ``Qw`` inside ``K`` (exact)."""
    forbidden = []
    for l, h in intervals_1d(K):
        for a in Qw.atoms:
            lo, hi = a.footprint()
            if l is None or h is None:
                raise UnboundedRegion("K must be bounded")
            left, right = l - lo[0], h - hi[0]
            if left <= right:
                forbidden.append((left, right))
    forbidden.sort(key=lambda t: t[0])
    merged = []
    for a, b in forbidden:
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    # open gaps of [-v, v] left by the closed forbidden intervals
    gaps = []
    cur, cur_allowed = -v, True
    for a, b in merged:
        if b < -v or a > v:
            continue
        if a > cur:
            gaps.append((cur, a, cur_allowed))
        if b >= cur:
            cur, cur_allowed = b, False
    if cur < v:
        gaps.append((cur, v, cur_allowed))
    best = None
    for lo, hi, lo_allowed in gaps:
        if (lo.sign() < 0 or (lo.sign() == 0 and lo_allowed)) and hi.sign() > 0:
            g = Scalar(0)
        else:
            g = (lo + hi) / 2
        if best is None or (g * g, g) < (best * best, best):
            best = g
    return None if best is None else Vector._make((best,))


def _probe_shifts_2d(v: Scalar):
    out = []
    for i in range(-4, 5):
        for j in range(-4, 5):
            g = Vector._make((v * Fraction(i, 4), v * Fraction(j, 4)))
            if g.norm2() <= v * v:
                out.append(g)
    return sorted(out, key=_candidate_key)


# -- matching radius and the metric ----------------------------------------------------


def _ball(dim, r) -> Ball:
    return Ball(Vector.zero(dim), Scalar.coerce(r))


def _first_disagreement(A: FinitePattern, B: FinitePattern):
    """Squared fit radius of the nearest atom in the symmetric difference, or None."""
    sa, sb = set(A.atoms), set(B.atoms)
    diff = sa.symmetric_difference(sb)
    if not diff:
        return None
    return min(a.fit2() for a in diff)


def match_radius(P, Q, g, r_max):
    """First radius at which ``P`` and ``g Q`` disagree on centred balls.

    Returns a :class:`SqrtValue` ``s``: the cuts by ``B(0, r)`` agree for
    every ``r < s`` and differ at ``r = s``.  Returns ``None`` when they
    agree on all of ``B(0, r_max)``.
    """
    r_max = Scalar.coerce(r_max)
    g = as_vector(g, P.dim)
    B = _ball(P.dim, r_max)
    s2 = _first_disagreement(P.cut(B), Q.act(g).cut(B))
    return None if s2 is None else SqrtValue(s2)


@dataclass(frozen=True)
class Distance:
    """``value`` is exact; ``certified_to`` is the radius the comparison looked out to
    (``None`` when equality is known globally)."""

    value: SqrtValue
    witness: Vector | None
    certified_to: Scalar | None

    def __float__(self):
        return float(self.value)


_CAP = SqrtValue(1)


def _one_sided(P, Q, r_max: Scalar):
    dim = P.dim
    B = _ball(dim, r_max)
    Pw = P.cut(B)
    Qw = Q.cut(_ball(dim, r_max + 1))

    def score(g: Vector):
        s2 = _first_disagreement(Pw, Qw.act(g).cut(B))
        n = SqrtValue(g.norm2())
        if s2 is None:
            return n
        inv = SqrtValue(s2).reciprocal()
        return n if n >= inv else inv

    zero = Vector.zero(dim)
    best_g, best = zero, score(zero)
    if best > _CAP:
        best = _CAP
    if not Pw.atoms:
        return best, best_g
    p0 = min(Pw.atoms, key=lambda a: (a.fit2(), a.key()))

    def candidates(ps):
        out = set()
        for p in ps:
            for q in Qw.atoms:
                if type(q) is not type(p) or _tag(q) != _tag(p):
                    continue
                g = p.anchor - q.anchor
                if g.norm2() <= 1:
                    out.add(g)
        out.discard(zero)
        return sorted(out, key=_candidate_key)

    def sweep(cands, best, best_g):
        for g in cands:
            if SqrtValue(g.norm2()) >= best:
                break  # candidates are sorted by norm, none can do better
            val = score(g)
            if val < best:
                best, best_g = val, g
        return best, best_g

    best, best_g = sweep(candidates([p0]), best, best_g)
    # any translation that does not carry an atom onto p0 disagrees at p0 itself
    if best > SqrtValue(p0.fit2()).reciprocal():
        rest = [p for p in Pw.atoms if p is not p0]
        best, best_g = sweep(candidates(rest), best, best_g)
    return best, best_g


def _tag(a):
    return getattr(a, "tag", None) if hasattr(a, "tag") else getattr(a, "label", None)


def one_sided_distance(P, Q, r_max) -> SqrtValue:
    """``min over candidates g of max(|g|, 1/s(g))``, capped at 1."""
    return _one_sided(P, Q, Scalar.coerce(r_max))[0]


def local_matching_distance(P, Q, r_max) -> Distance:
    """Symmetrized local matching distance, compared out to radius ``r_max``."""
    same_context(P, Q)
    r_max = Scalar.coerce(r_max)
    if isinstance(P, GeneratedPattern) and isinstance(Q, GeneratedPattern) and P == Q:
        return Distance(SqrtValue(0), Vector.zero(P.dim), None)
    a, ga = _one_sided(P, Q, r_max)
    b, _ = _one_sided(Q, P, r_max)
    return Distance(a if a >= b else b, ga, r_max)


# -- entourage axioms on samples ------------------------------------------------------------


def _verify(P, Q, K, g) -> bool:
    return P.cut(K) == Q.act(g).cut(K)


def _junk(rng, P, far_from: Scalar, count: int):
    """``P`` plus atoms placed farther than ``far_from`` from the origin."""
    if P.kind != "pointset":
        return P
    extra = []
    for _ in range(count):
        side = rng.choice((-1, 1))
        x = side * (far_from + Fraction(rng.randint(1, 16), 4))
        extra.append(FinitePattern("pointset", 1, [_site(x)]))
    atoms = list(P.atoms)
    for e in extra:
        atoms.extend(e.atoms)
    return FinitePattern(P.kind, P.dim, atoms, P.context)


def _site(x):
    from .patterns import Site

    return Site(Vector._make((Scalar.coerce(x),)))


def _sample_base(rng, span=6):
    """A random finite 1D point set on a grid of pitch 1/4 near the origin."""
    n = rng.randint(0, 10)
    cells = sorted({rng.randint(-4 * span, 4 * span) for _ in range(n)})
    return FinitePattern("pointset", 1, [_site(Fraction(c, 4)) for c in cells])


def _small_shift(rng, v: Scalar) -> Vector:
    k = rng.randint(-8, 8)
    return Vector._make((v * Fraction(k, 8),))


def entourage_axiom_suite(seed: int = 0, samples: int = 200, sampler=None):
    """Check the four steps that make ``{U_{K,V}}`` a fundamental system of entourages.

    Each step is checked on ``samples`` cases where its hypothesis holds.
    ``sampler(rng)`` may supply base patterns; by default random finite
    point sets on the line are used, perturbed by small shifts and by
    distant extra points.
    """
    sampler = sampler or _sample_base
    report = {}

    def run(name, trial):
        rng = random.Random(f"{seed}:{name}")
        hits = violations = attempts = 0
        examples = []
        while hits < samples and attempts < 20 * samples:
            attempts += 1
            outcome = trial(rng)
            if outcome is None:
                continue
            hits += 1
            ok, info = outcome
            if not ok:
                violations += 1
                if len(examples) < 3:
                    examples.append(info)
        report[name] = {"checked": hits, "violations": violations, "examples": examples}

    def spec(rng):
        c = Vector._make((Scalar(Fraction(rng.randint(-8, 8), 4)),))
        k = Scalar(Fraction(rng.randint(1, 16), 4))
        v = Scalar(Fraction(1, rng.choice((2, 4, 8))))
        return Ball(c, k), v

    def diagonal(rng):
        P = sampler(rng)
        K, v = spec(rng)
        w = in_entourage(P, P, K, v)
        return (w is not None and w.gamma.is_zero()), repr(P)

    def symmetry(rng):
        P = sampler(rng)
        K, v = spec(rng)
        Kbig = EntourageSpec(K, v).enlarged()
        g = _small_shift(rng, v)
        Q = _junk(rng, P.act(-g), Kbig.radius + 1 + abs(Kbig.center[0]), rng.randint(0, 2))
        w = in_entourage(P, Q, Kbig, v)
        if w is None:
            return None
        inv = -w.gamma
        ok = _verify(Q, P, K, inv) and in_entourage(Q, P, K, v) is not None
        return ok, (repr(P), repr(Q), str(w.gamma))

    def intersection(rng):
        P = sampler(rng)
        K1, v1 = spec(rng)
        K2, v2 = spec(rng)
        v = v1 if v1 <= v2 else v2
        K = region_union(K1, K2)
        g = _small_shift(rng, v)
        far = max(abs(K1.center[0]) + K1.radius, abs(K2.center[0]) + K2.radius) + 1
        Q = _junk(rng, P.act(-g), far, rng.randint(0, 2))
        w = in_entourage(P, Q, K, v)
        if w is None:
            return None
        ok = (
            _verify(P, Q, K1, w.gamma)
            and _verify(P, Q, K2, w.gamma)
            and in_entourage(P, Q, K1, v1) is not None
            and in_entourage(P, Q, K2, v2) is not None
        )
        return ok, (repr(P), repr(Q), str(w.gamma))

    def composition(rng):
        P1 = sampler(rng)
        K, v = spec(rng)
        v1 = v / 2  # V1 V1 = B(e, v) exactly
        K1 = region_union(EntourageSpec(K, v).enlarged(), K)
        far = abs(K.center[0]) + K.radius + v + 1
        g1 = _small_shift(rng, v1)
        g2 = _small_shift(rng, v1)
        P2 = _junk(rng, P1.act(-g1), far, rng.randint(0, 2))
        P3 = _junk(rng, P2.act(-g2), far + 1, rng.randint(0, 2))
        w1 = in_entourage(P1, P2, K1, v1)
        w2 = in_entourage(P2, P3, K1, v1)
        if w1 is None or w2 is None:
            return None
        g = w1.gamma + w2.gamma
        ok = g.norm2() <= v * v and _verify(P1, P3, K, g) and in_entourage(P1, P3, K, v) is not None
        return ok, (repr(P1), repr(P3), str(g))

    run("diagonal", diagonal)
    run("symmetry", symmetry)
    run("intersection", intersection)
    run("composition", composition)
    return report


# -- Cauchy sequences ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchySchedule:
    """``K_n = B(0, n)`` and ``V_n = B(e, 2^{-(n+1)})`` for ``n = 1..N``."""

    N: int
    dim: int = 1

    def K(self, n: int) -> Ball:
        return Ball(Vector.zero(self.dim), Scalar(n))

    def v(self, n: int) -> Scalar:
        return Scalar(Fraction(1, 2 ** (n + 1)))


@dataclass
class CauchyRun:
    patterns: list
    witnesses: list
    partial_products: list
    limit: FinitePattern
    schedule: CauchySchedule
    checks: dict = field(default_factory=dict)

    def xi(self, n: int) -> Vector:
        """``xi_n`` for ``n = 1..N`` (``xi_N = e``)."""
        return self.partial_products[n - 1]


def cauchy_limit(patterns, schedule: CauchySchedule | None = None, space: PatternSpace | None = None) -> CauchyRun:
    """Glue the limit of a Cauchy sequence.

    For each ``n`` a witness ``gamma_n`` in ``V_n`` with
    ``(gamma_n P_n) ∧ K_n = P_{n+1} ∧ K_n`` is found (else
    :class:`NotCauchyAtStep`).  With ``xi_n = gamma_{N-1} + ... + gamma_n``
    the limit is ``Q_1 = sup {(xi_{n+1} P_{n+1}) ∧ K_n : n > 1}``, and the
    run records the checks ``|xi_n| < 2^{-n}`` and
    ``Q_1 ∧ K_k = (xi_{k+1} P_{k+1}) ∧ K_k``.
    """
    patterns = list(patterns)
    N = len(patterns)
    if N < 2:
        raise ValidationError("a Cauchy run needs at least two patterns")
    schedule = schedule or CauchySchedule(N, patterns[0].dim)
    space = space or default_space(patterns[0])
    witnesses = []
    for n in range(1, N):
        Pn, Pn1 = patterns[n - 1], patterns[n]
        w = in_entourage(Pn1, Pn, schedule.K(n), schedule.v(n))
        if w is None:
            raise NotCauchyAtStep(
                n,
                witness={
                    "step": n,
                    "K_radius": str(schedule.K(n).radius),
                    "v": str(schedule.v(n)),
                },
            )
        witnesses.append(w.gamma)
    zero = Vector.zero(schedule.dim)
    xis = [zero] * N
    acc = zero
    for n in range(N - 1, 0, -1):
        acc = acc + witnesses[n - 1]
        xis[n - 1] = acc
    # xis[n-1] is xi_n; xi_N = e
    pieces = [patterns[n].act(xis[n]).cut(schedule.K(n)) for n in range(2, N)]
    limit = space.supremum(pieces)
    checks = {
        "xi_bounds": [
            SqrtValue(xis[n - 1].norm2()) < Scalar(Fraction(1, 2 ** n)) for n in range(1, N + 1)
        ],
        "window_equalities": [
            limit.cut(schedule.K(k)) == patterns[k].act(xis[k]).cut(schedule.K(k))
            for k in range(1, N - 1)
        ],
    }
    return CauchyRun(patterns, witnesses, xis, limit, schedule, checks)


# -- separation ------------------------------------------------------------------------------


@dataclass(frozen=True)
class HausdorffVerdict:
    distinct: bool
    K: Region | None = None
    v: Scalar | None = None
    lower_bound: SqrtValue | None = None
    checked_to: Scalar | None = None

    def __bool__(self):
        return self.distinct


def hausdorff_check(P, Q, r_max, space: PatternSpace | None = None) -> HausdorffVerdict:
    """Separate ``P`` and ``Q`` by an entourage, or report them equal on ``B(0, r_max)``.

    The separating ``U_{K,V}`` has ``K`` the least centred ball of integer
    radius containing the nearest disagreement in its interior, and ``V`` is shrunk until no translation in it
    matches the windows.  ``lower_bound`` is a certified lower bound for the
    local matching distance.
    """
    space = space or default_space(P)
    if not getattr(space, "atomistic", True):
        raise NonAtomisticSpace(f"{space.name} is not atomistic")
    same_context(P, Q)
    r_max = Scalar.coerce(r_max)
    B = _ball(P.dim, r_max)
    s2 = _first_disagreement(P.cut(B), Q.cut(B))
    if s2 is None:
        return HausdorffVerdict(False, checked_to=r_max)
    # K strictly contains the disagreement so no small shift can push it out of K
    rho = 1
    while s2 >= rho * rho:
        rho += 1
    rho = Scalar(rho)
    K = _ball(P.dim, rho)
    v = Scalar(Fraction(1, 4))
    for _ in range(256):
        if in_entourage(P, Q, K, v) is None:
            lower = SqrtValue(v * v) if v <= ONE / rho else SqrtValue((ONE / rho) * (ONE / rho))
            return HausdorffVerdict(True, K, v, lower, r_max)
        v = v / 2
    raise ValidationError("could not separate the patterns; they may differ only by a tiny shift")
