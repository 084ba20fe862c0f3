"""Local complexity and the continuous hull.

``flc_check`` counts translation classes of ``R``-clusters over growing
windows, ``symbolic_complexity`` counts factors of substitution and periodic
words exactly, ``orbit_sample`` and ``eps_net`` probe total boundedness of
the orbit closure, and ``diagonal_subsequence`` runs the nested extraction
used to find convergent subsequences.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoSubsequence, UnboundedRegion, ValidationError
from .field import Scalar, SqrtValue, Vector, as_vector
from .generators import LatticeGenerator, PeriodicWordGenerator, SubstitutionGenerator1D
from .patterns import FinitePattern, GeneratedPattern
from .regions import Ball, Box
from .topology import CauchySchedule, in_entourage, local_matching_distance


@dataclass(frozen=True)
class ClusterClass:
    """A cluster translated so its least anchor sits at the origin."""

    canonical: FinitePattern
    multiplicity: int


def canonical(cluster: FinitePattern) -> FinitePattern:
    """Representative of the translation class of a finite cluster."""
    if not cluster.atoms:
        return cluster
    return cluster.act(-cluster.atoms[0].anchor)


@dataclass
class FLCReport:
    radius: Scalar
    windows: list
    class_counts: list
    stabilized: bool
    certified: bool
    mode: str
    classes: list = field(default_factory=list)


def _sweep_points_1d(P: FinitePattern, R: Scalar, W: Scalar):
    """Centres ``x`` in ``[-W, W]`` at which the cluster ``P ∧ [x - R, x + R]`` can change,
    together with one centre strictly between consecutive change points."""
    marks = {-W, W}
    for a in P.atoms:
        lo, hi = a.footprint()
        for t in (hi[0] - R, lo[0] + R):
            if -W <= t <= W:
                marks.add(t)
    marks = sorted(marks)
    mids = [(a + b) / 2 for a, b in zip(marks, marks[1:])]
    return marks + mids


def _clusters_1d(P: FinitePattern, R: Scalar, centres):
    los = [a.footprint()[0][0] for a in P.atoms]
    out = []
    for x in centres:
        i = bisect_left(los, x - R)
        j = bisect_right(los, x + R)
        right = x + R
        atoms = [a for a in P.atoms[i:j] if a.footprint()[1][0] <= right]
        out.append(FinitePattern(P.kind, P.dim, atoms, P.context, _sorted=True))
    return out


def _is_periodic(P):
    return isinstance(P, GeneratedPattern) and isinstance(
        P.generator, (LatticeGenerator, PeriodicWordGenerator)
    )


def _period_reach(P) -> Scalar:
    g = P.generator
    if isinstance(g, PeriodicWordGenerator):
        return Scalar(len(g.word))
    total = Scalar(0)
    for b in g.basis:
        # an upper bound on |b| is enough: use the sum of absolute coordinates
        total = total + sum((abs(c) for c in b), Scalar(0))
    return total


def flc_check(P, R, windows, mode: str = "auto") -> FLCReport:
    """Count translation classes of the clusters ``(g P) ∧ B(0, R)``.

    ``mode="sweep"`` (one dimension) lets the cluster centre run over every
    real point of ``[-W, W]``, visiting each change point and one point
    between consecutive change points, so every translate is seen.
    ``mode="anchored"`` centres clusters at anchors of ``P`` only.  Symbolic
    patterns are swept over integer centres.  ``auto`` sweeps in dimension
    one and anchors in dimension two.

    Equal counts on the last two windows are evidence of finite local
    complexity, not proof; for periodic patterns whose window covers a full
    period the count is certified.
    """
    R = Scalar.coerce(R)
    if R.sign() <= 0:
        raise ValidationError("cluster radius must be positive")
    ws = sorted(Scalar.coerce(w) for w in windows)
    if not ws:
        raise ValidationError("at least one window is needed")
    if mode == "auto":
        mode = "sweep" if P.dim == 1 else "anchored"
    if mode == "sweep" and P.dim != 1:
        raise ValidationError("the sweep mode is one-dimensional")
    counts = []
    classes = {}
    dim = P.dim
    zero = Vector.zero(dim)
    for W in ws:
        reach = W + R + 1
        if dim == 1:
            local = P.cut(Box(Vector((-reach,)), Vector((reach,))))
        else:
            local = P.cut(Box(Vector((-reach, -reach)), Vector((reach, reach))))
        if P.kind == "symbolic":
            centres = [Scalar(n) for n in range((-W).ceil(), W.floor() + 1)]
            clusters = _clusters_1d(local, R, centres)
        elif mode == "sweep":
            clusters = _clusters_1d(local, R, _sweep_points_1d(local, R, W))
        elif mode == "anchored":
            clusters = []
            for a in local.atoms:
                c = a.anchor
                if all(-W <= x <= W for x in c):
                    clusters.append(local.cut(Ball(c, R)))
            if not clusters:
                clusters.append(local.cut(Ball(zero, R)))
        else:
            raise ValidationError(f"unknown mode {mode!r}")
        classes = {}
        for c in clusters:
            key = canonical(c)
            classes[key] = classes.get(key, 0) + 1
        counts.append(len(classes))
    certified = _is_periodic(P) and ws[-1] >= _period_reach(P)
    stabilized = len(counts) >= 2 and counts[-1] == counts[-2]
    ordered = sorted(classes.items(), key=lambda kv: (len(kv[0].atoms), [a.key() for a in kv[0].atoms]))
    return FLCReport(
        radius=R,
        windows=ws,
        class_counts=counts,
        stabilized=stabilized,
        certified=certified,
        mode=mode,
        classes=[ClusterClass(k, m) for k, m in ordered],
    )


# -- factor complexity ---------------------------------------------------------------


def _factors(word: str, n: int, starts=None) -> set:
    if starts is None:
        starts = range(len(word) - n + 1)
    return {word[i : i + n] for i in starts if i + n <= len(word)}


def _apply(rule, word, times=1):
    for _ in range(times):
        word = "".join(rule[c] for c in word)
    return word


def substitution_language(gen: SubstitutionGenerator1D, n: int) -> set:
    """All length-``n`` factors of the two-sided fixed point (exact)."""
    rule = gen.rule_map
    p = gen.power
    seed = gen.seed[0] + gen.seed[1]
    legal = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for w in frontier:
            for f in _factors(_apply(rule, w, p), 2):
                if f not in legal:
                    legal.add(f)
                    nxt.append(f)
        frontier = nxt
    k = 0
    while min(len(_apply(rule, c, k)) for c in rule) < n:
        k += p
    out = set()
    for uv in legal:
        out |= _factors(_apply(rule, uv, k), n)
    return out


def symbolic_complexity(P, n_max: int) -> list:
    """``[p(1), ..., p(n_max)]``, the number of distinct factors of each length.

    Substitution words are handled through their legal two-letter words:
    every factor of length ``n`` lies inside the image of a legal pair under
    a power of the substitution long enough to cover ``n`` letters.
    Periodic words use their cyclic factors; finite symbolic patterns and
    plain strings are counted directly.
    """
    if isinstance(P, GeneratedPattern):
        gen = P.generator
    else:
        gen = P
    out = []
    if isinstance(gen, SubstitutionGenerator1D):
        for n in range(1, n_max + 1):
            out.append(len(substitution_language(gen, n)))
        return out
    if isinstance(gen, PeriodicWordGenerator):
        w = gen.word
        for n in range(1, n_max + 1):
            reps = (n + len(w)) // len(w) + 1
            out.append(len(_factors(w * reps, n, range(len(w)))))
        return out
    if isinstance(gen, FinitePattern):
        word = "".join(a.tag for a in gen.atoms)
    elif isinstance(gen, str):
        word = gen
    else:
        raise ValidationError("factor complexity needs a symbolic pattern or word")
    return [len(_factors(word, n)) for n in range(1, n_max + 1)]


# -- orbit samples and nets ------------------------------------------------------------------


class HullSample:
    """Translates ``g_i P`` with their pairwise local matching distances.

    Distances are computed on demand and cached, so building a net touches
    only the pairs it needs.
    """

    def __init__(self, center, shifts, r_max):
        self.center = center
        self.shifts = [as_vector(g, center.dim) for g in shifts]
        self.r_max = Scalar.coerce(r_max)
        self._points = {}
        self._cache = {}

    def __len__(self):
        return len(self.shifts)

    def point(self, i: int):
        p = self._points.get(i)
        if p is None:
            # only the ball of radius r_max + 1 is ever looked at
            full = self.center.act(self.shifts[i])
            p = full.cut(Ball(Vector.zero(self.center.dim), self.r_max + 1))
            self._points[i] = p
        return p

    def distance(self, i: int, j: int) -> SqrtValue:
        if i == j:
            return SqrtValue(0)
        key = (i, j) if i < j else (j, i)
        d = self._cache.get(key)
        if d is None:
            d = local_matching_distance(self.point(key[0]), self.point(key[1]), self.r_max).value
            self._cache[key] = d
        return d

    def distance_matrix(self):
        n = len(self)
        return [[self.distance(i, j) for j in range(n)] for i in range(n)]


def orbit_sample(P, shift_grid, r_max) -> HullSample:
    return HullSample(P, list(shift_grid), r_max)


def _as_shift(x) -> Vector:
    if isinstance(x, Vector):
        return x
    if isinstance(x, (tuple, list)):
        return Vector(tuple(x))
    if isinstance(x, str):
        from .field import parse_vector

        return parse_vector(x)
    return Vector((x,))


def shift_grid(start, step, count: int):
    """``count`` shifts ``start + k * step``; scalars stand for one-dimensional shifts."""
    start, step = _as_shift(start), _as_shift(step)
    return [start + step.scale(k) for k in range(count)]


@dataclass
class EpsNet:
    centers: list
    assignment: list
    radius: SqrtValue
    eps: Scalar

    def __len__(self):
        return len(self.centers)


def eps_net(sample: HullSample, eps) -> EpsNet:
    """Greedy farthest-point net started at index 0.

    Every sample point ends within ``eps`` of its assigned centre and the
    centres are pairwise more than ``eps`` apart.
    """
    eps = Scalar.coerce(eps)
    if eps.sign() <= 0:
        raise ValidationError("eps must be positive")
    n = len(sample)
    if n == 0:
        return EpsNet([], [], SqrtValue(0), eps)
    centers = [0]
    nearest = [sample.distance(0, i) for i in range(n)]
    owner = [0] * n
    while True:
        far = max(range(n), key=lambda i: (nearest[i], -i))
        if nearest[far] <= eps:
            break
        centers.append(far)
        for i in range(n):
            d = sample.distance(far, i)
            if d < nearest[i]:
                nearest[i] = d
                owner[i] = far
    radius = max(nearest)
    return EpsNet(centers, owner, radius, eps)


# -- diagonal extraction --------------------------------------------------------------------


@dataclass
class DiagonalResult:
    survivors: list
    diagonal: list
    witnesses: dict


def _levels(specs):
    if isinstance(specs, CauchySchedule):
        return [(specs.K(n), specs.v(n)) for n in range(1, specs.N + 1)]
    return [(K, Scalar.coerce(v)) for K, v in specs]


def diagonal_subsequence(patterns, specs) -> DiagonalResult:
    """Nested extraction of mutually matching subsequences.

    At level ``k`` the survivors of level ``k - 1`` are reduced to a largest
    set (found greedily, earliest index first) whose members are pairwise in
    ``U_{K_k, V_k}`` in both orders.  The diagonal takes the ``k``-th
    survivor of level ``k`` for as long as it exists.
    """
    patterns = list(patterns)
    current = list(range(len(patterns)))
    survivors = []
    witnesses = {}
    for level, (K, v) in enumerate(_levels(specs), start=1):
        ok = {}

        def close(i, j):
            key = (i, j)
            if key not in ok:
                w1 = in_entourage(patterns[i], patterns[j], K, v)
                w2 = in_entourage(patterns[j], patterns[i], K, v) if w1 is not None else None
                ok[key] = ok[(j, i)] = w1 is not None and w2 is not None
                if ok[key]:
                    witnesses[(level, i, j)] = w1.gamma
                    witnesses[(level, j, i)] = w2.gamma
            return ok[key]

        best = []
        for s, start in enumerate(current):
            group = [start]
            for j in current[s + 1 :]:
                if all(close(i, j) for i in group):
                    group.append(j)
            if len(group) > len(best):
                best = group
        if len(best) < 2:
            raise NoSubsequence(level, witness={"level": level, "candidates": current})
        current = best
        survivors.append(list(best))
    diagonal = []
    for k, level in enumerate(survivors, start=1):
        if len(level) < k:
            break
        diagonal.append(level[k - 1])
    return DiagonalResult(survivors, diagonal, witnesses)
