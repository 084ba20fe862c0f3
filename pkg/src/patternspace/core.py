"""The pattern-space contract as free functions, plus a randomized axiom harness."""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import UnboundedOperand
from .patterns import FinitePattern, require_finite, same_context
from .regions import (
    All,
    Empty,
    Region,
    region_includes,
    region_intersect,
    region_translate,
)
from .sampling import (
    random_compatible_family,
    random_pattern,
    random_region,
    random_subpattern,
    random_translation,
    region_near,
)
from .spaces import PatternSpace, TruncatedFamily, default_space


def cut(P, C: Region):
    return P.cut(C)


def support(P) -> Region:
    return P.support()


def act(g, P):
    return P.act(g)


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of ``P >= Q``: whether ``P`` cut to ``Q``'s support gives ``Q``."""

    geq: bool
    witness_region: Region

    def __bool__(self):
        return self.geq


def geq(P, Q, window: Region | None = None, space: PatternSpace | None = None) -> OrderVerdict:
    """Decide ``P >= Q``.

    With ``window`` the comparison is window-certified: it decides
    ``P ∧ W >= Q ∧ W``, which is how generator-backed operands are compared.
    """
    same_context(P, Q)
    cutter = space.cut if space is not None else (lambda X, C: X.cut(C))
    if window is not None:
        P = cutter(P, window)
        Q = cutter(Q, window)
    if not Q.is_finite():
        raise UnboundedOperand("comparing against a generator-backed pattern needs a window")
    S = Q.support()
    return OrderVerdict(cutter(P, S) == Q, S)


def compatible(P, Q, space: PatternSpace | None = None) -> bool:
    same_context(P, Q)
    space = space or default_space(P)
    require_finite(P, "compatibility")
    require_finite(Q, "compatibility")
    return space.compatible(P, Q)


def supremum(family, space: PatternSpace | None = None):
    """Glue a finite family; raises ``IncompatibleFamily`` or ``NoSupremum``."""
    members = list(family)
    if space is None:
        if not members:
            raise ValueError("the supremum of an empty family needs its space")
        space = default_space(members[0])
    return space.supremum(family if isinstance(family, TruncatedFamily) else members)


def zero(space: PatternSpace) -> FinitePattern:
    return space.zero()


def atoms(P, space: PatternSpace | None = None):
    space = space or default_space(P)
    return space.atoms(P)


# -- randomized harness ----------------------------------------------------------


def _fmt(x):
    return repr(x)


def _law_cut_composition(space, rng):
    P = random_pattern(rng, space)
    C1 = random_region(rng, space, near=region_near(P))
    C2 = random_region(rng, space, near=region_near(P))
    got = space.cut(space.cut(P, C1), C2)
    exp = space.cut(P, region_intersect(C1, C2))
    return got == exp, (P, C1, C2), exp, got


def _law_cut_support_axiom(space, rng):
    P = random_pattern(rng, space)
    roll = rng.random()
    if roll < 0.25:
        C = P.support()
    elif roll < 0.3:
        C = All()
    else:
        C = random_region(rng, space, near=region_near(P))
    lhs = space.cut(P, C) == P
    rhs = region_includes(C, space.support(P))
    return lhs == rhs, (P, C), rhs, lhs


def _law_support(space, rng):
    P = random_pattern(rng, space)
    C = random_region(rng, space, near=region_near(P))
    S = space.support(space.cut(P, C))
    ok_c = region_includes(C, S)
    ok_p = region_includes(space.support(P), S)
    return ok_c and ok_p, (P, C), True, (ok_c, ok_p)


def _law_equivariance(space, rng):
    P = random_pattern(rng, space)
    C = random_region(rng, space, near=region_near(P))
    g = random_translation(rng, space)
    got = space.cut(space.act(g, P), region_translate(g, C))
    exp = space.act(g, space.cut(P, C))
    return got == exp, (g, P, C), exp, got


def _law_order_cut(space, rng):
    P = random_pattern(rng, space)
    C = random_region(rng, space, near=region_near(P))
    ok = bool(geq(P, space.cut(P, C), space=space))
    return ok, (P, C), True, ok


def _law_order_monotone(space, rng):
    P = random_pattern(rng, space)
    Q = random_subpattern(rng, P) if rng.random() < 0.5 else space.cut(P, random_region(rng, space, near=region_near(P)))
    C = random_region(rng, space, near=region_near(P))
    if not geq(P, Q, space=space):
        return False, (P, Q), "P >= Q", "not P >= Q"
    ok = bool(geq(space.cut(P, C), space.cut(Q, C), space=space))
    return ok, (P, Q, C), True, ok


def _law_gluing(space, rng):
    fam = random_compatible_family(rng, space)
    C = random_region(rng, space, near=[a.anchor for F in fam for a in F.atoms])
    lhs = space.supremum([space.cut(F, C) for F in fam])
    rhs = space.cut(space.supremum(fam), C)
    return lhs == rhs, (fam, C), rhs, lhs


def _law_atomistic(space, rng):
    P = random_pattern(rng, space)
    got = space.supremum(space.atoms(P))
    return got == P, (P,), P, got


def _law_zero(space, rng):
    P = random_pattern(rng, space)
    g = random_translation(rng, space)
    z = space.zero()
    got = (space.cut(P, Empty()), space.act(g, z), space.support(z))
    ok = got[0] == z and got[1] == z and isinstance(got[2], Empty)
    C = random_region(rng, space)
    ok = ok and space.cut(z, C) == z
    return ok, (P, g), (z, z, Empty()), got


AXIOM_LAWS = {
    "cut_composition": _law_cut_composition,
    "cut_support_axiom": _law_cut_support_axiom,
    "support_law": _law_support,
    "equivariance": _law_equivariance,
}

ORDER_LAWS = {
    "order_cut": _law_order_cut,
    "order_monotone": _law_order_monotone,
    "gluing": _law_gluing,
    "atomistic": _law_atomistic,
    "zero_unique": _law_zero,
}

ALL_LAWS = {**AXIOM_LAWS, **ORDER_LAWS}


def _run_law(args):
    space, law, seed, start, stop = args
    fn = ALL_LAWS[law]
    failures = []
    for i in range(start, stop):
        rng = random.Random(f"{seed}:{law}:{i}")
        try:
            ok, inputs, expected, got = fn(space, rng)
        except Exception as exc:  # a law that crashes is a failure, with its error
            ok, inputs, expected, got = False, f"sample {i}", "no error", f"{type(exc).__name__}: {exc}"
        if not ok:
            failures.append(
                {"sample": i, "inputs": _fmt(inputs), "expected": _fmt(expected), "got": _fmt(got)}
            )
    return failures


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PATTERNSPACE_THREADS", "1")))
    except ValueError:
        return 1


def axiom_report(space: PatternSpace, sample_size: int = 1000, seed: int = 0, laws=None):
    """Run each law on ``sample_size`` seeded samples.

    Returns a list of ``{"law", "samples", "failures"}`` records; failures
    keep the five smallest counterexamples.  Sample ``i`` of a law draws from
    its own generator seeded by ``(seed, law, i)``, so the report does not
    depend on how samples are split between workers.
    """
    names = list(ALL_LAWS) if laws is None else list(laws)
    workers = _workers()
    report = []
    for law in names:
        if workers > 1 and sample_size >= 4 * workers:
            bounds = [sample_size * k // workers for k in range(workers + 1)]
            jobs = [(space, law, seed, a, b) for a, b in zip(bounds, bounds[1:])]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                failures = [f for part in pool.map(_run_law, jobs) for f in part]
        else:
            failures = _run_law((space, law, seed, 0, sample_size))
        smallest = sorted(failures, key=lambda f: (len(f["inputs"]), f["sample"]))[:5]
        report.append(
            {
                "law": law,
                "samples": sample_size,
                "failed": len(failures),
                "failures": sorted(smallest, key=lambda f: f["sample"]),
            }
        )
    return report


def report_passed(report) -> bool:
    return all(entry["failed"] == 0 for entry in report)
