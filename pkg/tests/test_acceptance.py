"""The ten acceptance criteria, one test each.

Every test records a PASS/FAIL line (printed at the end of the session by
conftest.py) and must finish in under 60 seconds.  Frozen constants were
computed by the independent oracles below, not by the library.
"""

import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from patternspace.core import AXIOM_LAWS, axiom_report, supremum
from patternspace.errors import NoSupremum
from patternspace.field import Scalar, SqrtValue, Vector
from patternspace.generators import ShiftedRowsGenerator, fibonacci_point_set, fibonacci_word, integers
from patternspace.hull import diagonal_subsequence, eps_net, flc_check, orbit_sample, shift_grid, symbolic_complexity
from patternspace.patterns import FinitePattern, point_set
from patternspace.regions import Ball
from patternspace.sampling import random_pattern
from patternspace.spaces import PointSetSpace, TruncatedFamily, space_by_name
from patternspace.topology import (
    CauchySchedule,
    _junk,
    _sample_base,
    _site,
    _small_shift,
    cauchy_limit,
    entourage_axiom_suite,
    hausdorff_check,
    in_entourage,
    local_matching_distance,
    one_sided_distance,
)

RESULTS = {}
BUDGET = 60.0


def record(number, name, ok, detail, started):
    elapsed = time.perf_counter() - started
    ok = ok and elapsed < BUDGET
    RESULTS[number] = f"{'PASS' if ok else 'FAIL'} [{number}] {name} ({elapsed:.1f}s): {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


# -- independent oracles ------------------------------------------------------------------


def fibonacci_prefix(n):
    """Prefix of the Fibonacci word by plain string rewriting a -> ab, b -> a."""
    w = "a"
    while len(w) < n:
        w = "".join("ab" if c == "a" else "a" for c in w)
    return w[:n]


def brute_factor_counts(word, n_max):
    return [len({word[i : i + n] for i in range(len(word) - n + 1)}) for n in range(1, n_max + 1)]


def shifted_rows_class_oracle(W, R=2, alpha=math.sqrt(2)):
    """Distinct R-clusters of {(m + k^2 alpha, k)} anchored in [-W, W]^2, in floating point.

    A cluster around an anchor in row k only depends on k (rows have period 1),
    so it is enough to describe the neighbours of (k^2 alpha, k) for each k.
    """
    sigs = set()
    for k in range(-W, W + 1):
        x0 = k * k * alpha
        # the row has an anchor inside the window: some m with |m + x0| <= W
        if not any(abs(m + x0) <= W for m in range(math.floor(-W - x0), math.ceil(W - x0) + 1)):
            continue
        sig = []
        for j in range(-R, R + 1):
            off = (k + j) ** 2 * alpha - x0
            for m in range(math.floor(-R - off) - 1, math.ceil(R - off) + 2):
                x = m + off
                if x * x + j * j <= R * R + 1e-9:
                    sig.append((round(x, 9), j))
        sigs.add(tuple(sorted(sig)))
    return len(sigs)


# frozen from the oracles above
FIB_COMPLEXITY = [n + 1 for n in range(1, 13)]
Z_CLASSES_R_3_2 = 2
SHIFTED_ROWS_WINDOWS = [1, 2, 4, 8, 16, 32]
Z_NET_SIZE = 4


def test_oracles_agree_with_frozen_values():
    assert brute_factor_counts(fibonacci_prefix(500), 12) == FIB_COMPLEXITY
    counts = [shifted_rows_class_oracle(W) for W in SHIFTED_ROWS_WINDOWS]
    assert counts == [2 * W + 1 for W in SHIFTED_ROWS_WINDOWS]
    # a closed interval of length 3 holds three or four consecutive integers
    assert len({len([n for n in range(-5, 6) if abs(n - x / 8) <= 1.5]) for x in range(8)}) == Z_CLASSES_R_3_2


# -- 1. axioms -------------------------------------------------------------------------------


FIVE_SPACES = [
    ("pointset", 1),
    ("pointset", 2),
    ("patch", 1),
    ("patch", 2),
    ("symbolic", 1),
    ("comb", 1),
    ("comb", 2),
    ("multi", 1),
    ("multi", 2),
]


def test_1_axiom_suite():
    t = time.perf_counter()
    failed = {}
    for name, dim in FIVE_SPACES:
        report = axiom_report(space_by_name(name, dim), 1000, 2024, list(AXIOM_LAWS))
        for entry in report:
            assert entry["samples"] == 1000
            if entry["failed"]:
                failed[f"{name}/{dim}d/{entry['law']}"] = entry["failures"][:1]
    detail = f"{len(FIVE_SPACES)} space/dimension pairs x {len(AXIOM_LAWS)} laws x 1000 cases, failures: {failed or 0}"
    record(1, "axiom suite", not failed, detail, t)


# -- 2. order and gluing -----------------------------------------------------------------------


def test_2_order_and_gluing():
    t = time.perf_counter()
    failed = {}
    for name, dim in FIVE_SPACES:
        report = axiom_report(space_by_name(name, dim), 1000, 2024, ["order_cut", "order_monotone", "gluing"])
        for entry in report:
            if entry["failed"]:
                failed[f"{name}/{dim}d/{entry['law']}"] = entry["failures"][:1]
    family = TruncatedFamily(
        point_set([Scalar(n), Scalar(n) + Scalar(Fraction(1, n))]) for n in range(2, 51)
    )
    try:
        supremum(family, PointSetSpace(1, uniformly_discrete=True))
        truncated = "no failure raised"
    except NoSupremum as exc:
        truncated = f"NoSupremum {exc.witness}"
    ok = not failed and truncated.startswith("NoSupremum")
    record(2, "order/gluing suite", ok, f"laws failures: {failed or 0}; truncation: {truncated}", t)


# -- 3. entourages -----------------------------------------------------------------------------


def test_3_entourage_suite():
    t = time.perf_counter()
    report = entourage_axiom_suite(seed=3, samples=200)
    ok = all(r["checked"] >= 200 and r["violations"] == 0 for r in report.values())
    detail = ", ".join(f"{k}: {r['checked']} checked / {r['violations']} violations" for k, r in report.items())
    record(3, "entourage suite", ok, detail, t)


# -- 4. metric -------------------------------------------------------------------------------------


def _pointed_base(rng):
    """A random finite point set with an atom within distance 1 of the origin."""
    P = _sample_base(rng, span=10)
    return FinitePattern("pointset", 1, list(P.atoms) + [_site(Fraction(rng.randint(-3, 3), 4))])


def _near(rng, P):
    g = _small_shift(rng, Scalar(Fraction(1, rng.choice((2, 4, 8, 16)))))
    return _junk(rng, P.act(-g), Scalar(rng.randint(1, 9)), rng.randint(0, 2))


def test_4_metric_checks():
    t = time.perf_counter()
    problems = []
    Z = integers().pattern()
    d = local_matching_distance(Z, Z.act(Vector((Scalar(Fraction(1, 10)),))), 20)
    if d.value != SqrtValue(Scalar(Fraction(1, 100))):
        problems.append(f"d(Z, Z+1/10) = {d.value}")
    rmax = Scalar(20)
    boundary = 0
    for i in range(200):
        rng = random.Random(f"metric:{i}")
        P = _pointed_base(rng)
        Q = _near(rng, P)
        R = _near(rng, Q)
        if local_matching_distance(P, P, rmax).value != SqrtValue(0):
            problems.append(f"d(P,P) != 0 at {i}")
        dpq = local_matching_distance(P, Q, rmax).value
        if local_matching_distance(Q, P, rmax).value != dpq:
            problems.append(f"asymmetric at {i}")
        dqr = local_matching_distance(Q, R, rmax).value
        dpr = local_matching_distance(P, R, rmax).value
        m = dpq if dpq >= dqr else dqr
        if not dpr.square() <= 4 * m.square():
            problems.append(f"weak triangle at {i}")
        one = one_sided_distance(P, Q, rmax)
        for e in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
            eps = Scalar(e)
            member = in_entourage(P, Q, Ball(Vector((Scalar(0),)), 1 / eps), eps) is not None
            # membership gives d <= eps, and d < eps gives membership
            if member and not one <= eps:
                problems.append(f"member but d > eps at {i}, eps={e}")
            if one < eps and not member:
                problems.append(f"d < eps but not member at {i}, eps={e}")
            if one == eps and not member:
                # the infimum is not attained: membership holds for every larger eps
                boundary += 1
                e2 = eps * Fraction(1025, 1024)
                if in_entourage(P, Q, Ball(Vector((Scalar(0),)), 1 / e2), e2) is None:
                    problems.append(f"no membership just above d at {i}")
    detail = (
        f"d(Z,Z+1/10)={d.value}; 200 triples; equivalence at 1/2,1/4,1/8 "
        f"({boundary} boundary cases d = eps resolved just above eps); problems: {problems[:3] or 0}"
    )
    record(4, "metric checks", not problems, detail, t)


# -- 5. Hausdorff ----------------------------------------------------------------------------------


def test_5_hausdorff():
    t = time.perf_counter()
    spaces = [
        space_by_name("pointset", 1),
        space_by_name("pointset", 2),
        space_by_name("patch", 1),
        space_by_name("patch", 2),
        space_by_name("labeled-patch", 1),
        space_by_name("symbolic"),
        space_by_name("comb", 1),
        space_by_name("comb", 2),
    ]
    checked, bad, i = 0, [], 0
    while checked < 100:
        rng = random.Random(f"hausdorff:{i}")
        space = spaces[i % len(spaces)]
        i += 1
        P, Q = random_pattern(rng, space), random_pattern(rng, space)
        if P == Q:
            continue
        checked += 1
        verdict = hausdorff_check(P, Q, 100, space)
        if not verdict.distinct or in_entourage(P, Q, verdict.K, verdict.v) is not None:
            bad.append(i - 1)
    record(5, "Hausdorff separation", not bad, f"{checked} distinct pairs, unseparated: {bad or 0}", t)


# -- 6. completeness ---------------------------------------------------------------------------------


def test_6_cauchy_completeness():
    t = time.perf_counter()
    N = 12
    F = fibonacci_point_set().pattern()
    # s_n = sum_{k >= n} 2^{-(k+2)} = 2^{-(n+1)}
    patterns = [F.act(Vector((Scalar(Fraction(1, 2 ** (n + 1))),))) for n in range(1, N + 1)]
    run = cauchy_limit(patterns, CauchySchedule(N))
    windows = all(
        run.limit.cut(Ball(Vector((Scalar(0),)), Scalar(k))) == patterns[k].act(run.xi(k + 1)).cut(Ball(Vector((Scalar(0),)), Scalar(k)))
        for k in range(1, N - 1)
    )
    bounds = all(SqrtValue(run.xi(n).norm2()) < Scalar(Fraction(1, 2 ** n)) for n in range(1, N + 1))
    ok = windows and bounds and all(run.checks["window_equalities"]) and all(run.checks["xi_bounds"])
    detail = f"N={N}, window equalities k=1..{N - 2}: {windows}, |xi_n| < 2^-n for n=1..{N}: {bounds}, |Q1|={len(run.limit)}"
    record(6, "Cauchy completeness", ok, detail, t)


# -- 7. FLC ------------------------------------------------------------------------------------------------


def test_7_flc_quantitative():
    t = time.perf_counter()
    z = flc_check(integers().pattern(), Scalar(Fraction(3, 2)), [1, 2, 5, 10, 20])
    z_ok = z.class_counts[3:] == [Z_CLASSES_R_3_2, Z_CLASSES_R_3_2] and z.stabilized
    fib = symbolic_complexity(fibonacci_word().pattern(), 12)
    oracle = brute_factor_counts(fibonacci_prefix(500), 12)
    fib_ok = fib == oracle == FIB_COMPLEXITY
    rows = flc_check(ShiftedRowsGenerator().pattern(), Scalar(2), SHIFTED_ROWS_WINDOWS, mode="anchored")
    c = rows.class_counts
    rows_ok = all(a < b for a, b in zip(c, c[1:])) and c == [2 * W + 1 for W in SHIFTED_ROWS_WINDOWS]
    detail = f"Z R=3/2: {z.class_counts}; Fibonacci p(1..12): {fib}; ShiftedRows R=2 W={SHIFTED_ROWS_WINDOWS}: {c}"
    record(7, "FLC quantitative", z_ok and fib_ok and rows_ok, detail, t)


# -- 8. compactness evidence ------------------------------------------------------------------------


def test_8_eps_nets():
    t = time.perf_counter()
    Z = integers().pattern()
    z_sizes = []
    for n in (64, 128, 256):
        sample = orbit_sample(Z, shift_grid(0, Fraction(1, n), n), 20)
        net = eps_net(sample, Fraction(1, 8))
        assert all(sample.distance(i, net.assignment[i]) <= Scalar(Fraction(1, 8)) for i in range(n))
        z_sizes.append(len(net))
    rows = ShiftedRowsGenerator().pattern()
    r_sizes = []
    for n in (2, 4, 8, 16):
        sample = orbit_sample(rows, shift_grid((0, 0), (0, 1), n), 6)
        r_sizes.append(len(eps_net(sample, Fraction(1, 5))))
    ok = z_sizes[-1] == z_sizes[-2] == Z_NET_SIZE and all(a < b for a, b in zip(r_sizes, r_sizes[1:]))
    detail = f"Z nets (64,128,256 shifts, eps=1/8): {z_sizes}; ShiftedRows nets (2,4,8,16 shifts, eps=1/5): {r_sizes}"
    record(8, "compactness evidence", ok, detail, t)


# -- 9. diagonal extraction ----------------------------------------------------------------------------


def test_9_diagonal_subsequence():
    t = time.perf_counter()
    rng = random.Random(9)
    base = fibonacci_point_set().pattern().cut(Ball(Vector((Scalar(0),)), Scalar(12)))
    planted = sorted(rng.sample(range(20), 8))
    patterns = []
    for i in range(20):
        if i in planted:
            patterns.append(base.act(Vector((Scalar(Fraction(1, 2 ** (12 + i))),))))
        else:
            pts = sorted({Fraction(rng.randint(-48, 48), 4) for _ in range(20)})
            patterns.append(point_set(pts))
    schedule = CauchySchedule(4)
    result = diagonal_subsequence(patterns, schedule)
    levels = [(schedule.K(n), schedule.v(n)) for n in range(1, 5)]
    pairwise = all(
        in_entourage(patterns[i], patterns[j], K, v) is not None
        for K, v in levels
        for i in result.diagonal
        for j in result.diagonal
        if i != j
    )
    rechecked = all(
        g.norm2() <= levels[lv - 1][1] ** 2
        and patterns[i].cut(levels[lv - 1][0]) == patterns[j].act(g).cut(levels[lv - 1][0])
        for (lv, i, j), g in result.witnesses.items()
    )
    ok = pairwise and rechecked and result.survivors[-1] == planted and len(result.diagonal) == 4
    detail = f"planted {planted}, survivors {result.survivors[-1]}, diagonal {result.diagonal}, witnesses re-checked: {rechecked}"
    record(9, "diagonal subsequence", ok, detail, t)


# -- 10. determinism -----------------------------------------------------------------------------------


def _cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run(
        [sys.executable, "-m", "patternspace", *args], cwd=cwd, env=env, capture_output=True, text=True, timeout=50
    )


def test_10_cli_determinism(tmp_path):
    t = time.perf_counter()
    setup = [
        (["gen", "--preset", "integers", "--out", "Z.json"], None),
        (["gen", "--preset", "integers", "--shift", "1/10", "--out", "Z10.json"], None),
        (["gen", "--preset", "fibonacci", "--window", "ball:0:8", "--out", "F.json"], None),
    ]
    for args, _ in setup:
        assert _cli(args, tmp_path, 0).returncode == 0
    (tmp_path / "run.json").write_text(json.dumps({"preset": "fibonacci", "N": 8}))
    commands = [
        ["gen", "--preset", "fibonacci-tiling", "--window", "ball:0:6"],
        ["gen", "--preset", "shifted-rows", "--window", "box:-2,-2:2,2"],
        ["cut", "F.json", "--region", "box:-3:3"],
        ["dist", "Z.json", "Z10.json", "--rmax", "20"],
        ["entourage", "Z.json", "Z10.json", "--K", "ball:0:3", "--v", "1/4"],
        ["flc", "Z.json", "--radius", "3/2", "--windows", "1,2,5"],
        ["hull-net", "Z.json", "--grid", "0:1/16:16", "--eps", "1/8", "--rmax", "10"],
        ["cauchy-limit", "run.json"],
        ["axioms", "--space", "pointset", "--samples", "30", "--seed", "42"],
        ["render", "F.json"],
    ]
    mismatched = []
    for k, args in enumerate(commands):
        outs = []
        for run_no, hashseed in enumerate((1, 2)):
            out = f"out{k}-{run_no}"
            res = _cli([*args, "--out", out] if args[0] != "render" else [*args, "--svg", out], tmp_path, hashseed)
            assert res.returncode == 0, (args, res.stderr)
            outs.append((tmp_path / out).read_bytes())
        if outs[0] != outs[1]:
            mismatched.append(args[0])
    detail = f"{len(commands)} commands rerun under different hash seeds, mismatches: {mismatched or 0}"
    record(10, "CLI determinism", not mismatched, detail, t)

