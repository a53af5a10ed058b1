"""Acceptance criteria, one test per criterion.

Each test records a one-line PASS/FAIL verdict that is printed in the pytest
terminal summary.  Running this file directly prints the same lines.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from fixtures import six_piece_tiling
from traptile.analysis import (
    Verdict,
    certainly_above,
    check_conditions,
    check_lemma_001,
    fc_slope,
    interval_of,
)
from traptile.circuit import build_circuit, extract_cuts, solve_potential, verify_kenyon
from traptile.cli import main as cli_main
from traptile.field import FieldContext, QuadraticNumber, sqrt_d, to_interval
from traptile.figures import G, Leaf, combine, grid, h, pyramid, t
from traptile.geometry import Tiling, is_trivial, realize, verify_exact
from traptile.synth import (
    lemma_h2_find,
    lemma_h3_decompose,
    proposition_last_sequence,
    tile_quadratic,
    tile_rational,
)

D2 = FieldContext(2)
A = QuadraticNumber(3, 1, D2)  # 3 + sqrt 2
B = QuadraticNumber(1, 1, D2)  # 1 + sqrt 2

RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str):
    RESULTS[number] = f"acceptance {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def _rand_rational(rng: random.Random, lo: int, hi: int, max_den: int) -> Fraction:
    """Uniform-ish rational in (lo, hi] with denominator at most ``max_den``."""
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den + 1, hi * den), den)


def _rand_quadratic(rng: random.Random, lo: int, hi: int, max_den: int) -> QuadraticNumber:
    while True:
        irr = Fraction(rng.randint(-6 * max_den, 6 * max_den), rng.randint(1, max_den))
        rat = Fraction(rng.randint(-12 * max_den, (hi + 12) * max_den), rng.randint(1, max_den))
        x = QuadraticNumber(rat, irr, D2)
        if lo < x <= hi:
            return x


# 1 -------------------------------------------------------------------------


def test_acceptance_1_figure_one(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("TRAPTILE_CONFIG", raising=False)
    start = time.perf_counter()
    code = cli_main(["tile", "--a", "2", "--b", "3/2", "--out", "fig1"])
    elapsed = time.perf_counter() - start
    tiling = Tiling.loads((tmp_path / "fig1.json").read_text())
    svg = (tmp_path / "fig1.svg").read_text()
    ok = (
        code == 0
        and verify_exact(tiling).ok
        and tiling.target == t(Fraction(3, 2))
        and all(tiling.prototiles[pl.prototile] == t(2) for pl in tiling.placements)
        and svg.count("<polygon points=") == len(tiling.placements)
        and elapsed < 1.0
    )
    record(1, ok, f"t(3/2) by {len(tiling.placements)} copies of t(2), verify PASS, SVG written, {elapsed:.3f}s < 1s")


# 2 -------------------------------------------------------------------------


def test_acceptance_2_rational_sweep():
    rng = random.Random(20240601)
    start = time.perf_counter()
    failures, pieces = [], 0
    for _ in range(100):
        a, b = _rand_rational(rng, 1, 50, 12), _rand_rational(rng, 1, 50, 12)
        tiling = realize(tile_rational(a, b))
        pieces += len(tiling.placements)
        kenyon = verify_kenyon(tiling)
        if not (verify_exact(tiling).ok and kenyon.ok and kenyon.field == "Q"):
            failures.append((a, b))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(2, ok, f"100 rational pairs, {pieces} pieces, {len(failures)} failures, field Q, {elapsed:.1f}s < 60s")


# 3 -------------------------------------------------------------------------


def test_acceptance_3_quadratic_sweep():
    rng = random.Random(7)
    start = time.perf_counter()
    failures, pieces = [], 0
    for _ in range(25):
        c = _rand_quadratic(rng, 1, 20, 4)
        tiling = realize(tile_quadratic(A, B, c))
        pieces += len(tiling.placements)
        kenyon = verify_kenyon(tiling)
        protos_ok = {f.param for f in tiling.prototiles} == {A, B}
        if not (verify_exact(tiling).ok and kenyon.ok and kenyon.field == "Q[sqrt(2)]" and protos_ok):
            failures.append(c)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    record(3, ok, f"25 targets in Q[sqrt(2)], {pieces} pieces, {len(failures)} failures, "
                  f"field Q[sqrt(2)], {elapsed:.1f}s < 120s")


# 4 -------------------------------------------------------------------------


def test_acceptance_4_circuit_fixture():
    tiling = six_piece_tiling()
    cuts = extract_cuts(tiling)
    circuit = build_circuit(tiling)
    pot = solve_potential(circuit)
    heights_match = all(pot[i] == cut.y for i, cut in enumerate(circuit.cuts))
    ok = (
        len(tiling.placements) == 6
        and verify_exact(tiling).ok
        and len(cuts) == 4
        and len(circuit.vertices) == 4
        and len(circuit.edges) == 12
        and pot[circuit.N] == 1
        and pot[circuit.P] == 0
        and heights_match
        and verify_kenyon(tiling).ok
    )
    record(4, ok, f"6 pieces -> {len(cuts)} cuts, {len(circuit.vertices)} vertices, {len(circuit.edges)} edges, "
                  f"w(N)=1, w(P)=0, potential = height")


# 5 -------------------------------------------------------------------------


def _h2_ok(x, q, N, eps) -> bool:
    target = q * sqrt_d(D2) / D2.d
    lo, hi = to_interval(x.conjugate() - target, 128)
    return h(x) == q and x > N and -eps < lo and hi < eps


def test_acceptance_5_lemma_witnesses():
    rng = random.Random(55)
    bad_h2 = bad_h3 = 0
    for _ in range(50):
        q = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        N = QuadraticNumber(_rand_rational(rng, 2, 60, 7), 0, D2)
        eps = Fraction(1, rng.randint(1, 1000))
        x = lemma_h2_find(q, N, eps, D2)
        bad_h2 += not _h2_ok(x, q, N, eps)
    for _ in range(50):
        # a, b > 0 with conj(a) > 0 and conj(b) < 0
        a = QuadraticNumber(_rand_rational(rng, 1, 10, 5), Fraction(rng.randint(-5, 5), rng.randint(2, 6)), D2)
        b = QuadraticNumber(Fraction(rng.randint(0, 12), rng.randint(1, 4)), _rand_rational(rng, 1, 6, 5), D2)
        if not (a > 0 and a.conjugate() > 0 and b > 0 and b.conjugate() < 0):
            a, b = A, B
        q = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        M = QuadraticNumber(_rand_rational(rng, 1, 40, 5), 0, D2)
        x, m, n = lemma_h3_decompose(a, b, q, M)
        ok = (
            h(x) == q and x > M and isinstance(m, Fraction) and isinstance(n, Fraction)
            and m > 0 and n > 0 and m * a + n * b == x
        )
        bad_h3 += not ok
    record(5, bad_h2 == 0 and bad_h3 == 0,
           f"50 lemma-h2 witnesses ({bad_h2} bad), 50 lemma-h3 decompositions ({bad_h3} bad), exact and certified checks")


# 6 -------------------------------------------------------------------------


def _random_trapezoid(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return Leaf(0, t(A))
    kind = rng.randrange(3)
    if kind == 0:
        return combine(5, _random_trapezoid(rng, depth - 1), _random_trapezoid(rng, depth - 1))
    if kind == 1:
        return pyramid(rng.randint(1, 2), _random_trapezoid(rng, depth - 1))
    return combine(4, _random_parallelogram(rng, depth - 1), _random_trapezoid(rng, depth - 1))


def _random_parallelogram(rng: random.Random, depth: int):
    if depth <= 0:
        return combine(3, Leaf(0, t(A)), Leaf(0, t(A)))
    kind = rng.randrange(4)
    if kind == 0:
        return combine(3, _random_trapezoid(rng, depth - 1), _random_trapezoid(rng, depth - 1))
    if kind == 1:
        return combine(1, _random_parallelogram(rng, depth - 1), _random_parallelogram(rng, depth - 1))
    if kind == 2:
        return combine(2, _random_parallelogram(rng, depth - 1), _random_parallelogram(rng, depth - 1))
    return grid(rng.randint(1, 2), rng.randint(1, 2), _random_parallelogram(rng, depth - 1))


def test_acceptance_6_trivial_tilings_meet_conditions():
    rng = random.Random(66)
    not_trivial = fails = 0
    verdicts: dict[str, int] = {}
    for _ in range(200):
        tree = _random_trapezoid(rng, 3)
        tiling = realize(tree)
        if not (verify_exact(tiling).ok and is_trivial(tiling, check=False)[0]):
            not_trivial += 1
        report = check_conditions(A, tree.figure.param)
        fails += report.any_fails()
        verdicts[report.cond_iii.value] = verdicts.get(report.cond_iii.value, 0) + 1
    summary = ", ".join(f"{k} {v}" for k, v in sorted(verdicts.items()))
    record(6, not_trivial == 0 and fails == 0,
           f"200 random trees over t(3+sqrt(2)): {not_trivial} non-trivial, {fails} with a FAILS verdict; (iii): {summary}")


# 7 -------------------------------------------------------------------------


def test_acceptance_7_power_sequence():
    seq = proposition_last_sequence(A, 6)
    problems = []
    if seq[1][0] != QuadraticNumber(Fraction(12, 7), Fraction(3, 7), D2):
        problems.append("b_2")
    for n, (b, tree) in enumerate(seq, start=1):
        if G(b) != G(A) ** n:
            problems.append(f"G(b_{n})")
        tiling = realize(tree)
        if not (verify_exact(tiling).ok and is_trivial(tiling)[0]):
            problems.append(f"tiling b_{n}")
        report = check_conditions(A, b)
        if report.cond_iii is not Verdict.EQUALITY or report.evidence["iii"].get("relation") != [1, n]:
            problems.append(f"certificate b_{n}")
    if not all(seq[i + 1][0] < seq[i][0] for i in range(len(seq) - 1)):
        problems.append("monotonicity")
    record(7, not problems, "b_1..b_6: G(b_n) = G(a)^n, b_2 = (12+3sqrt2)/7, decreasing, trivial tilings verified, "
                            "EQUALITY with (p,q) = (1,n)" + (f"; problems: {problems}" if problems else ""))


# 8 -------------------------------------------------------------------------


def test_acceptance_8_analytic_lemmas():
    rng = random.Random(88)
    lemma_fail = 0
    for _ in range(100):
        t_ = _rand_rational(rng, 1, 40, 16)
        z = t_ + Fraction(rng.randint(1, 400), rng.randint(1, 16))
        lemma_fail += not check_lemma_001(z, t_)
    slope_fail, worst = 0, None
    step = Fraction(1, 2 ** 10)
    for c in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
        for k in range(20):
            x = Fraction(11, 10) + Fraction(k * 3, 2)
            box = fc_slope(c, x, step, 128)
            width = box.b - box.a
            margin_ok = certainly_above(box - width, 1 / c)
            slope_fail += not margin_ok
            margin = float((box.a - interval_of(1 / c, 128)).a)
            worst = margin if worst is None else min(worst, margin)
    record(8, lemma_fail == 0 and slope_fail == 0,
           f"lemma t lnG(t) < z lnG(z) on 100 pairs ({lemma_fail} unconfirmed); F_c slope > 1/c at 60 points "
           f"with margin above the interval width ({slope_fail} failures, smallest margin {worst:.3g})")


# 9 -------------------------------------------------------------------------


def test_acceptance_9_negative_controls():
    tiling = realize(tile_rational(2, Fraction(3, 2)))
    quad = realize(tile_quadratic(A, B, QuadraticNumber(Fraction(5, 2), 1, D2)))
    assert verify_exact(tiling).ok
    survived = [i for i in range(len(tiling.placements)) if verify_exact(tiling.without(i)).ok]
    rng = random.Random(9)
    sample = rng.sample(range(len(quad.placements)), 20)
    survived_q = [i for i in sample if verify_exact(quad.without(i)).ok]
    report = check_conditions(A, QuadraticNumber(3, 2, D2))
    ok = not survived and not survived_q and report.cond_i is Verdict.FAILS
    record(9, ok, f"all {len(tiling.placements)} single deletions (and 20 sampled on a {len(quad.placements)}-piece "
                  f"tiling) FAIL; check_conditions(3+sqrt2, 3+2sqrt2) cond_i {report.cond_i}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
