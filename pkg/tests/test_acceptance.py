"""Acceptance gate: one test per criterion, each at its stated tolerance.

The conftest prints a PASS/FAIL line per criterion at the end of the run.
"""

import json
import math
import random
import statistics
import time

import numpy as np
import pytest

from lochness.cli import MISMATCH, OK, main
from lochness.group import (
    NonTermination,
    Variant,
    domain_contains,
    enumerate_words,
    f_lift,
    g_lift,
    gen_f,
    gen_g,
    letters,
    probe_fixed_points,
    reduce_to_domain,
    region_exchange_report,
)
from lochness.mobius import Circle, classify, Kind
from lochness.render import curve_terms
from lochness.slit import (
    Crossing,
    FlatPoint,
    Side,
    SingularityHit,
    build_monster_slits,
    cone_angle,
    resolve_crossing,
    trace_geodesic,
)
from lochness.topology import FlatTruncation, HyperbolicTruncation, count_ends, truncation_topology


def cli_json(capsys, *argv):
    code = main([*argv, "--json"])
    out, err = capsys.readouterr()
    return code, json.loads(out) if out else None, err


@pytest.mark.criterion(1, "side pairings, window 10: corrected all match < 1 s, printed g-rows land on C_{16m+8}")
def test_side_pairings(capsys):
    t0 = time.perf_counter()
    code, rep, _ = cli_json(capsys, "hyp", "verify", "--window", "10", "--variant", "corrected", "--tol", "1e-9")
    elapsed = time.perf_counter() - t0
    assert code == OK and elapsed < 1.0
    assert rep["total"] == rep["matches"] == 2 * 21
    for r in rep["records"]:
        fam, m = r["generator"][0], int(r["generator"][2:])
        expected = 16 * m + (8 if fam == "f" else 12)
        assert r["source"]["center"] == 16 * m + (0 if fam == "f" else 4)
        assert r["image"]["type"] == "circle"
        assert abs(r["image"]["center"] - expected) <= 1e-9 and abs(r["image"]["radius"] - 1) <= 1e-9

    code, rep, _ = cli_json(capsys, "hyp", "verify", "--window", "10", "--variant", "printed")
    assert code == MISMATCH
    g_rows = [r for r in rep["records"] if r["generator"].startswith("g")]
    assert len(g_rows) == 21
    for r in g_rows:
        m = int(r["generator"][2:])
        assert not r["match"]
        assert r["image"]["center"] == pytest.approx(16 * m + 8, abs=1e-9)
        assert r["image"]["radius"] == pytest.approx(1, abs=1e-9)
    assert all(r["match"] for r in rep["records"] if r["generator"].startswith("f"))


@pytest.mark.criterion(2, "region exchange, window 5, 64 samples per circle per side, tol 1e-9")
def test_region_exchange():
    rows = region_exchange_report(5, samples=64, tol=1e-9)
    assert len(rows) == 2 * 11
    for r in rows:
        assert r["inside_samples"] == r["outside_samples"] == 64
        assert r["ok"], r


@pytest.mark.criterion(3, "generators: determinant 1 and trace 8 for |m| <= 100, exact integers")
def test_determinants_and_traces():
    for m in range(-100, 101):
        for lift, gen in ((f_lift(m), gen_f(m)), (g_lift(m), gen_g(m))):
            a, b, c, d = lift
            assert a * d - b * c == 1 and a + d == 8
            assert gen.det == 1 and abs(gen.trace) == 8
        assert gen_g(m, Variant.PRINTED).det == 1


@pytest.mark.criterion(4, "reduction of 10 000 random points, window 15, median steps <= 3")
def test_reduction():
    rng = random.Random(2024)
    steps = []
    for _ in range(10_000):
        im = 10.0 - rng.random() * 10.0  # (0, 10]
        z = complex(rng.uniform(-50, 50), im)
        try:
            word, w = reduce_to_domain(z, 15)
        except NonTermination:
            pytest.fail(f"no termination from {z}")
        assert domain_contains(w)
        steps.append(len(word))
    assert statistics.median(steps) <= 3


@pytest.mark.criterion(5, "window 1 depth 5: distinct matrices, no elliptic or identity, real fixed points, < 30 s")
def test_probe():
    t0 = time.perf_counter()
    rep = probe_fixed_points(1, 5)
    elapsed = time.perf_counter() - t0
    assert rep.words == 12 + 132 + 1452 + 15972 + 175692
    assert rep.distinct_matrices == rep.words + 1  # plus the empty word
    assert rep.counts["elliptic"] == 0 and not rep.identity_words
    assert rep.nonreal_fixed_points == 0
    assert rep.free and rep.fixed_point_free
    assert elapsed < 30.0


@pytest.mark.criterion(6, "word counts 12 * 11^(d-1) per length for d <= 4")
def test_word_counts():
    words = enumerate_words(1, 4)
    per_length = [0] * 5
    for w, _ in words:
        per_length[len(w)] += 1
    assert per_length == [1] + [12 * 11 ** (d - 1) for d in range(1, 5)]
    assert len(letters(1)) == 12


@pytest.mark.criterion(7, "flat truncations genus k boundary 1 for k = 1..8; ends plane 1, cylinder 2")
def test_flat_topology():
    for k in range(1, 9):
        s = truncation_topology(FlatTruncation(k))
        assert (s.genus, s.boundary_components) == (k, 1)
    for k in range(0, 9):
        assert count_ends(k, 3) == 1
    assert count_ends(4, 3, circumference=40.0) == 2


@pytest.mark.criterion(8, "P_m polygon is a torus with one hole for m in [-5, 5]")
def test_hyperbolic_subsurface():
    for m in range(-5, 6):
        s = truncation_topology(HyperbolicTruncation(m))
        assert (s.euler_characteristic, s.genus, s.boundary_components) == (-1, 1, 1)


@pytest.mark.criterion(9, "cone angle 4pi at every slit endpoint, 2pi at 100 random regular points, k <= 5")
def test_cone_angles():
    rng = random.Random(9)
    for k in range(1, 6):
        s = build_monster_slits(k)
        for lo, hi in s.segments():
            for x in (lo, hi):
                assert cone_angle(s, FlatPoint(x, 0.0)) == pytest.approx(4 * math.pi, abs=1e-6)
        regular = 0
        while regular < 100:
            p = FlatPoint(rng.uniform(-2, 8 * k + 2), rng.choice([0.0, rng.uniform(-3, 3)]))
            if s.distance_to_singularity(p.x, p.y) < 1e-2:
                continue
            assert cone_angle(s, p) == pytest.approx(2 * math.pi, abs=1e-6)
            regular += 1


def _random_trace(rng):
    k = rng.randint(1, 5)
    s = build_monster_slits(k)
    y = rng.choice([-1, 1]) * rng.uniform(0.01, 4)
    start = FlatPoint(rng.uniform(-2, 8 * k + 2), y)
    if rng.random() < 0.7:
        # aim at a random interior point of a random slit
        lo, hi = rng.choice(s.segments())
        tx = rng.uniform(lo + 0.01, hi - 0.01)
        direction = (tx - start.x, -y)
        n = math.hypot(*direction)
        direction = (direction[0] / n, direction[1] / n)
    else:
        theta = rng.uniform(0, 2 * math.pi)
        direction = (math.cos(theta), math.sin(theta))
    return s, trace_geodesic(s, start, direction, max_events=50, max_length=rng.uniform(0.5, 40))


@pytest.mark.criterion(10, "geodesics: involution, constant direction, reversibility on 1000 traces <= 50 events")
def test_geodesic_invariants():
    rng = random.Random(10)
    crossings = reversed_checked = 0
    for _ in range(1000):
        s, tr = _random_trace(rng)
        assert len(tr.events) <= 50
        dx, dy = tr.direction
        speed = math.hypot(dx, dy)
        for a, b in tr.polyline:
            seg = math.dist(a, b)
            if seg > 1e-12:
                # the tangent of every piece is the starting direction
                assert (b[0] - a[0]) / seg == pytest.approx(dx / speed, abs=1e-9)
                assert (b[1] - a[1]) / seg == pytest.approx(dy / speed, abs=1e-9)
        for e in tr.crossings:
            crossings += 1
            side = Side.UPPER if dy < 0 else Side.LOWER
            there = resolve_crossing(s, FlatPoint(e.entry[0], 0.0, side))
            back = resolve_crossing(s, there)
            assert back.side is side and back.x == pytest.approx(e.entry[0], abs=1e-12)
        if any(isinstance(e, SingularityHit) for e in tr.events) or tr.end.y == 0:
            continue
        rev = trace_geodesic(s, tr.end, (-dx, -dy), max_events=50, max_length=tr.length)
        assert rev.end.x == pytest.approx(tr.start.x, abs=1e-9)
        assert rev.end.y == pytest.approx(tr.start.y, abs=1e-9)
        expected = [Crossing(s.slit_at(e.exit[0]), e.exit, e.entry) for e in reversed(tr.crossings)]
        assert len(rev.crossings) == len(expected)
        for got, want in zip(rev.crossings, expected):
            assert got.slit == want.slit
            assert got.entry == pytest.approx(want.entry, abs=1e-9)
            assert got.exit == pytest.approx(want.exit, abs=1e-9)
        reversed_checked += 1
    assert crossings >= 300 and reversed_checked >= 900


@pytest.mark.criterion(11, "curve --n 6000: 6000 partial sums, unit steps to 1e-12, deterministic SVG")
def test_curve(capsys, tmp_path):
    outs = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for out in outs:
        code, rep, _ = cli_json(capsys, "curve", "--n", "6000", "--out", str(out))
        assert code == OK
        assert len(rep["sums"]) == 6000
    sums = np.array([complex(*p) for p in rep["sums"]])
    assert abs(sums[0] - 1) <= 1e-12
    steps = curve_terms(6000)
    assert np.max(np.abs(np.abs(steps) - 1)) <= 1e-12
    # differences of the emitted sums are the steps, up to accumulated rounding in the sums
    assert np.max(np.abs(np.diff(sums) - steps[1:])) <= 1e-9
    assert outs[0].read_bytes() == outs[1].read_bytes()
    assert outs[0].read_text().count("<polyline") == 1
