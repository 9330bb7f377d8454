"""Acceptance battery: one test per criterion, each printing a PASS/FAIL line."""

import itertools
import json
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from chisini_lab.braid import CurveShape, relators_from_curve
from chisini_lab.cli import run
from chisini_lab.covers import smoothness
from chisini_lab.graphs import (
    CoverClass,
    MonodromyGraph,
    PolygonSpec,
    build_polygon,
    check_polygon_axioms,
    cover_class_to_parameters,
    enumerate_generic_covers,
    find_relabeling,
    graph_to_transpositions,
)
from chisini_lab.invariants import (
    BranchCurveData,
    Singularity,
    bmy_report,
    chisini_bound,
    class_formula_dual_degree,
    dual_degree,
    hodge_bound,
    r_squared,
    surface_invariants,
)
from chisini_lab.monodromy import MonodromyAssignment, PresentationSpec, search_generic_assignments, verify_gmn
from chisini_lab.numeric import numeric_vs_polygon
from chisini_lab.symgroup import Permutation, order, product


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def _run(number: int, title: str, expect_failure: bool = False):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            note = " (known, see ledger)" if expect_failure and status == "FAIL" else ""
            with capsys.disabled():
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s){note}")

    return _run


def _pair(tmp_path, t):
    out = tmp_path / f"pair{t}.json"
    start = time.perf_counter()
    code = run(["counterexample", "--t", str(t), "--out", str(out)])
    return code, json.loads(out.read_text()), time.perf_counter() - start


def test_criterion_1_counterexample_t1(criterion, tmp_path):
    with criterion(1, "degree-30 curve with covers of degrees 6 and 5"):
        code, cert, elapsed = _pair(tmp_path, 1)
        assert code == 0 and cert["passed"]
        curve = cert["curve"]
        assert curve["degree"] == 30 and curve["singular_points"] == 30
        assert {curve["local_type"]["n"], curve["local_type"]["m"]} == {5, 6} and curve["local_type"]["s"] == 1
        big, small = cert["covers"]
        assert (big["degree"], small["degree"]) == (6, 5)
        assert cert["same_curve"] and cert["non_equivalent_by_degree"]
        assert big["ramification"]["smooth"]
        assert not small["ramification"]["smooth"]
        assert small["ramification"]["singular_points"] == 30
        assert small["ramification"]["local_type"]["name"] == "ordinary cusp"
        for cov in (big, small):
            assert all(cov["checks"].values())
        assert elapsed < 1.0


def test_criterion_2_classification_completeness(criterion, capsys):
    with criterion(2, "classify 6 5 equals the brute-force oracle"):
        start = time.perf_counter()
        assert run(["classify", "6", "5"]) == 0
        classes = enumerate_generic_covers(6, 5)
        keys = sorted((c.d, c.orientation, c.polygon.valence, c.polygon.increment, c.compatible_exponent) for c in classes)
        assert keys == [(5, "dual", 1, 2, 6), (6, "direct", 1, 1, 5)]
        for d in range(3, 7):
            expected = sum(1 for c in classes if c.d == d)
            # generators on either side of the singularity
            assert len(search_generic_assignments(5, 6, d)) == expected
            assert len(search_generic_assignments(6, 5, d)) == expected
        assert time.perf_counter() - start < 30


NUMERIC_PAIRS = [(1, 2), (1, 3), (2, 3), (1, 5), (3, 4), (2, 5)]


@pytest.mark.parametrize("h,k", NUMERIC_PAIRS)
def test_criterion_3_numeric_oracle(criterion, h, k):
    with criterion(3, f"numeric polygon for (h,k)=({h},{k})"):
        start = time.perf_counter()
        cert = numeric_vs_polygon(h, k)
        elapsed = time.perf_counter() - start
        d = h + k
        assert cert["all_transpositions"] and len(cert["transpositions"]) == d
        assert cert["polygon"]["j"] in {h % d, (-h) % d}
        perms = [Permutation.transposition(d, *e) for e in cert["transpositions"]]
        g = MonodromyGraph.from_transpositions(perms)
        assert check_polygon_axioms(g, h)
        assert find_relabeling(g, build_polygon(PolygonSpec(d, 1, cert["polygon"]["j"]))) is not None
        assert cert["max_residual"] < 1e-8
        assert cert["passed"]
        assert elapsed < 10


def test_criterion_4_invariant_battery(criterion):
    with criterion(4, "t=1 invariants"):
        start = time.perf_counter()
        c = BranchCurveData(30, (Singularity(5, 6, 1, 30),))
        assert c.g == 106
        assert dual_degree(c) == 150 == class_formula_dual_degree(c)
        assert r_squared(c) == 150
        assert hodge_bound(c) == 6  # attained by the degree-6 cover
        assert chisini_bound(c) == Fraction(10, 3)
        assert c.sigma == 120 and c.sigma % 3 == 0
        s = surface_invariants(c, 6)
        assert (s.K2, s.e, s.chi) == (24, 108, 11) and 12 * s.chi == s.K2 + s.e
        r = bmy_report(c, 6)
        assert r["uniform_estimate"] == Fraction(15, 2) and r["uniform_estimate"] < 12
        assert time.perf_counter() - start < 1


ORDER_PAIRS = [(1, 2), (2, 3), (1, 5), (4, 5)] + [(2 * t, 2 * t + 1) for t in range(1, 5)]


@pytest.mark.parametrize("h,k", ORDER_PAIRS)
def test_criterion_5_order_identity(criterion, h, k):
    with criterion(5, f"order of the boundary product is hk for ({h},{k})"):
        taus = graph_to_transpositions(build_polygon(PolygonSpec(h + k, 1, h)))
        assert order(product(taus, h + k)) == h * k


def _batch_relators_hold(words, tuples: np.ndarray) -> np.ndarray:
    """Evaluate every relator word on a batch of 0-based permutation tuples."""
    N, m, d = tuples.shape
    inverse = np.empty_like(tuples)
    idx = np.broadcast_to(np.arange(d), tuples.shape)
    np.put_along_axis(inverse, tuples, idx, axis=-1)
    ok = np.ones(N, dtype=bool)
    ident = np.broadcast_to(np.arange(d), (N, d))
    for w in words:
        acc = ident.copy()
        for x in w.letters:
            g = tuples[:, x - 1] if x > 0 else inverse[:, -x - 1]
            acc = np.take_along_axis(g, acc, axis=-1)  # apply acc, then g
        ok &= (acc == ident).all(axis=-1)
    return ok


def _tuples(d: int, m: int, transpositions_only: bool) -> np.ndarray:
    if transpositions_only:
        pool = [Permutation.transposition(d, a, b) for a, b in itertools.combinations(range(1, d + 1), 2)]
    else:
        pool = [Permutation(p) for p in itertools.permutations(range(1, d + 1))]
    arr = np.array([[x - 1 for x in p.images] for p in pool], dtype=np.intp)
    combos = np.array(list(itertools.product(range(len(pool)), repeat=m)), dtype=np.intp)
    return arr[combos]


def test_criterion_6_braid_presentation_equivalence(criterion):
    with criterion(6, "braid relators iff G_{m,n}, single singularities n,m <= 4, d <= 5"):
        start = time.perf_counter()
        checked = 0
        for n, m in itertools.product(range(1, 5), repeat=2):
            words = relators_from_curve(CurveShape.single(n, m))
            spec = PresentationSpec(m, n)
            for d in range(2, 6):
                batches = [_tuples(d, m, transpositions_only=True)]
                if d <= 3 or (d == 4 and m <= 3):
                    batches.append(_tuples(d, m, transpositions_only=False))
                for batch in batches:
                    braid_ok = _batch_relators_hold(words, batch)
                    for row, ok in zip(batch, braid_ok):
                        taus = tuple(Permutation(tuple(int(v) + 1 for v in r)) for r in row)
                        assert bool(ok) == verify_gmn(MonodromyAssignment(d, taus), spec)
                        checked += 1
        assert checked > 10_000
        assert time.perf_counter() - start < 60


def _smooth_smooth(c: CoverClass) -> bool:
    s = smoothness(*cover_class_to_parameters(c))
    return s["surface_smooth"] and s["ramification_smooth"]


@pytest.mark.xfail(strict=True, reason="(1,2) and (2,1): the only such cover has degree 2, outside d >= 3")
def test_criterion_7_smooth_ramification_uniqueness(criterion):
    with criterion(7, "smooth cover with smooth ramification iff |m-n| = 1 (d >= 3)", expect_failure=True):
        mismatches = []
        for n, m in itertools.product(range(1, 13), repeat=2):
            if math.gcd(n, m) != 1:
                continue
            found = [c for c in enumerate_generic_covers(n, m) if _smooth_smooth(c)]
            if abs(m - n) == 1:
                if len(found) != 1 or found[0].d != max(n, m):
                    mismatches.append((n, m))
            elif found:
                mismatches.append((n, m))
        assert mismatches == [], mismatches


def test_criterion_7_analysis():
    """The literal scan fails only at max(n,m) = 2; admitting the double
    cover (model F(1,1,a,b)) restores the equivalence everywhere."""
    failing = []
    for n, m in itertools.product(range(1, 13), repeat=2):
        if math.gcd(n, m) != 1:
            continue
        classes = list(enumerate_generic_covers(n, m))
        for side, edges, exponent in (("direct", n, m), ("dual", m, n)):
            if edges % 2 == 0:
                classes.append(CoverClass(side, PolygonSpec(2, edges // 2, 1), exponent))
        found = [c for c in classes if _smooth_smooth(c)]
        if (len(found) == 1) != (abs(m - n) == 1) or len(found) > 1:
            failing.append((n, m))
        found_d3 = [c for c in enumerate_generic_covers(n, m) if _smooth_smooth(c)]
        if max(n, m) >= 3:
            assert (len(found_d3) == 1) == (abs(m - n) == 1) and len(found_d3) <= 1
    assert failing == []


@pytest.mark.parametrize("t,degrees,curve_degree", [(2, (10, 9), 180), (3, (14, 13), 546)])
def test_criterion_8_family_scaling(criterion, tmp_path, t, degrees, curve_degree):
    with criterion(8, f"family member t={t}: covers of degrees {degrees[1]}, {degrees[0]}"):
        code, cert, elapsed = _pair(tmp_path, t)
        assert code == 0 and cert["passed"]
        assert cert["curve"]["degree"] == curve_degree == (2 * t) * (2 * t + 1) * (4 * t + 1)
        assert tuple(c["degree"] for c in cert["covers"]) == degrees == (4 * t + 2, 4 * t + 1)
        assert not any(c["ramification"]["smooth"] for c in cert["covers"])
        assert elapsed < 5


def test_criterion_9_sum_product_uniqueness(criterion, tmp_path):
    with criterion(9, "unique sum/product swap pair up to 100"):
        out = tmp_path / "pair.json"
        start = time.perf_counter()
        assert run(["unique-pair", "--bound", "100", "--out", str(out)]) == 0
        assert json.loads(out.read_text())["solutions"] == [[[1, 5], [2, 3]]]
        assert time.perf_counter() - start < 1
