import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from chisini_lab.invariants import (
    BranchCurveData,
    InconsistentData,
    Singularity,
    bmy_report,
    chisini_bound,
    class_formula_dual_degree,
    dual_degree,
    fiber_product_numbers,
    genus_from_singularities,
    hodge_bound,
    hurwitz_slice_holds,
    invariant_report,
    r_squared,
    surface_invariants,
)

T1 = BranchCurveData(30, (Singularity(5, 6, 1, 30),))


def test_delta_invariants():
    assert Singularity(1, 1, 2).delta() == 1  # node
    assert Singularity(2, 3).delta() == 1  # cusp
    assert Singularity(1, 2, 2).delta() == 2  # tacnode y^2 = x^4
    assert Singularity(5, 6).delta() == 10
    assert genus_from_singularities(3, [Singularity(2, 3)]) == 0


def test_milnor_numbers_match_two_delta_minus_branches_plus_one():
    for p in (Singularity(1, 1, 2), Singularity(2, 3), Singularity(1, 2, 2), Singularity(5, 6), Singularity(2, 3, 2)):
        assert p.milnor() == 2 * p.delta() - p.s + 1


def test_t1_curve_values():
    assert (T1.d, T1.g, T1.sigma) == (15, 106, 120)
    assert dual_degree(T1) == 150 == class_formula_dual_degree(T1)
    assert r_squared(T1) == 150
    assert hodge_bound(T1) == 6
    assert chisini_bound(T1) == Fraction(10, 3)


def test_t1_surface_invariants():
    s6 = surface_invariants(T1, 6)
    assert (s6.K2, s6.e, s6.chi) == (24, 108, 11) and s6.noether_holds()
    s5 = surface_invariants(T1, 5, check_degree=False)
    assert (s5.K2, s5.e, s5.chi) == (15, 105, 10) and s5.noether_holds()
    with pytest.raises(InconsistentData):
        surface_invariants(T1, 5)


def test_t2_curve():
    c = BranchCurveData(180, (Singularity(9, 20, 1, 180),))
    assert c.g == 2251
    assert Singularity(9, 20).delta() == 76
    assert dual_degree(c) == class_formula_dual_degree(c)


def test_bmy_report_t1():
    r = bmy_report(T1, 6)
    assert r["uniform_estimate"] == Fraction(15, 2)
    assert r["uniform_below_threshold"] and r["sigma_within_bmy_limit"]
    assert r["unique_by_bound"] and not r["unique_by_degree"]
    assert r["ruled_estimate"] < 8


def test_fiber_product_table_t1():
    t = fiber_product_numbers(T1, 6, 5)
    assert (t["R_dot_C1"], t["R2"], t["C1_2"], t["C2_2"], t["E2"], t["E_dot_R"]) == (120, 180, 330, 480, 30, 60)
    assert t["singularities"] == [{"type": "A5", "count": 30}]
    nodal = BranchCurveData(4, (Singularity(1, 1, 2, 3),))
    tn = fiber_product_numbers(nodal, 3, 3)
    assert tn["R_dot_C1"] == 0 and tn["singularities"] == [{"type": "A0", "count": 3}]


def test_smooth_curve_bound_is_two():
    c = BranchCurveData(6)
    assert c.sigma == 0 and chisini_bound(c) == 2
    assert dual_degree(c) == 4 * 3 + 2 * c.g - 2 == class_formula_dual_degree(c)


def test_validation_gates():
    with pytest.raises(InconsistentData):
        BranchCurveData(5)
    with pytest.raises(InconsistentData):
        BranchCurveData(4, (Singularity(2, 3, 1, 4),))  # sigma above 2g - 2 + 4d
    with pytest.raises(InconsistentData):
        surface_invariants(BranchCurveData(6, (Singularity(2, 3, 1, 1),)), 3)  # sigma = 1 not divisible by 3
    with pytest.warns(UserWarning):
        BranchCurveData(30, (Singularity(5, 6, 1, 30),), genus=100)


def test_report_json_fractions():
    rep = invariant_report(T1, 6)
    assert rep["chisini_bound"] == "10/3" and rep["hodge_bound"] == 6
    assert rep["noether"] and rep["hurwitz_slice"]


@st.composite
def curves(draw):
    D = draw(st.sampled_from([6, 8, 10, 12, 20, 30]))
    sings = []
    for _ in range(draw(st.integers(0, 3))):
        n = draw(st.integers(1, 4))
        m = draw(st.integers(n, 6))
        assume(math.gcd(n, m) == 1)
        s = draw(st.integers(1, 2)) if n == m == 1 else 1
        if n == m == 1:
            s = 2
        sings.append(Singularity(n, m, s, draw(st.integers(1, 4))))
    try:
        return BranchCurveData(D, tuple(sings))
    except InconsistentData:
        assume(False)


@given(curves())
def test_dual_degree_equals_class_formula(c):
    assert dual_degree(c) == class_formula_dual_degree(c)


@given(curves(), st.integers(2, 30))
def test_noether_and_hurwitz_slice(c, N):
    try:
        inv = surface_invariants(c, N, check_degree=False)
    except InconsistentData:
        assert (3 * c.g - 3 - 9 * c.d - c.sigma) % 12
        return
    assert inv.noether_holds()
    assert hurwitz_slice_holds(c, N)


@given(curves(), st.integers(2, 30))
def test_hodge_determinant_matches_bound(c, N2):
    try:
        bound = chisini_bound(c)
    except InconsistentData:
        return
    t = fiber_product_numbers(c, 3, N2)
    assert (t["hodge_det_C1"] <= 0) == (N2 <= bound)


@given(st.integers(1, 30), st.integers(0, 200), st.integers(0, 200))
def test_hodge_bound_decreases_in_genus(d, g1, g2):
    def bound(g):
        return Fraction(4 * d * d, 3 * d + g - 1)

    if g1 < g2 and 3 * d + g1 - 1 > 0:
        assert bound(g1) > bound(g2)


def test_hodge_bound_decreasing_with_real_curves():
    smooth = BranchCurveData(30)
    assert hodge_bound(smooth) < hodge_bound(T1)  # T1 has smaller genus
