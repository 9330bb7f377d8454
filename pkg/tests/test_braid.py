import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chisini_lab.braid import (
    BraidWord,
    CurveShape,
    GroupWord,
    artin_apply,
    block_rotation,
    boundary_word,
    braid_of_delta,
    braid_of_rho,
    braid_relations_hold,
    evaluate_word,
    extend_assignment,
    gamma_word,
    hurwitz_apply,
    relators_from_curve,
    satisfies_relators,
)
from chisini_lab.graphs import PolygonSpec, build_polygon, graph_to_transpositions
from chisini_lab.monodromy import MonodromyAssignment, PresentationSpec, verify_gmn
from chisini_lab.symgroup import Permutation
from conftest import permutations


def x(*letters):
    return GroupWord(letters)


def test_artin_generator_action():
    s1 = BraidWord(3, (1,))
    assert artin_apply(s1, x(1)) == x(1, 2, -1)
    assert artin_apply(s1, x(2)) == x(1)
    assert artin_apply(s1, x(3)) == x(3)
    inv = BraidWord(3, (-1,))
    assert artin_apply(inv, x(1)) == x(2)
    assert artin_apply(inv, x(2)) == x(-2, 1, 2)


def test_rho_and_rotation_words():
    assert braid_of_rho(1, CurveShape((3,), (2, 2))).letters == (1, 1, 1, 3, 3, 3)
    assert braid_of_rho(2, CurveShape((1, 1), (3,))).letters == (2, 1)
    assert block_rotation(2, CurveShape((1,), (2, 3))).letters == (4, 3)


def test_out_of_range_generator_rejected():
    with pytest.raises(ValueError):
        artin_apply(BraidWord(3, (1,)), x(4))
    with pytest.raises(ValueError):
        BraidWord(3, (3,))


def test_free_reduction():
    assert x(1, -1, 2).letters == (2,)
    assert (x(1, 2) * x(1, 2).inverse()).is_trivial()


def test_projective_needs_divisibility():
    with pytest.raises(ValueError):
        relators_from_curve(CurveShape((2,), (3,)), projective=True)
    rels = relators_from_curve(CurveShape((3,), (3,)), projective=True)
    assert rels[-1] == boundary_word(CurveShape((3,), (3,)))


@st.composite
def braid_words(draw, strands=4, max_len=6):
    letters = draw(st.lists(st.sampled_from([s for i in range(1, strands) for s in (i, -i)]), max_size=max_len))
    return BraidWord(strands, tuple(letters))


@given(braid_words())
def test_braid_then_inverse_is_identity(b):
    for g in range(1, 5):
        assert artin_apply(b.inverse(), artin_apply(b, x(g))) == x(g)


def test_braid_relations_act_identically():
    lhs, rhs = BraidWord(4, (1, 2, 1)), BraidWord(4, (2, 1, 2))
    far1, far2 = BraidWord(4, (1, 3)), BraidWord(4, (3, 1))
    for g in range(1, 5):
        assert artin_apply(lhs, x(g)) == artin_apply(rhs, x(g))
        assert artin_apply(far1, x(g)) == artin_apply(far2, x(g))


@given(braid_words(), st.lists(permutations(degree=4), min_size=4, max_size=4))
def test_hurwitz_matches_word_evaluation(b, taus):
    expected = [evaluate_word(artin_apply(b, x(g)), taus) for g in range(1, 5)]
    assert hurwitz_apply(b, taus) == expected


@given(braid_words(strands=5, max_len=10), st.randoms(use_true_random=False))
def test_transposition_fast_path_agrees(b, rnd):
    taus = [Permutation.transposition(4, *rnd.sample(range(1, 5), 2)) for _ in range(5)]
    shape = CurveShape((2,), (5,))
    generic = Permutation.from_cycles(4, [(1, 2, 3)])  # forces the general path
    mixed = taus[:4] + [generic]
    assert braid_relations_hold(shape, taus) == satisfies_relators(relators_from_curve(shape), taus)
    assert braid_relations_hold(shape, mixed) == satisfies_relators(relators_from_curve(shape), mixed)


def test_single_block_relators_equal_gmn_exhaustive_small():
    d = 3
    perms = [Permutation(p) for p in itertools.permutations(range(1, d + 1))]
    for n, m in [(2, 3), (3, 2), (2, 2)]:
        rels = relators_from_curve(CurveShape.single(n, m))
        for taus in itertools.product(perms, repeat=m):
            a = MonodromyAssignment(d, taus)
            assert satisfies_relators(rels, taus) == verify_gmn(a, PresentationSpec(m, n))


def _delta_relators(j, shift, shape):
    b = braid_of_delta(j, shift, shape)
    return [GroupWord((-g,) + artin_apply(b, x(g)).letters) for g in range(1, shape.strand_count + 1)]


def test_delta_relators_equal_gamma_identification_exhaustive():
    shape = CurveShape((1,), (2, 2))
    perms = [Permutation(p) for p in itertools.permutations(range(1, 4))]
    hits = 0
    for taus in itertools.product(perms, repeat=4):
        for shift in range(2):
            delta_ok = satisfies_relators(_delta_relators(1, shift, shape), taus)
            g1 = evaluate_word(gamma_word(1, 1 + shift, shape), taus)
            g2 = evaluate_word(gamma_word(2, 2 + shift, shape), taus)
            assert delta_ok == (g1 == g2)
            hits += delta_ok
    assert hits > 0


@pytest.mark.parametrize("blocks", [(3, 3), (2, 4), (4, 2), (2, 2, 2)])
def test_extension_satisfies_all_deltas(blocks):
    shape = CurveShape((1,), blocks)
    rnd = random.Random(sum(blocks))
    for _ in range(20):
        taus = [Permutation(tuple(rnd.sample(range(1, 6), 5))) for _ in range(shape.m)]
        full = extend_assignment(shape, taus)
        for j in range(1, len(blocks)):
            for shift in range(blocks[j - 1] * blocks[j]):
                assert satisfies_relators(_delta_relators(j, shift, shape), full)


@pytest.mark.parametrize("t", [1, 2])
def test_family_assignments_pass_braid_relators(t):
    h, k = 2 * t, 2 * t + 1
    small = graph_to_transpositions(build_polygon(PolygonSpec(h + k, 1, h)))
    shape = CurveShape.family(h, k)
    full = extend_assignment(shape, small)
    assert len(full) == shape.strand_count
    assert full[: h + k] == small
    assert braid_relations_hold(shape, full, projective=True)
    # the same tuple repeated block by block is not a solution
    assert not braid_relations_hold(shape, small * (h * k), projective=True)


def test_extend_requires_gcd_count():
    with pytest.raises(ValueError):
        extend_assignment(CurveShape.family(2, 3), [Permutation.identity(3)] * 4)
