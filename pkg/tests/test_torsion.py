import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from torsionquad.classify import gauss_sum
from torsionquad.errors import DimensionError, InvalidInputError
from torsionquad.exact import cyclotomic_equal, mod1
from torsionquad.oracles import all_pairings, enumerate_refinements, iter_isomorphisms
from torsionquad.torsion import (
    FiniteAbelianGroup,
    GroupIso,
    StructuredQuadratic,
    TorsionBilinear,
    act,
    add_character,
    defect_at,
    evaluate,
    homogeneity_defect,
    normalize,
    orthogonal_sum,
    pullback,
    radical_restriction,
    same_function,
    some_quadratic_over,
)

H = StructuredQuadratic.from_data((2, 2), ((0, F(1, 2)), (F(1, 2), 0)), (0, 0))
Z4 = StructuredQuadratic.from_data((4,), ((F(1, 4),),), (F(1, 8),))


@st.composite
def quadratics(draw, groups=((2,), (3,), (4,), (2, 2), (2, 4), (4, 2), (6,), (2, 3), (8,), (3, 3))):
    orders = draw(st.sampled_from(groups))
    b = draw(st.sampled_from(all_pairings(orders)))
    chi = [F(draw(st.integers(0, n - 1)), n) for n in orders]
    return add_character(some_quadratic_over(b), chi)


def test_evaluate_examples():
    assert evaluate(Z4, (2,)) == F(1, 2)
    assert evaluate(Z4, (0,)) == 0
    assert evaluate(H, (1, 1)) == F(1, 2)
    # x^2/8 on Z/4
    assert all(evaluate(Z4, (x,)) == mod1(F(x * x, 8)) for x in range(4))


def test_consistency_is_validated_with_generator_named():
    with pytest.raises(InvalidInputError, match="generator 0"):
        StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 8),))
    with pytest.raises(InvalidInputError):
        TorsionBilinear(FiniteAbelianGroup((2,)), ((F(1, 3),),))
    with pytest.raises(InvalidInputError):
        FiniteAbelianGroup((1,))
    with pytest.raises(DimensionError):
        StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 4),), 1, ())


@settings(max_examples=80, deadline=None)
@given(quadratics())
def test_polarization_and_identities(q):
    G = q.group
    elems = list(G.elements())
    d, _ = homogeneity_defect(q)
    for x in elems:
        shifted = tuple(a + 3 * n for a, n in zip(x, G.orders))
        assert evaluate(q, shifted) == evaluate(q, x)
        neg = G.reduce(-a for a in x)
        assert evaluate(q, neg) == mod1(q.pairing(x, x) - evaluate(q, x))
        assert defect_at(q, x) == mod1(2 * evaluate(q, x) - q.pairing(x, x))
        assert defect_at(q, x) == mod1(evaluate(q, x) - evaluate(q, neg))
        exp = max(G.orders) if G.orders else 1
        for n in range(2 * exp + 1):
            nx = G.reduce(n * a for a in x)
            assert mod1(n * n * evaluate(q, x) - evaluate(q, nx)) == \
                mod1(F(n * (n - 1), 2) * defect_at(q, x))
        for y in elems:
            xy = G.reduce(a + b for a, b in zip(x, y))
            assert mod1(evaluate(q, xy) - evaluate(q, x) - evaluate(q, y)) == q.pairing(x, y)
    assert evaluate(q, (0,) * G.rank) == 0


def test_defect_examples():
    assert homogeneity_defect(Z4)[0] == (0,)
    q = StructuredQuadratic.from_data((4,), ((F(1, 4),),), (F(7, 8),))
    assert homogeneity_defect(q)[0] == (F(1, 2),)


def test_radical_examples():
    q = StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 4),))
    assert radical_restriction(q) == ([], (), ())
    zero = StructuredQuadratic.from_data((), (), (), 1, (0,))
    assert radical_restriction(zero) == ([], (), (0,))
    mixed = StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 4),), 1, (-1,))
    gens, vals, w = radical_restriction(mixed)
    assert gens == [] and w == (-1,)
    assert evaluate(mixed, (0,), (F(1, 3),)) == F(2, 3)


@settings(max_examples=60, deadline=None)
@given(quadratics())
def test_radical_is_kernel_and_restriction_additive(q):
    G = q.group
    gens, vals, _ = radical_restriction(q)
    brute = {x for x in G.elements() if not any(q.pairing.adjoint(x))}
    span = {tuple([0] * G.rank)}
    for g in gens:
        assert g in brute
        span = {G.reduce(a + k * b for a, b in zip(x, g)) for x in span for k in range(max(G.orders))}
    assert span == brute
    for x in brute:
        for y in brute:
            xy = G.reduce(a + b for a, b in zip(x, y))
            assert evaluate(q, xy) == mod1(evaluate(q, x) + evaluate(q, y))


def test_act_examples():
    q = StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 4),))
    assert act((1,), q).gen_values == (F(3, 4),)
    assert act((0,), q) == q
    lhs = gauss_sum(act((1,), q))
    rhs = gauss_sum(q).times_root(-evaluate(q, (1,)))
    assert cyclotomic_equal(lhs, rhs)


def test_pullback_examples():
    assert pullback(GroupIso.identity((2, 2)), H) == H
    swap = GroupIso((2, 2), (2, 2), ((0, 1), (1, 0)))
    assert same_function(pullback(swap, H), H)
    neg = GroupIso((4,), (4,), ((3,),))
    q = StructuredQuadratic.from_data((4,), ((F(1, 4),),), (F(7, 8),))
    conj = pullback(neg, q)
    assert all(evaluate(conj, (x,)) == evaluate(q, ((-x) % 4,)) for x in range(4))


@settings(max_examples=40, deadline=None)
@given(quadratics(groups=((2, 2), (4,), (2, 4), (3,))), st.data())
def test_pullback_respects_composition(q, data):
    isos = list(iter_isomorphisms(q.orders, q.orders))
    a = data.draw(st.sampled_from(isos))
    b = data.draw(st.sampled_from(isos))
    k = len(q.orders)
    A = GroupIso(q.orders, q.orders, tuple(tuple(c[i] for c in a) for i in range(k)))
    B = GroupIso(q.orders, q.orders, tuple(tuple(c[i] for c in b) for i in range(k)))
    assert pullback(A.compose(B), q) == pullback(B, pullback(A, q))
    assert pullback(A.inverse(), pullback(A, q)) == q
    dq, _ = homogeneity_defect(q)
    p = pullback(A, q)
    for x in q.group.elements():
        assert defect_at(p, x) == defect_at(q, A.apply(x)[0])


def test_some_quadratic_over_examples():
    G2 = FiniteAbelianGroup((2,))
    assert some_quadratic_over(TorsionBilinear(G2, ((F(1, 2),),))).gen_values == (F(1, 4),)
    assert some_quadratic_over(TorsionBilinear(FiniteAbelianGroup((5,)), ((0,),))).gen_values == (0,)
    assert some_quadratic_over(H.pairing).gen_values == (0, 0)


@pytest.mark.parametrize("orders", [(2,), (4,), (2, 2), (2, 4), (3, 3), (2, 3)])
def test_refinements_are_exactly_the_torsor(orders):
    G = FiniteAbelianGroup(orders)
    for b in all_pairings(orders):
        qs = enumerate_refinements(b)
        assert len(qs) == G.size
        assert len({q.gen_values for q in qs}) == G.size
        # brute force: every function on generators consistent with b
        count = 0
        for vals in itertools.product(*[[F(k, 2 * n) for k in range(2 * n)] for n in orders]):
            try:
                StructuredQuadratic(b, vals)
            except InvalidInputError:
                continue
            count += 1
        assert count == G.size


def test_normalize_examples():
    q = StructuredQuadratic.from_data((2, 4), ((F(1, 2), 0), (0, F(1, 4))), (F(1, 4), F(1, 8)))
    qn, iso = normalize(q)
    assert qn.orders == (2, 4) and pullback(iso, qn) == q
    q = StructuredQuadratic.from_data((2, 3), ((F(1, 2), 0), (0, F(1, 3))), (F(1, 4), F(2, 3)))
    qn, iso = normalize(q)
    assert qn.orders == (6,) and pullback(iso, qn) == q
    q = StructuredQuadratic.from_data((4, 2), ((F(1, 4), 0), (0, F(1, 2))), (F(1, 8), F(1, 4)))
    qn, iso = normalize(q)
    assert qn.orders == (2, 4) and pullback(iso, qn) == q


@settings(max_examples=60, deadline=None)
@given(quadratics())
def test_normalize_round_trip(q):
    qn, iso = normalize(q)
    assert qn.group.is_invariant_form()
    assert pullback(iso, qn) == q
    assert iso.is_bijective()


def test_orthogonal_sum_examples():
    a = StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(1, 4),))
    b = StructuredQuadratic.from_data((2,), ((F(1, 2),),), (F(3, 4),))
    empty = StructuredQuadratic.from_data((), (), ())
    assert orthogonal_sum(a, empty) == a
    s = orthogonal_sum(a, b)
    assert s.gen_values == (F(1, 4), F(3, 4)) and s.b == ((F(1, 2), 0), (0, F(1, 2)))
    assert cyclotomic_equal(gauss_sum(s), gauss_sum(a) * gauss_sum(b))


def test_group_iso_validation():
    with pytest.raises(InvalidInputError):
        GroupIso((2,), (4,), ((1,),))          # image of order 4 for a generator of order 2
    assert not GroupIso((4,), (4,), ((2,),)).is_bijective()
    with pytest.raises(DimensionError):
        GroupIso((2,), (2,), ((1, 0),))
