import itertools

import pytest
from hypothesis import given, settings, strategies as st

from torsionquad.classify import decide_isomorphism
from torsionquad.discriminant import discriminant_quadratic
from torsionquad.lattice import Triple, signature
from torsionquad.stable import (
    find_triple_isomorphism,
    is_triple_isomorphism,
    stabilize,
    stably_equivalent,
)

from .strategies import triples


def test_stabilize_examples():
    t = Triple.of([[2]], [0])
    s = stabilize(t, [1])
    assert s.lattice.gram == ((2, 0), (0, 1)) and s.char.coeffs == (0, 1)
    assert stabilize(t, []) == t
    with pytest.raises(ValueError):
        stabilize(t, [2])


@settings(max_examples=60, deadline=None)
@given(triples(max_rank=3, bound=4), st.lists(st.sampled_from([1, -1]), max_size=3))
def test_stabilization_preserves_discriminant(t, signs):
    # same function up to presentation: the extra summand can reorder SNF generators
    q, qs = discriminant_quadratic(t), discriminant_quadratic(stabilize(t, signs))
    assert qs.orders == q.orders and decide_isomorphism(q, qs).isomorphic
    cert = stably_equivalent(t, stabilize(t, signs))
    assert cert.verdict
    left = stabilize(t, cert.left_signs)
    right = stabilize(stabilize(t, signs), cert.right_signs)
    assert left.rank == right.rank
    assert signature(left.lattice) == signature(right.lattice)


def test_stable_examples():
    t = Triple.of([[2]], [0])
    assert stably_equivalent(t, stabilize(t, [1])).verdict
    cert = stably_equivalent(t, Triple.of([[-2]], [0]))
    assert not cert.verdict and cert.reason == "gauss"
    a = Triple.of([[2, 0], [0, 0]], [0, 2])
    cert = stably_equivalent(a, Triple.of([[2, 0], [0, 0]], [0, 4]))
    assert not cert.verdict and cert.reason == "kernel_content"
    assert stably_equivalent(a, Triple.of([[2, 0], [0, 0]], [0, -2])).verdict
    assert stably_equivalent(a, Triple.of([[2]], [0])).reason == "kernel_rank"


@settings(max_examples=40, deadline=None)
@given(triples(max_rank=3, bound=4), triples(max_rank=3, bound=4))
def test_symmetry(t1, t2):
    assert stably_equivalent(t1, t2).verdict == stably_equivalent(t2, t1).verdict


def test_triple_isomorphism_check():
    a = Triple.of([[2, 0], [0, 0]], [0, 2])
    c = Triple.of([[2, 0], [0, 0]], [0, -2])
    assert is_triple_isomorphism(a, c, ((1, 0), (0, -1)))
    assert not is_triple_isomorphism(a, c, ((1, 0), (0, 1)))
    assert not is_triple_isomorphism(a, c, ((1, 0), (0, 2)))
    # c is only defined modulo 2 f(M)
    t = Triple.of([[2]], [0])
    assert is_triple_isomorphism(t, Triple.of([[2]], [4]), ((1,),))
    assert not is_triple_isomorphism(t, Triple.of([[2]], [2]), ((1,),))


def test_bounded_search_examples():
    a = Triple.of([[2, 0], [0, 0]], [0, 2])
    found = find_triple_isomorphism(a, Triple.of([[2, 0], [0, 0]], [0, -2]))
    assert found.isomorphism is not None
    none = find_triple_isomorphism(a, Triple.of([[2, 0], [0, 0]], [0, 4]))
    assert none.isomorphism is None and none.exhausted
    x = stabilize(Triple.of([[2]], [0]), [-1])
    y = stabilize(Triple.of([[-2]], [0]), [1])
    assert find_triple_isomorphism(x, y).isomorphism is None


SMALL = [Triple.of(g, c) for g, c in [
    ([[2]], [0]), ([[2]], [2]), ([[-2]], [0]), ([[1]], [1]), ([[-1]], [1]), ([[0]], [0]),
    ([[0]], [2]), ([[4]], [0]), ([[4]], [2]), ([[3]], [1]), ([[0, 1], [1, 0]], [0, 0]),
    ([[2, 1], [1, 2]], [0, 0]), ([[0, 2], [2, 0]], [0, 0]), ([[0, 2], [2, 0]], [2, 0]),
]]


@pytest.mark.parametrize("i, j", list(itertools.combinations(range(len(SMALL)), 2)))
def test_search_never_contradicts_verdict(i, j):
    t1, t2 = SMALL[i], SMALL[j]
    cert = stably_equivalent(t1, t2)
    found = find_triple_isomorphism(stabilize(t1, cert.left_signs or (1, -1)),
                                    stabilize(t2, cert.right_signs or (1, -1)),
                                    entry_bound=2, node_limit=20_000)
    if found.isomorphism is not None:
        assert cert.verdict
