"""Gauss sums and the isomorphism decision for structured quadratic functions.

Two quadratic functions are compared through their pairings, homogeneity
defects, restrictions to the radical and Gauss sums.  A positive answer
always comes with an explicit isomorphism, assembled from a form-preserving
map and an involution built from an element of order 2, and checked
pointwise before it is returned.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import exact
from .errors import PreconditionError, SizeBoundError
from .exact import CyclotomicNumber, cyclotomic_equal, mod1
from .torsion import (
    FiniteAbelianGroup,
    GroupIso,
    StructuredQuadratic,
    act,
    add_character,
    evaluate,
    generates,
    homogeneity_defect,
    normalize,
    pullback,
    radical_generators,
    same_function,
)

EVAL_BOUND = 10_000
SEARCH_BOUND = 512


def _check_size(q: StructuredQuadratic, bound: int):
    if q.group.size > bound:
        raise SizeBoundError(f"torsion part has {q.group.size} elements, bound is {bound}")


@lru_cache(maxsize=65536)
def _gauss(q: StructuredQuadratic) -> CyclotomicNumber:
    values = [evaluate(q, x) for x in q.group.elements()]
    N = exact.denominator_lcm(values)
    coeffs = [0] * N
    for v in values:
        coeffs[int(v * N)] += 1
    return CyclotomicNumber(N, tuple(coeffs), q.group.size)


def gauss_sum(q: StructuredQuadratic, max_order: int = EVAL_BOUND) -> CyclotomicNumber:
    """Unnormalized Gauss sum over the torsion part, with ``norm_square = |T|``."""
    _check_size(q, max_order)
    return _gauss(q.torsion_part())


def fundamental_automorphism(q: StructuredQuadratic, alpha, max_order: int = EVAL_BOUND) -> GroupIso:
    """Involution ``sigma = Id + n(-) alpha`` with ``q o sigma = alpha . q``.

    Requires ``2 alpha = 0`` and ``q(alpha) = 0``; ``n(x)`` is ``2 b(alpha, x)``
    read in Z/2.
    """
    G = q.group
    alpha = G.reduce(alpha)
    if any(G.reduce(2 * a for a in alpha)):
        raise PreconditionError("alpha must satisfy 2 alpha = 0")
    if evaluate(q, alpha):
        raise PreconditionError(f"q(alpha) = {evaluate(q, alpha)}, expected 0")
    k = G.rank
    n = [int(2 * v) for v in q.pairing.adjoint(alpha)]
    cols = [G.reduce(tuple(int(i == j) + n[j] * alpha[i] for i in range(k))) for j in range(k)]
    sigma = GroupIso(G.orders, G.orders, exact.from_columns(cols, k), q.divisible_rank)
    for j in range(k):
        e = tuple(int(i == j) for i in range(k))
        if sigma.apply(sigma.apply(e)[0])[0] != e:
            raise AssertionError("constructed sigma is not an involution")
    adj = q.pairing.adjoint(alpha)
    if G.size <= max_order:
        table = q.value_table
        for x, v in table.items():
            if table[sigma.apply(x)[0]] != mod1(v + sum(a * xi for a, xi in zip(adj, x))):
                raise AssertionError(f"q o sigma differs from alpha . q at {x}")
    elif not same_function(pullback(sigma, q), act(alpha, q)):
        raise AssertionError("q o sigma differs from alpha . q")
    return sigma


# -- invariants ---------------------------------------------------------------

@dataclass(frozen=True)
class InvariantBundle:
    orders: tuple
    pairing: tuple
    defect: tuple
    divisible_defect: tuple
    radical: tuple
    radical_values: tuple
    kernel_hom: tuple
    gauss: CyclotomicNumber


def invariants(q: StructuredQuadratic, max_order: int = EVAL_BOUND) -> InvariantBundle:
    """Invariant data computed in invariant-factor coordinates."""
    _check_size(q, max_order)
    qn, _ = normalize(q)
    d, dk = homogeneity_defect(qn)
    rad = radical_generators(qn.pairing)
    return InvariantBundle(qn.orders, qn.b, d, dk, tuple(rad),
                           tuple(evaluate(qn, g) for g in rad), qn.kernel_hom,
                           gauss_sum(qn, max_order))


# -- form-preserving maps -------------------------------------------------------

@dataclass
class _Elements:
    orders: tuple
    elems: list
    order: list
    adj: list          # b(x, -) on generators
    diag: list         # b(x, x)
    defect: list       # d(x), or None


@lru_cache(maxsize=4096)
def _elements(orders, b, d) -> _Elements:
    G = FiniteAbelianGroup(orders)
    k = len(orders)
    elems = list(G.elements())
    adj, diag, dfs, ords = [], [], [], []
    for x in elems:
        a = tuple(mod1(sum(x[i] * b[i][j] for i in range(k))) for j in range(k))
        adj.append(a)
        diag.append(mod1(sum(xi * ai for xi, ai in zip(x, a))))
        dfs.append(None if d is None else mod1(sum(xi * di for xi, di in zip(x, d))))
        ords.append(G.order_of(x))
    return _Elements(orders, elems, ords, adj, diag, dfs)


@lru_cache(maxsize=4096)
def _fingerprint(orders, b, d) -> frozenset:
    """Multiset of ``(order, b(x, x), d(x))`` over the group."""
    E = _elements(orders, b, d)
    return frozenset(Counter(zip(E.order, E.diag, E.defect)).items())


@dataclass(frozen=True)
class _Profile:
    normal: StructuredQuadratic
    iso: GroupIso
    torsion: StructuredQuadratic
    pairing_print: frozenset
    full_print: frozenset


@lru_cache(maxsize=65536)
def _profile(q: StructuredQuadratic) -> _Profile:
    qn, iso = normalize(q)
    qa = qn.torsion_part()
    d, _ = homogeneity_defect(qa)
    return _Profile(qn, iso, qa, _fingerprint(qn.orders, qn.b, None),
                    _fingerprint(qn.orders, qn.b, d))


def _iter_form_isos(orders, b, d, b2, d2):
    """Automorphism matrices ``psi`` of ``prod Z/orders`` with ``psi^* (b2, d2) = (b, d)``,
    in a fixed order.

    ``d`` and ``d2`` may be ``None`` to ignore defects.  The search assigns
    generator images one at a time, pruning by order, self-pairing, defect
    and pairing against earlier images.
    """
    if _fingerprint(orders, b, d) != _fingerprint(orders, b2, d2):
        return
    k = len(orders)
    E2 = _elements(orders, b2, d2)
    buckets = {}
    for idx in range(len(E2.elems)):
        buckets.setdefault((E2.order[idx], E2.diag[idx], E2.defect[idx]), []).append(idx)
    need = [buckets.get((orders[i], b[i][i], None if d is None else d[i]), [])
            for i in range(k)]
    chosen = []

    def pair2(i1, i2):
        x = E2.elems[i2]
        return mod1(sum(xj * aj for xj, aj in zip(x, E2.adj[i1])))

    def rec(i):
        if i == k:
            images = [E2.elems[c] for c in chosen]
            if generates(images, orders):
                yield exact.from_columns(images, k)
            return
        for c in need[i]:
            if all(pair2(chosen[j], c) == b[j][i] for j in range(i)):
                chosen.append(c)
                yield from rec(i + 1)
                chosen.pop()

    yield from rec(0)


@lru_cache(maxsize=200_000)
def _first_form_iso(orders, b, d, b2, d2):
    return next(_iter_form_isos(orders, b, d, b2, d2), None)


@lru_cache(maxsize=20_000)
def _all_form_isos(orders, b, d, b2, d2) -> tuple:
    return tuple(_iter_form_isos(orders, b, d, b2, d2))


_CACHE_ALL_BELOW = 64


@lru_cache(maxsize=4096)
def _is_nondegenerate(orders, b) -> bool:
    E = _elements(orders, b, None)
    return all(any(a) for x, a in zip(E.elems, E.adj) if any(x))


@lru_cache(maxsize=65536)
def _fl_candidates(qa: StructuredQuadratic) -> dict:
    """``b(alpha, -) -> alpha`` for alphas with ``2 alpha = 0`` and ``q(alpha) = 0``."""
    G = qa.group
    out = {}
    for x in G.elements():
        if any(G.reduce(2 * a for a in x)) or evaluate(qa, x):
            continue
        out.setdefault(qa.pairing.adjoint(x), x)
    return out


def _solve_adjoint(qa: StructuredQuadratic, chi) -> Optional[tuple]:
    orders = qa.orders
    k = len(orders)
    N = exact.lcm(*orders)
    A = [[int(N * qa.b[i][j]) for i in range(k)] for j in range(k)]
    rhs = [int(N * c) for c in chi]
    sol = exact.solve_congruences(A, rhs, [N] * k, k) if k else ()
    return None if sol is None else qa.group.reduce(sol)


def _character_gap(matrix, qa, qb) -> tuple:
    """``psi^* qb - qa`` on generators, for a pairing-preserving ``psi``."""
    table = qb.value_table
    k = len(qa.orders)
    return tuple(mod1(table[tuple(row[j] for row in matrix)] - qa.gen_values[j])
                 for j in range(k))


def _torsion_decision(qa: StructuredQuadratic, qb: StructuredQuadratic):
    """Decide ``qa ~ qb`` for torsion-only functions in identical invariant-factor
    coordinates.  Returns ``(psi, None)`` with ``pullback(psi, qb) == qa`` or
    ``(None, reason)``."""
    orders = qa.orders
    da, _ = homogeneity_defect(qa)
    db, _ = homogeneity_defect(qb)
    nondeg = _is_nondegenerate(orders, qa.b)
    first = _first_form_iso(orders, qa.b, da, qb.b, db)
    if first is None:
        if _first_form_iso(orders, qa.b, None, qb.b, None) is None:
            return None, "pairing"
        return None, "defect"
    if nondeg:
        if not cyclotomic_equal(_gauss(qa), _gauss(qb)):
            return None, "gauss"
        psi = GroupIso(orders, orders, first)
        chi = _character_gap(first, qa, qb)
        alpha = _solve_adjoint(qa, chi)
        # equal defects and Gauss sums force 2 alpha = 0 and q(alpha) = 0
        sigma = fundamental_automorphism(qa, alpha)
        return psi.compose(sigma), None
    rad = radical_generators(qa.pairing)
    candidates = _fl_candidates(qa)
    radical_ok = False
    if qa.group.size < _CACHE_ALL_BELOW:
        isos = _all_form_isos(orders, qa.b, da, qb.b, db)
    else:
        isos = _iter_form_isos(orders, qa.b, da, qb.b, db)
    for m in isos:
        chi = _character_gap(m, qa, qb)
        if any(mod1(sum(g * c for g, c in zip(r, chi))) for r in rad):
            continue
        radical_ok = True
        alpha = candidates.get(chi)
        if alpha is not None:
            psi = GroupIso(orders, orders, m)
            return psi.compose(fundamental_automorphism(qa, alpha)), None
    return None, ("gauss" if radical_ok else "radical")


def _bezout_frame(w):
    """Unimodular ``P`` with ``w P = (content(w), 0, ..., 0)``."""
    s = len(w)
    if s == 0:
        return ()
    U, _, V = exact.smith_normal_form((tuple(w),), s)
    u = U[0][0]
    return tuple(tuple(V[i][j] * (u if j == 0 else 1) for j in range(s)) for i in range(s))


@dataclass(frozen=True)
class Decision:
    isomorphic: bool
    witness: Optional[GroupIso] = None
    reason: Optional[str] = None


def decide_isomorphism(q: StructuredQuadratic, qp: StructuredQuadratic,
                       max_order: int = SEARCH_BOUND) -> Decision:
    """Decide whether some ``psi`` (from the group of ``q`` to that of ``qp``)
    satisfies ``psi^* qp = q``.

    On the divisible part only integral kernel matrices are allowed.  The
    torsion values can then be corrected by ``content(w) * chi`` for any
    character ``chi``, through the component of ``psi`` from the torsion part
    to the divisible part.
    """
    s = q.divisible_rank
    if s != qp.divisible_rank:
        return Decision(False, reason="divisible_rank")
    g = exact.content(q.kernel_hom)
    if g != exact.content(qp.kernel_hom):
        return Decision(False, reason="kernel_content")
    _check_size(q, max_order)
    _check_size(qp, max_order)
    if q.group.size != qp.group.size:
        return Decision(False, reason="group")
    P1, P2 = _profile(q), _profile(qp)
    qn, iota, qa = P1.normal, P1.iso, P1.torsion
    qpn, iotap, qb = P2.normal, P2.iso, P2.torsion
    if qn.orders != qpn.orders:
        return Decision(False, reason="group")
    if not (s and g):
        # no torsion corrections are reachable: fingerprints must agree
        if P1.pairing_print != P2.pairing_print:
            return Decision(False, reason="pairing")
        if P1.full_print != P2.full_print:
            return Decision(False, reason="defect")
    corrections = {tuple(Fraction(0) for _ in qa.orders): tuple(Fraction(0) for _ in qa.orders)}
    if s and g:
        for chi in qa.group.characters():
            corrections.setdefault(tuple(mod1(g * c) for c in chi), chi)
    first_reason = None
    for eta, chi in corrections.items():
        psi, reason = _torsion_decision(add_character(qa, eta), qb)
        first_reason = first_reason or reason
        if psi is not None:
            break
    else:
        return Decision(False, reason=first_reason)

    # psi^* qb = qa + eta; choose mixing mu with w' . mu = -eta, kernel K with w' K = w
    P, Q = _bezout_frame(qp.kernel_hom), _bezout_frame(q.kernel_hom)
    K = exact.matmul(P, exact.unimodular_inverse(Q), s) if s else ()
    a = [P[i][0] for i in range(s)]
    mix = tuple(tuple(mod1(-a[i] * c) for c in chi) for i in range(s))
    core = GroupIso(qn.orders, qpn.orders, psi.matrix, s, K, mix)
    witness = iotap.inverse().compose(core.compose(iota))
    _verify(witness, q, qp)
    return Decision(True, witness=witness)


def _verify(psi: GroupIso, q: StructuredQuadratic, qp: StructuredQuadratic):
    s = q.divisible_rank
    if not psi.is_bijective():
        raise AssertionError("witness is not bijective")
    if exact.vecmat(qp.kernel_hom, psi.kernel_matrix, s) != q.kernel_hom:
        raise AssertionError("witness does not match the kernel homomorphisms")
    target = None if s else qp.value_table
    for x, v in q.value_table.items():
        t, dv = psi.apply(x)
        if (evaluate(qp, t, dv) if s else target[t]) != v:
            raise AssertionError(f"witness fails at {x}")


def is_isomorphic(q: StructuredQuadratic, qp: StructuredQuadratic,
                  max_order: int = SEARCH_BOUND) -> Optional[GroupIso]:
    return decide_isomorphism(q, qp, max_order).witness
