"""Brute-force oracles.

These enumerate group isomorphisms directly and compare values pointwise;
they share no search logic with :mod:`torsionquad.classify`.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Optional

from . import exact
from .errors import SizeBoundError
from .exact import mod1
from .torsion import (
    FiniteAbelianGroup,
    GroupIso,
    StructuredQuadratic,
    TorsionBilinear,
    add_character,
    evaluate,
    some_quadratic_over,
)


def _apply(cols, x, orders):
    return tuple(sum(c[i] * xi for c, xi in zip(cols, x)) % n for i, n in enumerate(orders))


def iter_isomorphisms(source: tuple, target: tuple) -> Iterator[tuple]:
    """All group isomorphisms, as tuples of generator images (columns)."""
    S, T = FiniteAbelianGroup(source), FiniteAbelianGroup(target)
    if S.size != T.size:
        return
    telems = list(T.elements())
    cands = [[y for y in telems if not any(T.reduce(n * a for a in y))] for n in S.orders]
    selems = list(S.elements())
    for cols in itertools.product(*cands):
        if len({_apply(cols, x, T.orders) for x in selems}) == T.size:
            yield cols


def _kernel_matrices(w, wp, bound: int):
    s = len(w)
    rng = range(-bound, bound + 1)
    for entries in itertools.product(rng, repeat=s * s):
        K = tuple(tuple(entries[i * s:(i + 1) * s]) for i in range(s))
        if tuple(sum(wp[i] * K[i][j] for i in range(s)) for j in range(s)) != tuple(w):
            continue
        if abs(exact.determinant(K)) == 1:
            yield K


def brute_force_isomorphic(q: StructuredQuadratic, qp: StructuredQuadratic,
                           kernel_bound: int = 2) -> Optional[GroupIso]:
    """First isomorphism ``psi`` with ``qp o psi == q`` in enumeration order.

    On the divisible part, every component from the torsion part is tried and
    kernel matrices are searched among integer matrices with entries bounded
    by ``kernel_bound``.
    """
    s = q.divisible_rank
    if s != qp.divisible_rank:
        return None
    if s:
        K = next(_kernel_matrices(q.kernel_hom, qp.kernel_hom, kernel_bound), None)
        if K is None:
            return None
    else:
        K = ()
    S = q.group
    selems = list(S.elements())
    target_vals = {x: evaluate(q, x) for x in selems}
    mus = list(itertools.product(list(S.characters()), repeat=s)) if s else [()]
    for cols in iter_isomorphisms(q.orders, qp.orders):
        for mu in mus:
            ok = True
            for x in selems:
                t = _apply(cols, x, qp.orders)
                dv = tuple(mod1(sum(m * xi for m, xi in zip(mu[i], x))) for i in range(s))
                if evaluate(qp, t, dv) != target_vals[x]:
                    ok = False
                    break
            if ok:
                mix = tuple(tuple(mu[i]) for i in range(s))
                return GroupIso(q.orders, qp.orders, exact.from_columns(cols, len(qp.orders)),
                                s, K, mix)
    return None


def enumerate_refinements(b: TorsionBilinear, max_order: int = 10_000) -> list:
    """All quadratic functions over ``b``: one per character of the group."""
    if b.group.size > max_order:
        raise SizeBoundError(f"group has {b.group.size} elements, bound is {max_order}")
    q0 = some_quadratic_over(b)
    return [add_character(q0, chi) for chi in b.group.characters()]


def brute_force_classes(qs: list) -> list:
    """Isomorphism-class labels for torsion-only quadratic functions.

    Each function is transported to a reference presentation of its group
    (the first of its isomorphism type met in ``qs``) along the first
    enumerated isomorphism, then labelled by the minimum of its value table
    over the whole automorphism group.
    """
    refs = []           # (orders, elems, automorphism permutations)
    transport = {}      # orders -> (ref index, cols of an iso ref -> orders)
    labels = []
    for q in qs:
        orders = q.orders
        if orders not in transport:
            for r, (ro, _, _) in enumerate(refs):
                cols = next(iter_isomorphisms(ro, orders), None)
                if cols is not None:
                    transport[orders] = (r, cols)
                    break
            else:
                G = FiniteAbelianGroup(orders)
                elems = list(G.elements())
                index = {x: i for i, x in enumerate(elems)}
                perms = [tuple(index[_apply(c, x, orders)] for x in elems)
                         for c in iter_isomorphisms(orders, orders)]
                refs.append((orders, elems, perms))
                ident = tuple(tuple(int(i == j) for i in range(len(orders)))
                              for j in range(len(orders)))
                transport[orders] = (len(refs) - 1, ident)
        r, cols = transport[orders]
        ro, elems, perms = refs[r]
        table = [evaluate(q, _apply(cols, x, orders)) for x in elems]
        label = min(tuple(table[i] for i in p) for p in perms)
        labels.append((ro, label))
    return labels


def cyclic_decompositions(n: int) -> list:
    """Ordered factorizations of ``n`` into factors ``>= 2`` (``[()]`` for 1)."""
    if n == 1:
        return [()]
    out = []
    for d in range(2, n + 1):
        if n % d == 0:
            out.extend((d,) + rest for rest in cyclic_decompositions(n // d))
    return out


def all_pairings(orders: tuple) -> list:
    """Every symmetric Q/Z-valued pairing on ``prod Z/orders``."""
    k = len(orders)
    slots = [(i, j) for i in range(k) for j in range(i, k)]
    ranges = [[Fraction(a, math.gcd(orders[i], orders[j]))
               for a in range(math.gcd(orders[i], orders[j]))] for i, j in slots]
    G = FiniteAbelianGroup(orders)
    out = []
    for entries in itertools.product(*ranges):
        m = [[Fraction(0)] * k for _ in range(k)]
        for (i, j), v in zip(slots, entries):
            m[i][j] = m[j][i] = v
        out.append(TorsionBilinear(G, tuple(map(tuple, m))))
    return out


def small_corpus(max_order: int) -> dict:
    """``{group order: [every refinement of every pairing, all decompositions]}``."""
    return {n: [q for orders in cyclic_decompositions(n) for b in all_pairings(orders)
                for q in enumerate_refinements(b)]
            for n in range(1, max_order + 1)}
