"""Stable equivalence of triples ``(M, f, c)``.

Triples are stably equivalent when they become isomorphic after adding
copies of ``(Z, +-1, 1)``.  The decision compares kernel data and the
discriminant quadratic functions; the certificate only records stabilizers
that balance rank and signature.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import exact
from .classify import SEARCH_BOUND, decide_isomorphism
from .discriminant import discriminant_quadratic
from .errors import DimensionError
from .lattice import Triple, restrict_char_to_kernel, signature, splitting


@dataclass(frozen=True)
class StabilizationCertificate:
    verdict: bool
    left_signs: tuple = ()
    right_signs: tuple = ()
    reason: Optional[str] = None


def stabilize(t: Triple, signs) -> Triple:
    """Orthogonal sum with ``diag(signs)``, char coefficient 1 on each new coordinate."""
    signs = tuple(int(s) for s in signs)
    if any(s not in (1, -1) for s in signs):
        raise ValueError("stabilizer signs must be +1 or -1")
    if not signs:
        return t
    m = len(signs)
    gram = exact.block_diagonal(t.lattice.gram, tuple(
        tuple(signs[i] if i == j else 0 for j in range(m)) for i in range(m)))
    return Triple.of(gram, t.char.coeffs + (1,) * m)


def _balancing_signs(t: Triple, tp: Triple):
    p, n, _ = signature(t.lattice)
    pp, np_, _ = signature(tp.lattice)
    top, bot = max(p, pp), max(n, np_)
    left = (1,) * (top - p) + (-1,) * (bot - n)
    right = (1,) * (top - pp) + (-1,) * (bot - np_)
    return left, right


def stably_equivalent(t: Triple, tp: Triple, max_order: int = SEARCH_BOUND) -> StabilizationCertificate:
    s, sp = splitting(t.lattice).kernel_rank, splitting(tp.lattice).kernel_rank
    if s != sp:
        return StabilizationCertificate(False, reason="kernel_rank")
    if restrict_char_to_kernel(t)[1] != restrict_char_to_kernel(tp)[1]:
        return StabilizationCertificate(False, reason="kernel_content")
    decision = decide_isomorphism(discriminant_quadratic(t), discriminant_quadratic(tp), max_order)
    if not decision.isomorphic:
        return StabilizationCertificate(False, reason=decision.reason)
    left, right = _balancing_signs(t, tp)
    return StabilizationCertificate(True, left, right)


def is_triple_isomorphism(t: Triple, tp: Triple, psi) -> bool:
    """Whether the integer matrix ``psi`` (M -> M') satisfies ``psi^T F' psi = F``,
    ``det psi = +-1`` and ``psi^T c' = c`` modulo ``2 F Z^n``."""
    n = t.rank
    if tp.rank != n:
        return False
    psi = exact.as_matrix(psi)
    if len(psi) != n or any(len(r) != n for r in psi):
        raise DimensionError(f"psi must be {n} x {n}")
    if n == 0:
        return True
    if abs(exact.determinant(psi)) != 1:
        return False
    pt = exact.transpose(psi, n)
    if exact.matmul(exact.matmul(pt, tp.lattice.gram, n), psi, n) != t.lattice.gram:
        return False
    diff = [a - b for a, b in zip(exact.matvec(pt, tp.char.coeffs), t.char.coeffs)]
    twice = [[2 * x for x in row] for row in t.lattice.gram]
    return exact.solve_mixed(twice, diff, [0] * n, n) is not None


@dataclass
class SearchResult:
    isomorphism: Optional[tuple]
    exhausted: bool
    nodes: int = 0


def find_triple_isomorphism(t: Triple, tp: Triple, entry_bound: int = 3,
                            node_limit: int = 200_000) -> SearchResult:
    """Search integer matrices with entries in ``[-entry_bound, entry_bound]``
    for an isomorphism of triples ``t -> tp``.

    Columns are chosen one at a time among vectors ``v`` with
    ``v^T F' v = F_ii`` and the right pairings with earlier columns.
    ``exhausted`` is false when ``node_limit`` stopped the search early.
    """
    n = t.rank
    if tp.rank != n:
        return SearchResult(None, True)
    if n == 0:
        return SearchResult((), True)
    F = np.array(t.lattice.gram, dtype=np.int64)
    Fp = np.array(tp.lattice.gram, dtype=np.int64)
    rng = range(-entry_bound, entry_bound + 1)
    V = np.array(list(itertools.product(rng, repeat=n)), dtype=np.int64)
    VF = V @ Fp
    norms = np.einsum("ij,ij->i", VF, V)
    pools = [np.nonzero(norms == F[i, i])[0] for i in range(n)]
    nodes = 0
    chosen = []

    def rec(i):
        nonlocal nodes
        if i == n:
            psi = tuple(tuple(int(V[chosen[j], r]) for j in range(n)) for r in range(n))
            return psi if is_triple_isomorphism(t, tp, psi) else None
        pool = pools[i]
        for j, c in enumerate(chosen):
            pool = pool[VF[pool] @ V[c] == F[i, j]]
        for c in pool:
            nodes += 1
            if nodes > node_limit:
                raise _Budget
            chosen.append(int(c))
            found = rec(i + 1)
            if found is not None:
                return found
            chosen.pop()
        return None

    try:
        found = rec(0)
    except _Budget:
        return SearchResult(None, False, nodes)
    return SearchResult(found, True, nodes)


class _Budget(Exception):
    pass
