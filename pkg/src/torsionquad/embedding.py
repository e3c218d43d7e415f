"""Characteristic forms modulo ``2 f(M)`` as quadratic functions on ``M#/M``.

Changing ``c`` to ``c + 2 alpha`` shifts ``phi_{f,c}`` by the character
``-<alpha, ->``, so finding a form with prescribed ``phi`` is a system of
congruences for ``alpha``, plus an exact equation on the kernel of ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .discriminant import discriminant_group, discriminant_quadratic, linking_pairing
from .errors import DimensionError, NoSolutionError, PreconditionError
from .exact import mod1
from .lattice import BilinearLattice, CharacteristicForm, Triple, canonical_char
from .torsion import StructuredQuadratic


def dual_pairing(f: BilinearLattice, alpha, x) -> Fraction:
    """``alpha(x) mod 1`` for an integer covector ``alpha`` and ``x`` in ``M#``."""
    x = tuple(Fraction(a) for a in x)
    if len(x) != f.rank or len(alpha) != f.rank:
        raise DimensionError("vectors must match the lattice rank")
    if any(a.denominator != 1 for a in f.adjoint(x)):
        raise PreconditionError("vector is not in the dual lattice")
    return mod1(sum(int(a) * xi for a, xi in zip(alpha, x)))


def reduce_char(f: BilinearLattice, c) -> CharacteristicForm:
    """Canonical representative of ``c`` modulo the column lattice of ``2 F``."""
    n = f.rank
    coeffs = tuple(int(x) for x in (c.coeffs if isinstance(c, CharacteristicForm) else c))
    if len(coeffs) != n:
        raise DimensionError("characteristic form has the wrong length")
    if n == 0:
        return CharacteristicForm(())
    twice = tuple(tuple(2 * x for x in row) for row in f.gram)
    U, D, _ = exact.smith_normal_form(twice, n)
    y = [v % D[i][i] if D[i][i] else v for i, v in enumerate(exact.matvec(U, coeffs))]
    return CharacteristicForm(exact.matvec(exact.unimodular_inverse(U), y))


def _check_compatible(f: BilinearLattice, q: StructuredQuadratic, q0: StructuredQuadratic):
    if q.orders != q0.orders:
        raise PreconditionError(f"group orders {q.orders} differ from {q0.orders}")
    if q.divisible_rank != q0.divisible_rank:
        raise PreconditionError(
            f"divisible rank {q.divisible_rank} differs from {q0.divisible_rank}")
    if q.b != linking_pairing(discriminant_group(f), f):
        raise PreconditionError("pairing differs from the linking pairing of f")


def solve_char(f: BilinearLattice, q: StructuredQuadratic) -> CharacteristicForm:
    """A characteristic form ``c`` with ``phi_{f,c} = q``, reduced by :func:`reduce_char`.

    Raises :class:`NoSolutionError` when the congruences have no solution.
    """
    c0 = canonical_char(f)
    q0 = discriminant_quadratic(Triple(f, c0))
    _check_compatible(f, q, q0)
    G = discriminant_group(f)
    n, s = f.rank, G.divisible_rank
    rows, rhs, moduli = [], [], []
    # alpha(rep_i) = -(q - q0)(g_i) mod 1 on torsion generators
    for i, (a, b) in enumerate(zip(q.gen_values, q0.gen_values)):
        rep = G.lift(i)
        h = mod1(a - b)
        N = exact.lcm(exact.denominator_lcm(rep), h.denominator)
        rows.append([int(N * x) for x in rep])
        rhs.append(int(-N * h) % N)
        moduli.append(N)
    # exact on the kernel: alpha K = w0 - w
    for j in range(s):
        rows.append([G.kernel_basis[k][j] for k in range(n)])
        rhs.append(q0.kernel_hom[j] - q.kernel_hom[j])
        moduli.append(0)
    alpha = exact.solve_mixed(rows, rhs, moduli, n) if rows else (0,) * n
    if alpha is None:
        raise NoSolutionError("no characteristic form realizes this quadratic function")
    c = reduce_char(f, [a + 2 * x for a, x in zip(c0.coeffs, alpha)])
    if discriminant_quadratic(Triple(f, c)) != q:
        raise AssertionError("solved characteristic form does not reproduce q")
    return c


def image_membership(f: BilinearLattice, q: StructuredQuadratic):
    """``(True, c)`` when some ``phi_{f,c}`` equals ``q``, else ``(False, None)``."""
    try:
        return True, solve_char(f, q)
    except NoSolutionError:
        return False, None


@dataclass(frozen=True)
class CokernelReport:
    """The cokernel of ``[c] -> phi_{f,c}`` on Quad is ``(Ker f (x) Zhat)/Ker f``.

    Only its rank ``s`` is reported; profinite elements are not representable.
    """

    divisible_rank: int
    description: str


def cokernel_report(f: BilinearLattice) -> CokernelReport:
    s = discriminant_group(f).divisible_rank
    if s == 0:
        text = "f is nondegenerate; the embedding is a bijection"
    else:
        text = f"cokernel is (Ker f (x) Zhat)/Ker f with Ker f of rank {s}"
    return CokernelReport(s, text)
