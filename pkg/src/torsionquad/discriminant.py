"""The discriminant construction ``(M, f, c) -> (M#/M, phi_{f,c})``.

The group ``M#/M`` is stored split as ``T + (Q/Z)^s``: the torsion part comes
from the Smith form of the nondegenerate quotient ``fbar`` and is lifted to
``M`` through the section recorded by :func:`lattice.splitting`; the
divisible part is ``Ker f (x) Q/Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exact
from .errors import DimensionError, PreconditionError
from .exact import mod1
from .lattice import BilinearLattice, Triple, splitting
from .torsion import StructuredQuadratic


@dataclass(frozen=True)
class DiscriminantElement:
    torsion_coords: tuple
    kernel_part: tuple


@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: BilinearLattice
    orders: tuple
    divisible_rank: int
    gen_reps: tuple          # rational vectors in Mbar coordinates
    section: tuple           # n x r, Mbar -> M
    proj: tuple              # r x n, M -> Mbar
    kernel_basis: tuple      # n x s
    coord_rows: tuple        # rows of the Smith transform picking torsion coordinates

    @property
    def size(self):
        """Order of the torsion part."""
        out = 1
        for n in self.orders:
            out *= n
        return out

    def lift(self, i: int) -> tuple:
        """Representative in ``M#`` (M coordinates) of torsion generator ``i``."""
        return exact.matvec(self.section, self.gen_reps[i])

    def kernel_lift(self, j: int, t=Fraction(1)) -> tuple:
        """The element ``t * k_j`` of ``Ker f (x) Q`` for kernel basis vector ``k_j``."""
        return tuple(t * row[j] for row in self.kernel_basis)

    def coordinates(self, x) -> DiscriminantElement:
        """Coordinates of the class of ``x`` in ``M#/M``."""
        x = tuple(Fraction(a) for a in x)
        if len(x) != self.lattice.rank:
            raise DimensionError("vector length differs from the lattice rank")
        if any(a.denominator != 1 for a in self.lattice.adjoint(x)):
            raise PreconditionError("vector is not in the dual lattice")
        xbar = exact.matvec(self.proj, x)
        s = self.divisible_rank
        # kernel coordinates: x - section(xbar) lies in Ker f (x) Q
        rest = [a - b for a, b in zip(x, exact.matvec(self.section, xbar))]
        kappa = _solve_in_basis(self.kernel_basis, rest, s)
        fbar = splitting(self.lattice).fbar
        y = fbar.adjoint(xbar)
        tors = tuple(int(sum(u * a for u, a in zip(row, y))) % n
                     for row, n in zip(self.coord_rows, self.orders))
        return DiscriminantElement(tors, tuple(mod1(k) for k in kappa))


def _solve_in_basis(basis, vec, s):
    if s == 0:
        return ()
    # basis columns are part of a unimodular basis; least-squares free exact solve
    cols = exact.columns(basis, s)
    n = len(vec)
    gram = [[sum(cols[i][r] * cols[j][r] for r in range(n)) for j in range(s)] for i in range(s)]
    rhs = [sum(cols[i][r] * vec[r] for r in range(n)) for i in range(s)]
    return exact.matvec(exact.rational_inverse(gram), rhs)


@lru_cache(maxsize=4096)
def discriminant_group(f: BilinearLattice) -> DiscriminantGroup:
    sp = splitting(f)
    F = sp.fbar.gram
    r = sp.fbar.rank
    U, D, V = exact.smith_normal_form(F, r)
    keep = [i for i in range(r) if D[i][i] > 1]
    orders = tuple(D[i][i] for i in keep)
    reps = tuple(tuple(Fraction(V[k][i], D[i][i]) for k in range(r)) for i in keep)
    return DiscriminantGroup(f, orders, sp.kernel_rank, reps, sp.section, sp.proj,
                             sp.kernel, tuple(U[i] for i in keep))


def linking_pairing(G: DiscriminantGroup, f: BilinearLattice) -> tuple:
    if G.lattice != f:
        raise DimensionError("discriminant group was computed from another lattice")
    fbar = splitting(f).fbar
    return tuple(tuple(mod1(fbar.pair(g, h)) for h in G.gen_reps) for g in G.gen_reps)


def discriminant_quadratic(t: Triple) -> StructuredQuadratic:
    f, c = t.lattice, t.char
    G = discriminant_group(f)
    b = linking_pairing(G, f)
    vals = []
    for i in range(len(G.orders)):
        x = G.lift(i)
        vals.append(mod1((f.pair(x, x) - c(x)) / 2))
    restricted = exact.vecmat(c.coeffs, G.kernel_basis, G.divisible_rank)
    w = tuple(-v // 2 for v in restricted)
    return StructuredQuadratic.from_data(G.orders, b, vals, G.divisible_rank, w)


def evaluate_phi(t: Triple, x) -> Fraction:
    """``(f(x, x) - c(x)) / 2 mod 1`` for ``x`` in the dual lattice."""
    f = t.lattice
    x = tuple(Fraction(a) for a in x)
    if len(x) != f.rank:
        raise DimensionError("vector length differs from the lattice rank")
    if any(a.denominator != 1 for a in f.adjoint(x)):
        raise PreconditionError("vector is not in the dual lattice")
    return mod1((f.pair(x, x) - t.char(x)) / 2)
