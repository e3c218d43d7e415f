"""Symmetric bilinear lattices, characteristic forms and Wu classes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import exact
from .errors import DimensionError, InvalidInputError, PreconditionError


@dataclass(frozen=True)
class BilinearLattice:
    """Gram matrix of a symmetric form on Z^rank (standard basis)."""

    gram: tuple

    def __post_init__(self):
        gram = exact.as_matrix(self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise InvalidInputError("gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise InvalidInputError("gram matrix must be symmetric")
        object.__setattr__(self, "gram", tuple(tuple(int(x) for x in row) for row in gram))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, x, y):
        """f_Q(x, y) for rational coordinate vectors."""
        return sum(xi * gij * yj for xi, row in zip(x, self.gram)
                   for gij, yj in zip(row, y) if xi and gij)

    def adjoint(self, x) -> tuple:
        return exact.matvec(self.gram, x)

    def determinant(self) -> int:
        return int(exact.determinant(self.gram))

    def is_nondegenerate(self) -> bool:
        return self.rank == 0 or self.determinant() != 0

    def is_unimodular(self) -> bool:
        return self.rank == 0 or abs(self.determinant()) == 1


@dataclass(frozen=True)
class CharacteristicForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __call__(self, x):
        return sum(c * xi for c, xi in zip(self.coeffs, x))


@dataclass(frozen=True)
class WuClass:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


def is_characteristic(f: BilinearLattice, c: CharacteristicForm) -> bool:
    # x -> f(x,x) - c(x) mod 2 is additive, so basis vectors suffice
    return len(c.coeffs) == f.rank and all(
        (f.gram[i][i] - c.coeffs[i]) % 2 == 0 for i in range(f.rank))


@dataclass(frozen=True)
class Triple:
    """A bilinear lattice together with a characteristic form."""

    lattice: BilinearLattice
    char: CharacteristicForm

    def __post_init__(self):
        if len(self.char.coeffs) != self.lattice.rank:
            raise DimensionError(
                f"char has {len(self.char.coeffs)} entries, lattice rank is {self.lattice.rank}")
        if not is_characteristic(self.lattice, self.char):
            bad = next(i for i in range(self.lattice.rank)
                       if (self.lattice.gram[i][i] - self.char.coeffs[i]) % 2)
            raise InvalidInputError(
                f"char[{bad}] = {self.char.coeffs[bad]} has the wrong parity "
                f"(gram[{bad}][{bad}] = {self.lattice.gram[bad][bad]})")

    @classmethod
    def of(cls, gram, char=None) -> "Triple":
        f = BilinearLattice(gram)
        c = canonical_char(f) if char is None else CharacteristicForm(char)
        return cls(f, c)

    @property
    def rank(self) -> int:
        return self.lattice.rank


def canonical_char(f: BilinearLattice) -> CharacteristicForm:
    return CharacteristicForm(tuple(f.gram[i][i] for i in range(f.rank)))


@dataclass(frozen=True)
class Splitting:
    """Data of ``M = s(Mbar) + Ker f`` computed from one Smith form of the Gram matrix.

    ``proj`` is r x n, ``section`` is n x r and ``kernel`` is n x s; columns of
    ``section`` and ``kernel`` together form a basis of M.
    """

    fbar: BilinearLattice
    proj: tuple
    section: tuple
    kernel: tuple
    kernel_rank: int


@lru_cache(maxsize=4096)
def splitting(f: BilinearLattice) -> Splitting:
    n = f.rank
    _, D, V = exact.smith_normal_form(f.gram, n)
    r = sum(1 for i in range(n) if D[i][i])
    cols = exact.columns(V, n)
    for j in range(r, n):
        # sign-normalize kernel vectors: first nonzero entry positive
        lead = next(x for x in cols[j] if x)
        if lead < 0:
            cols[j] = tuple(-x for x in cols[j])
    Vn = exact.from_columns(cols, n)
    Vinv = exact.unimodular_inverse(Vn) if n else ()
    section = exact.from_columns(cols[:r], n)
    kernel = exact.from_columns(cols[r:], n)
    proj = tuple(Vinv[:r])
    fbar = exact.matmul(exact.matmul(exact.transpose(section, r), f.gram, n), section, r)
    return Splitting(BilinearLattice(fbar), proj, section, kernel, n - r)


def kernel_of_adjoint(f: BilinearLattice) -> tuple:
    """Columns form a saturated basis of ``{x : f(x, -) = 0}``."""
    return splitting(f).kernel


def split_nondegenerate(f: BilinearLattice):
    """Return ``(fbar, proj, section)`` with ``f(x, y) = fbar(proj x, proj y)``."""
    sp = splitting(f)
    return sp.fbar, sp.proj, sp.section


def restrict_char_to_kernel(t: Triple):
    """Values of the characteristic form on the kernel basis, and their gcd."""
    sp = splitting(t.lattice)
    values = exact.vecmat(t.char.coeffs, sp.kernel, sp.kernel_rank)
    return values, exact.content(values)


def wu_char_convert(f: BilinearLattice, value: Union[WuClass, CharacteristicForm]):
    """Map a fractional Wu class to its characteristic form, or back."""
    if not f.is_nondegenerate():
        raise PreconditionError("Wu/char correspondence needs a nondegenerate form")
    if isinstance(value, WuClass):
        if len(value.coords) != f.rank:
            raise DimensionError("Wu class has the wrong length")
        image = f.adjoint(value.coords)
        if any(x.denominator != 1 for x in image):
            raise InvalidInputError("f(w, -) is not integral on M")
        c = CharacteristicForm(tuple(int(x) for x in image))
        if not is_characteristic(f, c):
            raise InvalidInputError("coordinates do not define a Wu class")
        return c
    if len(value.coeffs) != f.rank:
        raise DimensionError("characteristic form has the wrong length")
    if not is_characteristic(f, value):
        raise InvalidInputError("not a characteristic form")
    inv = exact.rational_inverse(f.gram)
    return WuClass(exact.matvec(inv, value.coeffs))


def retract_char(f: BilinearLattice, section, c: CharacteristicForm) -> CharacteristicForm:
    """Pull ``c`` back along a section of ``M -> Mbar``."""
    n = f.rank
    if len(section) != n or len(c.coeffs) != n:
        raise DimensionError("section must have one row per basis vector of M")
    r = len(section[0]) if n else 0
    return CharacteristicForm(exact.vecmat(c.coeffs, section, r))


def orthogonal_sum_triple(t1: Triple, t2: Triple) -> Triple:
    gram = exact.block_diagonal(t1.lattice.gram, t2.lattice.gram)
    return Triple(BilinearLattice(gram), CharacteristicForm(t1.char.coeffs + t2.char.coeffs))


def signature(f: BilinearLattice):
    """``(positive, negative, zero)`` counts, by congruence diagonalization over Q."""
    n = f.rank
    A = [[Fraction(x) for x in row] for row in f.gram]
    pos = neg = 0
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if A[i][k]:
                t = A[i][k] / p
                for j in range(k + 1, n):
                    A[i][j] -= t * A[k][j]
        for i in range(k + 1, n):
            A[i][k] = A[k][i] = Fraction(0)
    return pos, neg, n - pos - neg
