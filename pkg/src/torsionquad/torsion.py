"""Quadratic functions on groups of the form T + (Q/Z)^s.

``T`` is a finite abelian group given by cyclic orders.  A quadratic function
is stored through its values on the generators of ``T``, the Q/Z-valued
pairing matrix on ``T`` and an integer vector ``w`` acting on the divisible
part by ``v -> w . v``.  The divisible part lies in the radical.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from . import exact
from .errors import DimensionError, InvalidInputError, PreconditionError
from .exact import mod1

_ZERO = Fraction(0)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        bad = [n for n in orders if n < 2]
        if bad:
            raise InvalidInputError(f"cyclic orders must be >= 2, got {bad[0]}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def elements(self) -> Iterator[tuple]:
        return itertools.product(*(range(n) for n in self.orders))

    def reduce(self, x) -> tuple:
        return tuple(int(a) % n for a, n in zip(x, self.orders))

    def order_of(self, x) -> int:
        return exact.lcm(*(n // math.gcd(a, n) for a, n in zip(x, self.orders)))

    def is_invariant_form(self) -> bool:
        return all(b % a == 0 for a, b in zip(self.orders, self.orders[1:]))

    def characters(self) -> Iterator[tuple]:
        """All homomorphisms to Q/Z, as value tuples on the generators."""
        return itertools.product(*([Fraction(k, n) for k in range(n)] for n in self.orders))


def _cached_hash(obj, key) -> int:
    # these objects are used as cache keys over and over; hashing Fractions is slow
    h = obj.__dict__.get("_hash")
    if h is None:
        h = hash(key)
        object.__setattr__(obj, "_hash", h)
    return h


def _qmatrix(rows) -> tuple:
    return tuple(tuple(mod1(x) for x in row) for row in rows)


@dataclass(frozen=True)
class TorsionBilinear:
    group: FiniteAbelianGroup
    matrix: tuple

    def __post_init__(self):
        m = _qmatrix(self.matrix)
        k = self.group.rank
        if len(m) != k or any(len(row) != k for row in m):
            raise DimensionError(f"pairing must be {k} x {k}")
        for i in range(k):
            for j in range(k):
                if m[i][j] != m[j][i]:
                    raise InvalidInputError(f"pairing not symmetric at ({i}, {j})")
                if mod1(self.group.orders[i] * m[i][j]):
                    raise InvalidInputError(
                        f"pairing entry ({i}, {j}) = {m[i][j]} is not killed by order "
                        f"{self.group.orders[i]}")
        object.__setattr__(self, "matrix", m)

    def __hash__(self):
        return _cached_hash(self, (self.group, self.matrix))

    def __call__(self, x, y) -> Fraction:
        m = self.matrix
        return mod1(sum(xi * m[i][j] * yj for i, xi in enumerate(x) if xi
                        for j, yj in enumerate(y) if yj))

    def adjoint(self, x) -> tuple:
        """Values of ``b(x, -)`` on the generators."""
        k = self.group.rank
        return tuple(mod1(sum(xi * self.matrix[i][j] for i, xi in enumerate(x)))
                     for j in range(k))

    def is_nondegenerate(self) -> bool:
        G = self.group
        return not any(any(x) and not any(self.adjoint(x)) for x in G.elements())


@dataclass(frozen=True)
class StructuredQuadratic:
    """Quadratic function on ``T + (Q/Z)^s``."""

    pairing: TorsionBilinear
    gen_values: tuple
    divisible_rank: int = 0
    kernel_hom: tuple = ()

    def __post_init__(self):
        G = self.pairing.group
        vals = tuple(mod1(v) for v in self.gen_values)
        if len(vals) != G.rank:
            raise DimensionError(f"need {G.rank} generator values, got {len(vals)}")
        w = tuple(int(x) for x in self.kernel_hom)
        if len(w) != self.divisible_rank:
            raise DimensionError(
                f"kernel_hom has length {len(w)}, divisible rank is {self.divisible_rank}")
        for i, (n, v) in enumerate(zip(G.orders, vals)):
            if mod1(n * v + math.comb(n, 2) * self.pairing.matrix[i][i]):
                raise InvalidInputError(
                    f"generator {i}: value {v} is inconsistent with order {n} "
                    f"and self-pairing {self.pairing.matrix[i][i]}")
        object.__setattr__(self, "gen_values", vals)
        object.__setattr__(self, "kernel_hom", w)

    def __hash__(self):
        return _cached_hash(
            self, (self.pairing, self.gen_values, self.divisible_rank, self.kernel_hom))

    @classmethod
    def from_data(cls, orders, b, q, divisible_rank=0, kernel_hom=()):
        G = FiniteAbelianGroup(tuple(orders))
        return cls(TorsionBilinear(G, b), tuple(q), divisible_rank, tuple(kernel_hom))

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.pairing.group

    @property
    def orders(self) -> tuple:
        return self.pairing.group.orders

    @property
    def b(self) -> tuple:
        return self.pairing.matrix

    def torsion_part(self) -> "StructuredQuadratic":
        return StructuredQuadratic(self.pairing, self.gen_values)

    @cached_property
    def value_table(self) -> dict:
        """Values at every torsion element (small groups only)."""
        return {x: evaluate(self, x) for x in self.group.elements()}


def evaluate(q: StructuredQuadratic, x: Sequence[int], v: Sequence = ()) -> Fraction:
    """``q`` at torsion coordinates ``x`` plus divisible coordinates ``v``."""
    if len(x) != q.group.rank or len(v) not in (0, q.divisible_rank):
        raise DimensionError("coordinates do not match the group")
    b, vals = q.b, q.gen_values
    total = _ZERO
    for i, xi in enumerate(x):
        if not xi:
            continue
        total += xi * vals[i] + (xi * (xi - 1) // 2) * b[i][i]
        for j in range(i + 1, len(x)):
            if x[j]:
                total += xi * x[j] * b[i][j]
    total += sum(wi * Fraction(vi) for wi, vi in zip(q.kernel_hom, v))
    return mod1(total)


def homogeneity_defect(q: StructuredQuadratic):
    """``d_q = q - qbar`` as (values on torsion generators, vector on the divisible part)."""
    d = tuple(mod1(2 * v - q.b[i][i]) for i, v in enumerate(q.gen_values))
    return d, tuple(2 * w for w in q.kernel_hom)


def defect_at(q: StructuredQuadratic, x) -> Fraction:
    d, _ = homogeneity_defect(q)
    return mod1(sum(a * di for a, di in zip(x, d)))


def radical_generators(pairing: TorsionBilinear) -> list:
    """Generators of the kernel of the adjoint of ``pairing``."""
    G = pairing.group
    k = G.rank
    if k == 0:
        return []
    N = exact.lcm(*G.orders)
    # x in Z^k with sum_i x_i b_ij = 0 mod 1 for every j
    A = [[int(N * pairing.matrix[i][j]) for i in range(k)] + [N if r == j else 0 for r in range(k)]
         for j in range(k)]
    gens = []
    for vec in exact.integer_kernel(A, 2 * k):
        g = G.reduce(vec[:k])
        if any(g) and g not in gens:
            gens.append(g)
    return gens


def radical_restriction(q: StructuredQuadratic):
    """Radical of ``b_q`` and the homomorphism ``r_q`` on it.

    Returns ``(generators, values, kernel_hom)``: torsion generators of the
    radical with the values of ``q`` there; the divisible part always belongs
    to the radical and ``r_q`` acts on it through ``kernel_hom``.
    """
    gens = radical_generators(q.pairing)
    return gens, tuple(evaluate(q, g) for g in gens), q.kernel_hom


def act(alpha: Sequence[int], q: StructuredQuadratic) -> StructuredQuadratic:
    """``alpha . q = q + b(alpha, -)``."""
    shift = q.pairing.adjoint(alpha[: q.group.rank])
    vals = tuple(v + s for v, s in zip(q.gen_values, shift))
    return StructuredQuadratic(q.pairing, vals, q.divisible_rank, q.kernel_hom)


def add_character(q: StructuredQuadratic, chi: Sequence) -> StructuredQuadratic:
    vals = tuple(v + c for v, c in zip(q.gen_values, chi))
    return StructuredQuadratic(q.pairing, vals, q.divisible_rank, q.kernel_hom)


def some_quadratic_over(b: TorsionBilinear) -> StructuredQuadratic:
    """Smallest generator values making a quadratic refinement of ``b``."""
    vals = []
    for i, n in enumerate(b.group.orders):
        r = mod1(-math.comb(n, 2) * b.matrix[i][i])
        vals.append(r / n)
    return StructuredQuadratic(b, tuple(vals))


def orthogonal_sum(q1: StructuredQuadratic, q2: StructuredQuadratic) -> StructuredQuadratic:
    k1, k2 = q1.group.rank, q2.group.rank
    b = tuple(tuple(q1.b[i]) + (_ZERO,) * k2 for i in range(k1)) + tuple(
        (_ZERO,) * k1 + tuple(q2.b[i]) for i in range(k2))
    return StructuredQuadratic.from_data(
        q1.orders + q2.orders, b, q1.gen_values + q2.gen_values,
        q1.divisible_rank + q2.divisible_rank, q1.kernel_hom + q2.kernel_hom)


# -- isomorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class GroupIso:
    """Homomorphism ``T + (Q/Z)^s -> T' + (Q/Z)^s`` of triangular shape.

    ``matrix[i][j]`` is coordinate ``i`` of the image of source generator
    ``j`` (reduced mod the target order); ``mixing[i][j]`` is the Q/Z
    component of that image in divisible coordinate ``i``; ``kernel_matrix``
    acts on the divisible part and must be integral.
    """

    source: tuple
    target: tuple
    matrix: tuple
    divisible_rank: int = 0
    kernel_matrix: tuple = ()
    mixing: tuple = ()

    def __post_init__(self):
        S, T = FiniteAbelianGroup(self.source), FiniteAbelianGroup(self.target)
        s = self.divisible_rank
        A = exact.as_matrix(self.matrix)
        if len(A) != T.rank or any(len(r) != S.rank for r in A):
            raise DimensionError(f"matrix must be {T.rank} x {S.rank}")
        A = tuple(tuple(int(a) % n for a in row) for row, n in zip(A, T.orders))
        K = exact.as_matrix(self.kernel_matrix) if self.kernel_matrix else exact.identity(s)
        if len(K) != s or any(len(r) != s for r in K):
            raise DimensionError(f"kernel_matrix must be {s} x {s}")
        mix = _qmatrix(self.mixing) if self.mixing else tuple((_ZERO,) * S.rank for _ in range(s))
        if len(mix) != s or any(len(r) != S.rank for r in mix):
            raise DimensionError(f"mixing must be {s} x {S.rank}")
        for j, n in enumerate(S.orders):
            col = [A[i][j] for i in range(T.rank)]
            if any(n * a % m for a, m in zip(col, T.orders)) or any(
                    mod1(n * mix[i][j]) for i in range(s)):
                raise InvalidInputError(f"image of source generator {j} is not killed by {n}")
        object.__setattr__(self, "source", S.orders)
        object.__setattr__(self, "target", T.orders)
        object.__setattr__(self, "matrix", A)
        object.__setattr__(self, "kernel_matrix", tuple(tuple(int(x) for x in r) for r in K))
        object.__setattr__(self, "mixing", mix)

    @classmethod
    def identity(cls, orders, divisible_rank=0) -> "GroupIso":
        k = len(orders)
        return cls(tuple(orders), tuple(orders), exact.identity(k), divisible_rank)

    def apply(self, x, v=()) -> tuple:
        """Image of ``(x, v)`` as ``(torsion coords, divisible coords)``."""
        t = tuple(sum(a * xi for a, xi in zip(row, x)) % n
                  for row, n in zip(self.matrix, self.target))
        s = self.divisible_rank
        v = tuple(v) if v else (_ZERO,) * s
        dv = tuple(mod1(sum(m * xi for m, xi in zip(self.mixing[i], x))
                        + sum(k * vj for k, vj in zip(self.kernel_matrix[i], v)))
                   for i in range(s))
        return t, dv

    def compose(self, other: "GroupIso") -> "GroupIso":
        """``self o other`` (apply ``other`` first)."""
        if other.target != self.source or other.divisible_rank != self.divisible_rank:
            raise DimensionError("cannot compose: groups do not match")
        k = len(other.source)
        cols = []
        mix_cols = []
        for j in range(k):
            e = tuple(int(i == j) for i in range(k))
            t, dv = self.apply(*other.apply(e))
            cols.append(t)
            mix_cols.append(dv)
        s = self.divisible_rank
        A = exact.from_columns(cols, len(self.target))
        mix = tuple(tuple(mix_cols[j][i] for j in range(k)) for i in range(s))
        K = exact.matmul(self.kernel_matrix, other.kernel_matrix, s)
        return GroupIso(other.source, self.target, A, s, K, mix)

    def is_bijective(self) -> bool:
        S, T = FiniteAbelianGroup(self.source), FiniteAbelianGroup(self.target)
        if S.size != T.size:
            return False
        if self.divisible_rank and abs(exact.determinant(self.kernel_matrix)) != 1:
            return False
        return generates([tuple(r[j] for r in self.matrix) for j in range(S.rank)], T.orders)

    def inverse(self) -> "GroupIso":
        if not self.is_bijective():
            raise PreconditionError("homomorphism is not invertible")
        T = FiniteAbelianGroup(self.target)
        k, kt = len(self.source), T.rank
        A = [list(r) for r in self.matrix]
        cols = []
        for j in range(kt):
            e = [int(i == j) for i in range(kt)]
            sol = exact.solve_congruences(A, e, list(T.orders), k) if kt else ()
            cols.append(FiniteAbelianGroup(self.source).reduce(sol))
        Ainv = exact.from_columns(cols, k)
        s = self.divisible_rank
        Kinv = exact.unimodular_inverse(self.kernel_matrix) if s else ()
        # (t, v) -> (A^-1 t, K^-1 (v - mix A^-1 t))
        mix = []
        for i in range(s):
            row = []
            for j in range(kt):
                _, dv = self.apply(cols[j])
                row.append(mod1(-sum(Kinv[i][l] * dv[l] for l in range(s))))
            mix.append(tuple(row))
        return GroupIso(self.target, self.source, Ainv, s, Kinv, tuple(mix))


def generates(images, orders) -> bool:
    """Whether the given elements generate ``prod Z/orders``."""
    k = len(orders)
    if k == 0:
        return True
    M = [[img[i] for img in images] + [orders[i] if r == i else 0 for r in range(k)]
         for i in range(k)]
    return all(d == 1 for d in exact.invariant_factors(M))


def pullback(psi: GroupIso, q: StructuredQuadratic) -> StructuredQuadratic:
    """``psi^* q = q o psi`` on the source of ``psi``."""
    if psi.target != q.orders or psi.divisible_rank != q.divisible_rank:
        raise DimensionError("isomorphism target does not match the quadratic function")
    k = len(psi.source)
    images = []
    vals = []
    for j in range(k):
        e = tuple(int(i == j) for i in range(k))
        t, dv = psi.apply(e)
        images.append(t)
        vals.append(evaluate(q, t, dv))
    b = tuple(tuple(q.pairing(images[i], images[j]) for j in range(k)) for i in range(k))
    s = q.divisible_rank
    w = exact.vecmat(q.kernel_hom, psi.kernel_matrix, s)
    return StructuredQuadratic.from_data(psi.source, b, vals, s, w)


def normalize(q: StructuredQuadratic):
    """Move ``q`` to invariant-factor coordinates.

    Returns ``(qn, iso)`` where ``iso`` maps the group of ``q`` onto the
    group of ``qn`` and ``pullback(iso, qn) == q``.
    """
    orders = q.orders
    k = len(orders)
    diag = tuple(tuple(orders[i] if i == j else 0 for j in range(k)) for i in range(k))
    U, D, _ = exact.smith_normal_form(diag, k)
    keep = [i for i in range(k) if D[i][i] > 1]
    new_orders = tuple(D[i][i] for i in keep)
    s = q.divisible_rank
    fwd = GroupIso(orders, new_orders, tuple(U[i] for i in keep), s)
    Uinv = exact.unimodular_inverse(U) if k else ()
    reps = [q.group.reduce(tuple(Uinv[r][i] for r in range(k))) for i in keep]
    vals = [evaluate(q, g) for g in reps]
    b = tuple(tuple(q.pairing(g, h) for h in reps) for g in reps)
    qn = StructuredQuadratic.from_data(new_orders, b, vals, s, q.kernel_hom)
    return qn, fwd


def same_function(q1: StructuredQuadratic, q2: StructuredQuadratic) -> bool:
    """Pointwise equality on the torsion part plus equal divisible data."""
    if q1.orders != q2.orders or q1.kernel_hom != q2.kernel_hom:
        return False
    return q1.b == q2.b and q1.gen_values == q2.gen_values
