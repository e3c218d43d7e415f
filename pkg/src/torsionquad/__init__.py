"""Quadratic functions on finite abelian groups and the lattices that induce them."""

from .classify import (
    Decision,
    InvariantBundle,
    decide_isomorphism,
    fundamental_automorphism,
    gauss_sum,
    invariants,
    is_isomorphic,
)
from .discriminant import (
    DiscriminantGroup,
    discriminant_group,
    discriminant_quadratic,
    evaluate_phi,
    linking_pairing,
)
from .embedding import CokernelReport, cokernel_report, dual_pairing, image_membership, solve_char
from .errors import (
    DimensionError,
    InvalidInputError,
    NoSolutionError,
    PreconditionError,
    SizeBoundError,
    TorsionQuadError,
)
from .exact import CyclotomicNumber, smith_normal_form, solve_congruences
from .lattice import BilinearLattice, CharacteristicForm, Triple, WuClass, canonical_char
from .oracles import brute_force_isomorphic, enumerate_refinements
from .stable import StabilizationCertificate, stabilize, stably_equivalent
from .torsion import (
    FiniteAbelianGroup,
    GroupIso,
    StructuredQuadratic,
    TorsionBilinear,
    act,
    evaluate,
    pullback,
)

__version__ = "0.1.0"
