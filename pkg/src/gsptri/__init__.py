"""Exact-arithmetic verifiers for the combinatorial layer of symplectic
trianguline deformation data: Weyl group enumeration with signed
representatives, locally algebraic characters and their rank-1 dimension
table, refinements and the strictly dominant weight algorithm, and
machine-checked span/saturation certificates over the fraction field of a
multivariate Laurent polynomial ring."""

__version__ = "0.1.0"

from .characters import (
    LocallyAlgebraicCharacter,
    PadicFieldShape,
    cohomology_dims,
    cyclotomic_character,
    ext_saturated_check,
    h_surjectivity_check,
    is_regular,
    is_regular_parameter,
    trivial_character,
)
from .laurent import FractionElement, LaurentElement, exact_divide
from .linalg import (
    EchelonTracker,
    ExactMatrix,
    membership_with_monomial_clearance,
    rank_over_fraction_field,
    solve_in_span,
    verify_membership_witness,
)
from .phimodules import (
    PhiModuleData,
    Refinement,
    SymplecticPhiData,
    dominant_weight_arrangement,
    enumerate_symplectic_refinements,
    gsp_torus_weights,
    identity_refinement,
    is_benign,
    is_noncritical,
    is_phi_generic,
    is_regular_ht,
    is_strictly_dominant_gsp,
    phi_module_from_json,
    refinement_parameter,
    strictly_dominant_weight,
)
from .rng import SplitMix64
from .saturation import (
    SpanCertificate,
    TriangulationFrame,
    adjoint_shifts_from_certificate,
    h_conditions_for_adjoint,
    transform_matrix,
    verify_block_shape,
    verify_span_gl,
    verify_span_gsp,
)
from .scalars import ExactScalar, padic_valuation, scalar_from_string, scalar_to_string
from .weyl import (
    WeylElement,
    form_matrix,
    gsp_lie_basis,
    similitude,
    symplectic_lie_scalar,
    torus_embed,
    weyl_group,
    weyl_representative,
)
