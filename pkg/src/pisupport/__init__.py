"""Exact computation of support and cosupport over modular group algebras
of elementary abelian and quasi-elementary type."""

from .fields import (
    FieldDescriptor,
    FieldElement,
    Polynomial,
    arith,
    canonical_extension,
    embed,
    make_field,
    refines,
)
from .linalg import (
    JordanType,
    Matrix,
    is_full,
    jordan_type,
    kernel_basis,
    minors,
    rank,
)
from .reps import (
    GROUP,
    PRIMITIVE,
    AlgebraSpec,
    InvariantsInfo,
    ModuleRep,
    base_change,
    coinduced,
    direct_sum,
    dual,
    free_module,
    hom,
    invariants,
    is_free,
    jordan_block_module,
    make_spec,
    radical_quotient_dim,
    tensor,
    trivial_module,
    validate,
)
from .pipoints import (
    PiPoint,
    base_extend,
    equivalent,
    generic_point,
    is_flat,
    linear_part,
    make_general,
    make_linear,
    restrict,
)
from .support import (
    EVERYTHING,
    ProjPoint,
    SupportDescription,
    cosupport_sample,
    generic_in_support,
    in_cosupport,
    in_support,
    is_projective,
    point_pi,
    support_ideal,
    support_sample,
    verify_dade,
    verify_hom_formula,
    verify_jordan_hom_table,
    verify_tensor_formula,
)

__version__ = "0.1.0"
