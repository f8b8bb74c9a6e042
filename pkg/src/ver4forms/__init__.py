"""Exact bilinear and quadratic form classification on K[t]/(t^2)-modules
with the twisted braiding c(u (x) r) = r (x) u + t.r (x) t.u, over GF(2^k).
"""

from .bform import BilinearForm, Subobject, standard_subobject
from .classify import (
    CanonicalClass,
    GoodPairSpace,
    InternalCheckError,
    canonical_rep,
    canonicalize,
    classify,
    form_invariant,
    good_pairs,
    x_function,
    x_matrix,
)
from .divided import (
    Gamma2Basis,
    QuadraticForm,
    a2_iso_check,
    beta_q,
    classify_quadratic,
    frobenius_twist_rank,
    gamma2,
    gamma2_dim_formula,
    hyperbolic_quadratic,
    quad_from_parts,
    quad_product,
    quad_restrict,
    quad_sum,
    quad_transform,
    quadratic_from_bilinear,
)
from .field import Field, make_field
from .oracle import OrbitReport, class_inventory, enumerate_forms, orbit_classes
from .verobj import (
    Morphism,
    RawTModule,
    VerObject,
    braiding,
    check_r_matrix_axioms,
    decompose,
    dual,
    hexagons_hold,
    random_equivariant_automorphism,
    random_equivariant_matrix,
    tensor,
    tensor_raw,
    unit_object,
)
from .witt import (
    WittTables,
    direct_sum,
    emit_tables,
    expected_product_class,
    expected_sum_class,
    product_class,
    sum_class,
    tensor_product,
    tensor_product_via_braiding,
)

__all__ = [
    "BilinearForm",
    "CanonicalClass",
    "Field",
    "Gamma2Basis",
    "GoodPairSpace",
    "InternalCheckError",
    "Morphism",
    "OrbitReport",
    "QuadraticForm",
    "RawTModule",
    "Subobject",
    "VerObject",
    "WittTables",
    "a2_iso_check",
    "beta_q",
    "braiding",
    "canonical_rep",
    "canonicalize",
    "check_r_matrix_axioms",
    "class_inventory",
    "classify",
    "classify_quadratic",
    "decompose",
    "direct_sum",
    "dual",
    "emit_tables",
    "enumerate_forms",
    "expected_product_class",
    "expected_sum_class",
    "form_invariant",
    "frobenius_twist_rank",
    "gamma2",
    "gamma2_dim_formula",
    "good_pairs",
    "hexagons_hold",
    "hyperbolic_quadratic",
    "make_field",
    "orbit_classes",
    "product_class",
    "quad_from_parts",
    "quad_product",
    "quad_restrict",
    "quad_sum",
    "quad_transform",
    "quadratic_from_bilinear",
    "random_equivariant_automorphism",
    "random_equivariant_matrix",
    "standard_subobject",
    "sum_class",
    "tensor",
    "tensor_product",
    "tensor_product_via_braiding",
    "tensor_raw",
    "unit_object",
    "x_function",
    "x_matrix",
]

__version__ = "0.1.0"
