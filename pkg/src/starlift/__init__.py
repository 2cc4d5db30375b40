"""starlift: exact lifts of coboundary Lie bialgebra structures.

Functional pentagon and twist-cocycle equations solved degree by degree
in the BCH star group, co-Hochschild cohomology, PBW envelopes, trace
transport into U(g*), and quasitriangular subalgebra machinery. All
arithmetic is exact over Q.
"""

from .cohochschild import cohomology_dimension
from .core import (
    FormalSeriesTensor,
    LieAlgebraSpec,
    RMatrix,
    alt_project,
    coproduct_insert,
    cyb,
    g_action,
    is_invariant,
    load_lie_algebra,
    multiply,
    poisson_bracket,
)
from .duality import (
    LinearForm,
    convolution_bracket,
    form_pair,
    is_poisson_trace,
    poisson_traces,
    rho_product,
    theta,
    twisted_coproduct,
)
from .envelope import (
    PBWElement,
    PBWTensorSquare,
    center,
    copoisson_delta,
    derivation_D,
    dual_bracket,
    invariants_s_dual,
    pbw_commutator,
    pbw_product,
)
from .lifts import (
    cocycle_defect,
    gauge_phi,
    gauge_rho,
    lift,
    lift_associator,
    lift_twist,
    pentagon_defect,
)
from .quasitriangular import (
    QTStructure,
    c_s_basis,
    c_s_graded_dims,
    c_s_map,
    check_inner_derivation,
    compare_images,
    qt_validate,
    sts_alpha,
    sts_theta,
)
from .star import negate, star, star_conjugate

__version__ = "0.1.0"

__all__ = [
    "FormalSeriesTensor",
    "LieAlgebraSpec",
    "LinearForm",
    "PBWElement",
    "PBWTensorSquare",
    "QTStructure",
    "RMatrix",
    "alt_project",
    "c_s_basis",
    "c_s_graded_dims",
    "c_s_map",
    "center",
    "check_inner_derivation",
    "cocycle_defect",
    "cohomology_dimension",
    "compare_images",
    "convolution_bracket",
    "copoisson_delta",
    "coproduct_insert",
    "cyb",
    "derivation_D",
    "dual_bracket",
    "form_pair",
    "g_action",
    "gauge_phi",
    "gauge_rho",
    "invariants_s_dual",
    "is_invariant",
    "is_poisson_trace",
    "lift",
    "lift_associator",
    "lift_twist",
    "load_lie_algebra",
    "multiply",
    "negate",
    "pbw_commutator",
    "pbw_product",
    "pentagon_defect",
    "poisson_bracket",
    "poisson_traces",
    "qt_validate",
    "rho_product",
    "star",
    "star_conjugate",
    "sts_alpha",
    "sts_theta",
    "theta",
    "twisted_coproduct",
    "__version__",
]
