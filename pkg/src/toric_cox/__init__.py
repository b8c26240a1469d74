"""Exact toric geometry: fans, Picard groups, Cox rings, charts and cohomology.

All arithmetic is over the integers or the rationals. The hot box-scanning
loops come from a compiled extension when available (see
:mod:`toric_cox.kernels`).
"""

from .charts import (
    ChartMonoid,
    SheafData,
    TwistModule,
    chart_monoid,
    compare_cox_toric,
    delta_counterexample_check,
    dual_monoid,
    glue_check,
    invertibility_check,
    saturated_preimage,
    sheaf_of,
    strongly_graded_check,
    twist_module,
    xi_equal,
    xi_equal_chartwise,
)
from .cohomology import (
    CharacterComplex,
    CohomologyReport,
    CorrespondenceViolation,
    finiteness_evidence,
    global_sections_check,
    local_cohomology,
    serre_grothendieck_verify,
    sheaf_cohomology,
    tensor_h0,
)
from .cones import (
    Fan,
    FanFlags,
    IntersectionNotFace,
    InvalidCone,
    NonSharpCone,
    Polycone,
    classify_fan,
    dual_cone,
    faces,
    full_fan_associated,
    generate_random_fan,
    validate_fan,
)
from .graded import (
    CoxRing,
    GradedSubmodule,
    NotBig,
    SaturationDiverged,
    Unsupported,
    chart_ideal,
    colon,
    cox_ring,
    degree_restriction,
    intersect,
    irrelevant_ideal,
    is_saturated,
    is_torsion,
    saturate,
    saturate_chartwise,
    torsion_submodule,
)
from .io import FanDocument, RunReport, emit_report, load_fixture, parse_fan
from .kernels import BACKEND
from .lattice import (
    FinAbGroup,
    Subgroup,
    cokernel,
    hermite_normal_form,
    invariant_factors,
    smith_normal_form,
)
from .picard import (
    FanDiagram,
    TheoremViolation,
    VirtualPolytope,
    build_diagram,
    degree_monoid_info,
    fan_classification_theorems,
    is_big,
    is_small,
    normal_form_vp,
    picard_group,
    picard_via_polytopes,
    virtual_polytope_for,
)
from .semigroups import hilbert_basis

__version__ = "0.1.0"
