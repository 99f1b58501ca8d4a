"""Tangent graphs of finite classical polar spaces and their Ramanujan property."""

from .field import FieldSpec, field_make
from .geometry import (
    Form,
    FormKind,
    LineClass,
    LineKind,
    PolarSpaceTag,
    ProjPoint,
    classify_line,
    enumerate_points,
    eval_form,
    is_isotropic,
    line_points,
    make_form,
    nucleus,
    polar_form,
    polar_tag,
)
from .graphs import (
    Graph,
    bipartition,
    build_collinearity_parabolic,
    build_collinearity_symplectic,
    build_complete,
    build_complete_bipartite,
    build_no_even,
    build_no_odd,
    build_nu,
    build_paley,
    complement,
    disjoint_union,
    export_adjlist,
    export_graph6,
    find_isomorphism,
    is_bipartite,
    is_connected,
)
from .spectral import (
    MixingReport,
    RamanujanVerdict,
    Spectrum,
    SrgParams,
    VerdictClass,
    mixing_test,
    numeric_spectrum,
    ramanujan_verdict,
    second_eigenvalue,
    srg_params,
    srg_spectrum,
    verify_srg_identity,
)
from .families import (
    Family,
    FamilyParams,
    family_lambda,
    family_params,
    predict_verdict,
    proof_inequality,
    remark_polynomial,
)

__version__ = "0.1.0"
