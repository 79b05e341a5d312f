"""Exact curvature and Schouten-Weyl invariants of left-invariant
Lorentzian metrics on 3-dimensional unimodular Lie groups."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebras import (
    FAMILY_IDS,
    LIE_TYPES,
    MetricLieAlgebra,
    StructureConstants,
    build_family,
    build_frame_variant,
    classify_type,
    dump_algebra,
    family_variables,
    load_algebra,
)
from .audit import (
    AuditReport,
    Finding,
    ScanReport,
    classify_by_invariants,
    compare_component_tensor,
    compare_with_reference,
    contraction_matrix,
    det_locus,
    exclusion_slopes,
    footnote_constants,
    generate_system,
    reproduce_table,
    run_audit,
    scan,
)
from .errors import InputError
from .geometry import (
    CONVENTION_TAG,
    CurvatureBundle,
    DerivConvention,
    christoffel,
    curvature_bundle,
    predicates,
    sw_contract,
    sw_curl,
    sw_divergence,
    sw_norm2,
    sw_tensor,
    tensor2_curl_div,
    vector_ops,
    vector_symbols,
)
from .scalars import (
    ExactDivisionError,
    Polynomial,
    PolynomialSyntaxError,
    ScalarError,
    parse_polynomial,
    parse_rational,
)
from .roots import RootInterval, real_roots
from .systems import (
    LinearSystemInV,
    MatchReport,
    PolySystem,
    systems_match,
    verify_locus,
)
from .tensors import Metric, Tensor, VarianceError
