"""Fujita invariants and polar cylinders on blow-ups of the projective plane.

Everything is exact: classes are vectors of :class:`fractions.Fraction` in
the basis ``(H, E1, ..., En)`` and the linear programs run a rational
simplex.
"""
from .certify import (
    Check,
    Component,
    CylinderCertificate,
    VerificationReport,
    adjoint_degree,
    verify_certificate,
)
from .classify import (
    ClassifyError,
    CylinderVerdict,
    Reason,
    Status,
    classify,
    explain,
    proportional_to_anticanonical,
)
from .cone import (
    CertificateModeRequired,
    FujitaData,
    Membership,
    NotAmple,
    PeThresholdCertificate,
    cone_decomposition,
    fujita_face,
    fujita_from_certificate,
    fujita_invariant,
    in_effective_cone,
    nef_attestors,
    verify_pe_threshold_certificate,
)
from .families import (
    AuxiliaryParams,
    Dp2Params,
    Dp2Report,
    IdentityFailure,
    ParameterError,
    build_auxiliary,
    build_dp2,
    dp2_tower,
    log_pullback_coeff,
    match_auxiliary,
    match_nine_points,
    nine_points,
)
from .lp import LinearProgram, LPResult, MalformedProgram, lp_solve
from .negcurves import (
    NegClassSet,
    is_ample,
    minus_one_classes,
    minus_two_classes,
    mori_generators,
    negative_classes,
    star_check,
)
from .picard import (
    CenterSpec,
    ContractionError,
    ContractionMap,
    DimensionMismatch,
    DivisorClass,
    SurfaceSpec,
    TowerBuilder,
    as_rational,
    canonical_class,
    contract,
    general_position,
    intersect,
    lin_comb,
    proper_transform,
)

__version__ = "0.1.0"
