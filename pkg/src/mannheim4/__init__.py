"""Frenet frames and generalized Mannheim curves in Minkowski space-time E_1^4."""

from .curves import (
    CurveModel,
    ParsedCurve,
    TransformedCurve,
    UnitSpeedCurve,
    arc_length,
    curve_jet,
    ensure_unit_speed,
    reparam_unit_speed,
    speed,
)
from .errors import (
    DegenerateBeta,
    DomainError,
    ExprSyntaxError,
    GeometryError,
    InvalidDomain,
    MateNotTimelike,
    NearNullTangent,
    NegativeK2Squared,
    NonPositiveF,
    NotTimelike,
    NotUnitSpeed,
    OutOfDomain,
    QuadratureFailure,
    SingularMateSpeed,
    UnknownIdentifier,
    VanishingCurvature,
)
from .expr import eval_jet, parse_expr, to_text
from .frenet import (
    FrenetApparatus,
    frenet_apparatus,
    frenet_residuals,
    frenet_samples,
    special_frenet_report,
)
from .generator import (
    GeneratedCurve,
    GeneratorSpec,
    abbreviations,
    build_generated_curve,
    f_of_s,
    generated_curvatures,
    intermediates,
    verify_generator_relation,
)
from .jets import Jet
from .lorentz import CausalClass, Frame4, causal_character, minkowski_inner, minkowski_norm
from .mannheim import (
    MannheimCheck,
    MatePairReport,
    build_mate,
    estimate_beta,
    mannheim_residual,
    mate_curvatures_closed_form,
    mate_speed,
    mate_tangent,
    verify_mannheim_pair,
)

__version__ = "0.1.0"
