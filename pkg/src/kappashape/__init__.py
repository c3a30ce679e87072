"""Smooth one-parameter families of shapes built from ordered landmarks."""

__version__ = "0.1.0"

from ._validation import DomainError
from .kernels import b_exact, b_kappa, b_kappa_row_sum, log_b_kappa, pi_kappa
from .shape import (
    EvalResult,
    KappaFamily,
    LandmarkSet,
    Quality,
    RecoveryError,
    SampledCurve,
    Topology,
    centroid,
    eval_closed,
    eval_open,
    kernel_weights,
    recover_landmark,
    sample,
    transform,
)
from .scene import Scene, SceneMember, SceneType, eval_scene, recover_member
from .generators import GeneratorKind, GeneratorSpec, reference_generators
from .geometry import (
    ConvexHull2D,
    CrossingReport,
    contains_2d,
    crossing_sweep,
    hull_2d,
    projected_crossings,
    weight_certificate_contains,
)
from .estimators import KappaCurve, KappaSmoother

__all__ = [
    "__version__",
    "DomainError",
    "b_exact", "b_kappa", "b_kappa_row_sum", "log_b_kappa", "pi_kappa",
    "EvalResult", "KappaFamily", "LandmarkSet", "Quality", "RecoveryError", "SampledCurve",
    "Topology", "centroid", "eval_closed", "eval_open", "kernel_weights", "recover_landmark",
    "sample", "transform",
    "Scene", "SceneMember", "SceneType", "eval_scene", "recover_member",
    "GeneratorKind", "GeneratorSpec", "reference_generators",
    "ConvexHull2D", "CrossingReport", "contains_2d", "crossing_sweep", "hull_2d",
    "projected_crossings", "weight_certificate_contains",
    "KappaCurve", "KappaSmoother",
]
