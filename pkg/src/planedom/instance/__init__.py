from planedom.instance.codec import InstanceDecodeError, decode, encode
from planedom.instance.layout import (
    GenerationError,
    GenParams,
    LayoutError,
    build_layout,
    enumerate_family,
    generate,
    is_realizable,
    make_instance,
)
from planedom.instance.model import (
    Assignment,
    Clause,
    Layout,
    Pm3SatInstance,
    check_pair_condition,
    evaluate,
    validate,
)
from planedom.instance.normalize import ForcedUnsat, Normalized, normalize
from planedom.instance.sat import ResourceLimitError, solve_dpll, solve_exhaustive, solve_sat

__all__ = [
    "Assignment",
    "Clause",
    "ForcedUnsat",
    "GenParams",
    "GenerationError",
    "InstanceDecodeError",
    "Layout",
    "LayoutError",
    "Normalized",
    "Pm3SatInstance",
    "ResourceLimitError",
    "build_layout",
    "check_pair_condition",
    "decode",
    "encode",
    "enumerate_family",
    "evaluate",
    "generate",
    "is_realizable",
    "make_instance",
    "normalize",
    "solve_dpll",
    "solve_exhaustive",
    "solve_sat",
    "validate",
]
