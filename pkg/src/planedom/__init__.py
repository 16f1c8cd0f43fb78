"""Gadget reductions to (power) domination on plane triangulations, with exact checkers.

Builds the gadget reductions from planar monotone 3-SAT, triangulates them
without touching a protected vertex set, and checks the resulting
threshold claims with exact solvers.
"""

from planedom.planegraph import PlaneGraph
from planedom.report import VerificationReport
from planedom.solvers import (
    closed_neighborhood,
    gamma1_step,
    is_dominating,
    is_power_dominating,
    min_dominating,
    min_power_dominating,
    power_closure,
    s1,
    two_step_saturation,
)
from planedom.workbench import run_dom_pipeline, run_pdom_pipeline

__version__ = "0.1.0"

__all__ = [
    "PlaneGraph",
    "VerificationReport",
    "closed_neighborhood",
    "gamma1_step",
    "is_dominating",
    "is_power_dominating",
    "min_dominating",
    "min_power_dominating",
    "power_closure",
    "run_dom_pipeline",
    "run_pdom_pipeline",
    "s1",
    "two_step_saturation",
]
