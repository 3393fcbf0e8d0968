"""Qualitative reasoning over temporal sequences of RCC8 relations."""

from .fileformat import format_network, parse_network, read_network
from .fragments import (
    Decision, Fragment, FragmentReport, FragmentSpec, H_S_refine, Verdict, classify,
    decide_tractable,
)
from .network import (
    InstanceTooLarge, Network, algebraic_closure, brute_force_scenarios,
    find_closed_scenario, is_algebraically_closed, is_algebraically_consistent,
)
from .planner import InfeasibleEndpoints, VariableMismatch, plan
from .projections import ProjectionKind, Semantics, SemanticsKind, project
from .sequences import SeqRelation, projection_closure
from .verify import build_counterexample_network, verify_all

__version__ = "0.1.0"

__all__ = [
    "format_network",
    "parse_network",
    "read_network",
    "Decision",
    "Fragment",
    "FragmentReport",
    "FragmentSpec",
    "H_S_refine",
    "Verdict",
    "classify",
    "decide_tractable",
    "InstanceTooLarge",
    "Network",
    "algebraic_closure",
    "brute_force_scenarios",
    "find_closed_scenario",
    "is_algebraically_closed",
    "is_algebraically_consistent",
    "InfeasibleEndpoints",
    "VariableMismatch",
    "plan",
    "ProjectionKind",
    "Semantics",
    "SemanticsKind",
    "project",
    "SeqRelation",
    "projection_closure",
    "build_counterexample_network",
    "verify_all",
]
