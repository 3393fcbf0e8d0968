"""Plan a qualitative evolution from one RCC8 scenario to another.

The start scenario is pinned at index 1 and the goal at the last instant
(index m under neighbouring instants, index m-1 under a time partition,
whose final position is an open interval).  The constraint network applies
at every index, or per index when one is given per index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fragments import Verdict, decide_tractable
from .network import Network, find_closed_scenario
from .projections import Semantics, SemanticsKind
from .relations import Rcc8Algebra


class VariableMismatch(ValueError):
    pass


class InfeasibleEndpoints(ValueError):
    pass


@dataclass
class PlanResult:
    witness: Network | None
    method: str          # "closure" (tractable pattern) or "search"

    @property
    def sat(self) -> bool:
        return self.witness is not None


def goal_index(sem: Semantics) -> int:
    return sem.m - 1 if sem.kind is SemanticsKind.TIME_PARTITION else sem.m


def _slice_of(net: Network, i: int = 1) -> dict[tuple[str, str], int]:
    return {(x, y): net.get(x, y).parts[i - 1] for x, y in net.pairs()}


def build_plan_network(start: Network, goal: Network, steps: int,
                       kind: SemanticsKind,
                       constraints: Network | Sequence[Network] | None = None) -> Network:
    for name, net in (("start", start), ("goal", goal)):
        if net.sem.m != 1:
            raise ValueError(f"{name} must be a classical (length-1) network")
        if not net.is_scenario():
            raise ValueError(f"{name} must be a scenario (basic relations only)")
    if set(start.vars) != set(goal.vars):
        raise VariableMismatch(f"start vars {start.vars} differ from goal vars {goal.vars}")
    sem = Semantics(kind, steps)
    gi = goal_index(sem)

    per_index: list[Network | None]
    if constraints is None:
        per_index = [None] * steps
    elif isinstance(constraints, Network):
        if constraints.sem.m not in (1, steps):
            raise ValueError(f"constraints have length {constraints.sem.m}, want 1 or {steps}")
        per_index = [constraints] * steps
    else:
        per_index = list(constraints)
        if len(per_index) != steps:
            raise ValueError(f"{len(per_index)} constraint networks for {steps} steps")
    for c in per_index:
        if c is not None and set(c.vars) != set(start.vars):
            raise VariableMismatch(f"constraint vars {c.vars} differ from {start.vars}")

    def allowed(i: int, x: str, y: str) -> int:
        c = per_index[i - 1]
        if c is None:
            return 0xFF
        k = i if c.sem.m == steps else 1
        return c.get(x, y).parts[k - 1]

    for label, scen, at in (("start", start, 1), ("goal", goal, gi)):
        for x, y in scen.pairs():
            b = scen.get(x, y).parts[0]
            if not b & allowed(at, x, y):
                raise InfeasibleEndpoints(
                    f"{label} has {x} {y} outside the constraints at index {at}")

    net = Network(start.vars, sem)
    for x, y in net.pairs():
        parts = [allowed(i, x, y) for i in range(1, steps + 1)]
        parts[0] &= start.get(x, y).parts[0]
        parts[gi - 1] &= goal.get(x, y).parts[0]
        net.set(x, y, parts)
    return net


def plan(start: Network, goal: Network, steps: int, kind: SemanticsKind,
         constraints: Network | Sequence[Network] | None = None, *,
         algebra: Rcc8Algebra | None = None) -> PlanResult:
    """Find an intermediate sequence taking ``start`` to ``goal`` in ``steps`` slices."""
    net = build_plan_network(start, goal, steps, kind, constraints)
    decision = decide_tractable(net, algebra=algebra)
    if decision.verdict is Verdict.SAT:
        return PlanResult(decision.witness, "closure")
    if decision.verdict is Verdict.UNSAT:
        return PlanResult(None, "closure")
    return PlanResult(find_closed_scenario(net, algebra=algebra), "search")
