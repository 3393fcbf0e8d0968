"""Executable checks of the finite claims behind the engine.

Covers the six-variable incompleteness witness (its exact closure, its
consistency, the absence of closed scenarios, the EQ-refinement argument and
the length-2 derivative), the exhaustive fragment suites, and the two worked
projection-closure examples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .fragments import Fragment, FragmentSpec, H_S_refine
from .network import (
    Network, algebraic_closure, find_closed_scenario, is_algebraically_consistent,
)
from .projections import ProjectionKind, Semantics, SemanticsKind, project
from .relations import (
    ALL_RELATIONS, DC, DEFAULT_ALGEBRA, EC, EQ, NTPP, NTPPI, PO, TPP, TPPI, UNIVERSAL,
    Rcc8Algebra, converse, format_relation, in_C8, in_H8, in_Hntpp, in_N, in_Q8, members,
)
from .sequences import SeqRelation, close_parts

B = UNIVERSAL
PO_TPP_TPPI_EQ = PO | TPP | TPPI | EQ

# (x, y, 1-based index, relation)
COUNTEREXAMPLE_CONSTRAINTS = (
    ("x", "y", 1, NTPP), ("x", "y", 4, NTPPI),
    ("x", "z", 1, NTPP),
    ("w", "z", 3, NTPP),
    ("y", "z", 1, TPPI), ("y", "z", 2, PO_TPP_TPPI_EQ),
    ("w", "x", 1, TPPI), ("w", "x", 2, PO_TPP_TPPI_EQ),
    ("w", "y", 2, PO | TPP),
    ("x", "u", 4, NTPPI),
    ("v", "u", 2, NTPPI),
    ("y", "u", 4, TPP), ("y", "u", 3, PO_TPP_TPPI_EQ),
    ("v", "x", 4, TPP), ("v", "x", 3, PO_TPP_TPPI_EQ),
    ("v", "y", 3, PO | TPPI),
)

# expected closure, one orientation per pair
EXPECTED_CLOSURE = {
    ("x", "y"): (NTPP, TPP | NTPP | EQ, TPPI | NTPPI | EQ, NTPPI),
    ("y", "z"): (TPPI, PO | TPPI | EQ, B & ~(DC | EC), B & ~DC),
    ("x", "z"): (NTPP, TPP | NTPP | EQ, B & ~(DC | EC), B & ~(DC | EC)),
    ("w", "x"): (TPPI, PO | TPPI | EQ, B & ~(DC | NTPPI), B),
    ("w", "y"): (PO | TPP | NTPP, PO | TPP, B & ~(DC | NTPPI), B),
    ("w", "z"): (PO | TPP | NTPP, TPP | NTPP | EQ, NTPP, TPP | NTPP | EQ),
    ("u", "x"): (B & ~DC, B & ~(DC | EC), TPP | NTPP | EQ, NTPP),
    ("u", "y"): (B & ~(DC | EC), B & ~(DC | EC), PO | TPPI | EQ, TPPI),
    ("u", "z"): (B & ~(DC | EC), B & ~(DC | EC), B & ~DC, B & ~DC),
    ("u", "w"): (B & ~DC, B, B, B),
    ("v", "x"): (B & ~DC, B & ~(DC | EC | NTPP), PO | TPP | EQ, TPP),
    ("v", "y"): (B & ~(DC | EC), B & ~(DC | EC | NTPP), PO | TPPI, EC | PO | TPPI | NTPPI),
    ("v", "z"): (B & ~(DC | EC), B & ~(DC | EC), B & ~DC, B),
    ("v", "w"): (B & ~DC, B, B, B),
    ("v", "u"): (TPPI | NTPPI | EQ, NTPPI, TPPI | NTPPI | EQ, PO | TPPI | NTPPI),
}


def build_counterexample_network(sem: Semantics | None = None) -> Network:
    net = Network("uvwxyz", sem or Semantics.neighbour(4))
    for x, y, i, r in COUNTEREXAMPLE_CONSTRAINTS:
        net.constrain(x, y, i, r)
    return net


def derived_m2_network(closed: Network) -> Network:
    """Length-2 network whose slices are slices 2 and 3 of ``closed``."""
    out = Network(closed.vars, closed.sem.with_length(2))
    for x, y in closed.pairs():
        parts = closed.get(x, y).parts
        out.set(x, y, (parts[1], parts[2]))
    return out


# ---------------------------------------------------------------------------
# exhaustive suites: each returns (cases checked, counterexamples)

@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def suite_hntpp_closed(algebra: Rcc8Algebra | None = None) -> SuiteResult:
    algebra = algebra or DEFAULT_ALGEBRA
    ms = members(in_Hntpp)
    res = SuiteResult("hntpp-closed", 0)
    for r in ms:
        res.cases += 1
        if not in_Hntpp(converse(r)):
            res.failures.append(("converse", r))
        for s in ms:
            res.cases += 1
            if not in_Hntpp(r & s):
                res.failures.append(("intersection", r, s))
            if not in_Hntpp(algebra.compose(r, s)):
                res.failures.append(("composition", r, s))
    return res


def suite_neighbour_swaps_q8_hntpp() -> SuiteResult:
    res = SuiteResult("neighbour-swap", 0)
    for r in members(in_Q8):
        res.cases += 1
        if not in_Hntpp(project(ProjectionKind.NEIGHBOUR, r)):
            res.failures.append(("Q8->Hntpp", r))
    for r in members(in_Hntpp):
        res.cases += 1
        if not in_Q8(project(ProjectionKind.NEIGHBOUR, r)):
            res.failures.append(("Hntpp->Q8", r))
    return res


def _refinement_suite(name: str, sem: Semantics,
                      products: tuple[tuple[Fragment, Fragment], ...]) -> SuiteResult:
    res = SuiteResult(name, 0)
    for f1, f2 in products:
        spec = FragmentSpec((f1, f2), sem)
        for r1, r2 in product(members(f1.contains), members(f2.contains)):
            parts = (r1, r2)
            if not (r1 and r2) or close_parts(parts, sem) != parts:
                continue
            res.cases += 1
            refined = H_S_refine(parts, spec)
            if not refined.is_conv_consistent():
                res.failures.append((f1.value, f2.value, parts, refined.parts))
    return res


def suite_neighbour_refinement(flipped: bool = False) -> SuiteResult:
    sem = Semantics(SemanticsKind.NEIGHBOUR_INSTANTS, 2, flipped)
    return _refinement_suite("neighbour-refinement", sem, (
        (Fragment.Q8, Fragment.Q8), (Fragment.Q8, Fragment.H8), (Fragment.H8, Fragment.Q8)))


def suite_partition_refinement(flipped: bool = False) -> SuiteResult:
    sem = Semantics(SemanticsKind.TIME_PARTITION, 2, flipped)
    return _refinement_suite("partition-refinement", sem, tuple(
        (f1, f2) for f1 in (Fragment.H8, Fragment.Q8)
        for f2 in (Fragment.H8, Fragment.Q8, Fragment.C8)))


def suite_dominance_into_fragments() -> SuiteResult:
    res = SuiteResult("dominance-into-fragments", 0)
    for r in ALL_RELATIONS:
        if in_N(r):
            continue
        res.cases += 1
        up = project(ProjectionKind.UP, r)
        down = project(ProjectionKind.DOWN, r)
        if not in_H8(up):
            res.failures.append(("up", r, up))
        if not (in_H8(down) and in_Q8(down) and in_C8(down)):
            res.failures.append(("down", r, down))
    return res


# ---------------------------------------------------------------------------
# worked projection-closure examples

NEIGHBOUR_EXAMPLE = ((TPP | NTPP | TPPI | NTPPI, PO | EQ, EC | DC), (TPP | TPPI, PO, EC))
PARTITION_EXAMPLE = ((TPP | NTPP, PO | EQ, EC | DC, DC), (TPP, PO, EC, DC))


# ---------------------------------------------------------------------------
# report

class VerificationFailure(AssertionError):
    def __init__(self, claim_id: str, detail: str):
        self.claim_id = claim_id
        self.detail = detail
        super().__init__(f"claim {claim_id}: {detail}")


@dataclass
class Claim:
    id: str
    title: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.id} {self.title}{tail}"


@dataclass
class Report:
    claims: list[Claim]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims)

    def __str__(self) -> str:
        return "\n".join(c.line() for c in self.claims)

    def raise_for_failure(self) -> None:
        for c in self.claims:
            if not c.passed:
                raise VerificationFailure(c.id, c.detail)


def _fmt(parts) -> str:
    return "(" + ", ".join(format_relation(r) for r in parts) + ")"


def _check_expected_closure(closed: Network) -> str:
    for (x, y), want in EXPECTED_CLOSURE.items():
        got = closed.get(x, y).parts
        if got != want:
            return f"{x}{y}: got {_fmt(got)}, want {_fmt(want)}"
        back = closed.get(y, x).parts
        if back != tuple(converse(r) for r in want):
            return f"{y}{x}: not the converse of {x}{y}"
    return ""


def _claim(claims: list[Claim], cid: str, title: str, fn: Callable[[], str]) -> None:
    try:
        detail = fn()
    except Exception as exc:  # a crashing claim is a failing claim
        detail = f"{type(exc).__name__}: {exc}"
    claims.append(Claim(cid, title, not detail, detail))


def verify_all(*, algebra: Rcc8Algebra | None = None,
               flip_partition_parity: bool = False) -> Report:
    """Run every claim in a fixed order; never raises on a failed claim."""
    algebra = algebra or DEFAULT_ALGEBRA
    claims: list[Claim] = []
    net = build_counterexample_network()
    closed = algebraic_closure(net, algebra=algebra)

    _claim(claims, "1", "counterexample closure matches all 15 expected relations",
           lambda: _check_expected_closure(closed))

    _claim(claims, "2", "counterexample closure is algebraically consistent",
           lambda: "" if is_algebraically_consistent(closed, algebra=algebra)
           else "closure is not algebraically consistent")

    def no_scenario() -> str:
        s = find_closed_scenario(net, algebra=algebra)
        return "" if s is None else "found a closed scenario"
    _claim(claims, "3", "counterexample has no algebraically closed scenario", no_scenario)

    def eq_refinement() -> str:
        for b in (EQ, TPP, NTPP):
            trial = closed.copy()
            trial.constrain("x", "y", 2, b)
            if not algebraic_closure(trial, algebra=algebra).trivially_unsatisfiable():
                return f"refining xy at index 2 to {format_relation(b)} stays consistent"
        for index in (2, 3):
            piece = closed.slice_network(index)
            piece.constrain("x", "y", 1, EQ)
            if not algebraic_closure(piece, algebra=algebra).trivially_unsatisfiable():
                return f"slice {index} with xy = EQ stays consistent"
        w_row = (closed.get("w", "x").parts[1] & closed.get("w", "y").parts[1]
                 & closed.get("w", "z").parts[1])
        if w_row:
            return f"w-row intersection at index 2 is {format_relation(w_row)}"
        return ""
    _claim(claims, "4", "refining xy in the middle slices closes to empty",
           eq_refinement)

    def derivative() -> str:
        small = derived_m2_network(closed)
        if not is_algebraically_consistent(small, algebra=algebra):
            return "length-2 derivative is not algebraically consistent"
        if find_closed_scenario(small, algebra=algebra) is not None:
            return "length-2 derivative has a closed scenario"
        return ""
    _claim(claims, "5", "length-2 derivative is consistent yet has no closed scenario",
           derivative)

    def suites_pass() -> str:
        suites = [suite_hntpp_closed(algebra), suite_neighbour_swaps_q8_hntpp(),
                  suite_neighbour_refinement(), suite_partition_refinement(flip_partition_parity),
                  suite_dominance_into_fragments()]
        bad = [f"{s.name}: {len(s.failures)} of {s.cases} fail, first {s.failures[0]}"
               for s in suites if not s.ok]
        return "; ".join(bad)
    _claim(claims, "6", "fragment suites (Hntpp closed, neighbour swap, refinements, dominance)",
           suites_pass)

    def worked() -> str:
        out = []
        n_sem = Semantics.neighbour(3)
        p_sem = Semantics(SemanticsKind.TIME_PARTITION, 4, flip_partition_parity)
        for sem, (given, want) in ((n_sem, NEIGHBOUR_EXAMPLE), (p_sem, PARTITION_EXAMPLE)):
            got = SeqRelation(given, sem).closure().parts
            if got != want:
                out.append(f"{sem.name}: got {_fmt(got)}, want {_fmt(want)}")
        return "; ".join(out)
    _claim(claims, "7", "worked projection-closure examples", worked)
    return Report(claims)
