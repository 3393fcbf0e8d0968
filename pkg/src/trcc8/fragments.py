"""Per-index fragment classification, the H_S refinement, and the
closure-based decision procedure for the tractable sequence subclasses."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .network import Network, algebraic_closure, find_closed_scenario, is_algebraically_consistent
from .projections import Semantics, SemanticsKind
from .relations import (
    Rcc8Algebra, h_C8, h_H8, in_C8, in_H8, in_Hntpp, in_Q8,
)
from .sequences import SeqRelation

log = logging.getLogger(__name__)


class Fragment(enum.Enum):
    H8 = "H8"
    Q8 = "Q8"
    C8 = "C8"
    HNTPP = "Hntpp"
    FULL = "FULL"

    def contains(self, r: int) -> bool:
        return _PREDICATES[self](r)


_PREDICATES = {
    Fragment.H8: in_H8,
    Fragment.Q8: in_Q8,
    Fragment.C8: in_C8,
    Fragment.HNTPP: in_Hntpp,
    Fragment.FULL: lambda r: True,
}

# report/listing order
FRAGMENT_ORDER = (Fragment.H8, Fragment.Q8, Fragment.C8, Fragment.HNTPP, Fragment.FULL)


class Verdict(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    NOT_COVERED = "NOT_COVERED"


PROP2 = "PROP2"
PROP3_EVEN_HNTPP = "PROP3_EVEN_HNTPP"
PROP3_ODD_HNTPP = "PROP3_ODD_HNTPP"
PROP4 = "PROP4"
THEOREM1 = "THEOREM1"
# patterns under which closure alone decides weak satisfiability
DECIDING_PATTERNS = (PROP3_EVEN_HNTPP, PROP3_ODD_HNTPP, THEOREM1)


@dataclass(frozen=True)
class FragmentSpec:
    """A Cartesian product of fragments, one per index."""

    per_index: tuple[Fragment, ...]
    sem: Semantics

    def __post_init__(self):
        if len(self.per_index) != self.sem.m:
            raise ValueError("one fragment per index required")

    def conforms(self, r: SeqRelation | Sequence[int]) -> bool:
        parts = r.parts if isinstance(r, SeqRelation) else r
        return all(f.contains(x) for f, x in zip(self.per_index, parts))

    def uses_h8(self, i: int) -> bool:
        """Whether 0-based index ``i`` is refined with h_H8 (else h_C8)."""
        return self.per_index[i] in (Fragment.H8, Fragment.Q8, Fragment.HNTPP)


def H_S_refine(r: SeqRelation | Sequence[int], spec: FragmentSpec) -> SeqRelation:
    parts = r.parts if isinstance(r, SeqRelation) else tuple(r)
    out = tuple(h_H8(x) if spec.uses_h8(i) else h_C8(x) for i, x in enumerate(parts))
    return SeqRelation(out, spec.sem)


@dataclass
class FragmentReport:
    per_index: list[frozenset[Fragment]]
    patterns: list[str] = field(default_factory=list)
    specs: dict[str, FragmentSpec] = field(default_factory=dict)

    def __str__(self) -> str:
        lines = []
        for i, names in enumerate(self.per_index, 1):
            listed = " ".join(f.value for f in FRAGMENT_ORDER if f in names)
            lines.append(f"{i}: {listed}")
        lines.extend(self.patterns)
        return "\n".join(lines)

    def deciding_pattern(self) -> str | None:
        for p in DECIDING_PATTERNS:
            if p in self.patterns:
                return p
        return None


def slice_fragments(net: Network) -> list[frozenset[Fragment]]:
    out = []
    n = net.n
    for i in range(net.sem.m):
        rels = {net.rel[a][b][i] for a in range(n) for b in range(n) if a != b}
        out.append(frozenset(f for f in FRAGMENT_ORDER
                             if all(f.contains(r) for r in rels)))
    return out


def _pick(names: frozenset[Fragment], prefs: Sequence[Fragment]) -> Fragment | None:
    for f in prefs:
        if f in names:
            return f
    return None


def classify(net: Network) -> FragmentReport:
    sem = net.sem
    sets = slice_fragments(net)
    report = FragmentReport(sets)
    m = sem.m
    odd = lambda i: i % 2 == 1  # 1-based

    if sem.kind is SemanticsKind.NEIGHBOUR_INSTANTS:
        # at least one of H8/Q8 per index, never two adjacent indices that
        # only admit H8
        h_only = [Fragment.Q8 not in s and Fragment.H8 in s for s in sets]
        if (all(Fragment.Q8 in s or Fragment.H8 in s for s in sets)
                and not any(h_only[i] and h_only[i + 1] for i in range(m - 1))):
            labels = tuple(Fragment.Q8 if Fragment.Q8 in s else Fragment.H8 for s in sets)
            report.patterns.append(PROP2)
            report.specs[PROP2] = FragmentSpec(labels, sem)
        for name, hntpp_on_odd in ((PROP3_EVEN_HNTPP, False), (PROP3_ODD_HNTPP, True)):
            want = tuple(Fragment.HNTPP if odd(i) == hntpp_on_odd else Fragment.Q8
                         for i in range(1, m + 1))
            if all(f in s for f, s in zip(want, sets)):
                report.patterns.append(name)
                report.specs[name] = FragmentSpec(want, sem)
    else:
        labels4 = [_pick(s, (Fragment.H8, Fragment.Q8)) if odd(i)
                   else _pick(s, (Fragment.H8, Fragment.Q8, Fragment.C8))
                   for i, s in enumerate(sets, 1)]
        if all(labels4):
            report.patterns.append(PROP4)
            report.specs[PROP4] = FragmentSpec(tuple(labels4), sem)
        labels1 = [_pick(s, (Fragment.H8,)) if odd(i)
                   else _pick(s, (Fragment.H8, Fragment.Q8, Fragment.C8))
                   for i, s in enumerate(sets, 1)]
        if all(labels1):
            report.patterns.append(THEOREM1)
            report.specs[THEOREM1] = FragmentSpec(tuple(labels1), sem)
    return report


@dataclass
class Decision:
    verdict: Verdict
    pattern: str | None = None
    closure: Network | None = None
    witness: Network | None = None


def refine_network(net: Network, spec: FragmentSpec) -> Network:
    out = net.copy()
    for x, y in net.pairs():
        out.set(x, y, H_S_refine(net.rel[net.index[x]][net.index[y]], spec))
    return out


def decide_tractable(net: Network, *, algebra: Rcc8Algebra | None = None) -> Decision:
    """Decide weak satisfiability by closure alone when a deciding pattern applies.

    On SAT the witness is the H_S refinement of the closure, which is itself
    an algebraically closed scenario for these subclasses.
    """
    report = classify(net)
    pattern = report.deciding_pattern()
    if pattern is None:
        return Decision(Verdict.NOT_COVERED)
    closed = algebraic_closure(net, algebra=algebra)
    if closed.trivially_unsatisfiable():
        return Decision(Verdict.UNSAT, pattern, closed)
    witness = refine_network(closed, report.specs[pattern])
    if not is_algebraically_consistent(witness, algebra=algebra):
        # not expected for these subclasses; keep the answer honest anyway
        log.warning("refined closure is not closed under %s; searching instead", pattern)
        witness = find_closed_scenario(closed, algebra=algebra)
        if witness is None:
            log.error("closure-consistent network under %s has no closed scenario", pattern)
            return Decision(Verdict.UNSAT, pattern, closed)
    return Decision(Verdict.SAT, pattern, closed, witness)
