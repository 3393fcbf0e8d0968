"""Projection operators between time indices and their wiring per semantics.

Three table-driven projections ship: the neighbourhood projection for
sequences sampled at neighbouring instants, and the two dominance
projections for sequences over a partition of time into instants and open
intervals.  Only six rows of each are tabulated; the TPPI/NTPPI rows follow
from ``proj(converse(r)) == converse(proj(r))``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .relations import (
    ALL_RELATIONS, BASICS, DC, EC, EQ, NTPP, NTPPI, PO, TPP, TPPI,
    UNIVERSAL, basics_of, converse,
)


class ProjectionKind(enum.Enum):
    NEIGHBOUR = "neighbour"
    UP = "up"            # interval -> bounding instants
    DOWN = "down"        # instant -> adjacent open interval
    UNIVERSAL = "universal"


class SemanticsKind(enum.Enum):
    NEIGHBOUR_INSTANTS = "neighbour"
    TIME_PARTITION = "partition"


class IndexOutOfRange(ValueError):
    pass


class SemanticsError(ValueError):
    pass


_NEIGHBOUR_ROWS = {
    DC: DC | EC,
    EC: DC | EC | PO,
    PO: EC | PO | TPP | TPPI | EQ,
    TPP: PO | TPP | NTPP | EQ,
    NTPP: TPP | NTPP | EQ,
    EQ: PO | TPP | NTPP | TPPI | NTPPI | EQ,
}

_UP_ROWS = {
    DC: DC | EC,
    EC: EC,
    PO: EC | PO | TPP | TPPI | EQ,
    TPP: TPP | EQ,
    NTPP: NTPP | TPP | EQ,
    EQ: EQ,
}

_DOWN_ROWS = {
    DC: DC,
    EC: DC | EC | PO,
    PO: PO,
    TPP: PO | TPP | NTPP,
    NTPP: NTPP,
    EQ: UNIVERSAL & ~(DC | EC),
}


def _complete_rows(rows: dict[int, int]) -> dict[int, int]:
    full = dict(rows)
    for b in (TPPI, NTPPI):
        full[b] = converse(rows[converse(b)])
    assert set(full) == set(BASICS)
    return full


def _lift(rows: dict[int, int]) -> tuple[int, ...]:
    out = []
    for r in ALL_RELATIONS:
        acc = 0
        for b in basics_of(r):
            acc |= rows[b]
        out.append(acc)
    return tuple(out)


BASIC_ROWS = {
    ProjectionKind.NEIGHBOUR: _complete_rows(_NEIGHBOUR_ROWS),
    ProjectionKind.UP: _complete_rows(_UP_ROWS),
    ProjectionKind.DOWN: _complete_rows(_DOWN_ROWS),
    ProjectionKind.UNIVERSAL: {b: UNIVERSAL for b in BASICS},
}

# 256-entry lookup per kind
TABLES = {kind: _lift(rows) for kind, rows in BASIC_ROWS.items()}


def project(kind: ProjectionKind, r: int) -> int:
    return TABLES[kind][r]


@dataclass(frozen=True)
class Semantics:
    """Sequence length plus the rule choosing a projection for index pairs.

    Indices are 1-based.  Under the time-partition semantics odd positions
    are instants and even positions open intervals; ``flipped`` swaps the
    up/down wiring and exists only for fault injection.
    """

    kind: SemanticsKind
    m: int
    flipped: bool = False

    def __post_init__(self):
        if self.m < 1:
            raise SemanticsError(f"sequence length must be positive, got {self.m}")
        if self.kind is SemanticsKind.TIME_PARTITION and self.m % 2:
            raise SemanticsError(f"partition semantics needs an even length, got {self.m}")

    @classmethod
    def neighbour(cls, m: int) -> "Semantics":
        return cls(SemanticsKind.NEIGHBOUR_INSTANTS, m)

    @classmethod
    def partition(cls, m: int) -> "Semantics":
        return cls(SemanticsKind.TIME_PARTITION, m)

    def with_length(self, m: int) -> "Semantics":
        return Semantics(self.kind, m, self.flipped)

    @property
    def name(self) -> str:
        return self.kind.value

    def adjacency_projection(self, i: int, j: int) -> ProjectionKind:
        """Projection carrying constraints from index ``i`` to index ``j``."""
        if not (1 <= i <= self.m and 1 <= j <= self.m) or i == j:
            raise IndexOutOfRange(f"bad index pair ({i}, {j}) for m={self.m}")
        if abs(i - j) != 1:
            return ProjectionKind.UNIVERSAL
        if self.kind is SemanticsKind.NEIGHBOUR_INSTANTS:
            return ProjectionKind.NEIGHBOUR
        from_interval = i % 2 == 0
        if self.flipped:
            from_interval = not from_interval
        return ProjectionKind.UP if from_interval else ProjectionKind.DOWN

    def forward_table(self, i: int) -> tuple[int, ...]:
        """Lookup table of the projection from ``i`` to ``i + 1`` (1-based)."""
        return TABLES[self.adjacency_projection(i, i + 1)]

    def backward_table(self, i: int) -> tuple[int, ...]:
        """Lookup table of the projection from ``i + 1`` back to ``i``."""
        return TABLES[self.adjacency_projection(i + 1, i)]


def adjacency_projection(sem: Semantics, i: int, j: int) -> ProjectionKind:
    return sem.adjacency_projection(i, j)


def is_instant(sem: Semantics, i: int) -> bool:
    """True when 1-based position ``i`` denotes an instant."""
    return sem.kind is SemanticsKind.NEIGHBOUR_INSTANTS or i % 2 == 1


