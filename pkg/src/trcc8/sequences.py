"""Relations over sequences: one RCC8 relation per time index."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .projections import TABLES, Semantics
from .relations import (
    UNIVERSAL, basics_of, compose, converse, format_relation, parse_relation,
)


class LengthMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def wiring(sem: Semantics) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """(forward, backward) lookup tables; ``forward[i]`` maps 0-based i to i+1."""
    fw = tuple(TABLES[sem.adjacency_projection(i + 1, i + 2)] for i in range(sem.m - 1))
    bw = tuple(TABLES[sem.adjacency_projection(i + 2, i + 1)] for i in range(sem.m - 1))
    return fw, bw


def close_parts(parts: Sequence[int], sem: Semantics,
                rng: random.Random | None = None) -> tuple[int, ...]:
    """Projection closure on a raw tuple of relations.

    Only adjacent indices constrain each other once every component is
    nonempty; a single empty component empties the whole tuple (m > 1)
    because the universal projection of the empty relation is empty.
    """
    m = len(parts)
    if m > 1 and 0 in parts:
        return (0,) * m
    fw, bw = wiring(sem)
    p = list(parts)
    pending = list(range(m))
    queued = [True] * m
    while pending:
        if rng is None:
            i = pending.pop()
        else:
            i = pending.pop(rng.randrange(len(pending)))
        queued[i] = False
        src = p[i]
        if i + 1 < m:
            new = p[i + 1] & fw[i][src]
            if new != p[i + 1]:
                if not new:
                    return (0,) * m
                p[i + 1] = new
                if not queued[i + 1]:
                    queued[i + 1] = True
                    pending.append(i + 1)
        if i > 0:
            new = p[i - 1] & bw[i - 1][src]
            if new != p[i - 1]:
                if not new:
                    return (0,) * m
                p[i - 1] = new
                if not queued[i - 1]:
                    queued[i - 1] = True
                    pending.append(i - 1)
    return tuple(p)


def basic_tuples(parts: Sequence[int], sem: Semantics) -> Iterator[tuple[int, ...]]:
    """Every projection-consistent basic tuple refining ``parts``.

    Enumerated left to right, pruning on the adjacent-pair projection edges.
    """
    m = len(parts)
    fw, bw = wiring(sem)
    chosen: list[int] = []

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(chosen)
            return
        for b in basics_of(parts[i]):
            if i:
                prev = chosen[-1]
                if not (fw[i - 1][prev] & b and bw[i - 1][b] & prev):
                    continue
            chosen.append(b)
            yield from rec(i + 1)
            chosen.pop()

    return rec(0)


def count_basic_tuples(parts: Sequence[int], sem: Semantics) -> int:
    """Number of tuples ``basic_tuples`` would yield, by dynamic programming."""
    fw, bw = wiring(sem)
    counts = {b: 1 for b in basics_of(parts[0])}
    for i in range(1, len(parts)):
        nxt = {}
        for b in basics_of(parts[i]):
            total = 0
            for prev, c in counts.items():
                if fw[i - 1][prev] & b and bw[i - 1][b] & prev:
                    total += c
            if total:
                nxt[b] = total
        counts = nxt
    return sum(counts.values())


@dataclass(frozen=True)
class SeqRelation:
    """An m-tuple of RCC8 relations interpreted under ``sem``."""

    parts: tuple[int, ...]
    sem: Semantics

    def __post_init__(self):
        if len(self.parts) != self.sem.m:
            raise LengthMismatch(
                f"{len(self.parts)} components for a length-{self.sem.m} semantics")

    @classmethod
    def of(cls, sem: Semantics, *parts: int) -> "SeqRelation":
        return cls(tuple(parts), sem)

    @classmethod
    def universal(cls, sem: Semantics) -> "SeqRelation":
        return cls((UNIVERSAL,) * sem.m, sem)

    @classmethod
    def parse(cls, text: str, sem: Semantics) -> "SeqRelation":
        return cls(tuple(parse_relation(tok) for tok in text.split()), sem)

    def __str__(self) -> str:
        return " ".join(format_relation(r) for r in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def _check(self, other: "SeqRelation") -> None:
        if self.sem.m != other.sem.m or self.sem.kind is not other.sem.kind:
            raise LengthMismatch("operands use different semantics or lengths")

    def union(self, other: "SeqRelation") -> "SeqRelation":
        self._check(other)
        return SeqRelation(tuple(a | b for a, b in zip(self.parts, other.parts)), self.sem)

    def intersect(self, other: "SeqRelation") -> "SeqRelation":
        self._check(other)
        return SeqRelation(tuple(a & b for a, b in zip(self.parts, other.parts)), self.sem)

    def converse(self) -> "SeqRelation":
        return SeqRelation(tuple(converse(a) for a in self.parts), self.sem)

    def compose(self, other: "SeqRelation") -> "SeqRelation":
        self._check(other)
        return SeqRelation(tuple(compose(a, b) for a, b in zip(self.parts, other.parts)),
                           self.sem)

    def refines(self, other: "SeqRelation") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.parts, other.parts))

    def is_basic(self) -> bool:
        return all(r and r & (r - 1) == 0 for r in self.parts)

    def trivially_unsatisfiable(self) -> bool:
        return 0 in self.parts

    def closure(self, rng: random.Random | None = None) -> "SeqRelation":
        return SeqRelation(close_parts(self.parts, self.sem, rng), self.sem)

    def is_conv_closed(self) -> bool:
        return close_parts(self.parts, self.sem) == self.parts

    def is_conv_consistent(self) -> bool:
        return not self.trivially_unsatisfiable() and self.is_conv_closed()

    def basic_tuples(self) -> Iterator["SeqRelation"]:
        for t in basic_tuples(self.parts, self.sem):
            yield SeqRelation(t, self.sem)


def seq_union(a: SeqRelation, b: SeqRelation) -> SeqRelation:
    return a.union(b)


def seq_intersect(a: SeqRelation, b: SeqRelation) -> SeqRelation:
    return a.intersect(b)


def seq_converse(a: SeqRelation) -> SeqRelation:
    return a.converse()


def seq_compose(a: SeqRelation, b: SeqRelation) -> SeqRelation:
    return a.compose(b)


def projection_closure(r: SeqRelation, rng: random.Random | None = None) -> SeqRelation:
    return r.closure(rng)


def is_conv_consistent(r: SeqRelation) -> bool:
    return r.is_conv_consistent()
