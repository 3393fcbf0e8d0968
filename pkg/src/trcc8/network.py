"""Constraint networks over sequence relations.

Relations are stored per ordered pair as raw int tuples; ``rel[x][y]`` and
``rel[y][x]`` are kept converse to each other by every mutator.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .projections import Semantics
from .relations import (
    DEFAULT_ALGEBRA, UNIVERSAL, CONVERSE, Rcc8Algebra, basics_of, h_C8, h_H8,
    in_C8, in_H8, in_Q8,
)
from .sequences import SeqRelation, basic_tuples, close_parts, count_basic_tuples


class InstanceTooLarge(ValueError):
    pass


class UnknownVariable(KeyError):
    pass


def _conv(t: Sequence[int]) -> tuple[int, ...]:
    return tuple(CONVERSE[r] for r in t)


class Network:
    """Variables, a semantics, and a converse-symmetric pair -> relation map.

    Pairs that were never constrained hold the universal tuple.
    """

    def __init__(self, variables: Iterable[str], sem: Semantics):
        self.vars = list(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        self.sem = sem
        self.index = {v: k for k, v in enumerate(self.vars)}
        n = len(self.vars)
        full = (UNIVERSAL,) * sem.m
        self.rel: list[list[tuple[int, ...] | None]] = [
            [None if a == b else full for b in range(n)] for a in range(n)]

    # -- access -----------------------------------------------------------

    def _ix(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    @property
    def n(self) -> int:
        return len(self.vars)

    def get(self, x: str, y: str) -> SeqRelation:
        return SeqRelation(self.rel[self._ix(x)][self._ix(y)], self.sem)

    def __getitem__(self, pair: tuple[str, str]) -> SeqRelation:
        return self.get(*pair)

    def set(self, x: str, y: str, value: SeqRelation | Sequence[int]) -> None:
        parts = value.parts if isinstance(value, SeqRelation) else tuple(value)
        if len(parts) != self.sem.m:
            raise ValueError(f"expected {self.sem.m} components, got {len(parts)}")
        a, b = self._ix(x), self._ix(y)
        if a == b:
            raise ValueError("self-relations are implicit")
        self.rel[a][b] = tuple(parts)
        self.rel[b][a] = _conv(parts)

    def constrain(self, x: str, y: str, index: int, r: int) -> None:
        """Intersect component ``index`` (1-based) of ``rel(x, y)`` with ``r``."""
        parts = list(self.rel[self._ix(x)][self._ix(y)])
        parts[index - 1] &= r
        self.set(x, y, parts)

    def pairs(self) -> Iterator[tuple[str, str]]:
        """Unordered pairs as (x, y) with x declared before y."""
        for a in range(self.n):
            for b in range(a + 1, self.n):
                yield self.vars[a], self.vars[b]

    def copy(self) -> "Network":
        out = Network.__new__(Network)
        out.vars = list(self.vars)
        out.sem = self.sem
        out.index = dict(self.index)
        out.rel = [row[:] for row in self.rel]
        return out

    def with_rel(self, rel: list[list]) -> "Network":
        out = self.copy()
        out.rel = [row[:] for row in rel]
        return out

    def slice(self, i: int) -> dict[tuple[str, str], int]:
        """The classical network at 1-based index ``i``."""
        return {(x, y): self.rel[a][b][i - 1]
                for a, x in enumerate(self.vars) for b, y in enumerate(self.vars)
                if a != b}

    def slice_network(self, i: int) -> "Network":
        """Slice ``i`` as a classical (length-1) network."""
        out = Network(self.vars, Semantics.neighbour(1))
        for a in range(self.n):
            for b in range(self.n):
                if a != b:
                    out.rel[a][b] = (self.rel[a][b][i - 1],)
        return out

    # -- predicates ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (self.vars == other.vars and self.sem == other.sem
                and self.rel == other.rel)

    def refines(self, other: "Network") -> bool:
        for a in range(self.n):
            for b in range(self.n):
                if a != b and any(p & ~q for p, q in zip(self.rel[a][b], other.rel[a][b])):
                    return False
        return True

    def trivially_unsatisfiable(self) -> bool:
        return any(0 in self.rel[a][b]
                   for a in range(self.n) for b in range(a + 1, self.n))

    def is_scenario(self) -> bool:
        return all(r and r & (r - 1) == 0
                   for a in range(self.n) for b in range(a + 1, self.n)
                   for r in self.rel[a][b])

    def is_converse_symmetric(self) -> bool:
        return all(self.rel[b][a] == _conv(self.rel[a][b])
                   for a in range(self.n) for b in range(a + 1, self.n))

    def __repr__(self) -> str:
        return f"Network(vars={self.vars!r}, sem={self.sem.name}/{self.sem.m})"


# ---------------------------------------------------------------------------
# algebraic closure

def _propagate(rel: list[list], sem: Semantics, algebra: Rcc8Algebra,
               queue: Iterable[tuple[int, int]], *, stop_on_empty: bool,
               rng: random.Random | None = None) -> bool:
    """Composition tightening interleaved with projection closure.

    ``queue`` holds pairs whose relation changed. Returns False as soon as
    an empty component appears when ``stop_on_empty`` is set.
    """
    flat = algebra.flat
    n = len(rel)
    m = sem.m
    idx = range(m)
    pending = list(queue)
    queued = set(pending)
    if rng is None:
        work = deque(pending)
        pop = work.popleft
        push = work.append
    else:
        work = pending
        def pop():
            return work.pop(rng.randrange(len(work)))
        push = work.append

    def update(a: int, b: int, new: tuple[int, ...]) -> bool:
        new = close_parts(new, sem, rng)
        rel[a][b] = new
        rel[b][a] = _conv(new)
        key = (a, b) if a < b else (b, a)
        if key not in queued:
            queued.add(key)
            push(key)
        return bool(new[0])

    while work:
        x, y = pop()
        queued.discard((x, y))
        for z in range(n):
            if z == x or z == y:
                continue
            rxy = rel[x][y]
            ryz = rel[y][z]
            rxz = rel[x][z]
            new = tuple(rxz[i] & flat[rxy[i] << 8 | ryz[i]] for i in idx)
            if new != rxz and not update(x, z, new) and stop_on_empty:
                return False
            rxy = rel[x][y]
            rzx = rel[z][x]
            rzy = rel[z][y]
            new = tuple(rzy[i] & flat[rzx[i] << 8 | rxy[i]] for i in idx)
            if new != rzy and not update(z, y, new) and stop_on_empty:
                return False
    return True


def _close_all(rel: list[list], sem: Semantics, algebra: Rcc8Algebra, *,
               stop_on_empty: bool, rng: random.Random | None = None) -> bool:
    n = len(rel)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    if rng is not None:
        rng.shuffle(pairs)
    for a, b in pairs:
        t = close_parts(rel[a][b], sem, rng)
        rel[a][b] = t
        rel[b][a] = _conv(t)
        if stop_on_empty and n > 1 and not t[0]:
            return False
    return _propagate(rel, sem, algebra, pairs, stop_on_empty=stop_on_empty, rng=rng)


def algebraic_closure(net: Network, *, algebra: Rcc8Algebra | None = None,
                      rng: random.Random | None = None) -> Network:
    """The largest algebraically closed network refining ``net``.

    Runs to the true fixed point, so an inconsistent input comes back with
    empty components rather than being cut short.  ``rng`` randomizes the
    processing order (the result must not depend on it).
    """
    out = net.copy()
    _close_all(out.rel, net.sem, algebra or DEFAULT_ALGEBRA, stop_on_empty=False, rng=rng)
    return out


def is_algebraically_closed(net: Network, *, algebra: Rcc8Algebra | None = None) -> bool:
    algebra = algebra or DEFAULT_ALGEBRA
    flat = algebra.flat
    n, m = net.n, net.sem.m
    rel = net.rel
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            if close_parts(rel[a][b], net.sem) != rel[a][b]:
                return False
            for c in range(n):
                if c == a or c == b:
                    continue
                rab, rbc, rac = rel[a][b], rel[b][c], rel[a][c]
                if any(rac[i] & ~flat[rab[i] << 8 | rbc[i]] for i in range(m)):
                    return False
    return True


def is_algebraically_consistent(net: Network, *, algebra: Rcc8Algebra | None = None) -> bool:
    """Closed under composition and projection, and no empty component."""
    return not net.trivially_unsatisfiable() and is_algebraically_closed(net, algebra=algebra)


def closes_consistently(net: Network, *, algebra: Rcc8Algebra | None = None) -> bool:
    """Close a copy and report whether every component stayed nonempty."""
    rel = [row[:] for row in net.rel]
    return _close_all(rel, net.sem, algebra or DEFAULT_ALGEBRA, stop_on_empty=True)


# ---------------------------------------------------------------------------
# backtracking search for an algebraically closed scenario

def _preferred(parts: Sequence[int]) -> tuple[int, ...]:
    out = []
    for r in parts:
        if in_H8(r) or in_Q8(r):
            out.append(h_H8(r))
        elif in_C8(r):
            out.append(h_C8(r))
        else:
            out.append(h_H8(r))
    return tuple(out)


def _search(rel: list[list], sem: Semantics, algebra: Rcc8Algebra,
            stats: dict | None) -> list[list] | None:
    n = len(rel)
    best = None
    best_count = None
    for a in range(n):
        for b in range(a + 1, n):
            t = rel[a][b]
            if all(r & (r - 1) == 0 for r in t):
                continue
            c = count_basic_tuples(t, sem)
            if best_count is None or c < best_count:
                best, best_count = (a, b), c
                if c <= 1:
                    break
        if best_count is not None and best_count <= 1:
            break
    if best is None:
        return rel
    a, b = best
    candidates = list(basic_tuples(rel[a][b], sem))
    pref = _preferred(rel[a][b])
    if pref in candidates:
        candidates.remove(pref)
        candidates.insert(0, pref)
    for t in candidates:
        if stats is not None:
            stats["nodes"] = stats.get("nodes", 0) + 1
        child = [row[:] for row in rel]
        child[a][b] = t
        child[b][a] = _conv(t)
        if _propagate(child, sem, algebra, [(a, b)], stop_on_empty=True):
            found = _search(child, sem, algebra, stats)
            if found is not None:
                return found
    return None


def find_closed_scenario(net: Network, *, algebra: Rcc8Algebra | None = None,
                         stats: dict | None = None) -> Network | None:
    """An algebraically closed scenario refining ``net``, or None (UNSAT).

    Decides weak satisfiability.  Branches on whole basic tuples of the
    undecided pair with the fewest candidates, trying the refinement image
    of the current relation first, and re-closes after every choice.
    """
    algebra = algebra or DEFAULT_ALGEBRA
    if net.n < 2:
        return net.copy()
    rel = [row[:] for row in net.rel]
    if not _close_all(rel, net.sem, algebra, stop_on_empty=True):
        return None
    found = _search(rel, net.sem, algebra, stats)
    return None if found is None else net.with_rel(found)


# ---------------------------------------------------------------------------
# brute-force oracle

def brute_force_scenarios(net: Network, limit: int | None = None, *,
                          algebra: Rcc8Algebra | None = None,
                          force: bool = False) -> list[Network]:
    """Enumerate algebraically closed scenarios refining ``net``.

    Plain chronological backtracking over (pair, index) cells, index by
    index: a constraint is checked only once all of its cells are assigned,
    and nothing is ever propagated.  Meant as an independent oracle for
    small instances.
    """
    if not force and (net.n > 5 or net.sem.m > 4):
        raise InstanceTooLarge(f"{net.n} variables, m={net.sem.m}; pass force=True")
    algebra = algebra or DEFAULT_ALGEBRA
    table = algebra.table
    sem = net.sem
    n, m = net.n, sem.m
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    pid = {p: k for k, p in enumerate(pairs)}
    cells = [(k, i) for i in range(m) for k in range(len(pairs))]
    position = {cell: pos for pos, cell in enumerate(cells)}

    # basic index (0..7) of each assigned cell
    value = [[-1] * m for _ in pairs]
    conv_ix = [CONVERSE[1 << k].bit_length() - 1 for k in range(8)]

    # adj_ok[i][u][v]: basics u at index i and v at i+1 (0-based) survive
    # projection closure of the pair
    adj_ok = []
    for i in range(m - 1):
        fw, bw = sem.forward_table(i + 1), sem.backward_table(i + 1)
        adj_ok.append([[bool(fw[1 << u] >> v & 1 and bw[1 << v] >> u & 1)
                        for v in range(8)] for u in range(8)])

    # tri_ok[xy][yz][xz]: every ordering of the triangle passes the table
    tri_ok = [[[True] * 8 for _ in range(8)] for _ in range(8)]
    for xy in range(8):
        for yz in range(8):
            for xz in range(8):
                edge = {(0, 1): xy, (1, 2): yz, (0, 2): xz}
                for u, v in list(edge):
                    edge[(v, u)] = conv_ix[edge[(u, v)]]
                tri_ok[xy][yz][xz] = all(
                    table[edge[(p, q)]][edge[(q, r)]] >> edge[(p, r)] & 1
                    for p, q, r in permutations(range(3)))

    # each cell is checked against the constraints it completes
    steps: list[tuple[list, list]] = [([], []) for _ in cells]
    for k in range(len(pairs)):
        for i in range(1, m):
            steps[position[(k, i)]][0].append((k, i))
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for i in range(m):
                    ab, bc, ac = pid[(a, b)], pid[(b, c)], pid[(a, c)]
                    last = max(position[(ab, i)], position[(bc, i)], position[(ac, i)])
                    steps[last][1].append((ab, bc, ac, i))

    def ok(pos: int) -> bool:
        proj, tris = steps[pos]
        for k, i in proj:
            if not adj_ok[i - 1][value[k][i - 1]][value[k][i]]:
                return False
        for ab, bc, ac, i in tris:
            if not tri_ok[value[ab][i]][value[bc][i]][value[ac][i]]:
                return False
        return True

    domains = [[b.bit_length() - 1 for b in basics_of(net.rel[a][b][i])]
               for (k, i) in cells for (a, b) in [pairs[k]]]
    found: list[Network] = []

    def emit() -> None:
        out = net.copy()
        for k, (a, b) in enumerate(pairs):
            t = tuple(1 << value[k][i] for i in range(m))
            out.rel[a][b] = t
            out.rel[b][a] = _conv(t)
        found.append(out)

    # Only adjacent indices interact, so once index i is complete the rest of
    # the search depends on slice i alone.  Slices that led nowhere are
    # remembered and skipped when they recur.
    width = len(pairs)
    dead: set[tuple[int, ...]] = set()

    def rec(pos: int) -> bool:
        if pos == len(cells):
            emit()
            return limit is not None and len(found) >= limit
        if pos % width == 0 and pos:
            i = pos // width - 1
            key = (i, *(value[k][i] for k in range(width)))
            if key in dead:
                return False
            before = len(found)
            if extend(pos):
                return True
            if len(found) == before:
                dead.add(key)
            return False
        return extend(pos)

    def extend(pos: int) -> bool:
        k, i = cells[pos]
        for v in domains[pos]:
            value[k][i] = v
            if ok(pos):
                if rec(pos + 1):
                    return True
        value[k][i] = -1
        return False

    if limit is not None and limit <= 0:
        return []
    if n < 2:
        return [net.copy()]
    rec(0)
    return found
