"""Line-oriented network files.

::

    semantics: neighbour | partition     (default neighbour)
    length: <m>                          (default 1)
    vars: x y z ...
    x y : <rel> <rel> ... <rel>          # exactly m relation tokens

Unlisted pairs are universal.  ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .network import Network
from .projections import Semantics, SemanticsError, SemanticsKind
from .relations import UNIVERSAL, RelationSyntaxError, format_relation, parse_relation


class NetworkFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


_KINDS = {k.value: k for k in SemanticsKind}


def parse_network(text: str) -> Network:
    header: dict[str, str] = {}
    variables: list[str] | None = None
    net: Network | None = None
    seen: set[frozenset[str]] = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if sep and key.lower() in ("semantics", "length", "vars"):
            key = key.lower()
            if key in header:
                raise NetworkFormatError(f"duplicate {key!r} line", lineno)
            if net is not None:
                raise NetworkFormatError(f"{key!r} after constraint lines", lineno)
            header[key] = rest.strip()
            if key == "vars":
                variables = rest.split()
                if len(set(variables)) != len(variables):
                    raise NetworkFormatError("duplicate variable name", lineno)
            continue
        if not sep:
            raise NetworkFormatError(f"cannot parse {raw.strip()!r}", lineno)

        if net is None:
            if variables is None:
                raise NetworkFormatError("constraint before 'vars' line", lineno)
            net = Network(variables, _semantics(header, lineno))
        names = key.split()
        if len(names) != 2:
            raise NetworkFormatError("expected 'x y : rel ...'", lineno)
        x, y = names
        for v in (x, y):
            if v not in net.index:
                raise NetworkFormatError(f"unknown variable {v!r}", lineno)
        if x == y:
            raise NetworkFormatError("self-relations are implicit", lineno)
        if frozenset((x, y)) in seen:
            raise NetworkFormatError(f"duplicate pair {x} {y}", lineno)
        seen.add(frozenset((x, y)))
        tokens = rest.split()
        if len(tokens) != net.sem.m:
            raise NetworkFormatError(
                f"{len(tokens)} relations given, length is {net.sem.m}", lineno)
        try:
            parts = [parse_relation(t) for t in tokens]
        except RelationSyntaxError as exc:
            raise NetworkFormatError(str(exc), lineno) from None
        net.set(x, y, parts)

    if net is None:
        if variables is None:
            raise NetworkFormatError("missing 'vars' line")
        net = Network(variables, _semantics(header, None))
    return net


def _semantics(header: dict[str, str], lineno: int | None) -> Semantics:
    kind_name = header.get("semantics", "neighbour").lower()
    if kind_name not in _KINDS:
        raise NetworkFormatError(f"unknown semantics {kind_name!r}", lineno)
    try:
        m = int(header.get("length", "1"))
    except ValueError:
        raise NetworkFormatError(f"bad length {header['length']!r}", lineno) from None
    try:
        return Semantics(_KINDS[kind_name], m)
    except SemanticsError as exc:
        raise NetworkFormatError(str(exc), lineno) from None


def read_network(path: str | Path) -> Network:
    return parse_network(Path(path).read_text(encoding="utf-8"))


def format_network(net: Network, *, include_universal: bool = False) -> str:
    """Canonical text: pairs oriented and sorted by variable name."""
    lines = [f"semantics: {net.sem.name}", f"length: {net.sem.m}",
             "vars: " + " ".join(net.vars)]
    full = (UNIVERSAL,) * net.sem.m
    for x, y in sorted(tuple(sorted(p)) for p in net.pairs()):
        parts = net.rel[net.index[x]][net.index[y]]
        if parts == full and not include_universal:
            continue
        lines.append(f"{x} {y} : " + " ".join(format_relation(r) for r in parts))
    return "\n".join(lines) + "\n"
