"""The RCC8 relation algebra over 8-bit relation sets.

A relation is a plain ``int`` in ``0..255``; bit ``k`` stands for the basic
relation ``NAMES[k]``.  The bit order DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ
is part of the text/file contract and must not change.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

NAMES = ("DC", "EC", "PO", "TPP", "NTPP", "TPPI", "NTPPI", "EQ")

DC = 1 << 0
EC = 1 << 1
PO = 1 << 2
TPP = 1 << 3
NTPP = 1 << 4
TPPI = 1 << 5
NTPPI = 1 << 6
EQ = 1 << 7

BASICS = (DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ)
EMPTY = 0
UNIVERSAL = 0xFF
ALL_RELATIONS = range(256)

_BY_NAME = {name: bit for name, bit in zip(NAMES, BASICS)}
_BASIC_CONVERSE = {DC: DC, EC: EC, PO: PO, TPP: TPPI, NTPP: NTPPI,
                   TPPI: TPP, NTPPI: NTPP, EQ: EQ}


class TableInvalid(ValueError):
    """A composition table failed validation."""


class RelationSyntaxError(ValueError):
    pass


def basics_of(r: int) -> Iterator[int]:
    """Yield the basic relations contained in ``r``, in bit order."""
    for b in BASICS:
        if r & b:
            yield b


def is_basic(r: int) -> bool:
    return r != 0 and r & (r - 1) == 0


def size(r: int) -> int:
    return bin(r).count("1")


def union(*rs: int) -> int:
    out = 0
    for r in rs:
        out |= r
    return out


def _build_converse() -> tuple[int, ...]:
    out = []
    for r in ALL_RELATIONS:
        c = 0
        for b in basics_of(r):
            c |= _BASIC_CONVERSE[b]
        out.append(c)
    return tuple(out)


CONVERSE = _build_converse()


def converse(r: int) -> int:
    return CONVERSE[r]


# ---------------------------------------------------------------------------
# text syntax

def format_relation(r: int) -> str:
    if r == UNIVERSAL:
        return "*"
    return "{" + ",".join(NAMES[k] for k in range(8) if r >> k & 1) + "}"


def parse_relation(text: str) -> int:
    """Parse ``*``, ``{}`` or ``{TOK,...}`` (tokens are case-insensitive)."""
    s = text.strip()
    if s == "*":
        return UNIVERSAL
    if not (s.startswith("{") and s.endswith("}")):
        raise RelationSyntaxError(f"bad relation {text!r}")
    body = s[1:-1].strip()
    if not body:
        return EMPTY
    r = 0
    for tok in body.split(","):
        tok = tok.strip().upper()
        if tok not in _BY_NAME:
            raise RelationSyntaxError(f"unknown basic relation {tok!r} in {text!r}")
        r |= _BY_NAME[tok]
    return r


def rel(*names: str) -> int:
    """Build a relation from basic names, e.g. ``rel("TPP", "EQ")``."""
    r = 0
    for name in names:
        r |= _BY_NAME[name.upper()]
    return r


# ---------------------------------------------------------------------------
# composition

def _t(*names: str) -> int:
    return rel(*names) if names != ("*",) else UNIVERSAL


# Standard RCC8 weak-composition table; row = x R1 y, column = y R2 z.
STANDARD_TABLE: tuple[tuple[int, ...], ...] = (
    # DC
    (_t("*"), _t("DC", "EC", "PO", "TPP", "NTPP"), _t("DC", "EC", "PO", "TPP", "NTPP"),
     _t("DC", "EC", "PO", "TPP", "NTPP"), _t("DC", "EC", "PO", "TPP", "NTPP"),
     _t("DC"), _t("DC"), _t("DC")),
    # EC
    (_t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("DC", "EC", "PO", "TPP", "TPPI", "EQ"),
     _t("DC", "EC", "PO", "TPP", "NTPP"), _t("EC", "PO", "TPP", "NTPP"),
     _t("PO", "TPP", "NTPP"), _t("DC", "EC"), _t("DC"), _t("EC")),
    # PO
    (_t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("DC", "EC", "PO", "TPPI", "NTPPI"),
     _t("*"), _t("PO", "TPP", "NTPP"), _t("PO", "TPP", "NTPP"),
     _t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("DC", "EC", "PO", "TPPI", "NTPPI"),
     _t("PO")),
    # TPP
    (_t("DC"), _t("DC", "EC"), _t("DC", "EC", "PO", "TPP", "NTPP"), _t("TPP", "NTPP"),
     _t("NTPP"), _t("DC", "EC", "PO", "TPP", "TPPI", "EQ"),
     _t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("TPP")),
    # NTPP
    (_t("DC"), _t("DC"), _t("DC", "EC", "PO", "TPP", "NTPP"), _t("NTPP"), _t("NTPP"),
     _t("DC", "EC", "PO", "TPP", "NTPP"), _t("*"), _t("NTPP")),
    # TPPI
    (_t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("EC", "PO", "TPPI", "NTPPI"),
     _t("PO", "TPPI", "NTPPI"), _t("PO", "TPP", "TPPI", "EQ"), _t("PO", "TPP", "NTPP"),
     _t("TPPI", "NTPPI"), _t("NTPPI"), _t("TPPI")),
    # NTPPI
    (_t("DC", "EC", "PO", "TPPI", "NTPPI"), _t("PO", "TPPI", "NTPPI"),
     _t("PO", "TPPI", "NTPPI"), _t("PO", "TPPI", "NTPPI"),
     _t("PO", "TPP", "NTPP", "TPPI", "NTPPI", "EQ"), _t("NTPPI"), _t("NTPPI"),
     _t("NTPPI")),
    # EQ
    (_t("DC"), _t("EC"), _t("PO"), _t("TPP"), _t("NTPP"), _t("TPPI"), _t("NTPPI"),
     _t("EQ")),
)


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, passed, detail in self.checks if not passed]


def _compose_with(table: Sequence[Sequence[int]], r: int, s: int) -> int:
    out = 0
    for i in range(8):
        if r >> i & 1:
            row = table[i]
            for j in range(8):
                if s >> j & 1:
                    out |= row[j]
    return out


# (description, left, right, expected) anchors checked against any table.
# The first follows from TPP o TPP = TPP|NTPP; README ("Composition anchors")
# explains why the often-quoted value TPP is not used.
ANCHORS = (
    ("(TPP|EQ) o TPP", rel("TPP", "EQ"), TPP, rel("TPP", "NTPP")),
    ("DC o DC", DC, DC, UNIVERSAL),
    ("TPPI o TPP", TPPI, TPP, rel("PO", "TPP", "TPPI", "EQ")),
)


def validate_table(table: Sequence[Sequence[int]]) -> ValidationReport:
    """Check identity, converse symmetry and the anchor compositions.

    Raises ``TableInvalid`` naming the first failed check.
    """
    report = ValidationReport()
    eq = BASICS.index(EQ)
    shape_ok = len(table) == 8 and all(len(row) == 8 for row in table)
    report.checks.append(("shape", shape_ok, "" if shape_ok else "table is not 8x8"))
    if not shape_ok:
        raise TableInvalid("table is not 8x8")

    bad = [NAMES[k] for k in range(8)
           if table[eq][k] != BASICS[k] or table[k][eq] != BASICS[k]]
    report.checks.append(("identity", not bad, f"EQ row/column wrong at {bad}" if bad else ""))

    conv_bad = []
    for i, b in enumerate(BASICS):
        for j, b2 in enumerate(BASICS):
            ci = BASICS.index(converse(b2))
            cj = BASICS.index(converse(b))
            if converse(table[i][j]) != table[ci][cj]:
                conv_bad.append((NAMES[i], NAMES[j]))
    report.checks.append(("converse", not conv_bad,
                          f"asymmetric cells {conv_bad}" if conv_bad else ""))

    for name, r, s, want in ANCHORS:
        got = _compose_with(table, r, s)
        report.checks.append((name, got == want,
                              "" if got == want else
                              f"{name} = {format_relation(got)}, want {format_relation(want)}"))
    ec_got = _compose_with(table, EC, EC) & _compose_with(table, EC, NTPP)
    want = rel("PO", "TPP")
    report.checks.append(("(EC o EC) & (EC o NTPP)", ec_got == want,
                          "" if ec_got == want else f"got {format_relation(ec_got)}"))

    if not report.ok:
        name, detail = report.failures()[0]
        raise TableInvalid(f"{name}: {detail}")
    return report


class Rcc8Algebra:
    """Weak composition backed by a 256x256 lookup over a validated table.

    Pass ``validate=False`` only to build deliberately faulty algebras
    (fault-injection in the verification harness).
    """

    def __init__(self, table: Sequence[Sequence[int]] = STANDARD_TABLE, *,
                 validate: bool = True):
        if validate:
            validate_table(table)
        self.table = tuple(tuple(row) for row in table)
        flat = [0] * 65536
        # composition distributes over union: build each row from lower bits
        for r in range(1, 256):
            low = r & -r
            k = low.bit_length() - 1
            rest = r ^ low
            base_r = self.table[k]
            for s in range(1, 256):
                acc = flat[rest << 8 | s]
                for j in range(8):
                    if s >> j & 1:
                        acc |= base_r[j]
                flat[r << 8 | s] = acc
        self.flat = flat

    def compose(self, r: int, s: int) -> int:
        return self.flat[r << 8 | s]

    def compose_basic(self, b: int, b2: int) -> int:
        return self.table[b.bit_length() - 1][b2.bit_length() - 1]


DEFAULT_ALGEBRA = Rcc8Algebra()


def compose(r: int, s: int) -> int:
    return DEFAULT_ALGEBRA.flat[r << 8 | s]


# ---------------------------------------------------------------------------
# fragments (set-membership predicates, evaluated literally)

_PP = TPP | NTPP
_PPI = TPPI | NTPPI


def in_N(r: int) -> bool:
    return not (r & PO) and bool(r & _PP) and bool(r & _PPI)


_NP8_EXTRA = frozenset(r1 | EC | r2 | EQ for r1 in (EMPTY, DC) for r2 in (NTPP, NTPPI))


def in_NP8(r: int) -> bool:
    return in_N(r) or r in _NP8_EXTRA


def in_P8(r: int) -> bool:
    return not in_NP8(r)


def _contains(r: int, s: int) -> bool:
    return r & s == s


def in_H8(r: int) -> bool:
    if not in_P8(r):
        return False
    if _contains(r, NTPP | EQ) and not r & TPP:
        return False
    if _contains(r, NTPPI | EQ) and not r & TPPI:
        return False
    return True


def in_Q8(r: int) -> bool:
    if not in_P8(r):
        return False
    if r & EQ and r & (_PP | _PPI):
        return bool(r & PO)
    return True


def in_C8(r: int) -> bool:
    if not in_P8(r):
        return False
    if r & EC and r & (_PP | _PPI | EQ):
        return bool(r & PO)
    return True


def in_Hntpp(r: int) -> bool:
    """H8 restricted to relations where NTPP brings TPP and NTPPI brings TPPI."""
    if not in_H8(r):
        return False
    if r & NTPP and not r & TPP:
        return False
    if r & NTPPI and not r & TPPI:
        return False
    return True


def members(pred) -> list[int]:
    return [r for r in ALL_RELATIONS if pred(r)]


# ---------------------------------------------------------------------------
# refinements

def a_refine(b: int, r: int) -> int:
    return b if r & b else r


def _chain(order: Iterable[int]):
    order = tuple(order)

    def h(r: int) -> int:
        for b in order:
            r = a_refine(b, r)
        return r
    return h


# innermost application first
h_H8 = _chain((DC, EC, PO, TPP, TPPI))
h_C8 = _chain((DC, PO, NTPP, NTPPI, TPP, TPPI))
h_H8.__doc__ = "a_TPPI(a_TPP(a_PO(a_EC(a_DC(r)))))"
h_C8.__doc__ = "a_TPPI(a_TPP(a_NTPPI(a_NTPP(a_PO(a_DC(r))))))"
