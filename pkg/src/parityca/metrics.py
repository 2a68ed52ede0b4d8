"""Structural metrics: boxes, switches, domains, merges, ordered blocks.

All scanners treat the configuration as a ring and report every match,
including overlapping ones. Positions are cell indices except for
switches, whose position i names the gap between cells i and i+1.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .lattice import Configuration, is_homogeneous
from .rule import CORRECTED, build_rule_table

DOMAIN_KINDS = (
    "D12", "D34", "D56r", "D56b", "D78r", "D78b",
    "D910r", "D910b", "D910rb", "D911", "D912r", "D912b",
)

# Domains that strictly lower the switch count in one step (plus merges).
REDUCING_KINDS = frozenset({"D56r", "D78r", "D910r", "D912r"})


@dataclass(frozen=True)
class Switch:
    pos: int
    kind: str  # "r" or "b"


@dataclass(frozen=True)
class SwitchReport:
    switches: tuple[Switch, ...]
    boxes: tuple[int, ...]
    s: int


@dataclass(frozen=True)
class DomainHit:
    kind: str
    pos: int


@dataclass(frozen=True)
class OrderedBlock:
    start: int
    length: int
    maximal: bool


def find_pattern(x: Configuration, pattern: str) -> list[int]:
    """Start positions (mod n) where the '0'/'1' pattern occurs."""
    n = x.n
    return [
        p
        for p in range(n)
        if all(x.cell(p + j) == int(ch) for j, ch in enumerate(pattern))
    ]


def find_boxes(x: Configuration) -> list[int]:
    """Positions i where cells (i, i+1) read 01 preceded by 1 and followed by 00."""
    return [(p + 1) % x.n for p in find_pattern(x, "10100")]


def switches(x: Configuration) -> SwitchReport:
    """Classify every gap of the ring as a regular switch, block switch or neither.

    A block switch at i marks a box starting at i+1. A regular switch at
    i requires differing cells with neither of them belonging to a box
    pair. s is the total count; s = 0 exactly on homogeneous rings.
    """
    n = x.n
    boxes = find_boxes(x)
    box_starts = set(boxes)
    box_cells = set()
    for b in boxes:
        box_cells.add(b)
        box_cells.add((b + 1) % n)
    found = []
    for i in range(n):
        if (i + 1) % n in box_starts:
            found.append(Switch(pos=i, kind="b"))
        elif x.cell(i) != x.cell(i + 1) and i not in box_cells and (i + 1) % n not in box_cells:
            found.append(Switch(pos=i, kind="r"))
    report = SwitchReport(switches=tuple(found), boxes=tuple(sorted(boxes)), s=len(found))
    assert all((sw.pos + 1) % n in box_starts for sw in found if sw.kind == "b")
    assert all(
        sw.pos not in box_cells and (sw.pos + 1) % n not in box_cells
        for sw in found
        if sw.kind == "r"
    )
    return report


def _matches(x: Configuration, p: int, pattern: str) -> bool:
    return all(x.cell(p + j) == int(ch) for j, ch in enumerate(pattern))


def find_domains(x: Configuration) -> list[DomainHit]:
    """All domain occurrences with their refinement by trailing context.

    The base patterns 0110, 001010, 111010 and 1110110 are refined into a
    regular (r) or box (b) variant depending on whether the cells after
    them complete a box; 111010 additionally has an rb form where both a
    regular continuation and a box follow. Overlapping hits are all
    reported.
    """
    n = x.n
    hits: list[DomainHit] = []
    for p in range(n):
        if _matches(x, p, "11100"):
            hits.append(DomainHit("D12", p))
        if _matches(x, p, "00100"):
            hits.append(DomainHit("D34", p))
        if _matches(x, p, "0110"):
            kind = "D56b" if _matches(x, p + 4, "100") else "D56r"
            hits.append(DomainHit(kind, p))
        if _matches(x, p, "001010"):
            hits.append(DomainHit("D78r" if x.cell(p + 6) else "D78b", p))
        if _matches(x, p, "111010"):
            if not x.cell(p + 6):
                kind = "D910b"
            elif _matches(x, p + 7, "00"):
                kind = "D910rb"
            else:
                kind = "D910r"
            hits.append(DomainHit(kind, p))
        if _matches(x, p, "1110111"):
            hits.append(DomainHit("D911", p))
        if _matches(x, p, "1110110"):
            kind = "D912b" if _matches(x, p + 7, "100") else "D912r"
            hits.append(DomainHit(kind, p))
    return hits


def merge_events(x: Configuration, rule=None) -> int:
    """Count update sites where two blocks of 1s merge.

    A site is a 11100 or 00100 occurrence; its 00 pair flips to 11, and
    the blocks merge precisely when the cell just after the site still
    holds 1 in the image, so the image cell is what gets tested. The
    image is taken under the corrected rule unless another is given.
    """
    if rule is None:
        rule = build_rule_table(CORRECTED)
    y = engine.step(rule, x)
    count = 0
    for pattern in ("11100", "00100"):
        for p in find_pattern(x, pattern):
            if y.cell(p + 5):
                count += 1
    return count


def _is_ordered_block(x: Configuration, start: int, length: int) -> bool:
    half = length // 2
    pairs = [(x.cell(start + 2 * m), x.cell(start + 2 * m + 1)) for m in range(half)]
    if any(p == (1, 0) for p in pairs):
        return False
    if pairs[0] != (0, 1) or pairs[-1] == (0, 1):
        return False
    if pairs[-1] == (1, 1) and x.cell(start + length) != 0:
        return False
    return True


def _contains(outer: tuple[int, int], inner: tuple[int, int], n: int) -> bool:
    offset = (inner[0] - outer[0]) % n
    return offset + inner[1] <= outer[1]


def ordered_blocks(x: Configuration) -> list[OrderedBlock]:
    """Every ordered block, flagged with maximality.

    An ordered block is an even run of aligned pairs from {00, 01, 11}
    that starts with 01, does not end with 01, and whose trailing 11 (if
    any) is followed by 0. Blocks may wrap and revisit one cell, so the
    scan covers lengths up to n+1; longer candidates are provably
    impossible and scanning them is a cheap structural self-check.
    """
    n = x.n
    found: list[tuple[int, int]] = []
    for start in range(n):
        if x.cell(start) != 0 or x.cell(start + 1) != 1:
            continue
        for length in range(4, 2 * n - 1, 2):
            if _is_ordered_block(x, start, length):
                if length > n + 1:
                    raise RuntimeError(
                        f"ordered block of length {length} exceeds the {n + 1} bound"
                    )
                found.append((start, length))
    out = []
    for blk in found:
        maximal = not any(
            other[1] > blk[1] and _contains(other, blk, n) for other in found
        )
        out.append(OrderedBlock(start=blk[0], length=blk[1], maximal=maximal))
    return out


def annotate(x: Configuration) -> str:
    """Two-line rendering with numbered switch gaps and bracketed boxes."""
    report = switches(x)
    box_starts = set(report.boxes)
    cells: list[str] = []
    gap_col = {}
    for i in range(x.n):
        if i in box_starts:
            cells.append("[")
        cells.append(str(x.cell(i)))
        if (i - 1) % x.n in box_starts:
            cells.append("]")
        gap_col[i] = len(cells)
    if not report.switches:
        return "".join(cells)
    marks: list[str] = []
    for number, sw in enumerate(report.switches, start=1):
        col = max(gap_col[sw.pos], len(marks))
        marks.extend(" " * (col - len(marks)))
        marks.extend(str(number))
    return "".join(marks).rstrip() + "\n" + "".join(cells)


def report_json(x: Configuration) -> dict:
    report = switches(x)
    return {
        "config": str(x),
        "s": report.s,
        "switches": [{"pos": sw.pos, "kind": sw.kind} for sw in report.switches],
        "boxes": list(report.boxes),
        "domains": [{"kind": h.kind, "pos": h.pos} for h in find_domains(x)],
        "ordered_blocks": [
            {"start": b.start, "length": b.length, "maximal": b.maximal}
            for b in ordered_blocks(x)
        ],
    }


def homogeneous_structure_clean(x: Configuration) -> bool:
    """Sanity predicate: a homogeneous ring shows none of the plateau patterns."""
    if not is_homogeneous(x):
        raise ValueError("only meaningful for homogeneous configurations")
    if find_pattern(x, "010101"):
        return False
    if ordered_blocks(x):
        return False
    banned = {"D56b", "D910b", "D910rb", "D911", "D912b"}
    return not any(h.kind in banned for h in find_domains(x))
