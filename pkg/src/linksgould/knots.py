"""Knot records, DT and PD codes, and the bundled table formats.

Knot table (TSV), one record per line, ``#`` starts a comment::

    name <TAB> strands <TAB> braid_word [<TAB> dt_code [<TAB> known_symmetry]]

PD file: one knot per line, ``name X[a,b,c,d] X[...] ...``.

PD conventions: ``X[a,b,c,d]`` lists the edges at a crossing counterclockwise
starting from the incoming under-edge ``a``; the under-strand runs ``a -> c``.
The crossing is positive when the over-strand runs ``d -> b``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .braids import BraidError, BraidWord, parse_braid_word, render_braid_word

__all__ = [
    "KnotName",
    "KnotRecord",
    "PDCode",
    "InputError",
    "parse_knot_name",
    "parse_dt_code",
    "render_dt_code",
    "parse_pd_code",
    "render_pd_code",
    "pd_orientation",
    "pd_signs",
    "braid_closure_pd",
    "read_knot_table",
    "write_knot_table",
    "read_pd_file",
    "SYMMETRY_TAGS",
]

SYMMETRY_TAGS = ("chiral", "achiral", "unknown")


class InputError(ValueError):
    """Malformed knot data."""


@dataclass(frozen=True, order=True)
class KnotName:
    """Table name ``c^P_i``: crossing number, class ``A``/``N`` and index."""

    crossings: int
    cls: str
    index: int

    def __str__(self):
        return f"{self.crossings}{self.cls.lower()}{self.index}"


_NAME = re.compile(r"^K?(\d+)\s*[_^]?\s*([AaNn])\s*_?\s*(\d+)$")


def parse_knot_name(text: str) -> KnotName | None:
    """Parse ``12n17``, ``12N_17``, ``K12a341`` ...; ``None`` for free text."""
    m = _NAME.match(text.strip())
    if not m:
        return None
    return KnotName(int(m.group(1)), m.group(2).upper(), int(m.group(3)))


@dataclass(frozen=True)
class KnotRecord:
    name: str
    braid: BraidWord | None = None
    dt_code: tuple[int, ...] | None = None
    pd_code: tuple[tuple[int, int, int, int], ...] | None = None
    known_symmetry: str | None = None

    def __post_init__(self):
        if self.known_symmetry is not None and self.known_symmetry not in SYMMETRY_TAGS:
            raise InputError(f"unknown symmetry tag {self.known_symmetry!r}")

    @property
    def knot_name(self) -> KnotName | None:
        return parse_knot_name(self.name)

    @property
    def crossings(self) -> int | None:
        kn = self.knot_name
        if kn is not None:
            return kn.crossings
        if self.dt_code is not None:
            return len(self.dt_code)
        return None


# DT codes

def parse_dt_code(text: str | Iterable[int]) -> tuple[int, ...]:
    """Validate a DT code: ``c`` distinct even magnitudes in ``[2, 2c]``.

    >>> parse_dt_code("4 6 2")
    (4, 6, 2)
    """
    if isinstance(text, str):
        body = text.strip().strip("[]()")
        try:
            code = tuple(int(t) for t in re.split(r"[,\s]+", body) if t)
        except ValueError as exc:
            raise InputError(f"malformed DT code {text!r}") from exc
    else:
        code = tuple(int(x) for x in text)
    n = len(code)
    seen = set()
    for x in code:
        if x % 2:
            raise InputError(f"DT code entry {x} is odd")
        if not 2 <= abs(x) <= 2 * n:
            raise InputError(f"DT code entry {x} out of range [2, {2 * n}]")
        if abs(x) in seen:
            raise InputError(f"DT code entry {x} repeats a magnitude")
        seen.add(abs(x))
    return code


def render_dt_code(code: tuple[int, ...]) -> str:
    return " ".join(str(x) for x in code)


# PD codes

PDCode = tuple[tuple[int, int, int, int], ...]

_CROSSING = re.compile(r"X\s*\[\s*([^\]]*)\]")


def parse_pd_code(text: str | Iterable[Iterable[int]]) -> PDCode:
    """Validate a PD code given as ``X[a,b,c,d] ...`` text or nested integers.

    Every edge label must occur exactly twice and the edges must admit a
    consistent orientation (see :func:`pd_orientation`).  The empty code is
    the crossingless unknot.
    """
    if isinstance(text, str):
        rest = _CROSSING.sub("", text)
        if rest.strip(" \t\n,;[]"):
            raise InputError(f"unexpected text in PD code: {rest.strip()!r}")
        crossings = []
        for m in _CROSSING.finditer(text):
            try:
                labels = [int(t) for t in re.split(r"[,\s]+", m.group(1).strip()) if t]
            except ValueError as exc:
                raise InputError(f"malformed crossing X[{m.group(1)}]") from exc
            crossings.append(labels)
    else:
        crossings = [list(c) for c in text]
    pd = []
    for c in crossings:
        if len(c) != 4:
            raise InputError(f"crossing {c} does not have 4 edges")
        pd.append(tuple(int(x) for x in c))
    pd = tuple(pd)
    counts: dict[int, int] = {}
    for c in pd:
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    bad = sorted(x for x, k in counts.items() if k != 2)
    if bad:
        raise InputError(f"edge label {bad[0]} used {counts[bad[0]]} time(s), expected 2")
    if pd:
        pd_orientation(pd)
    return pd


def render_pd_code(pd: PDCode) -> str:
    return " ".join("X[" + ",".join(str(x) for x in c) + "]" for c in pd)


def pd_orientation(pd: PDCode) -> list[tuple[int, int]]:
    """Orient the over-strands: returns ``(in_slot, out_slot)`` per crossing.

    Under-strands run slot 0 -> slot 2.  Over-strand directions are propagated
    along edges (each edge has one head and one tail); strands never passing
    under anything fall back to consecutive-label order.
    """
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, c in enumerate(pd):
        for k, x in enumerate(c):
            slots.setdefault(x, []).append((ci, k))
    # state[(ci, k)] = True when the edge enters crossing ci at slot k
    state: dict[tuple[int, int], bool] = {}
    stack = []

    def assign(slot, entering):
        if slot in state:
            if state[slot] != entering:
                raise InputError("PD code has no consistent orientation")
            return
        state[slot] = entering
        stack.append(slot)

    for ci in range(len(pd)):
        assign((ci, 0), True)
        assign((ci, 2), False)
    while True:
        while stack:
            ci, k = stack.pop()
            x = pd[ci][k]
            ends = slots[x]
            other = ends[1] if ends[0] == (ci, k) else ends[0]
            if other == (ci, k):
                raise InputError(f"edge {x} is a loop at one slot")
            assign(other, not state[(ci, k)])
            if k in (1, 3):
                assign((ci, 4 - k), not state[(ci, k)])
        undecided = [ci for ci in range(len(pd)) if (ci, 1) not in state]
        if not undecided:
            break
        ci = undecided[0]
        b, d = pd[ci][1], pd[ci][3]
        assign((ci, 1), d == b + 1 or (b > d + 1))
        assign((ci, 3), not state[(ci, 1)])
    return [(1, 3) if state[(ci, 1)] else (3, 1) for ci in range(len(pd))]


def pd_signs(pd: PDCode) -> list[int]:
    """Crossing signs: +1 when the over-strand runs ``d -> b``."""
    return [1 if o == (3, 1) else -1 for o in pd_orientation(pd)]


def braid_closure_pd(b: BraidWord) -> PDCode:
    """PD code of the closed braid diagram, strands running downward.

    A positive letter puts the left strand under; the returning arcs pass
    to the right of the braid.
    """
    s = b.strands
    if not b.letters:
        if s == 1:
            return ()
        raise InputError("closure of an empty braid on several strands is a split link")
    cur = list(range(1, s + 1))
    top = s
    pd = []
    for x in b.letters:
        g = abs(x)
        left, right = top + 1, top + 2
        top += 2
        if x > 0:
            pd.append([cur[g - 1], left, right, cur[g]])
        else:
            pd.append([cur[g], cur[g - 1], left, right])
        cur[g - 1], cur[g] = left, right
    if any(c == k + 1 for k, c in enumerate(cur)):
        raise InputError("a strand of the braid has no crossings")
    rename = {c: k + 1 for k, c in enumerate(cur)}
    return tuple(tuple(rename.get(x, x) for x in c) for c in pd)


# table files

def _split_fields(line: str) -> list[str]:
    return [f.strip() for f in line.rstrip("\n").split("\t")]


def read_knot_table(path: str | Path, strict: bool = True) -> list[KnotRecord | tuple[str, str]]:
    """Read a knot table.

    With ``strict=False`` malformed rows are returned as ``(name, message)``
    pairs instead of raising, so batch runs can report them.
    """
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        fields = _split_fields(body)
        name = fields[0]
        try:
            if len(fields) < 3:
                raise InputError("expected name, strands and braid word")
            strands = int(fields[1]) if fields[1] else None
            braid = parse_braid_word(fields[2], strands)
            dt = parse_dt_code(fields[3]) if len(fields) > 3 and fields[3] else None
            sym = fields[4] if len(fields) > 4 and fields[4] else None
            out.append(KnotRecord(name, braid=braid, dt_code=dt, known_symmetry=sym))
        except (InputError, BraidError, ValueError) as exc:
            if strict:
                raise InputError(f"{path}:{lineno}: {exc}") from exc
            out.append((name, str(exc)))
    return out


def write_knot_table(records: Iterable[KnotRecord], path: str | Path, header: str = "") -> None:
    lines = [f"# {h}" for h in header.splitlines()] if header else []
    for r in records:
        fields = [r.name, str(r.braid.strands), render_braid_word(r.braid),
                  render_dt_code(r.dt_code) if r.dt_code else "", r.known_symmetry or ""]
        lines.append("\t".join(fields).rstrip("\t"))
    Path(path).write_text("\n".join(lines) + "\n")


def read_pd_file(path: str | Path) -> list[KnotRecord]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        name, _, rest = body.partition(" ")
        try:
            out.append(KnotRecord(name, pd_code=parse_pd_code(rest)))
        except InputError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from exc
    return out
