"""Braid-operator data for the LG^{2,1} and LG^{1,1} state models.

The bundled JSON files (``data/lg21.json``, ``data/lg11.json``) are produced by
``tools/derive_representation.py``.  Entries live in Z[q^±1/2, p^±1][Y] with
``Y^2 = D``; :func:`validate_representation` re-checks every identity the
engine relies on.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path

from .laurent import ExtendedPoly, LaurentPoly2, poly_from_json, poly_to_json

__all__ = [
    "RepresentationData",
    "ValidationReport",
    "RepresentationError",
    "load_representation",
    "bundled_representation",
    "validate_representation",
    "radical_free_entries",
]

Index = tuple[int, int, int, int]


class RepresentationError(ValueError):
    """Representation data fails a structural identity."""


@dataclass(frozen=True, eq=False)
class RepresentationData:
    label: str
    dim: int
    R: dict[Index, ExtendedPoly]
    R_inv: dict[Index, ExtendedPoly]
    mu: tuple[ExtendedPoly, ...]
    discriminant: LaurentPoly2
    digest: str = ""
    _validated: list = field(default_factory=list, repr=False)

    @property
    def validated(self) -> bool:
        return bool(self._validated) and self._validated[0].ok

    def to_json(self) -> dict:
        def rows(T):
            return [[*k, poly_to_json(v.base), poly_to_json(v.radical)] for k, v in sorted(T.items())]

        return {
            "label": self.label,
            "dim": self.dim,
            "discriminant": poly_to_json(self.discriminant),
            "R": rows(self.R),
            "R_inv": rows(self.R_inv),
            "mu": [[poly_to_json(m.base), poly_to_json(m.radical)] for m in self.mu],
        }


def _digest(doc: dict) -> str:
    canon = json.dumps({k: doc[k] for k in ("label", "dim", "discriminant", "R", "R_inv", "mu")},
                       sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_representation(source: str | Path | dict) -> RepresentationData:
    """Read representation data from a JSON path or an already-parsed dict."""
    doc = source if isinstance(source, dict) else json.loads(Path(source).read_text())
    try:
        dim = int(doc["dim"])
        D = poly_from_json(doc["discriminant"])
        disc = D if not D.is_zero() else None

        def ext(base, rad):
            return ExtendedPoly(poly_from_json(base), poly_from_json(rad), disc)

        def tensor(rows):
            T = {}
            for row in rows:
                o1, o2, i1, i2, base, rad = row
                key = (int(o1), int(o2), int(i1), int(i2))
                if not all(0 <= x < dim for x in key):
                    raise RepresentationError(f"index {key} out of range")
                if key in T:
                    raise RepresentationError(f"duplicate entry {key}")
                v = ext(base, rad)
                if not v.is_zero():
                    T[key] = v
            return T

        R, R_inv = tensor(doc["R"]), tensor(doc["R_inv"])
        mu = tuple(ext(b, r) for b, r in doc["mu"])
    except (KeyError, TypeError, ValueError) as exc:
        raise RepresentationError(f"malformed representation data: {exc}") from exc
    if len(mu) != dim:
        raise RepresentationError("mu must have one weight per basis vector")
    return RepresentationData(str(doc.get("label", "")), dim, R, R_inv, mu,
                              D, _digest({**doc, "label": str(doc.get("label", ""))}))


@lru_cache(maxsize=None)
def bundled_representation(label: str) -> RepresentationData:
    """The checked-in data for ``'LG21'`` or ``'LG11'``."""
    fname = {"LG21": "lg21.json", "LG11": "lg11.json"}.get(label.upper())
    if fname is None:
        raise ValueError(f"unknown representation {label!r}")
    text = resources.files("linksgould").joinpath("data", fname).read_text()
    return load_representation(json.loads(text))


# validation

@dataclass
class ValidationReport:
    label: str
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def __str__(self):
        lines = [f"representation {self.label}"]
        for name, passed, detail in self.checks:
            lines.append(f"  {'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
        return "\n".join(lines)


def _by_input(T: dict[Index, ExtendedPoly]) -> dict[tuple[int, int], list]:
    out: dict[tuple[int, int], list] = {}
    for (o1, o2, i1, i2), v in T.items():
        out.setdefault((i1, i2), []).append((o1, o2, v))
    return out


def _apply_local(vec: dict, pos: int, table: dict) -> dict:
    new: dict = {}
    for st, amp in vec.items():
        for o1, o2, v in table.get((st[pos], st[pos + 1]), ()):
            key = st[:pos] + (o1, o2) + st[pos + 2:]
            val = v * amp
            if key in new:
                val = new[key] + val
            if val.is_zero():
                new.pop(key, None)
            else:
                new[key] = val
    return new


def _compose(rep, vec, steps):
    for pos, table in steps:
        vec = _apply_local(vec, pos, table)
    return vec


def validate_representation(rep: RepresentationData) -> ValidationReport:
    """Check Yang-Baxter, two-sided inverse and both partial-trace identities exactly."""
    d = rep.dim
    one = ExtendedPoly(LaurentPoly2.constant(1), None, rep.mu[0].discriminant)
    R, Ri = _by_input(rep.R), _by_input(rep.R_inv)
    checks = []

    bad = None
    for st in product(range(d), repeat=3):
        lhs = _compose(rep, {st: one}, [(0, R), (1, R), (0, R)])
        rhs = _compose(rep, {st: one}, [(1, R), (0, R), (1, R)])
        if lhs != rhs:
            bad = st
            break
    checks.append(("Yang-Baxter", bad is None, f"fails on input {bad}" if bad else ""))

    for name, first, second in (("R*R_inv = I", Ri, R), ("R_inv*R = I", R, Ri)):
        bad = None
        for st in product(range(d), repeat=2):
            out = _compose(rep, {st: one}, [(0, first), (0, second)])
            if out != {st: one}:
                bad = st
                break
        checks.append((name, bad is None, f"fails on input {bad}" if bad else ""))

    for name, T in (("partial trace of R", rep.R), ("partial trace of R_inv", rep.R_inv)):
        bad = None
        for i, j in product(range(d), repeat=2):
            acc = ExtendedPoly(LaurentPoly2(), None, one.discriminant)
            for k in range(d):
                v = T.get((i, k, j, k))
                if v is not None:
                    acc = acc + rep.mu[k] * v
            target = one if i == j else ExtendedPoly(LaurentPoly2(), None, one.discriminant)
            if acc != target:
                bad = (i, j)
                break
        checks.append((name + " = identity", bad is None, f"fails at {bad}" if bad else ""))

    report = ValidationReport(rep.label, checks)
    rep._validated[:] = [report]
    return report


def radical_free_entries(rep: RepresentationData):
    """Re-express the operators in a diagonal gauge free of ``Y``.

    Finds a 0/1 grading ``g`` of the basis such that every entry with a
    nonzero radical part changes ``sum g`` by ±1 and every other entry
    preserves it, then rescales basis vectors by ``Y^g``.  Traces are
    unchanged.  Returns ``(R, R_inv, mu)`` with :class:`LaurentPoly2` values.
    """
    d, D = rep.dim, rep.discriminant
    items = list(rep.R.items()) + list(rep.R_inv.items())
    for g in product((0, 1), repeat=d):
        def k_of(key):
            o1, o2, i1, i2 = key
            return g[o1] + g[o2] - g[i1] - g[i2]

        ok = True
        for key, v in items:
            k = k_of(key)
            if k == 0 and not v.radical.is_zero():
                ok = False
            elif abs(k) == 1 and not v.base.is_zero():
                ok = False
            elif abs(k) > 1:
                ok = False
            if not ok:
                break
        if ok:
            break
    else:
        raise RepresentationError("no radical-free gauge exists for this data")

    def convert(T):
        out = {}
        for key, v in T.items():
            k = k_of(key)
            # entry scales by Y^(-k): Y*rad/Y = rad, Y*rad*Y = D*rad
            out[key] = v.base if k == 0 else (v.radical if k == 1 else v.radical * D)
        return out

    for m in rep.mu:
        if not m.radical.is_zero():
            raise RepresentationError("trace weights must be radical-free")
    return convert(rep.R), convert(rep.R_inv), tuple(m.base for m in rep.mu)
