"""Batch evaluation, symmetry flags and LG-equivalence clustering.

A results file is one JSON document::

    {"schema": 1, "engine_version": ..., "invariant": "lg21",
     "representation_digest": ..., "records": [...]}

with one record per table row in input order.  A record holds either the
polynomial data (``lg``, ``canonical``, ``flags``) or an ``error`` entry.
Nothing time-dependent is written, so runs with different parallelism
produce byte-identical files.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .braids import BraidError, BraidWord, render_braid_word
from .engine import ENGINE_VERSION, EngineError, evaluate_invariant
from .knots import InputError, KnotRecord, parse_knot_name, read_knot_table
from .laurent import (LaurentPoly2, canonical_fingerprint, dot_eq, parse_poly,
                      serialize_poly, substitute_inverse)
from .representation import bundled_representation

__all__ = [
    "SCHEMA_VERSION",
    "SymmetryFlags",
    "InvariantFingerprint",
    "Clique",
    "symmetry_flags",
    "fingerprint",
    "cluster_fingerprints",
    "run_batch",
    "load_results",
    "emit_report",
    "read_clique_annotations",
    "bundled_path",
    "default_jobs",
]

SCHEMA_VERSION = 1
REPRESENTATIONS = {"lg21": "LG21", "lg11": "LG11"}

log = logging.getLogger(__name__)


def bundled_path(name: str) -> Path:
    """Path of a file shipped in ``linksgould/data``."""
    return Path(str(resources.files("linksgould").joinpath("data", name)))


def default_jobs() -> int:
    """Parallelism from ``LINKSGOULD_JOBS``, else 1."""
    text = os.environ.get("LINKSGOULD_JOBS", "")
    try:
        return max(1, int(text)) if text else 1
    except ValueError:
        raise InputError(f"LINKSGOULD_JOBS must be a positive integer, got {text!r}") from None


# symmetry flags

@dataclass(frozen=True)
class SymmetryFlags:
    p_palindromic: bool
    q_palindromic: bool
    q_parity_by_p_degree: str      # all-even | all-odd | mixed-per-block | violation
    chirality_detected: bool


def _q_parity(f: LaurentPoly2) -> str:
    blocks: dict[int, set[int]] = {}
    for ep, eq in f.raw_terms():     # doubled exponents; odd means half-integral
        blocks.setdefault(ep, set()).add((eq // 2) % 2 if eq % 2 == 0 else 2)
    parities = set()
    for ps in blocks.values():
        if len(ps) != 1 or 2 in ps:
            return "violation"
        parities |= ps
    if parities == {0}:
        return "all-even"
    if parities == {1}:
        return "all-odd"
    return "mixed-per-block"


def symmetry_flags(f: LaurentPoly2) -> SymmetryFlags:
    """Palindromicity and q-parity of an LG value.

    ``q_palindromic`` compares ``f`` with its q-inversion up to sign and
    p-inversion; ``chirality_detected`` is its negation.
    """
    p_pal = dot_eq(f, substitute_inverse(f, "p"))
    fq = substitute_inverse(f, "q")
    q_pal = dot_eq(f, fq) or dot_eq(f, substitute_inverse(fq, "p"))
    return SymmetryFlags(p_pal, q_pal, _q_parity(f), not q_pal)


# fingerprints and clustering

@dataclass(frozen=True)
class InvariantFingerprint:
    knot: str
    lg: LaurentPoly2
    canonical: LaurentPoly2
    flags: SymmetryFlags


def fingerprint(name: str, f: LaurentPoly2) -> InvariantFingerprint:
    return InvariantFingerprint(name, f, canonical_fingerprint(f), symmetry_flags(f))


@dataclass(frozen=True)
class Clique:
    members: tuple[str, ...]
    canonical: LaurentPoly2


def name_key(name: str):
    """Table order: crossing number, alternating before non-alternating, index."""
    kn = parse_knot_name(name)
    if kn is None:
        return (1, name)
    return (0, kn.crossings, kn.cls, kn.index, name)


def cluster_fingerprints(records: Iterable[InvariantFingerprint]) -> list[Clique]:
    """Groups of at least two records sharing one canonical polynomial.

    Members are in table order and cliques are ordered by their least member.
    """
    groups: dict[LaurentPoly2, list[str]] = {}
    for r in records:
        groups.setdefault(r.canonical, []).append(r.knot)
    cliques = [Clique(tuple(sorted(ms, key=name_key)), canon)
               for canon, ms in groups.items() if len(ms) > 1]
    cliques.sort(key=lambda c: name_key(c.members[0]))
    return cliques


def read_clique_annotations(path: str | Path | None = None) -> dict[frozenset, str]:
    """``{frozenset(members): kind}`` from a clique annotation file."""
    path = bundled_path("cliques.tsv") if path is None else Path(path)
    out = {}
    for line in path.read_text().splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        kind, _, members = body.partition("\t")
        out[frozenset(members.split())] = kind.strip()
    return out


# batch evaluation

def _evaluate_row(args) -> dict:
    name, row, invariant, known = args
    t0 = time.perf_counter()
    rec: dict = {"name": name}
    try:
        if isinstance(row, str):
            raise InputError(row)
        strands, letters = row
        b = BraidWord(strands, tuple(letters))
        rec.update(strands=b.strands, braid=render_braid_word(b))
        f = evaluate_invariant(b, bundled_representation(REPRESENTATIONS[invariant]))
        fp = fingerprint(name, f)
        rec.update(lg=serialize_poly(f), canonical=serialize_poly(fp.canonical),
                   flags=asdict(fp.flags))
    except (InputError, BraidError, ValueError) as exc:
        rec["error"] = {"kind": "input", "message": str(exc)}
    except (EngineError, AssertionError) as exc:
        rec["error"] = {"kind": "engine", "message": str(exc) or type(exc).__name__}
    rec["known_symmetry"] = known
    rec["volume"] = None
    return rec, time.perf_counter() - t0


def run_batch(input_path: str | Path | Sequence, invariant: str = "lg21", jobs: int | None = None,
              out_path: str | Path | None = None) -> dict:
    """Evaluate every record of a knot table; returns (and optionally writes) the results.

    ``input_path`` may also be a list of :class:`KnotRecord` objects.  Malformed
    rows and engine failures become per-record ``error`` entries.
    """
    if invariant not in REPRESENTATIONS:
        raise InputError(f"unknown invariant {invariant!r}")
    jobs = default_jobs() if jobs is None else jobs
    if jobs < 1:
        raise InputError("parallelism must be positive")
    rows = read_knot_table(input_path, strict=False) if isinstance(input_path, (str, Path)) else input_path
    tasks = []
    for r in rows:
        if isinstance(r, KnotRecord):
            payload = (r.braid.strands, r.braid.letters) if r.braid else "record has no braid"
            tasks.append((r.name, payload, invariant, r.known_symmetry))
        else:
            tasks.append((r[0], r[1], invariant, None))
    rep = bundled_representation(REPRESENTATIONS[invariant])
    results = []
    t0 = time.perf_counter()

    def collect(it):
        for k, (rec, dt) in enumerate(it, 1):
            results.append(rec)
            log.info("%s %.3fs%s", rec["name"], dt, " ERROR" if "error" in rec else "")
            if k % 100 == 0:
                log.info("%d/%d records, %.1fs", k, len(tasks), time.perf_counter() - t0)

    if jobs == 1 or len(tasks) < 2:
        collect(map(_evaluate_row, tasks))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            collect(pool.map(_evaluate_row, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    doc = {
        "schema": SCHEMA_VERSION,
        "engine_version": ENGINE_VERSION,
        "invariant": invariant,
        "representation_digest": rep.digest,
        "records": results,
    }
    if out_path is not None:
        Path(out_path).write_text(dump_results(doc))
    return doc


def dump_results(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def load_results(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read results file {path}: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION or "records" not in doc:
        raise InputError(f"{path} is not a schema-{SCHEMA_VERSION} results file")
    return doc


def fingerprints_from_results(doc: dict) -> list[InvariantFingerprint]:
    out = []
    for rec in doc["records"]:
        if "error" in rec:
            continue
        f = parse_poly(rec["lg"])
        flags = SymmetryFlags(**rec["flags"])
        out.append(InvariantFingerprint(rec["name"], f, parse_poly(rec["canonical"]), flags))
    return out


# reports

def emit_report(results: dict | str | Path, mode: str = "full",
                annotations: dict[frozenset, str] | None = None) -> tuple[str, dict]:
    """Human-readable text and a JSON-able dict for ``mode`` in symmetry, cliques, full."""
    if mode not in ("symmetry", "cliques", "full"):
        raise InputError(f"unknown report mode {mode!r}")
    doc = results if isinstance(results, dict) else load_results(results)
    fps = fingerprints_from_results(doc)
    known = {r["name"]: r.get("known_symmetry") for r in doc["records"]}
    errors = [{"name": r["name"], **r["error"]} for r in doc["records"] if "error" in r]
    lines: list[str] = []
    report: dict = {"schema": SCHEMA_VERSION, "invariant": doc.get("invariant"),
                    "records": len(doc["records"]), "errors": errors}

    if mode in ("symmetry", "full"):
        undetected = [fp.knot for fp in fps if not fp.flags.chirality_detected]
        violations = [fp.knot for fp in fps if not fp.flags.p_palindromic]
        parity = [fp.knot for fp in fps if fp.flags.q_parity_by_p_degree == "violation"]
        report["chirality_undetected"] = [
            {"name": n, "known_symmetry": known.get(n)} for n in undetected]
        report["p_palindromic_violations"] = violations
        report["q_parity_violations"] = parity
        lines.append(f"chirality undetected: {len(undetected)}")
        for n in undetected:
            lines.append(f"  {n}\t{known.get(n) or 'unknown'}")
        lines.append(f"p-palindromicity violations (engine defects): {len(violations)}")
        lines.extend(f"  {n}" for n in violations)
        lines.append(f"q-parity violations: {len(parity)}")
        lines.extend(f"  {n}" for n in parity)

    if mode in ("cliques", "full"):
        ann = read_clique_annotations() if annotations is None else annotations
        cliques = cluster_fingerprints(fps)
        report["cliques"] = [
            {"members": list(c.members), "canonical": serialize_poly(c.canonical),
             "annotation": ann.get(frozenset(c.members), "unannotated"), "volume": None}
            for c in cliques]
        lines.append(f"cliques: {len(cliques)}")
        for c in report["cliques"]:
            lines.append(f"  ({', '.join(c['members'])})\t{c['annotation']}")

    if errors:
        lines.append(f"errors: {len(errors)}")
        lines.extend(f"  {e['name']}\t{e['kind']}: {e['message']}" for e in errors)
    return "\n".join(lines) + "\n", report
