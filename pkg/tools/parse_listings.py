"""Extract the published LG polynomial listings from a Markdown source into reference_polys.json.

Each listing is a LaTeX array whose rows read ``sign & (pbar^a + p^b) & (q-poly)``;
the first row has no p factor.  Rows are transcribed literally, so a misprinted
exponent survives into the ``printed`` entry.  Two misprints get an additional
``corrected`` entry: the 14a13107 row factor ``(pbar^8 + p^4)`` read as
``(pbar^8 + p^8)``, and the constant ``2`` of the p^8 row of the 12n90 listing
read as ``20``.  Both corrections are checked against the identity
``LG(1, p) = Delta(p^2)^2`` in the test suite.

Usage: python tools/parse_listings.py SOURCE.md src/linksgould/data/reference_polys.json
"""
from __future__ import annotations

import json
import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from linksgould.laurent import LaurentPoly2, serialize_poly  # noqa: E402

# (first line of the array, knot names sharing the listing)
LISTINGS = [
    (399, ["15n139717"]),
    (910, ["12a341", "12a627"]),
    (944, ["12n17", "12n584"]),
    (976, ["12n90", "12n135", "12n416"]),
    (1212, ["14a13107"]),
]

CORRECTIONS = {
    "14a13107": ("(\\overline{p}^{ 8} + p^{ 4})", "(\\overline{p}^{ 8} + p^{ 8})"),
    "12n90": ("86\\overline{q}^{2} + 2)", "86\\overline{q}^{2} + 20)"),
}

TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\\overline\{q\}|q)?(?:\^\{?(\d+)\}?)?")


def parse_qpoly(text: str) -> LaurentPoly2:
    text = text.replace(" ", "")
    out = LaurentPoly2()
    pos = 0
    while pos < len(text):
        m = TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse q-polynomial at {text[pos:]!r}")
        sign, coeff, var, exp = m.groups()
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        e = 0
        if var:
            e = int(exp) if exp else 1
            if var.startswith("\\overline"):
                e = -e
        out = out + LaurentPoly2.monomial(e, 0, c)
        pos = m.end()
    return out


ROW = re.compile(r"^\s*([+-]?)\s*&\s*(.*?)\s*&\s*\((.*)\)\s*(?:\\\\)?\s*$")
PFAC = re.compile(r"\(\\overline\{p\}\^\{?\s*(\d+)\}?\s*\+\s*p\^\{?\s*(\d+)\}?\)")


def parse_array(lines: list[str]) -> LaurentPoly2:
    total = LaurentPoly2()
    for line in lines:
        line = line.strip()
        if line.startswith("\\end{array}"):
            break
        if not line or line == "\\\\":
            continue
        m = ROW.match(line)
        if not m:
            raise ValueError(f"unexpected row {line!r}")
        sign, pfac, qtext = m.groups()
        qpoly = parse_qpoly(qtext)
        if pfac:
            a, b = PFAC.fullmatch(pfac).groups()
            pf = LaurentPoly2.monomial(0, -int(a), 1) + LaurentPoly2.monomial(0, int(b), 1)
        else:
            pf = LaurentPoly2.constant(1)
        term = pf * qpoly
        total = total - term if sign == "-" else total + term
    return total


def main(source: str, out: str) -> None:
    lines = Path(source).read_text().splitlines()
    doc = {}
    for start, names in LISTINGS:
        if "\\begin{array}{@" not in lines[start - 1]:
            raise SystemExit(f"line {start} is not the start of a listing")
        poly = parse_array(lines[start:])
        entry = {"knots": names, "printed": serialize_poly(poly)}
        if names[0] in CORRECTIONS:
            old, new = CORRECTIONS[names[0]]
            fixed = [ln.replace(old, new) for ln in lines[start:]]
            if fixed == lines[start:]:
                raise SystemExit(f"correction for {names[0]} did not apply")
            entry["corrected"] = serialize_poly(parse_array(fixed))
        doc[names[0]] = entry
    Path(out).write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main(*sys.argv[1:3])
