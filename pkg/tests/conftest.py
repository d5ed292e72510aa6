import json
import random

import pytest

from linksgould.analysis import bundled_path
from linksgould.braids import BraidWord
from linksgould.knots import read_knot_table
from linksgould.laurent import LaurentPoly2, parse_poly


@pytest.fixture(scope="session")
def small_table():
    return {r.name: r for r in read_knot_table(bundled_path("knots_10.tsv"))}


@pytest.fixture(scope="session")
def acceptance_table():
    return {r.name: r for r in read_knot_table(bundled_path("acceptance.tsv"))}


@pytest.fixture(scope="session")
def listings():
    """Listed polynomials by knot name, printed and (where present) corrected."""
    doc = json.loads(bundled_path("reference_polys.json").read_text())
    out = {}
    for entry in doc.values():
        for name in entry["knots"]:
            out[name] = {k: parse_poly(v) for k, v in entry.items() if k != "knots"}
    return out


def random_poly(rng, terms=6, span=4, coeff=50):
    return LaurentPoly2.from_terms(
        (rng.randint(-span, span), rng.randint(-span, span), rng.randint(-coeff, coeff))
        for _ in range(rng.randint(0, terms)))


def random_knot_braid(rng, max_strands=4, max_len=12):
    """Random braid whose closure is a knot (one component)."""
    from linksgould.braids import closure_components
    while True:
        s = rng.randint(1, max_strands)
        if s == 1:
            return BraidWord(1, ())
        n = rng.randint(s - 1, max_len)
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, s - 1) for _ in range(n))
        b = BraidWord(s, letters)
        if closure_components(b) == 1:
            return b


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def report_criterion(number, ok: bool, detail: str) -> bool:
    """Record a one-line acceptance verdict; printed in the terminal summary."""
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
