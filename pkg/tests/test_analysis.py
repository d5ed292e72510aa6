import json

import pytest

from linksgould.analysis import (SCHEMA_VERSION, bundled_path, cluster_fingerprints, default_jobs,
                                 dump_results, emit_report, fingerprint, load_results,
                                 read_clique_annotations, run_batch, symmetry_flags)
from linksgould.engine import lg21
from linksgould.knots import InputError, KnotRecord, read_knot_table
from linksgould.laurent import parse_poly, substitute_inverse

TABLE = """# test table
3a1\t2\t1,1,1\t\tchiral
4a1\t3\t1,-2,1,-2\t\tachiral
trefoil-mirror\t2\t-1,-1,-1
broken\t2\t1,x,1
5a1\t2\t1,1,1,1,1\t\tchiral
"""


@pytest.fixture
def table_path(tmp_path):
    p = tmp_path / "t.tsv"
    p.write_text(TABLE)
    return p


def test_symmetry_flags_examples(acceptance_table):
    f = lg21(acceptance_table["15n139717"].braid)
    flags = symmetry_flags(f)
    assert flags.p_palindromic and flags.q_palindromic and not flags.chirality_detected
    assert symmetry_flags(lg21(acceptance_table["12a341"].braid)).q_palindromic
    flags = symmetry_flags(lg21(acceptance_table["14a13107"].braid))
    assert not flags.chirality_detected
    trefoil = symmetry_flags(lg21("1,1,1"))
    assert trefoil.chirality_detected and trefoil.p_palindromic
    assert trefoil.q_parity_by_p_degree in ("all-even", "all-odd", "mixed-per-block")


def test_symmetry_flags_detect_defects():
    lopsided = parse_poly("1*p^2;3")
    assert not symmetry_flags(lopsided).p_palindromic
    assert symmetry_flags(parse_poly("1*q^2;1*q^1")).q_parity_by_p_degree == "violation"


def test_cluster_duplicate_names():
    f = lg21("1,-2,1,-2")
    cliques = cluster_fingerprints([fingerprint("b", f), fingerprint("a", f),
                                    fingerprint("3a1", lg21("1,1,1"))])
    assert len(cliques) == 1
    assert cliques[0].members == ("a", "b")


def test_cluster_is_order_independent_and_mirror_blind():
    fps = [fingerprint("3a1", lg21("1,1,1")), fingerprint("4a1", lg21("1,-2,1,-2")),
           fingerprint("5a1", lg21("1,1,1,1,1")), fingerprint("3a1m", lg21("-1,-1,-1")),
           fingerprint("5a1m", lg21("-1,-1,-1,-1,-1"))]
    a = cluster_fingerprints(fps)
    b = cluster_fingerprints(fps[::-1])
    assert a == b
    assert [c.members for c in a] == [("3a1", "3a1m"), ("5a1", "5a1m")]


def test_fingerprint_canonical_is_symmetric():
    f = lg21("1,1,1,2,-1,2")
    assert fingerprint("x", f).canonical == fingerprint("y", substitute_inverse(f, "q")).canonical


def test_run_batch_isolates_errors(table_path):
    doc = run_batch(table_path)
    names = [r["name"] for r in doc["records"]]
    assert names == ["3a1", "4a1", "trefoil-mirror", "broken", "5a1"]
    broken = doc["records"][3]
    assert broken["error"]["kind"] == "input"
    assert all("lg" in r for i, r in enumerate(doc["records"]) if i != 3)
    assert doc["schema"] == SCHEMA_VERSION and doc["invariant"] == "lg21"
    assert doc["records"][0]["known_symmetry"] == "chiral"
    assert doc["records"][0]["volume"] is None


def test_run_batch_record_without_braid():
    doc = run_batch([KnotRecord("pd-only", dt_code=(4, 6, 2))])
    assert doc["records"][0]["error"]["kind"] == "input"


def test_parallel_output_is_byte_identical(tmp_path, table_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_batch(table_path, jobs=1, out_path=a)
    run_batch(table_path, jobs=2, out_path=b)
    assert a.read_bytes() == b.read_bytes()


def test_lg11_batch(table_path):
    doc = run_batch(table_path, invariant="lg11")
    assert doc["records"][0]["lg"] == "1*p^-2;-1;1*p^2"
    with pytest.raises(InputError):
        run_batch(table_path, invariant="jones")
    with pytest.raises(InputError):
        run_batch(table_path, jobs=0)


def test_default_jobs(monkeypatch):
    monkeypatch.delenv("LINKSGOULD_JOBS", raising=False)
    assert default_jobs() == 1
    monkeypatch.setenv("LINKSGOULD_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("LINKSGOULD_JOBS", "many")
    with pytest.raises(InputError):
        default_jobs()


def test_results_round_trip(tmp_path, table_path):
    out = tmp_path / "r.json"
    doc = run_batch(table_path, out_path=out)
    assert load_results(out) == json.loads(dump_results(doc))
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 99, "records": []}')
    with pytest.raises(InputError):
        load_results(bad)
    with pytest.raises(InputError):
        load_results(tmp_path / "missing.json")


def test_report_modes(table_path):
    doc = run_batch(table_path)
    text, rep = emit_report(doc, "full", annotations={frozenset({"3a1", "trefoil-mirror"}): "mirror"})
    assert [n["name"] for n in rep["chirality_undetected"]] == ["4a1"]
    assert rep["p_palindromic_violations"] == [] and rep["q_parity_violations"] == []
    assert rep["cliques"] == [{"members": ["3a1", "trefoil-mirror"],
                               "canonical": rep["cliques"][0]["canonical"],
                               "annotation": "mirror", "volume": None}]
    assert [e["name"] for e in rep["errors"]] == ["broken"]
    assert "chirality undetected: 1" in text and "cliques: 1" in text
    _, sym = emit_report(doc, "symmetry")
    assert "cliques" not in sym
    with pytest.raises(InputError):
        emit_report(doc, "everything")


def test_empty_report():
    doc = {"schema": SCHEMA_VERSION, "invariant": "lg21", "records": []}
    text, rep = emit_report(doc, "full", annotations={})
    assert rep["cliques"] == [] and rep["chirality_undetected"] == [] and rep["errors"] == []
    assert "cliques: 0" in text


def test_bundled_annotations():
    ann = read_clique_annotations()
    assert ann[frozenset({"11n34", "11n42"})] == "mutant"
    assert ann[frozenset({"12n90", "12n135", "12n416"})] == "lg-pair"
    assert sum(1 for k in ann.values() if k == "mutant") == 16 + 75


def test_bundled_tables_load():
    assert len(read_knot_table(bundled_path("knots_11.tsv"))) == 552
    assert len(read_knot_table(bundled_path("knots_12.tsv"))) == 2176
