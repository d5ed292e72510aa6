import pytest

from linksgould.analysis import bundled_path
from linksgould.braids import parse_braid_word
from linksgould.knots import (InputError, KnotRecord, braid_closure_pd, parse_dt_code,
                              parse_knot_name, parse_pd_code, pd_signs, read_knot_table,
                              read_pd_file, render_dt_code, render_pd_code, write_knot_table)

TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def test_knot_names():
    for text in ("12n17", "12N_17", "K12n17", "12^N_17"):
        assert str(parse_knot_name(text)) == "12n17"
    assert parse_knot_name("trefoil") is None


def test_dt_codes():
    assert parse_dt_code("4 6 2") == (4, 6, 2)
    assert render_dt_code((4, 6, 2)) == "4 6 2"
    assert parse_dt_code(render_dt_code((4, -8, 2, 6))) == (4, -8, 2, 6)


@pytest.mark.parametrize("text", ["4 6 3", "4 6 2 4", "4 6 10"])
def test_dt_code_errors(text):
    with pytest.raises(InputError):
        parse_dt_code(text)


def test_pd_parse_trefoil():
    pd = parse_pd_code(TREFOIL_PD)
    assert len(pd) == 3
    assert parse_pd_code(render_pd_code(pd)) == pd
    assert parse_pd_code([[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]) == pd


def test_pd_errors():
    with pytest.raises(InputError):
        parse_pd_code("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]")
    with pytest.raises(InputError):
        parse_pd_code("X[1,2,3]")
    assert parse_pd_code("") == ()


def test_pd_signs_follow_reference_braids():
    # KnotInfo's right-handed trefoil PD closes the braid 1,1,1
    assert pd_signs(parse_pd_code("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]")) == [1, 1, 1]
    assert pd_signs(parse_pd_code(TREFOIL_PD)) == [-1, -1, -1]


def test_braid_closure_pd_signs():
    b = parse_braid_word("1,-2,1,-2,-3,2,3")
    pd = braid_closure_pd(b)
    assert pd_signs(parse_pd_code(pd)) == [1 if x > 0 else -1 for x in b.letters]
    with pytest.raises(InputError):
        braid_closure_pd(parse_braid_word("1,1,1", 3))


def test_record_symmetry_tag():
    with pytest.raises(InputError):
        KnotRecord("3a1", known_symmetry="maybe")


def test_table_round_trip(tmp_path):
    recs = [KnotRecord("3a1", braid=parse_braid_word("1,1,1"), dt_code=(4, 6, 2), known_symmetry="chiral"),
            KnotRecord("4a1", braid=parse_braid_word("1,-2,1,-2"))]
    path = tmp_path / "t.tsv"
    write_knot_table(recs, path, "header")
    assert read_knot_table(path) == recs


def test_table_lenient_mode(tmp_path):
    path = tmp_path / "t.tsv"
    path.write_text("3a1\t2\t1,1,1\nbad\t2\t1,0\n")
    with pytest.raises(InputError):
        read_knot_table(path)
    rows = read_knot_table(path, strict=False)
    assert rows[0].name == "3a1" and rows[1][0] == "bad"


def test_bundled_tables_are_consistent():
    t11 = read_knot_table(bundled_path("knots_11.tsv"))
    t12 = read_knot_table(bundled_path("knots_12.tsv"))
    assert len(t11) == 552 and len(t12) == 2176
    for r in t11 + t12:
        assert r.crossings == len(r.dt_code)
    assert sum(r.known_symmetry == "achiral" for r in t12) == 58
    pds = read_pd_file(bundled_path("knots.pd"))
    assert len(pds) >= 20
