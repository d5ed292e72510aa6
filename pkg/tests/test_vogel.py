import random

import pytest

from conftest import random_knot_braid
from linksgould.analysis import bundled_path
from linksgould.braids import BraidWord, parse_braid_word
from linksgould.engine import lg21
from linksgould.knots import InputError, braid_closure_pd, read_knot_table, read_pd_file
from linksgould.laurent import canonical_fingerprint, dot_eq
from linksgould.vogel import Diagram, pd_to_braid, seifert_circles, vogel_moves

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


@pytest.fixture(scope="module")
def pds():
    return {r.name: r.pd_code for r in read_pd_file(bundled_path("knots.pd"))}


def test_trefoil_circles():
    dec = seifert_circles(TREFOIL)
    assert len(dec.circles) == 2
    assert dec.incoherence_count == 0


def test_empty_diagram():
    dec = seifert_circles("")
    assert len(dec.circles) == 1 and dec.incoherence_count == 0
    assert pd_to_braid("") == BraidWord(1, ())


def test_figure_eight_circles(pds):
    assert len(seifert_circles(pds["4a1"]).circles) == 3


def test_trefoil_braid():
    b = pd_to_braid(TREFOIL)
    assert b.strands == 2
    # this PD is the left-handed trefoil under the crossing-sign convention used here
    assert lg21(b) == lg21("-1,-1,-1")
    assert dot_eq(canonical_fingerprint(lg21(b)), canonical_fingerprint(lg21("1,1,1")))


def test_figure_eight_braid(pds):
    assert lg21(pd_to_braid(pds["4a1"])) == lg21("1,-2,1,-2")


def test_closed_braid_is_a_fixed_point():
    rng = random.Random(3)
    for _ in range(20):
        b = random_knot_braid(rng, max_strands=4, max_len=10)
        if any(all(abs(x) != g for x in b.letters) for g in range(1, b.strands)):
            continue
        try:
            pd = braid_closure_pd(b)
        except InputError:
            continue
        _, history = vogel_moves(pd)
        assert history == [0]
        assert lg21(pd_to_braid(pd)) == lg21(b)


def test_history_strictly_decreasing_and_strand_count(pds):
    for name, pd in pds.items():
        dg, history = vogel_moves(pd)
        assert all(a > b for a, b in zip(history, history[1:])), name
        assert history[-1] == 0
        assert pd_to_braid(pd).strands == len(dg.circles) == len(Diagram(pd).circles)


def test_soundness_against_table_braids(pds):
    table = {r.name: r.braid for r in read_knot_table(bundled_path("knots_10.tsv"))}
    for name in ("3a1", "5a1", "5a2", "6a1", "6a2", "6a3", "7a4", "8n1"):
        assert dot_eq(canonical_fingerprint(lg21(pd_to_braid(pds[name]))),
                      canonical_fingerprint(lg21(table[name]))), name


def test_link_rejected():
    hopf = "X[1,3,2,4] X[3,1,4,2]"
    with pytest.raises(InputError):
        pd_to_braid(hopf)


def test_inconsistent_orientation_rejected():
    with pytest.raises(InputError):
        seifert_circles("X[1,2,3,4] X[1,4,3,2]")
