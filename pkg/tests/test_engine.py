import random

import pytest

from conftest import random_knot_braid
from linksgould.alexander import alexander_oracle, lg11_to_alexander
from linksgould.braids import BraidWord, parse_braid_word, stabilize
from linksgould.engine import EngineError, evaluate_invariant, lg11, lg21
from linksgould.laurent import LaurentPoly2, parse_poly, substitute_inverse
from linksgould.modular import support_bounds
from linksgould.representation import bundled_representation, load_representation

ONE = LaurentPoly2.constant(1)


def block(f, e_p):
    """The q-polynomial multiplying p^e_p."""
    return LaurentPoly2.from_terms((0, eq, c) for ep, eq, c in f.terms() if ep == e_p)


def test_unknot_normalization():
    assert lg21(BraidWord(1, ())) == ONE
    assert lg21("1") == ONE
    assert lg21(parse_braid_word("1,-2", 3)) == ONE
    assert lg11(parse_braid_word("-1")) == ONE


def test_trefoil_values():
    f = lg21("1,1,1", method="exact")
    assert f == parse_poly("1*q^-2*p^-4;-1*q^-3*p^-2;-1*q^-1*p^-2;2*q^-2;1;"
                           "-1*q^-3*p^2;-1*q^-1*p^2;1*q^-2*p^4")
    assert lg21("-1,-1,-1") == substitute_inverse(f, "q")


def test_exact_and_modular_agree():
    rng = random.Random(7)
    rep = bundled_representation("LG21")
    for _ in range(25):
        b = random_knot_braid(rng, max_strands=3, max_len=8)
        assert evaluate_invariant(b, rep, "exact") == evaluate_invariant(b, rep, "modular")
    rep11 = bundled_representation("LG11")
    for _ in range(10):
        b = random_knot_braid(rng, max_strands=4, max_len=10)
        assert evaluate_invariant(b, rep11, "exact") == evaluate_invariant(b, rep11, "modular")


def test_support_bounds_contain_value():
    b = parse_braid_word("1,-2,1,-2,-2,3,-2,3")
    rep = bundled_representation("LG21")
    pmin, pmax, rmin, rmax, norm = support_bounds(b, rep)
    f = lg21(b)
    for ep, eq, c in f.terms():
        assert pmin <= ep <= pmax and rmin <= 2 * eq <= rmax
    assert sum(abs(c) for *_, c in f.terms()) <= norm


def test_listed_15n139717(acceptance_table, listings):
    f = lg21(acceptance_table["15n139717"].braid)
    assert f == listings["15n139717"]["printed"]
    assert block(f, 0) == parse_poly("2*q^-6;-10*q^-4;72*q^-2;181;72*q^2;-10*q^4;2*q^6")


def test_listed_12n17(acceptance_table):
    f = lg21(acceptance_table["12n17"].braid)
    assert block(f, 0) == parse_poly("12*q^-4;188*q^-2;647;774*q^2;296*q^4;22*q^6")
    assert block(substitute_inverse(f, "q"), 0) == parse_poly("12*q^4;188*q^2;647;774*q^-2;296*q^-4;22*q^-6")


def test_listed_14a13107_constant_block(acceptance_table):
    f = lg21(acceptance_table["14a13107"].braid)
    assert block(f, 0) == parse_poly("348*q^-6;5106*q^-4;19778*q^-2;30201;19778*q^2;5106*q^4;348*q^6")


def test_kinoshita_terasaka_pair():
    from linksgould.analysis import bundled_path
    from linksgould.knots import read_knot_table
    t = {r.name: r for r in read_knot_table(bundled_path("knots_11.tsv"))}
    assert lg21(t["11n34"].braid) == lg21(t["11n42"].braid)


def test_lg11_is_alexander_in_p_squared():
    for w in ("1,1,1", "1,-2,1,-2", "1,1,1,1,1", "1,1,1,2,-1,2"):
        f = lg11(w)
        assert all(eq == 0 for _, eq, _ in f.terms())
        assert lg11_to_alexander(f) == alexander_oracle(w)


def test_lg21_at_q_one_is_alexander_squared():
    f = lg21("1,1,1,2,-1,2")
    at_one = {}
    for ep, _, c in f.terms():
        at_one[ep] = at_one.get(ep, 0) + c
    delta = alexander_oracle("1,1,1,2,-1,2")
    sq = {}
    for a, x in delta.items():
        for b, y in delta.items():
            sq[2 * (a + b)] = sq.get(2 * (a + b), 0) + x * y
    assert {k: v for k, v in at_one.items() if v} == {k: v for k, v in sq.items() if v}


def test_markov_invariance_small():
    b = parse_braid_word("1,-2,1,-2")
    assert lg21(stabilize(b, 1)) == lg21(b) == lg21(stabilize(b, -1))


def test_invalid_representation_is_rejected():
    doc = bundled_representation("LG11").to_json()
    doc["R"][0][4] = doc["R"][0][4] + [[0, 0, "1"]]
    bad = load_representation(doc)
    with pytest.raises(EngineError):
        evaluate_invariant("1,1,1", bad)


def test_unknown_method():
    with pytest.raises(ValueError):
        lg21("1,1,1", method="fast")
