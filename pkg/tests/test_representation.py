import pytest

from linksgould.laurent import ExtendedPoly, LaurentPoly2
from linksgould.representation import (RepresentationData, RepresentationError,
                                       bundled_representation, load_representation,
                                       radical_free_entries, validate_representation)


@pytest.mark.parametrize("label,dim", [("LG21", 4), ("LG11", 2)])
def test_bundled_data_validates(label, dim):
    rep = bundled_representation(label)
    assert rep.dim == dim
    report = validate_representation(rep)
    assert report.ok, str(report)
    assert [name for name, _, _ in report.checks] == [
        "Yang-Baxter", "R*R_inv = I", "R_inv*R = I",
        "partial trace of R = identity", "partial trace of R_inv = identity"]


def perturbed(rep, key):
    doc = rep.to_json()
    for row in doc["R"]:
        if tuple(row[:4]) == key:
            row[4] = row[4] + [[0, 0, "1"]]
            break
    else:
        raise AssertionError("key not present")
    return load_representation(doc)


def test_perturbed_entry_breaks_yang_baxter():
    rep = bundled_representation("LG21")
    bad = perturbed(rep, (0, 0, 0, 0))
    report = validate_representation(bad)
    assert not report.ok
    assert dict((n, ok) for n, ok, _ in report.checks)["Yang-Baxter"] is False
    assert bad.digest != rep.digest


def test_lg11_entries():
    rep = bundled_representation("LG11")
    p = LaurentPoly2.p
    base = {k: v.base for k, v in rep.R.items()}
    assert base[(0, 0, 0, 0)] == p()
    assert base[(1, 1, 1, 1)] == -p(-1)
    assert sorted(base.values(), key=str).count(LaurentPoly2.constant(1)) == 2
    assert (p() - p(-1)) in base.values()
    assert [m.base for m in rep.mu] == [p(-1), -p(-1)]


def test_json_round_trip_and_digest():
    rep = bundled_representation("LG21")
    again = load_representation(rep.to_json())
    assert again.digest == rep.digest
    assert again.R == rep.R and again.mu == rep.mu


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("R"),
    lambda d: d["R"].append([0, 0, 0, 9, [], []]),
    lambda d: d["R"].append(list(d["R"][0])),
    lambda d: d["mu"].pop(),
])
def test_malformed_data(mutate):
    doc = bundled_representation("LG21").to_json()
    mutate(doc)
    with pytest.raises(RepresentationError):
        load_representation(doc)


def test_radical_free_gauge_preserves_products():
    rep = bundled_representation("LG21")
    R, Ri, mu = radical_free_entries(rep)
    assert all(isinstance(v, LaurentPoly2) for v in R.values())
    assert set(R) == set(rep.R) and set(Ri) == set(rep.R_inv)
    # R*R_inv = I survives the diagonal rescaling
    for i1 in range(4):
        for i2 in range(4):
            out = {}
            for (m1, m2, a1, a2), v in Ri.items():
                if (a1, a2) != (i1, i2):
                    continue
                for (o1, o2, b1, b2), w in R.items():
                    if (b1, b2) == (m1, m2):
                        out[(o1, o2)] = out.get((o1, o2), LaurentPoly2()) + w * v
            out = {k: v for k, v in out.items() if not v.is_zero()}
            assert out == {(i1, i2): LaurentPoly2.constant(1)}
    assert [m for m in mu] == [m.base for m in rep.mu]


def test_unvalidated_plain_data_type():
    one = ExtendedPoly(LaurentPoly2.constant(1))
    rep = RepresentationData("toy", 1, {(0, 0, 0, 0): one}, {(0, 0, 0, 0): one}, (one,),
                             LaurentPoly2())
    assert not rep.validated
    assert validate_representation(rep).ok
