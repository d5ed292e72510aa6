import pytest

from linksgould.alexander import alexander_oracle
from linksgould.braids import (BraidError, BraidWord, braid_move, braid_relation_rewrite,
                               closure_components, conjugate, destabilize, invert_braid,
                               parse_braid_word, reflect_braid, render_braid_word, stabilize,
                               writhe)


def test_parse_trefoil():
    b = parse_braid_word("1,1,1")
    assert b == BraidWord(2, (1, 1, 1))


def test_parse_figure_eight_and_its_alexander():
    b = parse_braid_word("1,-2,1,-2")
    assert b.strands == 3
    assert alexander_oracle(b) == {-1: -1, 0: 3, 1: -1}


def test_parse_separators_and_explicit_strands():
    assert parse_braid_word("1 -2  1", 4) == BraidWord(4, (1, -2, 1))
    assert parse_braid_word("[1,2]") == BraidWord(3, (1, 2))
    assert parse_braid_word("", 1) == BraidWord(1, ())


@pytest.mark.parametrize("text,strands", [("0", None), ("1,3", 3), ("1,a", None), ("", 0)])
def test_parse_errors(text, strands):
    with pytest.raises(BraidError):
        parse_braid_word(text, strands)


def test_render_round_trip():
    b = BraidWord(5, (1, -4, 3, 3, -2))
    assert parse_braid_word(render_braid_word(b), 5) == b


def test_stabilize_destabilize():
    b = parse_braid_word("1,1,1")
    assert stabilize(b, 1) == BraidWord(3, (1, 1, 1, 2))
    assert destabilize(parse_braid_word("1,1,1,2")) == b
    assert destabilize(stabilize(b, -1)) == b
    with pytest.raises(BraidError):
        destabilize(parse_braid_word("2,1,2"))
    with pytest.raises(BraidError):
        destabilize(b.__class__(3, (1, 1, 1)))


def test_conjugate_inverse():
    b = parse_braid_word("1,-2,1,-2")
    w = (2, 1)
    back = conjugate(conjugate(b, w), tuple(-x for x in reversed(w)))
    assert closure_components(back) == closure_components(b)
    # w^-1 (w b w^-1) w reduces to b after cancellations
    while True:
        nxt = braid_relation_rewrite_cancel(back)
        if nxt == back:
            break
        back = nxt
    assert back == b


def braid_relation_rewrite_cancel(b):
    L = list(b.letters)
    for i in range(len(L) - 1):
        if L[i] == -L[i + 1]:
            return BraidWord(b.strands, tuple(L[:i] + L[i + 2:]))
    return b


def test_braid_relation_rewrite():
    assert braid_relation_rewrite(parse_braid_word("1,2,1")).letters == (2, 1, 2)
    assert braid_relation_rewrite(BraidWord(4, (1, 3))).letters == (3, 1)
    assert braid_relation_rewrite(parse_braid_word("1,-1,2")).letters == (2,)
    assert braid_relation_rewrite(parse_braid_word("1,2")).letters == (1, 2)


def test_braid_move_dispatch():
    b = parse_braid_word("1,1,1")
    assert braid_move(b, "stabilize", -1) == BraidWord(3, (1, 1, 1, -2))
    assert braid_move(braid_move(b, "stabilize"), "destabilize") == b
    with pytest.raises(BraidError):
        braid_move(b, "twist")


def test_reflect_invert_writhe():
    b = parse_braid_word("1,1,1")
    assert reflect_braid(b).letters == (-1, -1, -1)
    assert invert_braid(parse_braid_word("1,-2")).letters == (-2, 1)
    c = parse_braid_word("1,-2,1,-2,-2")
    assert reflect_braid(reflect_braid(c)) == c
    assert writhe(b) == 3 and writhe(parse_braid_word("1,-2,1,-2")) == 0
    assert writhe(reflect_braid(c)) == -writhe(c)


def test_closure_components():
    assert closure_components(parse_braid_word("1,1,1")) == 1
    assert closure_components(parse_braid_word("1,1")) == 2
    assert closure_components(BraidWord(3, ())) == 3
