import pytest

from scottlo.ordinals import OMEGA, Ordinal, add, compare, double_plus, is_limit, is_successor, parse_ordinal, render


def test_absorption_on_the_left():
    assert add(Ordinal.of(1), OMEGA) == OMEGA
    assert add(OMEGA, Ordinal.of(1)) != OMEGA


def test_double_is_self_sum():
    for a in (Ordinal.of(0), Ordinal.of(3), OMEGA, parse_ordinal("w^2*2+w+5")):
        assert double_plus(a, Ordinal.of(0)) == add(a, a)


@pytest.mark.parametrize("text", ["0", "7", "w", "w*3", "w^2", "w^3*2 + w + 1"])
def test_parse_render_round_trip(text):
    assert render(parse_ordinal(render(parse_ordinal(text)))) == render(parse_ordinal(text))


def test_text_form():
    assert render(parse_ordinal("w^2*3 + w + 4")) == "w^2*3 + w*1 + 4"


def test_order_and_kinds():
    assert compare(Ordinal.of(5), OMEGA) < 0
    assert compare(parse_ordinal("w^2"), parse_ordinal("w*9 + 9")) > 0
    assert is_successor(parse_ordinal("w + 1"))
    assert is_limit(parse_ordinal("w^2*2"))
    assert not is_limit(Ordinal.of(0))


def test_addition_is_associative():
    xs = [parse_ordinal(t) for t in ("3", "w", "w^2 + 1", "w*2 + 4")]
    for a in xs:
        for b in xs:
            for c in xs:
                assert add(add(a, b), c) == add(a, add(b, c))
