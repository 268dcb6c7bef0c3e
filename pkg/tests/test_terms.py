import pytest
from hypothesis import given, settings, strategies as st

from scottlo.terms import (
    DecompositionUnsupported, ParseError, canonicalize, decompose_wkr, is_canonical,
    max_constant, parse, random_term, render, size,
)


@given(st.integers(0, 10_000), st.integers(1, 9))
@settings(max_examples=300, deadline=None)
def test_render_parse_round_trip(seed, budget):
    t = random_term(seed, budget)
    assert parse(render(t)) == t


@given(st.integers(0, 10_000), st.integers(1, 9))
@settings(max_examples=300, deadline=None)
def test_canonicalize_is_idempotent(seed, budget):
    c = canonicalize(random_term(seed, budget))
    assert canonicalize(c) == c
    assert is_canonical(c)


@pytest.mark.parametrize("text,n", [("2+3", 5), ("3*4", 12), ("sh(2)", None), ("w", None), ("0", 0)])
def test_size(text, n):
    assert size(parse(text)) == n


@pytest.mark.parametrize("text,want", [
    ("q+q", "q"),
    ("2+3", "5"),
    ("sh(1,w)", "sh(1, w)"),
    ("1+w", "w"),
])
def test_canonical_forms(text, want):
    assert render(canonicalize(parse(text))) == want


@pytest.mark.parametrize("bad", ["w+", "sh()", "(w", "w^", "x", "w^9"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse("w+")
    assert "position 2" in str(exc.value)


@pytest.mark.parametrize("text,parts", [
    ("w+q", ("w", "q", "0")),
    ("w+z*q+w*", ("w", "z*q", "w*")),
    ("w^2", ("w^2", "0", "0")),
    ("2*q+1+q", ("0", "2*q + 1 + q", "0")),
])
def test_decompose_ends(text, parts):
    assert tuple(render(p) for p in decompose_wkr(parse(text))) == parts


def test_decompose_finite_goes_to_head():
    assert tuple(render(p) for p in decompose_wkr(parse("5"))) == ("5", "0", "0")


def test_decompose_rejects_least_point_before_dense_part():
    with pytest.raises(DecompositionUnsupported):
        decompose_wkr(parse("(1+q)*2"))


def test_max_constant():
    assert max_constant(parse("2*q+7+w")) == 7
