"""Term grammar round trips and parse errors."""

import pytest
from hypothesis import given, strategies as st

from dilators.derivative import deriv_enumerate
from dilators.extension import ext_enumerate
from dilators.grammar import (
    parse_base_token,
    parse_deriv_term,
    parse_ext_term,
    parse_sexp,
    print_base_token,
    print_deriv_term,
    print_ext_term,
    print_sexp,
)
from dilators.orders import DomainError, naturals
from dilators.praedil import registry_get


@pytest.mark.parametrize("name,texts", [
    ("omega", ["(seq)", "(seq 2 1 1)"]),
    ("segment", ["0", "3"]),
    ("bump", ["Om", "1"]),
    ("zplus", ["(z -4)", "(z 0)", "2"]),
    ("star", ["star"]),
])
def test_base_token_roundtrip(name, texts):
    for text in texts:
        tok = parse_base_token(name, text)
        assert print_base_token(name, tok) == text
        assert parse_base_token(name, print_base_token(name, tok)) == tok


@pytest.mark.parametrize("name", ["omega", "segment"])
def test_deriv_term_roundtrip_exhaustive(name):
    T = registry_get(name)
    for n in range(3):
        for term in deriv_enumerate(T, n, 6):
            text = print_deriv_term(name, term)
            assert parse_deriv_term(name, text) == term
            assert print_deriv_term(name, parse_deriv_term(name, text)) == text


def test_ext_term_roundtrip_exhaustive():
    T = registry_get("omega")
    for term in ext_enumerate(T, naturals(), 4):
        text = print_ext_term("omega", term)
        assert parse_ext_term("omega", text) == term


@given(st.lists(st.integers(-5, 20), max_size=5))
def test_sexp_roundtrip(xs):
    obj = ["seq"] + xs
    assert parse_sexp(print_sexp(obj)) == obj


@pytest.mark.parametrize("text", [
    "", "(", ")", "(seq 1", "(seq 1))", "(mu x)", "(xi (set) )", "frob", "(pair 1)",
])
def test_parse_errors(text):
    with pytest.raises((DomainError, ValueError)):
        parse_deriv_term("omega", text)


def test_unknown_dilator_grammar():
    with pytest.raises(DomainError):
        parse_base_token("mystery", "(seq)")
