"""Extension terms: construction, comparison, eta collapse, mu characterization."""

import pytest
from hypothesis import given, strategies as st

from dilators.extension import (
    ExtTerm,
    below_mu_ext,
    eta,
    eta_inverse,
    ext_compare,
    ext_enumerate,
    ext_map,
    ext_member,
    ext_order,
    ext_supp,
    ext_term,
    mu_ext,
    range_filter,
)
from dilators.orders import (
    DomainError,
    FinEmbedding,
    OrderEmbedding,
    finite_order,
    naturals,
    verify_finite_linearity,
)
from dilators.praedil import omega_dilator, segment_dilator


def test_ext_term_canonicalizes_and_validates():
    T = omega_dilator()
    nat = naturals()
    s = ext_term(T, nat, (7, 2), (1, 0))
    assert s.elems == (2, 7)
    with pytest.raises(DomainError):
        ext_term(T, nat, (2, 7), (0, 0))  # support misses position 1
    with pytest.raises(DomainError):
        ext_term(T, nat, (2, 2), (1, 0))  # duplicate parameter
    with pytest.raises(DomainError):
        ext_term(T, nat, (2,), (1,))  # token invalid at level 1


def test_ext_member_is_total():
    T = omega_dilator()
    nat = naturals()
    assert ext_member(T, nat, ExtTerm((2, 7), (1, 0)))
    assert not ext_member(T, nat, ExtTerm((7, 2), (1, 0)))  # not ascending
    assert not ext_member(T, nat, "garbage")
    assert not ext_member(T, nat, ExtTerm((2,), object()))


def test_ext_compare_linear_on_enumeration():
    T = omega_dilator()
    X = finite_order(3)
    terms = ext_enumerate(T, X, 4)
    assert verify_finite_linearity(ext_order(T, X), terms) == []


def test_ext_supp_and_map():
    T = omega_dilator()
    s = ext_term(T, naturals(), (1, 4), (1, 0))
    assert ext_supp(s) == (1, 4)
    f = OrderEmbedding(naturals(), naturals(), apply=lambda x: 2 * x)
    assert ext_map(T, f, s) == ExtTerm((2, 8), (1, 0))
    bad = OrderEmbedding(naturals(), naturals(), apply=lambda x: 0)
    with pytest.raises(DomainError):
        ext_map(T, bad, s)


def test_eta_frozen_example():
    """Over level 3, the term with parameters {0,2} and token ⟨1,0⟩ collapses
    to the plain token ⟨2,0⟩, and back."""
    T = omega_dilator()
    s = ext_term(T, finite_order(3), (0, 2), (1, 0))
    assert eta(T, 3, s) == (2, 0)
    assert eta_inverse(T, 3, (2, 0)) == s


def test_eta_inverse_rejects_non_members():
    T = omega_dilator()
    with pytest.raises(DomainError):
        eta_inverse(T, 2, (5,))


@given(st.data())
def test_mu_characterization(data):
    """A term is below the mu-image of x exactly when its parameters are below x."""
    T = omega_dilator()
    nat = naturals()
    x = data.draw(st.integers(0, 6))
    terms = ext_enumerate(T, nat, 5)
    s = data.draw(st.sampled_from(terms))
    below = ext_compare(T, nat, s, mu_ext(T, nat, x)) < 0
    assert below == below_mu_ext(nat, s, x)


def test_mu_ext_requires_normality():
    from dilators.praedil import bump_dilator

    with pytest.raises(DomainError):
        mu_ext(bump_dilator(), naturals(), 0)


def test_range_filter():
    T = segment_dilator()
    nat = naturals()
    f = OrderEmbedding(
        nat, nat, apply=lambda x: 2 * x,
        inverse=lambda y: y // 2 if y % 2 == 0 else None)
    terms = [ext_term(T, nat, (2,), 0), ext_term(T, nat, (3,), 0)]
    inside, outside = range_filter(T, f, terms)
    assert [(t.elems, pre.elems) for t, pre in inside] == [((2,), (1,))]
    assert [t.elems for t in outside] == [(3,)]
