"""Built-in dilators satisfy the functor, support, and normality laws."""

import pytest
from hypothesis import given, strategies as st

from dilators.orders import CapabilityError, DomainError, FinEmbedding
from dilators.praedil import (
    REGISTRY,
    check_normality,
    check_praedilator_laws,
    omega_dilator,
    preimage_under_map,
    registry_get,
    zplus_dilator,
)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_laws(name):
    T = registry_get(name)
    report = check_praedilator_laws(T, 2, bound=4)
    assert report.passed, report.violations[:5]


@pytest.mark.parametrize("name", ["omega", "segment", "zplus"])
def test_normality(name):
    T = registry_get(name)
    report = check_normality(T, 2, bound=4)
    assert report.passed, report.violations[:5]


def test_bump_is_not_normal():
    bump = registry_get("bump")
    assert bump.mu is None
    with pytest.raises(CapabilityError):
        check_normality(bump, 2)


def test_bump_normality_counterexample():
    """No candidate mu can work: the top element exceeds every level yet has
    empty support, so the normality equivalence fails at any proposed mu."""
    bump = registry_get("bump")
    report = check_normality(bump, 2, bound=4, mu=lambda n, m: m)
    assert not report.passed
    assert any(v["law"] == "normality-equivalence" for v in report.violations)


def test_registry_get_unknown():
    with pytest.raises(DomainError):
        registry_get("nope")


def test_enumeration_contract_omega():
    T = omega_dilator()
    for n in range(3):
        for bound in range(5):
            toks = T.tokens(n, bound)
            assert len(set(toks)) == len(toks)
            assert all(T.member(n, t) and T.size(n, t) <= bound for t in toks)
            # Exactness: a token of size <= bound is listed.
            assert all(t in set(T.tokens(n, bound + 1)) for t in toks)


@given(st.data())
def test_preimage_under_map_omega(data):
    T = omega_dilator()
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(n, 5))
    values = tuple(sorted(data.draw(
        st.lists(st.integers(0, m - 1), min_size=n, max_size=n, unique=True))))
    f = FinEmbedding(values, m)
    tok = tuple(sorted(data.draw(st.lists(st.integers(0, n - 1), max_size=3)), reverse=True))
    image = T.map(f, tok)
    assert preimage_under_map(T, f, image, m) == tok


def test_preimage_outside_range():
    T = omega_dilator()
    f = FinEmbedding((0,), 2)
    with pytest.raises(DomainError):
        preimage_under_map(T, f, (1,), 2)


def test_zplus_size_is_map_invariant():
    Z = zplus_dilator()
    f = FinEmbedding((1, 3), 5)
    for tok in Z.tokens(2, 4):
        assert Z.size(5, Z.map(f, tok)) == Z.size(2, tok)
