"""The tree-family pipeline: per-element dilators, the sum, and the embedding."""

import functools
import json
import pathlib

import pytest

from dilators.barind import (
    E_embed,
    TreeFamily,
    chi_F,
    chi_F_inverse,
    default_target,
    f_dilator,
    family_from_json,
    h_dilator,
    h_ext_compare,
    j_embed,
)
from dilators.checks import barind_report
from dilators.extension import ext_compare, ext_enumerate, ext_order, ext_term, mu_ext
from dilators.orders import BOT, DomainError, finite_order, naturals, verify_finite_linearity
from dilators.praedil import check_normality, check_praedilator_laws

FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "family3.json"


@pytest.fixture(scope="module")
def family():
    return family_from_json(FIXTURE.read_text())


def test_family_rejects_non_prefix_closed():
    with pytest.raises(DomainError):
        TreeFamily(carrier=("a",), trees={"a": {(0, 1)}})
    with pytest.raises(DomainError):
        TreeFamily(carrier=("a",), trees={})


def test_family_coding(family):
    for x in family.carrier:
        for seq in family.tree(x):
            code = family.code(x, seq)
            assert code >= len(seq)
            assert family.decode(code) == (x, seq)
    assert family.decode(10 ** 6) is None or family.decode(10 ** 6)[0] in family.carrier


def test_sigma_order_is_linear(family):
    from dilators.orders import LinearOrderHandle

    handle = LinearOrderHandle(contains=lambda e: True, cmp=family.sigma_compare)
    assert verify_finite_linearity(handle, family.elements()) == []


def test_h_dilator_laws(family):
    for x in family.carrier:
        report = check_praedilator_laws(h_dilator(family, x), 2, bound=3)
        assert report.passed, (x, report.violations[:5])


def test_h_bottom_is_one_point(family):
    H = h_dilator(family, BOT)
    assert len(H.tokens(3, 5)) == 1


def test_h_alternative_comparison_agrees(family):
    Z = finite_order(2)
    for x in family.carrier:
        H = h_dilator(family, x)
        terms = ext_enumerate(H, Z, 3)
        for s in terms:
            for t in terms:
                assert h_ext_compare(family, x, Z, s, t) == ext_compare(H, Z, s, t)


def test_e_embed_tokens_are_valid(family):
    nat = naturals()
    for x in family.carrier:
        for seq in sorted(family.tree(x)):
            tok = E_embed(family, x, seq)
            below = [e for e in family.sigma_below(x) if family.code(*e) < len(seq)]
            term = ext_term(h_dilator(family, x), nat, tuple(range(len(below))), tok)
            assert len(term.elems) == len(below)
    with pytest.raises(DomainError):
        E_embed(family, family.carrier[0], (9, 9, 9))


def test_f_dilator_is_normal(family):
    F = f_dilator(family)
    assert check_praedilator_laws(F, 2, bound=3).passed
    assert check_normality(F, 2, bound=3).passed


def test_chi_roundtrip(family):
    F = f_dilator(family)
    Z = finite_order(2)
    for term in ext_enumerate(F, Z, 4):
        triple = chi_F_inverse(family, Z, term)
        assert chi_F(family, Z, triple) == term
    hext = ext_term(h_dilator(family, "a"), Z, (0,), ((0, 0),))
    with pytest.raises(DomainError):
        chi_F(family, Z, (0, "a", hext))  # stage not above the parameters


def test_j_embed_order_and_bound(family):
    target = default_target(family, certify_to=1, bound=4)
    G = target.dilator
    X = family.order
    images = j_embed(family, target)
    ordered = sorted(family.elements(), key=functools.cmp_to_key(family.sigma_compare))
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            c = ext_compare(G, X, images[a], images[b])
            assert (c < 0) == (i < j) and (c == 0) == (i == j)
    for x in family.carrier:
        top = mu_ext(G, X, x)
        for (y, seq) in family.elements():
            if X.cmp(y, x) < 0:
                assert ext_compare(G, X, images[(y, seq)], top) < 0


def test_barind_report_passes(family):
    report = barind_report(family)
    assert report.passed, report.violations[:5]


def test_family_from_json_string_keys():
    fam = family_from_json(json.dumps({"order": ["p"], "trees": {"p": [[]]}}))
    assert fam.tree("p") == frozenset({()})
