"""Embeddings, order handles, sequence coding, and the sequence comparison."""

import pytest
from hypothesis import given, strategies as st

from dilators.orders import (
    BOT,
    DomainError,
    FinEmbedding,
    abs_of_embedding,
    adjoin_bottom,
    adjoin_top,
    cantor_pair,
    cantor_unpair,
    dependent_sum,
    fin_less,
    fin_less_set,
    fin_leq_set,
    finite_order,
    kb_compare,
    naturals,
    order_from_list,
    product,
    restrict_below,
    seq_code,
    seq_decode,
    verify_finite_linearity,
)


def test_fin_embedding_basics():
    f = FinEmbedding((1, 3, 4), 6)
    assert f.domain == 3 and f.codomain == 6
    assert [f(i) for i in range(3)] == [1, 3, 4]
    with pytest.raises(DomainError):
        f(3)
    with pytest.raises(DomainError):
        FinEmbedding((2, 2), 5)
    with pytest.raises(DomainError):
        FinEmbedding((0, 5), 5)


def test_fin_embedding_compose_identity():
    f = FinEmbedding((0, 2), 4)
    g = FinEmbedding((1, 3), 5)
    h = g.compose(FinEmbedding((0, 1), 2)).compose(FinEmbedding((0,), 2))
    assert h.values == (1,)
    assert g.compose(FinEmbedding.identity(2)).values == g.values
    with pytest.raises(DomainError):
        f.compose(g)


def test_abs_of_embedding():
    nat = naturals()
    f = abs_of_embedding((2, 7), (0, 2, 5, 7), nat)
    assert f.values == (1, 3) and f.codomain == 4
    with pytest.raises(DomainError):
        abs_of_embedding((3,), (0, 2), nat)


@given(st.integers(0, 500), st.integers(0, 500))
def test_cantor_pair_roundtrip(a, b):
    assert cantor_unpair(cantor_pair(a, b)) == (a, b)


@given(st.lists(st.integers(0, 30), max_size=6))
def test_seq_code_roundtrip_and_length_bound(seq):
    code = seq_code(seq)
    assert seq_decode(code) == tuple(seq)
    assert code >= len(seq)


@given(st.lists(st.integers(0, 5), max_size=5), st.lists(st.integers(0, 5), max_size=5))
def test_kb_compare_end_extension_smaller(s, t):
    nat = naturals()
    c = kb_compare(nat, s, t)
    assert c == -kb_compare(nat, t, s)
    if tuple(t) == tuple(s)[: len(t)] and len(s) > len(t):
        assert c < 0  # proper end extensions come first


def test_kb_rejects_foreign_entries():
    with pytest.raises(DomainError):
        kb_compare(finite_order(2), (0, 5), (1,))


def test_fin_subset_relations():
    nat = naturals()
    assert fin_less(nat, (0, 1), 2) and not fin_less(nat, (0, 2), 2)
    assert fin_less(nat, (), 0)
    assert fin_less_set(nat, (0, 1), (2,)) and not fin_less_set(nat, (2,), (2,))
    assert fin_leq_set(nat, (2,), (2,)) and not fin_leq_set(nat, (3,), (2,))


def test_order_combinators():
    X = finite_order(3)
    bot = adjoin_bottom(X)
    assert bot.cmp(BOT, 0) < 0 and bot.contains(BOT)
    top = adjoin_top(X)
    assert top.enumerate(3)[-1] is not None
    P = product(X, X)
    assert P.cmp((0, 2), (1, 0)) < 0 and P.cmp((1, 0), (1, 1)) < 0
    S = dependent_sum(X, lambda x: finite_order(x + 1))
    assert S.cmp((0, 0), (1, 1)) < 0 and S.contains((2, 2)) and not S.contains((0, 1))
    R = restrict_below(naturals(), 4)
    assert R.enumerate(10) == [0, 1, 2, 3]


def test_order_from_list_rejects_duplicates():
    with pytest.raises(DomainError):
        order_from_list(["a", "a"])


def test_verify_finite_linearity_detects_cycles():
    broken = order_from_list(["a", "b", "c"])
    assert verify_finite_linearity(broken, ["a", "b", "c"]) == []
    from dilators.orders import LinearOrderHandle

    cyclic = LinearOrderHandle(
        contains=lambda x: True,
        cmp=lambda a, b: 0 if a == b else (-1 if (a, b) in {("a", "b"), ("b", "c"), ("c", "a")} else 1),
    )
    assert verify_finite_linearity(cyclic, ["a", "b", "c"])
