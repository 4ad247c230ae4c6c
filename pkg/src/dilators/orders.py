"""Finite strictly increasing maps, behavioral linear orders, and order combinators.

Token grammar (s-expression style): atoms are naturals or the symbols ``bot``,
``top``, ``star``, ``Om``; compounds are ``(seq e1 e2 ...)`` for sequences and
``(pair x y)`` for products and dependent sums.

Sequence codes: finite sequences of naturals are coded injectively by iterated
Cantor pairing, ``code(()) = 0`` and ``code(s + (x,)) = cantor(code(s), x) + 1``.
The code of a sequence is always at least its length.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class CapabilityError(RuntimeError):
    """A required optional capability (such as enumeration) is absent."""


class ContractError(RuntimeError):
    """A precondition certificate (such as a validated morphism) is missing."""


class _Atom:
    """Interned symbolic token; equality and hashing are by identity."""

    __slots__ = ("label",)

    def __init__(self, label: str):
        self.label = label

    def __repr__(self) -> str:
        return self.label


BOT = _Atom("bot")
TOP = _Atom("top")

LESS, EQUAL, GREATER = -1, 0, 1


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class FinEmbedding:
    """A strictly increasing map from a finite ordinal into a finite ordinal."""

    values: tuple[int, ...]
    codomain: int

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise DomainError(f"values not strictly increasing: {self.values}")
        if self.values and not (0 <= self.values[0] and self.values[-1] < self.codomain):
            raise DomainError(f"values {self.values} not within codomain {self.codomain}")

    @property
    def domain(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        if not 0 <= i < len(self.values):
            raise DomainError(f"argument {i} outside domain {len(self.values)}")
        return self.values[i]

    def compose(self, other: "FinEmbedding") -> "FinEmbedding":
        """Return self after other, i.e. the map i -> self(other(i))."""
        if other.codomain != self.domain:
            raise DomainError("embeddings not composable")
        return FinEmbedding(tuple(self.values[v] for v in other.values), self.codomain)

    @staticmethod
    def identity(n: int) -> "FinEmbedding":
        return FinEmbedding(tuple(range(n)), n)


@dataclass(frozen=True)
class LinearOrderHandle:
    """A countable linear order given behaviorally.

    ``contains`` decides element validity, ``cmp`` is a total comparison
    returning -1/0/1, and ``enum`` (optional) lists each element exactly once
    up to a rank bound.
    """

    contains: Callable[[object], bool]
    cmp: Callable[[object, object], int]
    enum: Optional[Callable[[int], list]] = None
    name: str = ""

    def lt(self, a, b) -> bool:
        return self.cmp(a, b) < 0

    def leq(self, a, b) -> bool:
        return self.cmp(a, b) <= 0

    def sort_key(self):
        return functools.cmp_to_key(self.cmp)

    def sorted(self, items: Iterable) -> list:
        return sorted(items, key=self.sort_key())

    def canonical_set(self, items: Iterable) -> tuple:
        """Sort items ascending and verify there are no duplicates."""
        out = self.sorted(items)
        for a, b in zip(out, out[1:]):
            if self.cmp(a, b) == 0:
                raise DomainError(f"duplicate element {a!r} in finite set")
        return tuple(out)

    def enumerate(self, bound: int) -> list:
        if self.enum is None:
            raise CapabilityError(f"order {self.name or '?'} is not enumerable")
        return self.enum(bound)


@dataclass(frozen=True)
class OrderEmbedding:
    """An order embedding between two handles, with an optional partial inverse.

    ``inverse`` returns None for targets outside the range.
    """

    source: LinearOrderHandle
    target: LinearOrderHandle
    apply: Callable[[object], object]
    inverse: Optional[Callable[[object], Optional[object]]] = None
    name: str = ""


@dataclass(frozen=True)
class SeqTerm:
    """A finite sequence of element tokens of some base order."""

    entries: tuple

    def __len__(self) -> int:
        return len(self.entries)


def abs_of_embedding(a: Sequence, b: Sequence, ord: LinearOrderHandle) -> FinEmbedding:
    """The unique increasing |iota| : |a| -> |b| induced by the inclusion of a in b."""
    sa = ord.canonical_set(a)
    sb = ord.canonical_set(b)
    values = []
    j = 0
    for x in sa:
        while j < len(sb) and ord.cmp(sb[j], x) < 0:
            j += 1
        if j >= len(sb) or ord.cmp(sb[j], x) != 0:
            raise DomainError(f"element {x!r} of the subset is missing from the superset")
        values.append(j)
        j += 1
    return FinEmbedding(tuple(values), len(sb))


def finsubset_image(f, a: Iterable) -> tuple:
    """Pointwise image of a finite set under an embedding; preserves cardinality."""
    func = f if callable(f) else f.apply
    return tuple(func(x) for x in a)


def fin_less(ord: LinearOrderHandle, a: Iterable, x) -> bool:
    """a <^fin x: every element of a is below x."""
    return all(ord.cmp(y, x) < 0 for y in a)


def fin_less_set(ord: LinearOrderHandle, a: Iterable, b: Iterable) -> bool:
    """a <^fin b: every element of a is below some element of b."""
    b = list(b)
    return all(any(ord.cmp(x, y) < 0 for y in b) for x in a)


def fin_leq_set(ord: LinearOrderHandle, a: Iterable, b: Iterable) -> bool:
    """a <=^fin b: every element of a is below or equal to some element of b."""
    b = list(b)
    return all(any(ord.cmp(x, y) <= 0 for y in b) for x in a)


def kb_compare(base: LinearOrderHandle, s, t) -> int:
    """Kleene-Brouwer comparison of sequences over the base order.

    A proper end extension is smaller; otherwise the first differing entry
    decides via the base comparison.
    """
    es = s.entries if isinstance(s, SeqTerm) else tuple(s)
    et = t.entries if isinstance(t, SeqTerm) else tuple(t)
    for x in es + et:
        if not base.contains(x):
            raise DomainError(f"entry {x!r} invalid in base order {base.name or '?'}")
    for x, y in zip(es, et):
        c = base.cmp(x, y)
        if c != 0:
            return c
    if len(es) == len(et):
        return EQUAL
    return LESS if len(es) > len(et) else GREATER


def naturals() -> LinearOrderHandle:
    return LinearOrderHandle(
        contains=lambda x: isinstance(x, int) and not isinstance(x, bool) and x >= 0,
        cmp=lambda a, b: _sign(a - b),
        enum=lambda bound: list(range(bound)),
        name="nat",
    )


def finite_order(n: int) -> LinearOrderHandle:
    return LinearOrderHandle(
        contains=lambda x: isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n,
        cmp=lambda a, b: _sign(a - b),
        enum=lambda bound: list(range(min(n, bound))),
        name=str(n),
    )


def order_from_list(tokens: Sequence, name: str = "") -> LinearOrderHandle:
    """The finite order whose elements are the listed tokens, in listed order."""
    index = {tok: i for i, tok in enumerate(tokens)}
    if len(index) != len(tokens):
        raise DomainError("duplicate tokens in order listing")
    return LinearOrderHandle(
        contains=lambda x: isinstance(x, (int, str)) and x in index,
        cmp=lambda a, b: _sign(index[a] - index[b]),
        enum=lambda bound: list(tokens[:bound]),
        name=name or f"listed{len(tokens)}",
    )


def adjoin_bottom(X: LinearOrderHandle) -> LinearOrderHandle:
    def cmp(a, b):
        if a is BOT:
            return EQUAL if b is BOT else LESS
        if b is BOT:
            return GREATER
        return X.cmp(a, b)

    return LinearOrderHandle(
        contains=lambda x: x is BOT or X.contains(x),
        cmp=cmp,
        enum=(lambda bound: [BOT] + X.enum(bound)) if X.enum else None,
        name=f"{X.name}+bot",
    )


def adjoin_top(X: LinearOrderHandle) -> LinearOrderHandle:
    def cmp(a, b):
        if a is TOP:
            return EQUAL if b is TOP else GREATER
        if b is TOP:
            return LESS
        return X.cmp(a, b)

    return LinearOrderHandle(
        contains=lambda x: x is TOP or X.contains(x),
        cmp=cmp,
        enum=(lambda bound: X.enum(bound) + [TOP]) if X.enum else None,
        name=f"{X.name}+top",
    )


def product(X: LinearOrderHandle, Y: LinearOrderHandle) -> LinearOrderHandle:
    def cmp(a, b):
        c = X.cmp(a[0], b[0])
        return c if c != 0 else Y.cmp(a[1], b[1])

    def contains(p):
        return isinstance(p, tuple) and len(p) == 2 and X.contains(p[0]) and Y.contains(p[1])

    enum = None
    if X.enum and Y.enum:
        enum = lambda bound: [(x, y) for x in X.enum(bound) for y in Y.enum(bound)]
    return LinearOrderHandle(contains, cmp, enum, name=f"({X.name}x{Y.name})")


def dependent_sum(X: LinearOrderHandle, family: Callable[[object], LinearOrderHandle]) -> LinearOrderHandle:
    """Sigma_{x in X} family(x), compared first component then second."""

    def fiber(x) -> LinearOrderHandle:
        try:
            return family(x)
        except KeyError as exc:
            raise DomainError(f"no fiber for {x!r}") from exc

    def cmp(a, b):
        c = X.cmp(a[0], b[0])
        return c if c != 0 else fiber(a[0]).cmp(a[1], b[1])

    def contains(p):
        if not (isinstance(p, tuple) and len(p) == 2 and X.contains(p[0])):
            return False
        return fiber(p[0]).contains(p[1])

    enum = None
    if X.enum:
        def enum(bound):
            out = []
            for x in X.enum(bound):
                fib = fiber(x)
                if fib.enum is None:
                    raise CapabilityError(f"fiber over {x!r} is not enumerable")
                out.extend((x, y) for y in fib.enum(bound))
            return out

    return LinearOrderHandle(contains, cmp, enum, name=f"Sigma({X.name})")


def restrict_below(X: LinearOrderHandle, x) -> LinearOrderHandle:
    if not X.contains(x):
        raise DomainError(f"{x!r} invalid in {X.name or '?'}")
    return LinearOrderHandle(
        contains=lambda y: X.contains(y) and X.cmp(y, x) < 0,
        cmp=X.cmp,
        enum=(lambda bound: [y for y in X.enum(bound) if X.cmp(y, x) < 0]) if X.enum else None,
        name=f"{X.name}|{x}",
    )


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(c: int) -> tuple[int, int]:
    w = (math.isqrt(8 * c + 1) - 1) // 2
    b = c - w * (w + 1) // 2
    return w - b, b


def seq_code(seq: Sequence[int]) -> int:
    """Injective code of a finite natural sequence; always >= len(seq)."""
    code = 0
    for x in seq:
        code = cantor_pair(code, x) + 1
    return code


def seq_decode(code: int) -> tuple[int, ...]:
    out = []
    while code > 0:
        code, x = cantor_unpair(code - 1)
        out.append(x)
    return tuple(reversed(out))


def verify_finite_linearity(ord: LinearOrderHandle, elems: Sequence) -> list:
    """Exhaustively verify that cmp is a linear order on the given elements.

    Sorts with the comparator, then checks the sign of every pair against the
    resulting ranks; consistency with a ranking implies transitivity.
    Returns a list of violation descriptions, empty on success.
    """
    elems = list(elems)
    ranked = ord.sorted(elems)
    rank = {}
    for i, e in enumerate(ranked):
        if e in rank:
            return [f"duplicate element {e!r}"]
        rank[e] = i
    violations = []
    for i, a in enumerate(elems):
        for b in elems:
            c = ord.cmp(a, b)
            expect = _sign(rank[a] - rank[b])
            if c != expect:
                violations.append(f"cmp({a!r},{b!r})={c}, rank order says {expect}")
    return violations
