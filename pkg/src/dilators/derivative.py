"""The derivative term system of a normal prae-dilator.

Terms are either generator leaves ``Mu(m)`` or collapsed applications
``Xi(members, sigma)`` whose member sets are stored ascending under the
derivative order itself.  The Goedel-number component of the length function
is instantiated as serialized node count; only the strict-decrease property
of lengths is relied on downstream.

Comparison results are memoized; all cached functions are pure and the caches
are safe for concurrent use.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .compose import Morphism, UpperDerivative, check_upper_derivative, compose
from .extension import ExtTerm, ext_order, ext_term
from .orders import (
    CapabilityError,
    ContractError,
    DomainError,
    FinEmbedding,
    LinearOrderHandle,
    _sign,
    fin_less,
)
from .praedil import PraeDilator


@dataclass(frozen=True)
class Mu:
    """Generator leaf: the image of a level element under the mu embedding."""

    index: int

    def __repr__(self) -> str:
        return f"Mu({self.index})"


@dataclass(frozen=True)
class Xi:
    """Collapsed application: ascending member set plus a full-support token."""

    members: tuple
    sigma: object

    def __repr__(self) -> str:
        return f"Xi({list(self.members)!r}, {self.sigma!r})"


DerivTerm = object  # Mu | Xi


@functools.lru_cache(maxsize=1 << 20)
def _cmp(T: PraeDilator, s, t) -> int:
    if s == t:
        return 0
    if isinstance(s, Mu) and isinstance(t, Mu):
        return _sign(s.index - t.index)
    if isinstance(s, Mu):
        # s below t iff s is below-or-equal some member of t.
        return -1 if any(_cmp(T, s, r) <= 0 for r in t.members) else 1
    if isinstance(t, Mu):
        return -1 if all(_cmp(T, r, t) < 0 for r in s.members) else 1
    merged = _merge_members(T, s.members, t.members)
    pos = {r: i for i, r in enumerate(merged)}
    fs = FinEmbedding(tuple(pos[r] for r in s.members), len(merged))
    ft = FinEmbedding(tuple(pos[r] for r in t.members), len(merged))
    c = T.compare(len(merged), T.map(fs, s.sigma), T.map(ft, t.sigma))
    # Token equality at the merged level would force structural term equality.
    if c == 0:
        raise DomainError(f"distinct terms {s!r} and {t!r} compare equal")
    return c


def _merge_members(T: PraeDilator, a: tuple, b: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        c = _cmp(T, a[i], b[j])
        if c < 0:
            out.append(a[i]); i += 1
        elif c > 0:
            out.append(b[j]); j += 1
        else:
            out.append(a[i]); i += 1; j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def deriv_compare(T: PraeDilator, n: int, s, t) -> int:
    """Total comparison on the derivative term system at any level."""
    return _cmp(T, s, t)


def deriv_order(T: PraeDilator, n: int) -> LinearOrderHandle:
    return LinearOrderHandle(
        contains=lambda s: deriv_member(T, n, s),
        cmp=lambda s, t: _cmp(T, s, t),
        enum=(lambda bound: deriv_enumerate(T, n, bound)) if T.enumerate else None,
        name=f"d{T.name}_{n}",
    )


def deriv_member(T: PraeDilator, n: int, candidate) -> bool:
    """Full recursive invariant check, including the proviso on singletons."""
    if isinstance(candidate, Mu):
        return 0 <= candidate.index < n
    if not isinstance(candidate, Xi):
        return False
    members, sigma = candidate.members, candidate.sigma
    if not isinstance(members, tuple):
        return False
    if not all(deriv_member(T, n, r) for r in members):
        return False
    for a, b in zip(members, members[1:]):
        if _cmp(T, a, b) >= 0:
            return False
    k = len(members)
    if not T.member(k, sigma) or T.supp(k, sigma) != frozenset(range(k)):
        return False
    if k == 1 and isinstance(members[0], Mu) and sigma == T.mu(1, 0):
        return False
    return True


def make_xi(T: PraeDilator, members: Iterable, sigma) -> Xi:
    """Canonicalizing constructor: sorts members and validates every invariant."""
    members = tuple(sorted(members, key=functools.cmp_to_key(lambda a, b: _cmp(T, a, b))))
    for a, b in zip(members, members[1:]):
        if _cmp(T, a, b) == 0:
            raise DomainError(f"duplicate member {a!r}")
    term = Xi(members, sigma)
    if not deriv_member(T, 10 ** 9, term):
        raise DomainError(f"invalid derivative term {term!r}")
    return term


@functools.lru_cache(maxsize=1 << 20)
def node_count(T: PraeDilator, s) -> int:
    """Serialized node count: one per constructor plus the token size."""
    if isinstance(s, Mu):
        return 1
    return 1 + sum(node_count(T, r) for r in s.members) + T.size(len(s.members), s.sigma)


def deriv_len(T: PraeDilator, n: int, s) -> int:
    """Length function: node count, forced above twice the member lengths."""
    if isinstance(s, Mu):
        return node_count(T, s)
    return max(node_count(T, s), 1 + sum(2 * deriv_len(T, n, r) for r in s.members))


def deriv_map(T: PraeDilator, f: FinEmbedding, s):
    """Relabel generator leaves along f; member order is preserved."""
    if isinstance(s, Mu):
        return Mu(f(s.index))
    return Xi(tuple(deriv_map(T, f, r) for r in s.members), s.sigma)


def deriv_supp(T: PraeDilator, n: int, s) -> frozenset:
    if isinstance(s, Mu):
        return frozenset({s.index})
    out = frozenset()
    for r in s.members:
        out |= deriv_supp(T, n, r)
    return out


def deriv_mu(n: int, m: int) -> Mu:
    if not 0 <= m < n:
        raise DomainError(f"mu index {m} outside level {n}")
    return Mu(m)


def xi_T(T: PraeDilator, n: int, s: ExtTerm):
    """The collapse: singleton mu-images fold to their leaf, everything else to Xi."""
    if len(s.elems) == 1 and isinstance(s.elems[0], Mu) and s.sigma == T.mu(1, 0):
        return s.elems[0]
    return Xi(tuple(s.elems), s.sigma)


def xi_T_inverse(T: PraeDilator, n: int, s) -> ExtTerm:
    if isinstance(s, Mu):
        return ExtTerm((s,), T.mu(1, 0))
    return ExtTerm(s.members, s.sigma)


def deriv_enumerate(T: PraeDilator, n: int, bound: int) -> list:
    """All derivative terms of node count <= bound, by closure rounds."""
    return list(_deriv_enumerate(T, n, bound))


@functools.lru_cache(maxsize=4096)
def _deriv_enumerate(T: PraeDilator, n: int, bound: int) -> tuple:
    if T.enumerate is None:
        raise CapabilityError(f"dilator {T.name} is not enumerable")
    known: list = [Mu(m) for m in range(n)] if bound >= 1 else []
    known_set = set(known)
    mu_token = T.mu(1, 0) if T.mu else None
    while True:
        pool = sorted(known, key=functools.cmp_to_key(lambda a, b: _cmp(T, a, b)))
        sizes = [node_count(T, r) for r in pool]
        new = []

        def extend(start: int, chosen: tuple, budget: int):
            # Budget is what remains for further members plus the token size.
            k = len(chosen)
            for sigma in T.tokens(k, budget):
                if T.supp(k, sigma) != frozenset(range(k)):
                    continue
                if k == 1 and isinstance(chosen[0], Mu) and sigma == mu_token:
                    continue
                term = Xi(chosen, sigma)
                if term not in known_set:
                    new.append(term)
            for i in range(start, len(pool)):
                if sizes[i] <= budget:
                    extend(i + 1, chosen + (pool[i],), budget - sizes[i])

        extend(0, (), bound - 1)
        if not new:
            return tuple(known)
        known.extend(new)
        known_set.update(new)


def universal_morphism(T: PraeDilator, target: UpperDerivative) -> Morphism:
    """The morphism out of the derivative determined by the collapse recursion."""
    if target.certified_to < 0:
        raise ContractError("target upper derivative has not been certified")
    S = target.dilator
    xi = target.xi
    cache: dict = {}

    def component(n: int, s):
        key = (n, s)
        if key in cache:
            return cache[key]
        if isinstance(s, Mu):
            out = S.mu(n, s.index)
        else:
            images = [component(n, r) for r in s.members]
            out = xi.component(n, ext_term(T, S.order_at(n), images, s.sigma))
        cache[key] = out
        return out

    return Morphism(
        source=deriv_as_praedilator(T),
        target=S,
        component=component,
        normal=True,
        name=f"univ(d{T.name}->{S.name})",
    )


@functools.lru_cache(maxsize=64)
def deriv_as_praedilator(T: PraeDilator) -> PraeDilator:
    """Package the derivative behaviorally, enabling iterated derivatives."""
    if T.mu is None:
        raise DomainError(f"dilator {T.name} is not normal")
    return PraeDilator(
        name=f"d({T.name})",
        member=lambda n, s: deriv_member(T, n, s),
        compare=lambda n, a, b: _cmp(T, a, b),
        map=lambda f, s: deriv_map(T, f, s),
        supp=lambda n, s: deriv_supp(T, n, s),
        enumerate=(lambda n, bound: list(deriv_enumerate(T, n, bound))) if T.enumerate else None,
        size=lambda n, s: node_count(T, s),
        mu=lambda n, m: deriv_mu(n, m),
    )


def deriv_xi_morphism(T: PraeDilator) -> Morphism:
    """The collapse as a morphism from the composite onto the derivative."""
    D = deriv_as_praedilator(T)
    return Morphism(
        source=compose(T, D),
        target=D,
        component=lambda n, s: xi_T(T, n, s),
        normal=True,
        name=f"xi({T.name})",
    )


def deriv_upper_derivative(T: PraeDilator, certify_to: int = -1, bound: int = 4) -> UpperDerivative:
    """The derivative with its collapse, optionally certified up to a level."""
    ud = UpperDerivative(base=T, dilator=deriv_as_praedilator(T), xi=deriv_xi_morphism(T))
    if certify_to >= 0:
        check_upper_derivative(T, ud, certify_to, bound)
    return ud


def ht(T: PraeDilator, n: int, s) -> int:
    """Height: zero on leaves, one plus the height of the largest member."""
    if isinstance(s, Mu):
        return 0
    if not s.members:
        return 1
    return ht(T, n, s.members[-1]) + 1


@dataclass(frozen=True)
class HeightedSegmentQuery:
    """Membership query for the height-bounded segment below x."""

    x: object
    k: int
    term: ExtTerm


def segment_member(T: PraeDilator, X: LinearOrderHandle, q: HeightedSegmentQuery, search_bound: int = 64) -> bool:
    """Decide membership in the height-k segment at x.

    A term with parameters entirely below some earlier point belongs
    regardless of height; the search for such a point scans the rank-bounded
    enumeration, which is exact for the finite and natural-number orders the
    suites use.
    """
    elems = q.term.elems
    if not fin_less(X, elems, q.x):
        return False
    if X.enum is not None:
        for y in X.enumerate(search_bound):
            if X.cmp(y, q.x) < 0 and fin_less(X, elems, y):
                return True
    return ht(T, len(elems), q.term.sigma) <= q.k


@dataclass
class ChainSearchResult:
    """Outcome of a bounded descending-chain search.

    ``conclusive`` means the candidate pool was fully explored; absence of a
    chain is then definitive for the pool (not for the whole order unless the
    pool exhausts it).
    """

    chain: Optional[list]
    pool_size: int
    visited: int
    conclusive: bool

    @property
    def found(self) -> bool:
        return self.chain is not None


def chain_search(order: LinearOrderHandle, depth: int, budget: int,
                 pool: Optional[list] = None, seed: int = 0) -> ChainSearchResult:
    """Backtracking search for a strictly descending chain of the given depth.

    The pool defaults to the order's rank-bounded enumeration at the budget.
    The search visits at most ``budget`` extension steps; exceeding it yields
    an inconclusive result.
    """
    if pool is None:
        pool = order.enumerate(budget)
    rng = random.Random(seed)
    distinct = []
    for e in order.sorted(pool):
        if not distinct or order.cmp(distinct[-1], e) < 0:
            distinct.append(e)
    # Rank = number of strictly smaller pool elements; chains below an element
    # cannot be longer than its rank, which prunes hopeless branches.
    rank = {e: i for i, e in enumerate(distinct)}
    candidates = list(distinct)
    rng.shuffle(candidates)
    visited = 0

    def descend(current, chain):
        nonlocal visited
        if len(chain) >= depth:
            return chain
        for nxt in candidates:
            if visited >= budget:
                return None
            visited += 1
            if current is not None and order.cmp(nxt, current) >= 0:
                continue
            if rank[nxt] < depth - len(chain) - 1:
                continue
            got = descend(nxt, chain + [nxt])
            if got is not None:
                return got
        return None

    chain = descend(None, [])
    conclusive = chain is not None or visited < budget
    return ChainSearchResult(chain=chain, pool_size=len(pool), visited=visited, conclusive=conclusive)


def random_deriv_term(rng: random.Random, T: PraeDilator, n: int, budget: int):
    """Sample a valid derivative term within the node budget."""
    if n > 0 and (budget <= 1 or rng.random() < 0.3):
        return Mu(rng.randrange(n))
    for _ in range(32):
        want = rng.randint(0, min(3, max(0, budget - 1)))
        members: list = []
        share = max(1, (budget - 2) // max(1, want))
        for _ in range(want):
            try:
                cand = random_deriv_term(rng, T, n, rng.randint(1, share))
            except DomainError:
                continue
            if all(_cmp(T, cand, m) != 0 for m in members):
                members.append(cand)
        k = len(members)
        token_budget = max(0, budget - 1 - sum(node_count(T, m) for m in members))
        tokens = [s for s in T.tokens(k, token_budget) if T.supp(k, s) == frozenset(range(k))]
        rng.shuffle(tokens)
        for sigma in tokens:
            try:
                return make_xi(T, members, sigma)
            except DomainError:
                continue
    if n > 0:
        return Mu(rng.randrange(n))
    raise DomainError("could not sample a term within the budget")
