"""The class-sized extension of a coded prae-dilator along an arbitrary order.

Terms are pairs of a finite parameter set (stored ascending under the base
order) and a token whose support uses every parameter position.  The fullness
condition is what makes comparison a linear order, so it is checked eagerly
at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .orders import (
    DomainError,
    FinEmbedding,
    LinearOrderHandle,
    OrderEmbedding,
    abs_of_embedding,
    fin_less,
)
from .praedil import PraeDilator, preimage_under_map


@dataclass(frozen=True)
class ExtTerm:
    """A term of the extension: parameter set (ascending) plus dilator token."""

    elems: tuple
    sigma: object

    def __repr__(self) -> str:
        return f"Ext({list(self.elems)!r}, {self.sigma!r})"


def ext_term(T: PraeDilator, X: LinearOrderHandle, elems: Iterable, sigma) -> ExtTerm:
    """Canonicalizing constructor; validates every term invariant."""
    elems = X.canonical_set(elems)
    for x in elems:
        if not X.contains(x):
            raise DomainError(f"parameter {x!r} invalid in {X.name or '?'}")
    k = len(elems)
    if not T.member(k, sigma):
        raise DomainError(f"token {sigma!r} is not a member of {T.name} at level {k}")
    if T.supp(k, sigma) != frozenset(range(k)):
        raise DomainError(f"token {sigma!r} does not use all {k} parameters")
    return ExtTerm(elems, sigma)


def ext_member(T: PraeDilator, X: LinearOrderHandle, candidate) -> bool:
    """Total validity test; never raises on malformed input."""
    if isinstance(candidate, ExtTerm):
        elems, sigma = candidate.elems, candidate.sigma
    elif isinstance(candidate, tuple) and len(candidate) == 2:
        elems, sigma = candidate
    else:
        return False
    try:
        return ext_term(T, X, elems, sigma) == ExtTerm(tuple(elems), sigma)
    except (DomainError, TypeError):
        return False


def ext_supp(s: ExtTerm) -> tuple:
    """The support of an extension term is its parameter set."""
    return s.elems


def ext_compare(T: PraeDilator, X: LinearOrderHandle, s: ExtTerm, t: ExtTerm) -> int:
    """Push both tokens along the union of the parameter sets and compare there."""
    if s.elems == t.elems:
        return T.compare(len(s.elems), s.sigma, t.sigma)
    union = X.sorted(set(s.elems) | set(t.elems))
    # Structurally distinct parameters may still compare equal; reject them.
    for a, b in zip(union, union[1:]):
        if X.cmp(a, b) == 0:
            raise DomainError(f"parameters {a!r} and {b!r} compare equal but differ")
    fs = abs_of_embedding(s.elems, union, X)
    ft = abs_of_embedding(t.elems, union, X)
    return T.compare(len(union), T.map(fs, s.sigma), T.map(ft, t.sigma))


def ext_order(T: PraeDilator, X: LinearOrderHandle) -> LinearOrderHandle:
    """The extension as an order handle; enumerable when T and X are."""
    enum = None
    if T.enumerate is not None and X.enum is not None:
        enum = lambda bound: ext_enumerate(T, X, bound)
    return LinearOrderHandle(
        contains=lambda s: ext_member(T, X, s),
        cmp=lambda s, t: ext_compare(T, X, s, t),
        enum=enum,
        name=f"D^{T.name}({X.name})",
    )


def ext_size(T: PraeDilator, s: ExtTerm) -> int:
    """Size measure for enumeration: parameter count plus token size."""
    return len(s.elems) + T.size(len(s.elems), s.sigma)


def ext_enumerate(T: PraeDilator, X: LinearOrderHandle, bound: int) -> list:
    """All extension terms of size <= bound over the rank-bounded carrier."""
    import itertools

    carrier = X.sorted(X.enumerate(bound))
    out = []
    for k in range(bound + 1):
        for elems in itertools.combinations(carrier, k):
            token_bound = bound - k
            for sigma in T.tokens(k, token_bound):
                if T.supp(k, sigma) == frozenset(range(k)):
                    out.append(ExtTerm(tuple(elems), sigma))
    return out


def ext_map(T: PraeDilator, f: OrderEmbedding, s: ExtTerm) -> ExtTerm:
    """Functorial action: relabel the parameters, keep the token."""
    image = tuple(f.apply(x) for x in s.elems)
    for a, b in zip(image, image[1:]):
        if f.target.cmp(a, b) >= 0:
            raise DomainError(f"map {f.name or '?'} is not order preserving on {s.elems!r}")
    return ExtTerm(image, s.sigma)


def eta(T: PraeDilator, n: int, s: ExtTerm):
    """Collapse a term over the finite order n to a plain token of T_n."""
    f = FinEmbedding(tuple(s.elems), n)
    return T.map(f, s.sigma)


def eta_inverse(T: PraeDilator, n: int, sigma) -> ExtTerm:
    """Factor a token through its support; inverse to eta."""
    if not T.member(n, sigma):
        raise DomainError(f"{sigma!r} is not a member of {T.name} at level {n}")
    supp = tuple(sorted(T.supp(n, sigma)))
    f = FinEmbedding(supp, n)
    sigma0 = preimage_under_map(T, f, sigma, n)
    return ExtTerm(supp, sigma0)


def mu_ext(T: PraeDilator, X: LinearOrderHandle, x) -> ExtTerm:
    """The extension of the normal structure: x maps to ⟨{x}, mu(1,0)⟩."""
    if T.mu is None:
        raise DomainError(f"dilator {T.name} has no normal structure")
    if not X.contains(x):
        raise DomainError(f"{x!r} invalid in {X.name or '?'}")
    return ExtTerm((x,), T.mu(1, 0))


def below_mu_ext(X: LinearOrderHandle, s: ExtTerm, x) -> bool:
    """The characterization of terms below a mu-image: all parameters below x."""
    return fin_less(X, s.elems, x)


def range_filter(T: PraeDilator, f: OrderEmbedding, terms: Iterable[ExtTerm]):
    """Split terms over the target by the support test for the range of the map.

    Returns (in_range, out_of_range) where in_range pairs each term with its
    preimage over the source.
    """
    if f.inverse is None:
        raise DomainError("range test requires an embedding with a partial inverse")
    inside, outside = [], []
    for t in terms:
        pre = [f.inverse(y) for y in t.elems]
        if all(p is not None for p in pre):
            inside.append((t, ExtTerm(tuple(pre), t.sigma)))
        else:
            outside.append(t)
    return inside, outside
