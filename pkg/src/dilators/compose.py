"""Composition of prae-dilators, the collapse isomorphism, and morphisms.

Composite tokens at level n are extension terms of the outer dilator over the
order given by the inner dilator at n; nesting depth is unbounded by design.
Morphism validity is certified by a bounded exhaustive check before a morphism
is trusted by downstream constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .extension import (
    ExtTerm,
    ext_compare,
    ext_map,
    ext_member,
    ext_order,
    ext_term,
    mu_ext,
)
from .orders import (
    CapabilityError,
    ContractError,
    DomainError,
    FinEmbedding,
    LinearOrderHandle,
    OrderEmbedding,
    abs_of_embedding,
    _sign,
)
from .praedil import (
    PraeDilator,
    Report,
    embeddings_between,
    preimage_under_map,
)


@dataclass
class Morphism:
    """A natural family of embeddings between prae-dilators.

    ``certified_to`` records the largest level bound up to which
    check_morphism ran clean; downstream constructions trust it.
    """

    source: PraeDilator
    target: PraeDilator
    component: Callable[[int, object], object]
    normal: bool = False
    name: str = ""
    certified_to: int = -1


def identity_morphism(T: PraeDilator) -> Morphism:
    return Morphism(T, T, lambda n, tok: tok, normal=T.normal, name=f"id_{T.name}")


@dataclass
class UpperDerivative:
    """A normal prae-dilator together with a collapse onto it."""

    base: PraeDilator
    dilator: PraeDilator
    xi: Morphism
    certified_to: int = -1


def compose(T: PraeDilator, S: PraeDilator) -> PraeDilator:
    """The composite dilator: level n is the extension of T over S at n."""

    def member(n, tok):
        return ext_member(T, S.order_at(n), tok)

    def compare(n, a, b):
        return ext_compare(T, S.order_at(n), a, b)

    def cmap(f: FinEmbedding, tok):
        inner = OrderEmbedding(
            source=S.order_at(f.domain),
            target=S.order_at(f.codomain),
            apply=lambda s: S.map(f, s),
        )
        return ext_map(T, inner, tok)

    def supp(n, tok):
        out = frozenset()
        for s in tok.elems:
            out |= S.supp(n, s)
        return out

    enum = None
    size = None
    if T.enumerate is not None and S.enumerate is not None and T.size is not None and S.size is not None:
        # The size of a composite token weighs its inner parameter tokens, so
        # the enumeration lists exactly the members of size <= bound and the
        # preimage search in the support condition stays exact.
        def size(n, tok):
            return sum(S.size(n, e) for e in tok.elems) + T.size(len(tok.elems), tok.sigma)

        def enum(n, bound):
            import itertools

            carrier = S.order_at(n).sorted(S.tokens(n, bound))
            weights = {e: S.size(n, e) for e in carrier}
            out = []
            for k in range(len(carrier) + 1):
                for elems in itertools.combinations(carrier, k):
                    token_bound = bound - sum(weights[e] for e in elems)
                    if token_bound < 0:
                        continue
                    for sigma in T.tokens(k, token_bound):
                        if T.supp(k, sigma) == frozenset(range(k)):
                            out.append(ExtTerm(tuple(elems), sigma))
            return out

    mu = None
    if T.mu is not None and S.mu is not None:
        mu = lambda n, m: ExtTerm((S.mu(n, m),), T.mu(1, 0))

    return PraeDilator(
        name=f"({T.name}∘{S.name})",
        member=member,
        compare=compare,
        map=cmap,
        supp=supp,
        enumerate=enum,
        size=size,
        mu=mu,
    )


def zeta(T: PraeDilator, S: PraeDilator, X: LinearOrderHandle, s: ExtTerm) -> ExtTerm:
    """Collapse a term of T over the extension of S into a composite term over X.

    The inner parameter sets are merged; each inner token is pushed along the
    induced embedding into the merged level.
    """
    inner_terms = s.elems
    tau = s.sigma
    union: set = set()
    for t in inner_terms:
        union |= set(t.elems)
    c = X.canonical_set(union)
    pushed = []
    for t in inner_terms:
        iota = abs_of_embedding(t.elems, c, X)
        pushed.append(S.map(iota, t.sigma))
    inner = ext_term(T, S.order_at(len(c)), pushed, tau)
    return ext_term(compose(T, S), X, c, inner)


def zeta_inverse(T: PraeDilator, S: PraeDilator, X: LinearOrderHandle, t: ExtTerm) -> ExtTerm:
    """Split a composite term back into a term of T over the extension of S."""
    c = t.elems
    inner = t.sigma
    k = len(c)
    members = []
    for rho in inner.elems:
        supp = sorted(S.supp(k, rho))
        a = tuple(c[i] for i in supp)
        iota = FinEmbedding(tuple(supp), k)
        sigma = preimage_under_map(S, iota, rho, k)
        members.append(ExtTerm(a, sigma))
    return ext_term(T, ext_order(S, X), members, inner.sigma)


def ext_morphism(nu: Morphism, X: LinearOrderHandle, s: ExtTerm) -> ExtTerm:
    """Apply a morphism componentwise under the extension."""
    if nu.certified_to < 0:
        raise ContractError(f"morphism {nu.name or '?'} has not been certified")
    return ExtTerm(s.elems, nu.component(len(s.elems), s.sigma))


def lift(T: PraeDilator, nu: Morphism) -> Morphism:
    """Apply a morphism inside a composite: the outer dilator acts on it."""
    if nu.certified_to < 0:
        raise ContractError(f"morphism {nu.name or '?'} has not been certified")

    def component(n, tok):
        mapped = tuple(nu.component(n, s) for s in tok.elems)
        return ExtTerm(mapped, tok.sigma)

    return Morphism(
        source=compose(T, nu.source),
        target=compose(T, nu.target),
        component=component,
        normal=nu.normal and T.normal,
        name=f"{T.name}({nu.name})",
        certified_to=nu.certified_to,
    )


def check_morphism(nu: Morphism, N: int, bound: int = 4, expect_normal: Optional[bool] = None) -> Morphism:
    """Certify a morphism by bounded exhaustive checks; returns it certified.

    Verifies per-level embedding, naturality over all maps between levels up
    to N, the support (Cartesian) identity, and mu-compatibility for normal
    morphisms.  Raises on any violation.
    """
    report = check_morphism_report(nu, N, bound, expect_normal)
    if not report.passed:
        raise ContractError(f"morphism {nu.name or '?'} failed certification: {report.violations[:3]}")
    nu.certified_to = N
    return nu


def check_morphism_report(nu: Morphism, N: int, bound: int = 4, expect_normal: Optional[bool] = None) -> Report:
    T, S = nu.source, nu.target
    if T.enumerate is None:
        raise CapabilityError(f"source of {nu.name or '?'} is not enumerable")
    normal = nu.normal if expect_normal is None else expect_normal
    report = Report(name="morphism", params={"morphism": nu.name, "N": N, "bound": bound})
    members = {n: T.tokens(n, bound) for n in range(N + 1)}
    for n in range(N + 1):
        toks = members[n]
        for tok in toks:
            image = nu.component(n, tok)
            if not S.member(n, image):
                report.record("component-membership", f"n={n} tok={tok!r}")
            if S.supp(n, image) != T.supp(n, tok):
                report.record("cartesian-support", f"n={n} tok={tok!r}")
            report.checks += 2
        for a in toks:
            for b in toks:
                if _sign(S.compare(n, nu.component(n, a), nu.component(n, b))) != _sign(T.compare(n, a, b)):
                    report.record("component-embedding", f"n={n} a={a!r} b={b!r}")
                report.checks += 1
        for m in range(N + 1):
            for f in embeddings_between(n, m):
                for tok in toks:
                    if nu.component(m, T.map(f, tok)) != S.map(f, nu.component(n, tok)):
                        report.record("naturality", f"f={f.values}->{m} tok={tok!r}")
                    report.checks += 1
        if normal:
            if T.mu is None or S.mu is None:
                report.record("mu-compatibility", f"n={n}: missing normal structure")
            else:
                for m in range(n):
                    if nu.component(n, T.mu(n, m)) != S.mu(n, m):
                        report.record("mu-compatibility", f"n={n} m={m}")
                    report.checks += 1
    return report


def check_upper_derivative(T: PraeDilator, ud: UpperDerivative, N: int, bound: int = 4) -> UpperDerivative:
    """Certify an upper derivative; returns it with the certificate recorded."""
    report = check_upper_derivative_report(T, ud, N, bound)
    if not report.passed:
        raise ContractError(f"upper derivative over {T.name} failed certification: {report.violations[:3]}")
    ud.certified_to = N
    ud.xi.certified_to = max(ud.xi.certified_to, N)
    return ud


def check_upper_derivative_report(T: PraeDilator, ud: UpperDerivative, N: int, bound: int = 4) -> Report:
    if ud.dilator.mu is None:
        report = Report(name="upper-derivative", params={"base": T.name, "N": N})
        report.record("normality", "carrier dilator has no normal structure")
        return report
    report = check_morphism_report(ud.xi, N, bound, expect_normal=True)
    report.name = "upper-derivative"
    report.params = {"base": T.name, "dilator": ud.dilator.name, "N": N, "bound": bound}
    return report


def check_cartesian(nu: Morphism, N: int, bound: int = 4) -> Report:
    """The support identity alone, as a standalone report."""
    T, S = nu.source, nu.target
    report = Report(name="cartesian", params={"morphism": nu.name, "N": N, "bound": bound})
    for n in range(N + 1):
        for tok in T.tokens(n, bound):
            if S.supp(n, nu.component(n, tok)) != T.supp(n, tok):
                report.record("cartesian-support", f"n={n} tok={tok!r}")
            report.checks += 1
    return report


def collapse_fixed_point_identity(T: PraeDilator, ud: UpperDerivative, X: LinearOrderHandle, x) -> bool:
    """The collapse fixes every mu-image of the carrier over X.

    Computes xi applied (via zeta) to the doubly lifted mu-image of x and
    compares with the direct mu-image.
    """
    S = ud.dilator
    DSX = ext_order(S, X)
    inner = mu_ext(S, X, x)
    outer = mu_ext(T, DSX, inner)
    composite = zeta(T, S, X, outer)
    collapsed = ext_morphism(ud.xi, X, composite)
    return collapsed == inner


def zplus_upper_derivative() -> UpperDerivative:
    """The integers-plus-finite carrier as an upper derivative of the segment dilator."""
    from .praedil import segment_dilator, zplus_dilator, zplus_token, _is_zhat

    T = segment_dilator()
    S = zplus_dilator()

    def component(n, tok):
        # Tokens of the composite at n are ⟨{sigma}, 0⟩ with sigma in S_n.
        (sigma,) = tok.elems
        if _is_zhat(sigma):
            return zplus_token(sigma[1] + 1)
        return sigma

    xi = Morphism(source=compose(T, S), target=S, component=component, normal=True, name="zplus-collapse")
    return UpperDerivative(base=T, dilator=S, xi=xi)
