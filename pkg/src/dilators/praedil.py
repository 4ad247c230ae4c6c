"""Coded prae-dilators: the behavioral abstraction, built-ins, and law validators.

A prae-dilator is a bundle of pure functions: per-level membership, total
comparison, the action on strictly increasing finite maps, a finite support
function, and (optionally) a bounded enumeration with a documented size
measure.  A normal structure adds the embeddings ``mu(n, m)``.

Built-in size measures: ``omega`` counts sequence entries; ``zplus`` counts
``|p| + 1`` for the integer tokens and 1 for finite parts; the remaining
built-ins assign size 1 to every token.  All built-in size measures are
invariant under the functorial action.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .orders import (
    CapabilityError,
    DomainError,
    FinEmbedding,
    LinearOrderHandle,
    _Atom,
    _sign,
    finsubset_image,
    fin_less,
    verify_finite_linearity,
)

OMEGA_TOP = _Atom("Om")
STAR = _Atom("star")


@dataclass(frozen=True)
class PraeDilator:
    """Behavioral record for a coded prae-dilator, optionally normal.

    ``mu`` is the normal structure when present.  ``size`` backs the
    ``enumerate`` contract: enumerate(n, bound) lists exactly the members of
    size <= bound, each once.
    """

    name: str
    member: Callable[[int, object], bool]
    compare: Callable[[int, object, object], int]
    map: Callable[[FinEmbedding, object], object]
    supp: Callable[[int, object], frozenset]
    enumerate: Optional[Callable[[int, int], list]] = None
    size: Optional[Callable[[int, object], int]] = None
    mu: Optional[Callable[[int, int], object]] = None

    @property
    def normal(self) -> bool:
        return self.mu is not None

    def order_at(self, n: int) -> LinearOrderHandle:
        return LinearOrderHandle(
            contains=lambda tok: self.member(n, tok),
            cmp=lambda a, b: self.compare(n, a, b),
            enum=(lambda bound: self.enumerate(n, bound)) if self.enumerate else None,
            name=f"{self.name}_{n}",
        )

    def tokens(self, n: int, bound: int) -> list:
        if self.enumerate is None:
            raise CapabilityError(f"dilator {self.name} is not enumerable")
        return self.enumerate(n, bound)


def embeddings_between(n: int, m: int) -> list[FinEmbedding]:
    """All strictly increasing maps n -> m."""
    return [FinEmbedding(vals, m) for vals in itertools.combinations(range(m), n)]


def preimage_under_map(T: PraeDilator, f: FinEmbedding, sigma, n: int):
    """Find the token sigma0 with T.map(f, sigma0) == sigma, searching by size.

    The support condition of a lawful prae-dilator guarantees existence when f
    covers the support of sigma; built-in size measures are map-invariant, so
    the search bound T.size(n, sigma) is exact.
    """
    if T.enumerate is None or T.size is None:
        raise CapabilityError(f"dilator {T.name} cannot invert its map action")
    bound = T.size(n, sigma)
    for cand in T.enumerate(f.domain, bound):
        if T.map(f, cand) == sigma:
            return cand
    raise DomainError(f"{sigma!r} is not in the range of the map action along {f.values}")


def omega_dilator() -> PraeDilator:
    """Formal Cantor normal forms: weakly decreasing sequences with entries < n."""

    def member(n, tok):
        if not (isinstance(tok, tuple) and all(isinstance(e, int) and 0 <= e < n for e in tok)):
            return False
        return all(a >= b for a, b in zip(tok, tok[1:]))

    def compare(n, a, b):
        # Lexicographic with the shorter sum smaller on agreement.
        for x, y in zip(a, b):
            if x != y:
                return _sign(x - y)
        return _sign(len(a) - len(b))

    def enum(n, bound):
        out = [()]
        frontier = [()]
        for _ in range(bound):
            frontier = [s + (e,) for s in frontier for e in range(min(n - 1, s[-1]) if s else n - 1, -1, -1)]
            out.extend(frontier)
        return out

    return PraeDilator(
        name="omega",
        member=member,
        compare=compare,
        map=lambda f, tok: tuple(f(e) for e in tok),
        supp=lambda n, tok: frozenset(tok),
        enumerate=enum,
        size=lambda n, tok: len(tok),
        mu=lambda n, m: (m,),
    )


def bump_dilator() -> PraeDilator:
    """The finite levels plus a new biggest element with empty support."""

    def compare(n, a, b):
        if a is OMEGA_TOP:
            return 0 if b is OMEGA_TOP else 1
        if b is OMEGA_TOP:
            return -1
        return _sign(a - b)

    return PraeDilator(
        name="bump",
        member=lambda n, tok: tok is OMEGA_TOP or (isinstance(tok, int) and 0 <= tok < n),
        compare=compare,
        map=lambda f, tok: tok if tok is OMEGA_TOP else f(tok),
        supp=lambda n, tok: frozenset() if tok is OMEGA_TOP else frozenset({tok}),
        enumerate=lambda n, bound: (list(range(n)) + [OMEGA_TOP]) if bound >= 1 else [],
        size=lambda n, tok: 1,
    )


def segment_dilator() -> PraeDilator:
    """The identity-like dilator: level n is the finite order n itself."""

    return PraeDilator(
        name="segment",
        member=lambda n, tok: isinstance(tok, int) and 0 <= tok < n,
        compare=lambda n, a, b: _sign(a - b),
        map=lambda f, tok: f(tok),
        supp=lambda n, tok: frozenset({tok}),
        enumerate=lambda n, bound: list(range(n)) if bound >= 1 else [],
        size=lambda n, tok: 1,
        mu=lambda n, m: m,
    )


def zplus_token(p: int) -> tuple:
    """The copy-of-the-integers token written ẑ(p)."""
    return ("z", p)


def _is_zhat(tok) -> bool:
    return isinstance(tok, tuple) and len(tok) == 2 and tok[0] == "z" and isinstance(tok[1], int)


def zplus_dilator() -> PraeDilator:
    """Level n is a copy of the integers followed by the finite order n.

    The integer part makes every level ill-founded, which is what makes this
    the standard counterexample for chain search.
    """

    def compare(n, a, b):
        if _is_zhat(a):
            return _sign(a[1] - b[1]) if _is_zhat(b) else -1
        if _is_zhat(b):
            return 1
        return _sign(a - b)

    def enum(n, bound):
        if bound < 1:
            return []
        zpart = [zplus_token(p) for p in range(-(bound - 1), bound)]
        return zpart + list(range(n))

    return PraeDilator(
        name="zplus",
        member=lambda n, tok: _is_zhat(tok) or (isinstance(tok, int) and 0 <= tok < n),
        compare=compare,
        map=lambda f, tok: tok if _is_zhat(tok) else f(tok),
        supp=lambda n, tok: frozenset() if _is_zhat(tok) else frozenset({tok}),
        enumerate=enum,
        size=lambda n, tok: abs(tok[1]) + 1 if _is_zhat(tok) else 1,
        mu=lambda n, m: m,
    )


def constant_star_dilator() -> PraeDilator:
    """The one-element dilator; its single token has empty support."""

    return PraeDilator(
        name="star",
        member=lambda n, tok: tok is STAR,
        compare=lambda n, a, b: 0,
        map=lambda f, tok: tok,
        supp=lambda n, tok: frozenset(),
        enumerate=lambda n, bound: [STAR] if bound >= 1 else [],
        size=lambda n, tok: 1,
    )


REGISTRY: dict[str, Callable[[], PraeDilator]] = {
    "omega": omega_dilator,
    "bump": bump_dilator,
    "segment": segment_dilator,
    "zplus": zplus_dilator,
    "star": constant_star_dilator,
}


def registry_get(name: str) -> PraeDilator:
    try:
        return REGISTRY[name]()
    except KeyError as exc:
        raise DomainError(f"unknown dilator {name!r}") from exc


@dataclass
class Report:
    """Outcome of a bounded exhaustive law check."""

    name: str
    params: dict
    checks: int = 0
    violations: list = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, law: str, witness: str):
        self.violations.append({"law": law, "witness": witness})

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "checks": self.checks,
            "passed": self.passed,
            "violations": sorted(self.violations, key=lambda v: (v["law"], v["witness"])),
        }


def check_praedilator_laws(T: PraeDilator, N: int, bound: int = 4) -> Report:
    """Exhaustively verify the prae-dilator laws for all levels n <= N.

    Checks membership coherence, linearity of compare, functor laws over all
    embeddings f : n -> m with m <= N, support naturality, and the
    support/range condition, on the enumerated members of size <= bound.
    """
    if T.enumerate is None:
        raise CapabilityError(f"dilator {T.name} is not enumerable")
    report = Report(name="praedilator-laws", params={"dilator": T.name, "N": N, "bound": bound})
    members = {n: T.tokens(n, bound) for n in range(N + 1)}

    for n in range(N + 1):
        toks = members[n]
        for tok in toks:
            if not T.member(n, tok):
                report.record("membership", f"n={n} enumerated {tok!r} rejected by member")
        for v in verify_finite_linearity(T.order_at(n), toks):
            report.record("linearity", f"n={n}: {v}")
        report.checks += len(toks) * len(toks)

        ident = FinEmbedding.identity(n)
        for tok in toks:
            if T.map(ident, tok) != tok:
                report.record("functor-identity", f"n={n} tok={tok!r}")
            supp = T.supp(n, tok)
            if not all(isinstance(i, int) and 0 <= i < n for i in supp):
                report.record("supp-range", f"n={n} tok={tok!r} supp={set(supp)}")
            # Support condition: the token factors through its own support.
            f = FinEmbedding(tuple(sorted(supp)), n)
            try:
                preimage_under_map(T, f, tok, n)
            except DomainError:
                report.record("support-condition", f"n={n} tok={tok!r}")
            report.checks += 2

        for m in range(N + 1):
            for f in embeddings_between(n, m):
                for tok in toks:
                    image = T.map(f, tok)
                    if not T.member(m, image):
                        report.record("map-membership", f"f={f.values} tok={tok!r}")
                    if T.supp(m, image) != frozenset(finsubset_image(f, T.supp(n, tok))):
                        report.record("supp-naturality", f"f={f.values}->{m} tok={tok!r}")
                    report.checks += 2
                for a in toks:
                    for b in toks:
                        if _sign(T.compare(m, T.map(f, a), T.map(f, b))) != _sign(T.compare(n, a, b)):
                            report.record("map-embedding", f"f={f.values} a={a!r} b={b!r}")
                        report.checks += 1
                for g_m in range(N + 1):
                    for g in embeddings_between(m, g_m):
                        for tok in toks:
                            if T.map(g, T.map(f, tok)) != T.map(g.compose(f), tok):
                                report.record("functor-composition", f"g={g.values} f={f.values} tok={tok!r}")
                            report.checks += 1
    return report


def check_normality(T: PraeDilator, N: int, bound: int = 4, mu: Callable[[int, int], object] = None) -> Report:
    """Exhaustively verify the normality equivalence and singleton supports."""
    mu = mu or T.mu
    if mu is None:
        raise CapabilityError(f"dilator {T.name} has no normal structure to check")
    if T.enumerate is None:
        raise CapabilityError(f"dilator {T.name} is not enumerable")
    report = Report(name="normality", params={"dilator": T.name, "N": N, "bound": bound})
    for n in range(N + 1):
        toks = T.tokens(n, bound)
        order_n = LinearOrderHandle(lambda x: True, lambda a, b: _sign(a - b), name="fin")
        for m in range(n):
            mtok = mu(n, m)
            if not T.member(n, mtok):
                report.record("mu-membership", f"n={n} m={m}")
                continue
            if T.supp(n, mtok) != frozenset({m}):
                report.record("mu-singleton-supp", f"n={n} m={m} supp={set(T.supp(n, mtok))}")
            for k in range(n):
                if _sign(T.compare(n, mu(n, m), mu(n, k))) != _sign(m - k):
                    report.record("mu-embedding", f"n={n} m={m} k={k}")
                report.checks += 1
            for sigma in toks:
                below = T.compare(n, sigma, mtok) < 0
                supp_below = fin_less(order_n, T.supp(n, sigma), m)
                if below != supp_below:
                    report.record("normality-equivalence", f"n={n} m={m} sigma={sigma!r}")
                report.checks += 1
        # Naturality of mu over embeddings into higher levels.
        for m_to in range(N + 1):
            for f in embeddings_between(n, m_to):
                for m in range(n):
                    if T.map(f, mu(n, m)) != mu(m_to, f(m)):
                        report.record("mu-naturality", f"f={f.values} n={n} m={m}")
                    report.checks += 1
    return report
