"""Exhaustive and randomized verification suites shared by CLI and tests.

The all-pairs linearity check uses a rank argument: the term set is sorted
with the genuine comparator, then every pair is compared by a replica of the
comparison recursion that looks up member comparisons in the rank table.
Since all member pairs belong to the checked set, agreement of the replica
with the ranking on every pair implies, by induction on term structure, that
the genuine comparator agrees with the ranking everywhere, which gives
irreflexivity, trichotomy, and transitivity on the set.
"""

from __future__ import annotations

import functools
import random
import time

from .compose import (
    check_morphism_report,
    check_upper_derivative,
    compose,
    lift,
    zeta,
    zeta_inverse,
    zplus_upper_derivative,
)
from .extension import (
    ExtTerm,
    ext_compare,
    ext_enumerate,
    ext_map,
    ext_order,
    ext_term,
    eta,
    eta_inverse,
    mu_ext,
)
from .derivative import (
    Mu,
    _cmp,
    chain_search,
    deriv_enumerate,
    deriv_map,
    deriv_order,
    deriv_supp,
    deriv_upper_derivative,
    HeightedSegmentQuery,
    ht,
    random_deriv_term,
    segment_member,
    universal_morphism,
    xi_T,
    xi_T_inverse,
)
from .oracle import CnfOrdinal, cnf_compare, translate
from .orders import (
    FinEmbedding,
    LinearOrderHandle,
    _sign,
    fin_leq_set,
    finite_order,
    naturals,
    verify_finite_linearity,
)
from .praedil import (
    PraeDilator,
    Report,
    embeddings_between,
    omega_dilator,
    segment_dilator,
    zplus_dilator,
)


def _rank_cmp(T: PraeDilator, rank: dict, s, t) -> int:
    """Replica of the derivative comparison with member lookups in the rank table."""
    if s == t:
        return 0
    if isinstance(s, Mu) and isinstance(t, Mu):
        return _sign(s.index - t.index)
    if isinstance(s, Mu):
        return -1 if any(rank[s] <= rank[r] for r in t.members) else 1
    if isinstance(t, Mu):
        return -1 if all(rank[r] < rank[t] for r in s.members) else 1
    merged = sorted(set(s.members) | set(t.members), key=rank.__getitem__)
    pos = {r: i for i, r in enumerate(merged)}
    m = len(merged)
    fs = tuple(pos[r] for r in s.members)
    ft = tuple(pos[r] for r in t.members)
    return T.compare(m, T.map(FinEmbedding(fs, m), s.sigma), T.map(FinEmbedding(ft, m), t.sigma))


def linearity_report(T: PraeDilator, n: int, bound: int) -> Report:
    """Exhaustive linearity of the derivative order on the bounded term set."""
    report = Report(name="linearity", params={"dilator": T.name, "n": n, "bound": bound})
    terms = deriv_enumerate(T, n, bound)
    ranked = sorted(terms, key=functools.cmp_to_key(lambda a, b: _cmp(T, a, b)))
    rank = {t: i for i, t in enumerate(ranked)}
    report.params["terms"] = len(terms)
    if len(rank) != len(terms):
        report.record("duplicates", f"n={n}: enumeration repeated a term")
        return report
    for a, b in zip(ranked, ranked[1:]):
        if _cmp(T, a, b) >= 0:
            report.record("sort-consistency", f"{a!r} !< {b!r}")
    for i, s in enumerate(ranked):
        for j, t in enumerate(ranked):
            if _sign(_rank_cmp(T, rank, s, t)) != _sign(i - j):
                report.record("trichotomy", f"{s!r} vs {t!r}")
            report.checks += 1
    return report


def oracle_report(bound: int, extra_pairs: int = 10000, seed: int = 42, extra_budget: int = 13) -> Report:
    """Strict order preservation of the ordinal reading against the CNF oracle."""
    T = omega_dilator()
    report = Report(name="oracle-equivalence", params={"bound": bound, "extra_pairs": extra_pairs, "seed": seed})
    terms = sorted(deriv_enumerate(T, 0, bound), key=functools.cmp_to_key(lambda a, b: _cmp(T, a, b)))
    values = [translate(T, s) for s in terms]
    report.params["terms"] = len(terms)
    if len(set(values)) != len(values):
        report.record("injectivity", "two terms share an ordinal value")
    cnf_handle = LinearOrderHandle(contains=lambda o: isinstance(o, CnfOrdinal), cmp=cnf_compare, name="cnf")
    for v in verify_finite_linearity(cnf_handle, values):
        report.record("cnf-linearity", v)
    for i in range(len(terms)):
        for j in range(len(terms)):
            if _sign(cnf_compare(values[i], values[j])) != _sign(i - j):
                report.record("order-preservation", f"{terms[i]!r} vs {terms[j]!r}")
            report.checks += 1
    rng = random.Random(seed)
    for _ in range(extra_pairs):
        s = random_deriv_term(rng, T, 0, extra_budget)
        t = random_deriv_term(rng, T, 0, extra_budget)
        if _sign(_cmp(T, s, t)) != _sign(cnf_compare(translate(T, s), translate(T, t))):
            report.record("order-preservation-random", f"{s!r} vs {t!r}")
        report.checks += 1
    return report


def eta_report(T: PraeDilator, N: int, bound: int = 4) -> Report:
    """The collapse onto finite levels is a natural order isomorphism."""
    report = Report(name="eta-isomorphism", params={"dilator": T.name, "N": N, "bound": bound})
    for n in range(N + 1):
        X = finite_order(n)
        terms = ext_enumerate(T, X, bound)
        images = []
        for s in terms:
            sigma = eta(T, n, s)
            images.append(sigma)
            if not T.member(n, sigma):
                report.record("eta-membership", f"n={n} {s!r}")
            if eta_inverse(T, n, sigma) != s:
                report.record("round-trip", f"n={n} {s!r}")
            report.checks += 2
        for i, s in enumerate(terms):
            for j, t in enumerate(terms):
                if _sign(T.compare(n, images[i], images[j])) != _sign(ext_compare(T, X, s, t)):
                    report.record("order-preservation", f"n={n} {s!r} vs {t!r}")
                report.checks += 1
        for sigma in T.tokens(n, bound):
            if eta(T, n, eta_inverse(T, n, sigma)) != sigma:
                report.record("round-trip-token", f"n={n} {sigma!r}")
            report.checks += 1
        for m in range(N + 1):
            for f in embeddings_between(n, m):
                emb = _fin_embedding_handle(f, n, m)
                for s in terms:
                    if T.map(f, eta(T, n, s)) != eta(T, m, ext_map(T, emb, s)):
                        report.record("naturality", f"f={f.values} {s!r}")
                    report.checks += 1
    return report


def _fin_embedding_handle(f: FinEmbedding, n: int, m: int):
    from .orders import OrderEmbedding

    return OrderEmbedding(source=finite_order(n), target=finite_order(m), apply=f, name=f"{f.values}")


def zeta_report(x_size: int, bound: int = 4) -> Report:
    """Round trips, order agreement, and the support identity for the collapse."""
    T = S = omega_dilator()
    TS = compose(T, S)
    X = finite_order(x_size)
    report = Report(name="zeta-isomorphism", params={"x_size": x_size, "bound": bound})
    DSX = ext_order(S, X)
    outer = ext_enumerate(T, DSX, bound)
    images = []
    for s in outer:
        z = zeta(T, S, X, s)
        images.append(z)
        if zeta_inverse(T, S, X, z) != s:
            report.record("round-trip", f"{s!r}")
        got = frozenset(z.elems)
        expect = frozenset().union(*[frozenset(rho.elems) for rho in s.elems]) if s.elems else frozenset()
        if got != expect:
            report.record("support-identity", f"{s!r}")
        report.checks += 2
    for i, s in enumerate(outer):
        for j, t in enumerate(outer):
            if _sign(ext_compare(TS, X, images[i], images[j])) != _sign(ext_compare(T, DSX, s, t)):
                report.record("order-preservation", f"{s!r} vs {t!r}")
            report.checks += 1
    for t in ext_enumerate(TS, X, bound):
        if zeta(T, S, X, zeta_inverse(T, S, X, t)) != t:
            report.record("round-trip-back", f"{t!r}")
        report.checks += 1
    return report


def xi_report(T: PraeDilator, n: int, bound: int) -> Report:
    """The derivative collapse is an order bijection satisfying the equalizer law."""
    report = Report(name="xi-collapse", params={"dilator": T.name, "n": n, "bound": bound})
    dT = deriv_order(T, n)
    ext_terms = ext_enumerate(T, dT, bound)
    images = [xi_T(T, n, s) for s in ext_terms]
    if len(set(images)) != len(images):
        report.record("injectivity", f"n={n}")
    for s, img in zip(ext_terms, images):
        if xi_T_inverse(T, n, img) != ExtTerm(s.elems, s.sigma):
            report.record("round-trip", f"{s!r}")
        report.checks += 1
    for i, s in enumerate(ext_terms):
        for j, t in enumerate(ext_terms):
            if _sign(_cmp(T, images[i], images[j])) != _sign(ext_compare(T, dT, s, t)):
                report.record("order-preservation", f"{s!r} vs {t!r}")
            report.checks += 1
    for s in deriv_enumerate(T, n, bound):
        back = xi_T(T, n, xi_T_inverse(T, n, s))
        if back != s:
            report.record("round-trip-back", f"{s!r}")
        collapsed = xi_T(T, n, ExtTerm((s,), T.mu(1, 0)))
        if collapsed == s and not isinstance(s, Mu):
            report.record("equalizer", f"{s!r} fixed but not a generator")
        if isinstance(s, Mu) and collapsed != s:
            report.record("equalizer", f"generator {s!r} not fixed")
        report.checks += 2
    return report


def universality_report(bound: int = 6) -> Report:
    """The canonical morphism: identity onto the derivative itself, and the
    integer-shift carrier as an external target."""
    report = Report(name="universality", params={"bound": bound})
    for T in (omega_dilator(), segment_dilator()):
        target = deriv_upper_derivative(T, certify_to=2, bound=4)
        nu = universal_morphism(T, target)
        for n in range(3):
            for s in deriv_enumerate(T, n, bound):
                if nu.component(n, s) != s:
                    report.record("identity", f"{T.name} n={n} {s!r}")
                report.checks += 1
    T = segment_dilator()
    ud = zplus_upper_derivative()
    check_upper_derivative(T, ud, 3, bound=4)
    nu = universal_morphism(T, ud)
    sub = check_morphism_report(nu, 3, bound=3)
    for v in sub.violations:
        report.record("morphism-laws", f"{v['law']}: {v['witness']}")
    report.checks += sub.checks
    # Compatibility with both collapses, the defining law for morphisms of
    # upper derivatives.
    xiT = deriv_upper_derivative(T, certify_to=3, bound=4)
    nu.certified_to = 3
    lifted = lift(T, nu)
    for n in range(4):
        for tok in compose(T, xiT.dilator).tokens(n, 3):
            left = nu.component(n, xiT.xi.component(n, tok))
            right = ud.xi.component(n, lifted.component(n, tok))
            if left != right:
                report.record("collapse-compatibility", f"n={n} {tok!r}")
            report.checks += 1
    for n in range(3):
        for m in range(n):
            if nu.component(n, Mu(m)) != m:
                report.record("generator-image", f"n={n} m={m}")
            report.checks += 1
    return report


def heights_report(samples: int = 10000, seed: int = 42, budget: int = 9) -> Report:
    """Height invariance under relabeling and the height-order implication."""
    T = omega_dilator()
    rng = random.Random(seed)
    report = Report(name="heights", params={"samples": samples, "seed": seed, "budget": budget})
    effective = 0
    for _ in range(samples):
        n = rng.randint(0, 3)
        s = random_deriv_term(rng, T, n, budget)
        m = rng.randint(n, n + 3)
        f = FinEmbedding(tuple(sorted(rng.sample(range(m), n))), m)
        if ht(T, m, deriv_map(T, f, s)) != ht(T, n, s):
            report.record("ht-invariance", f"f={f.values} {s!r}")
        t = random_deriv_term(rng, T, n, budget)
        nat = naturals()
        if fin_leq_set(nat, deriv_supp(T, n, s), deriv_supp(T, n, t)) and ht(T, n, s) < ht(T, n, t):
            effective += 1
            if _cmp(T, s, t) >= 0:
                report.record("height-implication", f"{s!r} vs {t!r}")
        report.checks += 2
    report.params["effective_implications"] = effective
    return report


def _random_segment_term(rng: random.Random, T: PraeDilator, X, x: int, budget: int) -> ExtTerm:
    """A random extension term with all parameters below x."""
    for _ in range(64):
        k = rng.randint(0, min(2, x))
        elems = tuple(sorted(rng.sample(range(x), k)))
        sigma = random_deriv_term(rng, T, k, budget)
        if deriv_supp(T, k, sigma) == frozenset(range(k)):
            return ext_term(deriv_as_prae(T), X, elems, sigma)
    raise RuntimeError("sampling failed")


def deriv_as_prae(T: PraeDilator) -> PraeDilator:
    from .derivative import deriv_as_praedilator

    return deriv_as_praedilator(T)


def segments_report(samples: int = 1000, seed: int = 42, budget: int = 7) -> Report:
    """Downward closure of the height-bounded segments."""
    T = omega_dilator()
    D = deriv_as_prae(T)
    X = naturals()
    rng = random.Random(seed)
    report = Report(name="segments", params={"samples": samples, "seed": seed, "budget": budget})
    effective = 0
    for _ in range(samples):
        x = rng.randint(1, 5)
        k = rng.randint(0, 3)
        t = _random_segment_term(rng, T, X, x, budget)
        s = _random_segment_term(rng, T, X, x, budget)
        qt = HeightedSegmentQuery(x=x, k=k, term=t)
        qs = HeightedSegmentQuery(x=x, k=k, term=s)
        if segment_member(T, X, qt) and ext_compare(D, X, s, t) <= 0:
            effective += 1
            if not segment_member(T, X, qs):
                report.record("downward-closure", f"x={x} k={k} {s!r} <= {t!r}")
        report.checks += 1
    report.params["effective_triples"] = effective
    return report


def chain_report(seed: int = 42) -> Report:
    """Ill-foundedness witness in the integer carrier; none in the bounded
    derivative term set."""
    report = Report(name="chain-search", params={"seed": seed})
    Z = zplus_dilator()
    t0 = time.time()
    res = chain_search(Z.order_at(1), depth=10, budget=20000, pool=Z.tokens(1, 16), seed=seed)
    elapsed = time.time() - t0
    report.params["zplus_seconds"] = round(elapsed, 3)
    if not res.found:
        report.record("zplus-chain", "no descending chain found")
    elif any(Z.compare(1, b, a) >= 0 for a, b in zip(res.chain, res.chain[1:])):
        report.record("zplus-chain", "returned chain is not strictly descending")
    T = omega_dilator()
    pool = deriv_enumerate(T, 0, 6)
    report.params["bounded_pool"] = len(pool)
    res2 = chain_search(deriv_order(T, 0), depth=50, budget=100000, pool=pool, seed=seed)
    if res2.found:
        report.record("bounded-chain", "unexpected descending chain of depth 50")
    if not res2.conclusive:
        report.record("bounded-chain", "search inconclusive within budget")
    if verify_finite_linearity(deriv_order(T, 0), pool):
        report.record("bounded-sort", "topological sort failed")
    report.checks += 3
    return report


def barind_report(family, certify_to: int = 1, certify_bound: int = 4) -> Report:
    """End-to-end pipeline checks on a finite tree family."""
    from .barind import E_embed, chi_F, chi_F_inverse, default_target, f_alt_compare, f_dilator, h_dilator, j_embed
    from .praedil import check_normality

    report = Report(name="bar-induction", params={"carrier": list(family.carrier)})
    F = f_dilator(family)
    sub = check_normality(F, 2, bound=4)
    for v in sub.violations:
        report.record("sum-normality", f"{v['law']}: {v['witness']}")
    report.checks += sub.checks

    sigma_handle = LinearOrderHandle(
        contains=lambda e: True, cmp=family.sigma_compare, name="sigma")
    elements = family.elements()
    for v in verify_finite_linearity(sigma_handle, elements):
        report.record("sum-linearity", v)
    report.checks += len(elements) ** 2

    # Finite-approximation tokens give valid extension terms over the naturals.
    nat = naturals()
    for (x, seq) in elements:
        hx = h_dilator(family, x)
        below = [e for e in family.sigma_below(x) if family.code(*e) < len(seq)]
        rng_e = tuple(range(len(below)))
        etok = E_embed(family, x, seq)
        try:
            ext_term(hx, nat, rng_e, etok)
        except Exception as exc:
            report.record("approximation-term", f"({x},{seq}): {exc}")
        report.checks += 1

    target = default_target(family, certify_to=certify_to, bound=certify_bound)
    G = target.dilator
    X = family.order
    images = j_embed(family, target)
    ordered = [images[e] for e in sorted(
        elements, key=functools.cmp_to_key(family.sigma_compare))]
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            if _sign(ext_compare(G, X, a, b)) != _sign(i - j):
                report.record("embedding-order", f"pair {i},{j}")
            report.checks += 1
    for x in family.carrier:
        top = mu_ext(G, X, x)
        for (y, seq) in elements:
            if X.cmp(y, x) < 0:
                if ext_compare(G, X, images[(y, seq)], top) >= 0:
                    report.record("stage-bound", f"J({y},{seq}) !< mu({x})")
                report.checks += 1

    # The staged presentation folds correctly and respects the order.
    Z = finite_order(2)
    DFZ = ext_enumerate(F, Z, 4)
    staged = []
    for t in DFZ:
        trip = chi_F_inverse(family, Z, t)
        staged.append(trip)
        if chi_F(family, Z, trip) != t:
            report.record("fold-round-trip", f"{t!r}")
        report.checks += 1
    for i, a in enumerate(staged):
        for j, b in enumerate(staged):
            if _sign(f_alt_compare(family, Z, a, b)) != _sign(ext_compare(F, Z, DFZ[i], DFZ[j])):
                report.record("fold-order", f"pair {i},{j}")
            report.checks += 1
    return report


SUITES = {
    "linearity": lambda seed=42, bound=9: [linearity_report(T, n, bound)
                                           for T in (omega_dilator(), segment_dilator())
                                           for n in range(3)],
    "equalizer": lambda seed=42, bound=6: [xi_report(omega_dilator(), n, bound) for n in range(3)],
    "normality": lambda seed=42, bound=4: [_normality_suite(bound)],
    "heights": lambda seed=42, bound=9: [heights_report(samples=2000, seed=seed, budget=bound)],
}


def _normality_suite(bound: int) -> Report:
    from .praedil import check_normality

    T = omega_dilator()
    D = deriv_as_prae(T)
    report = check_normality(D, 2, bound=min(bound, 6))
    report.name = "derivative-normality"
    return report
