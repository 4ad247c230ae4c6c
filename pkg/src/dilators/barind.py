"""From indexed tree families to dilators and back: the embedding pipeline.

A tree family assigns a prefix-closed set of finite natural sequences to each
element of a finite base order.  The pipeline builds per-element dilators from
search trees, sums them into a normal dilator, and embeds the dependent sum of
the family into the extension of any certified upper derivative of that sum.

Coding of family elements: the pair of the base-element index and the sequence
code is combined with the Cantor pairing function.  Since the sequence code is
at least the sequence length and the pairing is monotone, the code of a pair
is at least the length of its sequence, which the recursive embedding relies
on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .compose import Morphism, UpperDerivative, check_upper_derivative, ext_morphism, zeta
from .extension import ExtTerm, ext_compare, ext_order, ext_term, mu_ext
from .orders import (
    BOT,
    ContractError,
    DomainError,
    FinEmbedding,
    LinearOrderHandle,
    _sign,
    cantor_pair,
    cantor_unpair,
    fin_less,
    kb_compare,
    naturals,
    order_from_list,
    seq_code,
    seq_decode,
)
from .praedil import STAR, PraeDilator, constant_star_dilator


@dataclass(frozen=True)
class TreeFamily:
    """A base order given by an ascending carrier list, plus one tree per element."""

    carrier: tuple
    trees: dict

    def __post_init__(self):
        for x in self.carrier:
            nodes = self.trees.get(x)
            if nodes is None:
                raise DomainError(f"no tree for carrier element {x!r}")
            nodes = set(map(tuple, nodes))
            for node in nodes:
                if node and node[:-1] not in nodes and node[:-1] != ():
                    raise DomainError(f"tree at {x!r} is not prefix closed: {node}")
                if node and () not in nodes:
                    raise DomainError(f"tree at {x!r} is not prefix closed: missing root")

    @property
    def order(self) -> LinearOrderHandle:
        return order_from_list(self.carrier, name="family-base")

    def tree(self, x) -> frozenset:
        return frozenset(map(tuple, self.trees[x]))

    def index(self, x) -> int:
        return self.carrier.index(x)

    def code(self, x, seq) -> int:
        return cantor_pair(self.index(x), seq_code(seq))

    def decode(self, j: int):
        """The family element coded by j, or None."""
        a, b = cantor_unpair(j)
        if a >= len(self.carrier):
            return None
        x = self.carrier[a]
        seq = seq_decode(b)
        return (x, seq) if seq in self.tree(x) else None

    def elements(self) -> list:
        """All family elements, ascending by code."""
        out = [(self.code(x, seq), x, seq) for x in self.carrier for seq in sorted(self.tree(x))]
        out.sort()
        return [(x, seq) for _, x, seq in out]

    def sigma_compare(self, a, b) -> int:
        """The dependent-sum order: base element first, then the tree order."""
        c = self.order.cmp(a[0], b[0])
        if c != 0:
            return c
        return kb_compare(naturals(), a[1], b[1])

    def sigma_below(self, x) -> list:
        """Elements with base component strictly below x, in sum order."""
        import functools

        out = [(y, seq) for (y, seq) in self.elements() if self.order.cmp(y, x) < 0]
        out.sort(key=functools.cmp_to_key(self.sigma_compare))
        return out


def family_from_json(text: str) -> TreeFamily:
    """Parse the family input format {"order": [...], "trees": {x: [sequences]}}."""
    data = json.loads(text)
    carrier = tuple(data["order"])
    trees = {}
    for x in carrier:
        key = x if x in data["trees"] else str(x)
        trees[x] = frozenset(tuple(seq) for seq in data["trees"][key])
    return TreeFamily(carrier=carrier, trees=trees)


def _pair_base(n: int) -> LinearOrderHandle:
    """The comparison base for H-tokens at level n: bottomed level times naturals."""

    def cmp(p, q):
        a, b = p[0], q[0]
        if a is BOT or b is BOT:
            c = 0 if (a is BOT and b is BOT) else (-1 if a is BOT else 1)
        else:
            c = _sign(a - b)
        return c if c != 0 else _sign(p[1] - q[1])

    def contains(p):
        if not (isinstance(p, tuple) and len(p) == 2):
            return False
        first, second = p
        if not (first is BOT or (isinstance(first, int) and 0 <= first < n)):
            return False
        return isinstance(second, int) and second >= 0

    return LinearOrderHandle(contains=contains, cmp=cmp, name=f"{n}bot*nat")


def h_dilator(family: TreeFamily, x) -> PraeDilator:
    """The search-tree dilator at a base element; the bottom element gets the
    one-point dilator."""
    if x is BOT:
        return constant_star_dilator()
    if not family.order.contains(x):
        raise DomainError(f"{x!r} is not in the family base")
    tree = family.tree(x)

    def coded_positions(k: int) -> list:
        """Positions below k coding elements below x, in sum order."""
        import functools

        coded = []
        for j in range(k):
            d = family.decode(j)
            if d is not None and family.order.cmp(d[0], x) < 0:
                coded.append(j)
        coded.sort(key=functools.cmp_to_key(
            lambda p, q: family.sigma_compare(family.decode(p), family.decode(q))))
        return coded

    def member(n, tok):
        if not isinstance(tok, tuple):
            return False
        base = _pair_base(n)
        if not all(base.contains(p) for p in tok):
            return False
        k = len(tok)
        if tuple(p[1] for p in tok) not in tree:
            return False
        coded = coded_positions(k)
        values = [tok[j][0] for j in coded]
        if any(v is BOT for v in values):
            return False
        # Positions are listed in sum order, so their marks must increase.
        return all(a < b for a, b in zip(values, values[1:]))

    def compare(n, s, t):
        return kb_compare(_pair_base(n), s, t)

    def hmap(f: FinEmbedding, tok):
        return tuple((BOT if nj is BOT else f(nj), sj) for nj, sj in tok)

    def supp(n, tok):
        return frozenset(nj for nj, _ in tok if nj is not BOT)

    def enum(n, bound):
        import itertools

        out = []
        for node in tree:
            k = len(node)
            if k > bound:
                continue
            coded = coded_positions(k)
            free = [j for j in range(k) if j not in coded]
            for marks in itertools.combinations(range(n), len(coded)):
                for frees in itertools.product([BOT] + list(range(n)), repeat=len(free)):
                    firsts = [None] * k
                    for j, m in zip(coded, marks):
                        firsts[j] = m
                    for j, v in zip(free, frees):
                        firsts[j] = v
                    out.append(tuple((firsts[j], node[j]) for j in range(k)))
        return out

    return PraeDilator(
        name=f"H[{x}]",
        member=member,
        compare=compare,
        map=hmap,
        supp=supp,
        enumerate=enum,
        size=lambda n, tok: len(tok),
    )


def h_alt_from_ext(s: ExtTerm) -> tuple:
    """The alternative presentation over Z: replace marks by the parameters."""
    return tuple((BOT if nj is BOT else s.elems[nj], sj) for nj, sj in s.sigma)


def h_ext_compare(family: TreeFamily, x, Z: LinearOrderHandle, s: ExtTerm, t: ExtTerm) -> int:
    """Compare extension terms through the sequence presentation over Z."""

    def cmp(p, q):
        a, b = p[0], q[0]
        if a is BOT or b is BOT:
            c = 0 if (a is BOT and b is BOT) else (-1 if a is BOT else 1)
        else:
            c = Z.cmp(a, b)
        return c if c != 0 else _sign(p[1] - q[1])

    base = LinearOrderHandle(contains=lambda p: True, cmp=cmp, name="Zbot*nat")
    return kb_compare(base, h_alt_from_ext(s), h_alt_from_ext(t))


def E_embed(family: TreeFamily, x, seq) -> tuple:
    """The finite-approximation token for a tree node.

    Position j gets the rank of j among the coded positions below the node
    length, or the bottom mark when j codes nothing relevant.
    """
    import functools

    seq = tuple(seq)
    if seq not in family.tree(x):
        raise DomainError(f"{seq} is not a node of the tree at {x!r}")
    k = len(seq)
    coded = []
    for j in range(k):
        d = family.decode(j)
        if d is not None and family.order.cmp(d[0], x) < 0:
            coded.append(j)
    coded.sort(key=functools.cmp_to_key(
        lambda p, q: family.sigma_compare(family.decode(p), family.decode(q))))
    rank = {j: i for i, j in enumerate(coded)}
    return tuple((rank.get(j, BOT), seq[j]) for j in range(k))


def f_dilator(family: TreeFamily) -> PraeDilator:
    """The sum of the search-tree dilators, one level per stage; normal."""
    bottomed = (BOT,) + family.carrier

    def xcmp(a, b):
        if a is BOT or b is BOT:
            return 0 if (a is BOT and b is BOT) else (-1 if a is BOT else 1)
        return family.order.cmp(a, b)

    def member(n, tok):
        if not (isinstance(tok, tuple) and len(tok) == 3):
            return False
        N, x, tau = tok
        if not (isinstance(N, int) and 0 <= N < n):
            return False
        if not (x is BOT or family.order.contains(x)):
            return False
        return h_dilator(family, x).member(N, tau)

    def compare(n, s, t):
        c = _sign(s[0] - t[0])
        if c != 0:
            return c
        c = xcmp(s[1], t[1])
        if c != 0:
            return c
        return h_dilator(family, s[1]).compare(s[0], s[2], t[2])

    def fmap(f: FinEmbedding, tok):
        N, x, tau = tok
        restriction = FinEmbedding(f.values[:N], f(N))
        return (f(N), x, h_dilator(family, x).map(restriction, tau))

    def supp(n, tok):
        N, x, tau = tok
        return frozenset({N}) | h_dilator(family, x).supp(N, tau)

    def enum(n, bound):
        out = []
        if bound < 1:
            return out
        for N in range(n):
            for x in bottomed:
                for tau in h_dilator(family, x).tokens(N, bound - 1):
                    out.append((N, x, tau))
        return out

    def size(n, tok):
        return 1 + (len(tok[2]) if tok[1] is not BOT else 1)

    return PraeDilator(
        name="F[family]",
        member=member,
        compare=compare,
        map=fmap,
        supp=supp,
        enumerate=enum,
        size=size,
        mu=lambda n, N: (N, BOT, STAR),
    )


def chi_F(family: TreeFamily, Z: LinearOrderHandle, triple) -> ExtTerm:
    """Fold a staged triple into an extension term of the sum dilator."""
    z, x, hext = triple
    if not fin_less(Z, hext.elems, z):
        raise DomainError(f"stage parameter {z!r} is not above the term parameters")
    F = f_dilator(family)
    return ext_term(F, Z, hext.elems + (z,), (len(hext.elems), x, hext.sigma))


def chi_F_inverse(family: TreeFamily, Z: LinearOrderHandle, s: ExtTerm):
    N, x, tau = s.sigma
    if len(s.elems) != N + 1:
        raise DomainError(f"malformed staged term {s!r}")
    return (s.elems[-1], x, ExtTerm(s.elems[:-1], tau))


def f_alt_compare(family: TreeFamily, Z: LinearOrderHandle, s, t) -> int:
    """Lexicographic order on staged triples ⟨z, x, extension term⟩."""
    c = Z.cmp(s[0], t[0])
    if c != 0:
        return c
    a, b = s[1], t[1]
    if a is BOT or b is BOT:
        c = 0 if (a is BOT and b is BOT) else (-1 if a is BOT else 1)
    else:
        c = family.order.cmp(a, b)
    if c != 0:
        return c
    H = h_dilator(family, s[1])
    return ext_compare(H, Z, s[2], t[2])


def default_target(family: TreeFamily, certify_to: int = 1, bound: int = 4) -> UpperDerivative:
    """The derivative of the sum dilator, packaged and certified as a target."""
    from .derivative import deriv_upper_derivative

    F = f_dilator(family)
    ud = deriv_upper_derivative(F)
    check_upper_derivative(F, ud, certify_to, bound)
    return ud


def j_embed(family: TreeFamily, target: Optional[UpperDerivative] = None) -> dict:
    """Embed the family sum into the extension of the target over the base.

    Values are computed in code order so each value only depends on already
    computed ones; the result maps each family element to its image term.
    """
    if target is None:
        target = default_target(family)
    if target.certified_to < 0:
        raise ContractError("target upper derivative has not been certified")
    F = target.base
    G = target.dilator
    X = family.order
    DGX = ext_order(G, X)
    images: dict = {}

    for (x, seq) in family.elements():
        k = len(seq)
        below = [(family.code(y, s2), (y, s2)) for (y, s2) in family.sigma_below(x)]
        dom = [elem for code, elem in below if code < k]
        rng = [images[elem] for elem in dom]
        etok = E_embed(family, x, seq)
        hx = h_dilator(family, x)
        j0 = ext_term(hx, DGX, rng, etok)
        z = mu_ext(G, X, x)
        staged = chi_F(family, DGX, (z, x, j0))
        folded = zeta(F, G, X, staged)
        images[(x, seq)] = ext_morphism(target.xi, X, folded)
    return images
