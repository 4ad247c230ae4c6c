"""Independent ordinal oracle: hereditary Cantor normal forms below epsilon_0.

An ordinal is a weakly decreasing finite sum of omega-powers whose exponents
are themselves ordinals in the same form.  Comparison is implemented from
scratch on this representation so it can serve as ground truth for the
derivative order, which is computed by an entirely different recursion.

The translation is defined for derivative terms of the omega dilator at level
zero only: at that level every term denotes an ordinal below epsilon_0.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .orders import DomainError
from .praedil import PraeDilator


class UnsupportedTermError(DomainError):
    """The term lies outside the translatable fragment."""


@dataclass(frozen=True)
class CnfOrdinal:
    """Sum of omega-powers with weakly decreasing exponents; () denotes 0."""

    exponents: tuple

    def __post_init__(self):
        for a, b in zip(self.exponents, self.exponents[1:]):
            if cnf_compare(a, b) < 0:
                raise DomainError(f"exponents not weakly decreasing: {self}")

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        parts = []
        for e in self.exponents:
            inner = str(e)
            parts.append("w^0" if inner == "0" else f"w^({inner})")
        return " + ".join(parts)


ZERO = CnfOrdinal(())
ONE = CnfOrdinal((ZERO,))


def omega_power(e: CnfOrdinal) -> CnfOrdinal:
    return CnfOrdinal((e,))


def from_int(n: int) -> CnfOrdinal:
    if n < 0:
        raise DomainError("ordinals are non-negative")
    return CnfOrdinal((ZERO,) * n)


def to_int(o: CnfOrdinal) -> int:
    """The value of a finite CNF; raises for infinite ordinals."""
    if any(e.exponents for e in o.exponents):
        raise DomainError(f"{o} is not a finite ordinal")
    return len(o.exponents)


@functools.lru_cache(maxsize=1 << 20)
def cnf_compare(s: CnfOrdinal, t: CnfOrdinal) -> int:
    """Lexicographic comparison of exponent sequences, recursive on exponents."""
    if not (isinstance(s, CnfOrdinal) and isinstance(t, CnfOrdinal)):
        raise DomainError("cnf_compare expects CnfOrdinal arguments")
    for a, b in zip(s.exponents, t.exponents):
        c = cnf_compare(a, b)
        if c != 0:
            return c
    if len(s.exponents) == len(t.exponents):
        return 0
    return -1 if len(s.exponents) < len(t.exponents) else 1


def translate(T: PraeDilator, s) -> CnfOrdinal:
    """Read a level-zero derivative term of the omega dilator as an ordinal.

    A collapsed application with members a and token ⟨n_0,...,n_{k-1}⟩ denotes
    the sum over i of omega to the power of the n_i-th smallest member.
    """
    from .derivative import Mu, Xi

    if T.name != "omega":
        raise UnsupportedTermError(f"translation is defined for the omega dilator, not {T.name}")
    if isinstance(s, Mu):
        raise UnsupportedTermError("generator leaves have no ordinal value at level zero")
    if not isinstance(s, Xi):
        raise UnsupportedTermError(f"not a derivative term: {s!r}")
    values = [translate(T, r) for r in s.members]
    return CnfOrdinal(tuple(values[i] for i in s.sigma))
