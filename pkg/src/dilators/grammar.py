"""Textual term grammar: s-expression reading and printing for all term kinds.

Atoms are integers or the symbols ``bot``, ``top``, ``star``, ``Om``;
compounds are parenthesized:

- base tokens: ``(seq e1 e2 ...)`` for the formal-sum dilator, plain integers
  for the finite-level dilators, ``(z p)`` for the integer-copy tokens,
  ``(pair x y)`` for products;
- derivative terms: ``(mu m)`` and ``(xi (set t1 ...) (tok ...))`` where the
  token part uses the base dilator's grammar at the member count;
- extension terms: ``(ext (set e1 ...) (tok ...))``.

Printing and parsing are mutually inverse on valid terms.
"""

from __future__ import annotations

from .extension import ExtTerm
from .derivative import Mu, Xi
from .orders import BOT, TOP, DomainError
from .praedil import OMEGA_TOP, STAR, zplus_token, _is_zhat

_SYMBOLS = {"bot": BOT, "top": TOP, "star": STAR, "Om": OMEGA_TOP}
_SYMBOL_NAMES = {id(BOT): "bot", id(TOP): "top", id(STAR): "star", id(OMEGA_TOP): "Om"}


def parse_sexp(text: str):
    """Parse one s-expression into nested lists of atoms (ints and strings)."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise DomainError("empty term text")
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise DomainError(f"unexpected end of term: {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            out = []
            while pos < len(tokens) and tokens[pos] != ")":
                out.append(read())
            if pos >= len(tokens):
                raise DomainError(f"unbalanced parentheses: {text!r}")
            pos += 1
            return out
        if tok == ")":
            raise DomainError(f"unexpected ')': {text!r}")
        try:
            return int(tok)
        except ValueError:
            return tok

    out = read()
    if pos != len(tokens):
        raise DomainError(f"trailing input after term: {text!r}")
    return out


def print_sexp(obj) -> str:
    if isinstance(obj, list):
        return "(" + " ".join(print_sexp(x) for x in obj) + ")"
    return str(obj)


def _head(sx, expected: str) -> list:
    if not (isinstance(sx, list) and sx and sx[0] == expected):
        raise DomainError(f"expected ({expected} ...), got {print_sexp(sx)}")
    return sx[1:]


def _atom(sx):
    if isinstance(sx, str):
        if sx not in _SYMBOLS:
            raise DomainError(f"unknown symbol {sx!r}")
        return _SYMBOLS[sx]
    return sx


def base_token_from_sexp(name: str, sx):
    """Read a base-dilator token in the grammar of the named dilator."""
    if name == "omega":
        return tuple(_int(e) for e in _head(sx, "seq"))
    if name == "segment":
        return _int(sx)
    if name == "bump":
        return OMEGA_TOP if sx == "Om" else _int(sx)
    if name == "zplus":
        if isinstance(sx, list):
            (p,) = _head(sx, "z")
            return zplus_token(_int(p))
        return _int(sx)
    if name == "star":
        if sx != "star":
            raise DomainError(f"the one-point dilator has only the token star, got {print_sexp(sx)}")
        return STAR
    raise DomainError(f"no token grammar for dilator {name!r}")


def base_token_to_sexp(name: str, tok):
    if name == "omega":
        return ["seq"] + list(tok)
    if name == "segment":
        return tok
    if name == "bump":
        return "Om" if tok is OMEGA_TOP else tok
    if name == "zplus":
        return ["z", tok[1]] if _is_zhat(tok) else tok
    if name == "star":
        return "star"
    raise DomainError(f"no token grammar for dilator {name!r}")


def _int(sx) -> int:
    if not isinstance(sx, int):
        raise DomainError(f"expected an integer, got {print_sexp(sx)}")
    return sx


def deriv_term_from_sexp(name: str, sx):
    """Read a derivative term over the named base dilator."""
    if isinstance(sx, list) and sx and sx[0] == "mu":
        (m,) = sx[1:]
        return Mu(_int(m))
    if isinstance(sx, list) and sx and sx[0] == "xi":
        members_sx, tok_sx = sx[1:]
        members = tuple(deriv_term_from_sexp(name, e) for e in _head(members_sx, "set"))
        return Xi(members, base_token_from_sexp(name, tok_sx))
    raise DomainError(f"expected (mu m) or (xi (set ...) tok), got {print_sexp(sx)}")


def deriv_term_to_sexp(name: str, t):
    if isinstance(t, Mu):
        return ["mu", t.index]
    if isinstance(t, Xi):
        return ["xi", ["set"] + [deriv_term_to_sexp(name, r) for r in t.members],
                base_token_to_sexp(name, t.sigma)]
    raise DomainError(f"not a derivative term: {t!r}")


def ext_term_from_sexp(name: str, sx, elem_parser=_atom) -> ExtTerm:
    """Read an extension term; parameters are read by elem_parser (atoms by default)."""
    elems_sx, tok_sx = _head(sx, "ext")
    elems = tuple(elem_parser(e) for e in _head(elems_sx, "set"))
    return ExtTerm(elems, base_token_from_sexp(name, tok_sx))


def ext_term_to_sexp(name: str, t: ExtTerm, elem_printer=None):
    printer = elem_printer or (lambda e: _SYMBOL_NAMES.get(id(e), e))
    return ["ext", ["set"] + [printer(e) for e in t.elems], base_token_to_sexp(name, t.sigma)]


def parse_base_token(name: str, text: str):
    return base_token_from_sexp(name, parse_sexp(text))


def print_base_token(name: str, tok) -> str:
    return print_sexp(base_token_to_sexp(name, tok))


def parse_deriv_term(name: str, text: str):
    return deriv_term_from_sexp(name, parse_sexp(text))


def print_deriv_term(name: str, t) -> str:
    return print_sexp(deriv_term_to_sexp(name, t))


def parse_ext_term(name: str, text: str, elem_parser=_atom) -> ExtTerm:
    return ext_term_from_sexp(name, parse_sexp(text), elem_parser)


def print_ext_term(name: str, t: ExtTerm, elem_printer=None) -> str:
    return print_sexp(ext_term_to_sexp(name, t, elem_printer))
