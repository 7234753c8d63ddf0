"""ASCII surface grammar for bundle expressions.

Atoms: ``lam`` / ``lam^<int>``, ``iota``, ``rho``, ``sigmaL``, ``sigmaR``,
``sigma`` (alias for ``sigmaL+sigmaR``), ``Tstar``, ``<nat>`` (trivial
bundle), ``conn(U1)``, ``conn(U2)``, ``conn(SU3)``.  Operators: ``+`` for
direct sum, ``*`` or juxtaposition for tensor product, ``conj(...)``,
``ext<k>(...)``, parentheses.

The printer emits the same grammar; printing a normal form is
deterministic (monomials sorted), so printed forms are stable golden
values and re-parse to the same normal form.
"""

from __future__ import annotations

import re

from .expr import (
    Atom,
    BundleError,
    BundleExpr,
    Conj,
    Ext,
    GaugeKind,
    GenKind,
    Generator,
    Monomial,
    NormalForm,
    Sum,
    Tensor,
    ZeroBundle,
    conn,
    lam,
    sum_of,
    tensor_of,
    trivial,
)


class ExprSyntaxError(BundleError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^()]))")

_EXT_RE = re.compile(r"^ext(\d+)$")

_GAUGE_NAMES = {"U1": GaugeKind.U1, "U2": GaugeKind.U2, "SU3": GaugeKind.SU3}

_PLAIN_ATOMS = {
    "iota": Generator(GenKind.IOTA),
    "rho": Generator(GenKind.RHO),
    "sigmaL": Generator(GenKind.SIGMA_L),
    "sigmaR": Generator(GenKind.SIGMA_R),
    "Tstar": Generator(GenKind.COTANGENT),
}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {stripped[0]!r}", bad_pos)
        if m.group("name"):
            tokens.append(_Token("name", m.group("name"), m.start("name")))
        elif m.group("int"):
            tokens.append(_Token("int", m.group("int"), m.start("int")))
        else:
            tokens.append(_Token(m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise ExprSyntaxError(f"expected {kind!r}, found {shown!r}", tok.pos)
        return self.advance()

    def parse(self) -> BundleExpr:
        e = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {tok.text!r} after expression", tok.pos)
        return e

    def sum(self) -> BundleExpr:
        terms = [self.term()]
        while self.peek().kind == "+":
            self.advance()
            terms.append(self.term())
        return sum_of(*terms)

    def term(self) -> BundleExpr:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                factors.append(self.factor())
            elif tok.kind in ("name", "int", "("):
                factors.append(self.factor())
            else:
                break
        return tensor_of(*factors)

    def factor(self) -> BundleExpr:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            e = self.sum()
            self.expect(")")
            return e
        if tok.kind == "int":
            self.advance()
            return Atom(trivial(int(tok.text)))
        if tok.kind == "name":
            return self.named(self.advance())
        shown = tok.text or "end of input"
        raise ExprSyntaxError(f"expected an expression, found {shown!r}", tok.pos)

    def named(self, tok: _Token) -> BundleExpr:
        name = tok.text
        if name == "lam":
            power = 1
            if self.peek().kind == "^":
                self.advance()
                power = self.signed_int()
            return Atom(lam(power))
        if name == "conj":
            self.expect("(")
            inner = self.sum()
            self.expect(")")
            return Conj(inner)
        if name == "conn":
            self.expect("(")
            group = self.expect("name")
            if group.text not in _GAUGE_NAMES:
                raise ExprSyntaxError(f"unknown gauge group {group.text!r}", group.pos)
            self.expect(")")
            return Atom(conn(_GAUGE_NAMES[group.text]))
        ext_match = _EXT_RE.match(name)
        if ext_match:
            degree = int(ext_match.group(1))
            if degree == 0:
                raise ExprSyntaxError("exterior power degree must be positive", tok.pos)
            self.expect("(")
            inner = self.sum()
            self.expect(")")
            return Ext(inner, degree)
        if name == "sigma":
            return Sum((Atom(_PLAIN_ATOMS["sigmaL"]), Atom(_PLAIN_ATOMS["sigmaR"])))
        if name in _PLAIN_ATOMS:
            return Atom(_PLAIN_ATOMS[name])
        raise ExprSyntaxError(f"unknown generator name {name!r}", tok.pos)

    def signed_int(self) -> int:
        negative = False
        if self.peek().kind == "-":
            self.advance()
            negative = True
        tok = self.expect("int")
        value = int(tok.text)
        return -value if negative else value


def parse(text: str) -> BundleExpr:
    """Parse expression text into an abstract syntax tree (no rewriting)."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printing


def _format_generator(g: Generator) -> str:
    if g.kind is GenKind.LAMBDA:
        return "lam" if g.power == 1 else f"lam^{g.power}"
    if g.kind is GenKind.TRIVIAL:
        return str(g.count)
    if g.kind is GenKind.CONN:
        return f"conn({g.gauge.value})"
    if g.kind is GenKind.IOTA_DET:
        base = "ext2(iota)"
    else:
        base = g.kind.value
    return f"conj({base})" if g.conjugated else base


def format_expr(e: BundleExpr) -> str:
    """Render an expression tree in the surface grammar."""
    if isinstance(e, ZeroBundle):
        return "0"
    if isinstance(e, Atom):
        return _format_generator(e.generator)
    if isinstance(e, Sum):
        return " + ".join(format_expr(t) for t in e.terms)
    if isinstance(e, Tensor):
        parts = []
        for f in e.factors:
            rendered = format_expr(f)
            parts.append(f"({rendered})" if isinstance(f, Sum) else rendered)
        return "*".join(parts)
    if isinstance(e, Conj):
        return f"conj({format_expr(e.operand)})"
    if isinstance(e, Ext):
        return f"ext{e.degree}({format_expr(e.operand)})"
    raise TypeError(f"not a bundle expression: {e!r}")


def _format_monomial(mono: Monomial, mult: int) -> str:
    parts = []
    if mult != 1:
        parts.append(str(mult))
    if mono.lambda_exp != 0:
        parts.append(_format_generator(lam(mono.lambda_exp)))
    parts.extend(_format_generator(a) for a in mono.atoms)
    return "*".join(parts) if parts else "1"


def format_normal(nf: NormalForm) -> str:
    """Deterministic rendering of a normal form (monomials sorted)."""
    if nf.is_zero():
        return "0"
    return " + ".join(_format_monomial(m, c) for m, c in nf.items())
