"""Text syntax for operators, polynomials and linear forms.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' uint]
    atom   := integer | 't' | 'D' | 'T' | 'Δ' | '(' expr ')'

``T`` (or ``Δ``) is the Euler derivation ``t d/dt``.  Within a term the
operator symbol must be the last factor: coefficients act on the left.
Parenthesised groups may only contain polynomials in ``t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .diffop import DOperator, ThetaOperator, _Operator
from .errors import EmptyForm, MixedBasis, NegativePower, OperatorSyntaxError
from .ratpoly import Poly
from .siegel import LinearForm

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-zΔ]+)|(?P<op>[-+*/^()\[\],]))")

_SYMBOLS = {"D": "D", "T": "T", "Δ": "T"}


@dataclass(frozen=True)
class OperatorExpr:
    """Canonical term list: distinct powers, decreasing, no zero coefficients."""

    basis: str
    terms: tuple[tuple[Poly, int], ...]

    def __init__(self, basis: str, terms: Iterable[tuple[Poly, int]]):
        if basis not in ("D", "T"):
            raise ValueError(f"basis must be 'D' or 'T', not {basis!r}")
        acc: dict[int, Poly] = {}
        for c, k in terms:
            if k < 0:
                raise ValueError("negative power")
            acc[k] = acc.get(k, Poly()) + Poly.coerce(c)
        canon = tuple((acc[k], k) for k in sorted(acc, reverse=True) if acc[k])
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", canon)

    @classmethod
    def from_operator(cls, op: _Operator) -> OperatorExpr:
        return cls(op.symbol, [(c, i) for i, c in enumerate(op.coeffs)])

    def to_operator(self) -> ThetaOperator | DOperator:
        if not self.terms:
            raise ValueError("the zero operator has no order")
        cs = [Poly()] * (self.terms[0][1] + 1)
        for c, k in self.terms:
            cs[k] = c
        return (ThetaOperator if self.basis == "T" else DOperator)(cs)


class _Tokens:
    def __init__(self, text: str, poly_vars: tuple[str, ...]):
        self.text = text
        self.poly_vars = poly_vars
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip():
                    at = pos + len(rest) - len(rest.lstrip())
                    raise OperatorSyntaxError(f"unexpected character {text[at]!r}", self.byte(at))
                break
            kind = m.lastgroup
            val = m.group(kind)
            start = m.start(kind)
            if kind == "name":
                # split runs like "tD" into single-letter names
                for i, ch in enumerate(val):
                    self.toks.append(("name", ch, start + i))
            else:
                self.toks.append((kind, val, start))
            pos = m.end()
        self.i = 0

    def byte(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode("utf-8"))

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("eof", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str, tok=None) -> OperatorSyntaxError:
        tok = tok or self.peek()
        return OperatorSyntaxError(msg, self.byte(tok[2]))

    def expect(self, val: str):
        tok = self.next()
        if tok[1] != val or tok[0] == "eof":
            raise self.error(f"expected {val!r}", tok)


class _Parser:
    """Recursive descent producing ``{power: Poly}`` plus the basis seen."""

    def __init__(self, toks: _Tokens, allow_ops: bool):
        self.toks = toks
        self.allow_ops = allow_ops
        self.basis: Optional[str] = None

    def expr(self, nested: bool = False) -> dict[int, Poly]:
        total: dict[int, Poly] = {}
        sign = 1
        kind, val, _ = self.toks.peek()
        if val in "+-" and kind == "op":
            self.toks.next()
            sign = -1 if val == "-" else 1
        while True:
            for k, c in self.term(nested).items():
                total[k] = total.get(k, Poly()) + c.scale(sign)
            kind, val, _ = self.toks.peek()
            if kind == "op" and val in "+-":
                self.toks.next()
                sign = -1 if val == "-" else 1
            else:
                return total

    def term(self, nested: bool) -> dict[int, Poly]:
        coeff = Poly.const(1)
        power = None
        first = True
        while True:
            tok = self.toks.peek()
            if not first:
                if tok[0] == "op" and tok[1] in "*/":
                    self.toks.next()
                    op = tok[1]
                else:
                    break
            else:
                op = "*"
            ftok = self.toks.peek()
            value, sym_power = self.factor(nested)
            if power is not None:
                raise self.toks.error("operator symbol must be the last factor of a term", ftok)
            if sym_power is not None:
                if op == "/":
                    raise self.toks.error("cannot divide by an operator", ftok)
                power = sym_power
            elif op == "*":
                coeff = coeff * value
            else:
                if not value.is_constant() or value.is_zero():
                    raise self.toks.error("divisor must be a nonzero constant", ftok)
                coeff = coeff.scale(1 / value[0])
            first = False
        return {power or 0: coeff}

    def _power(self) -> Optional[int]:
        tok = self.toks.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.toks.next()
            nxt = self.toks.next()
            if nxt[0] == "op" and nxt[1] == "-":
                raise NegativePower("negative powers are not allowed", self.toks.byte(nxt[2]))
            if nxt[0] != "num":
                raise self.toks.error("expected a non-negative integer exponent", nxt)
            return int(nxt[1])
        return None

    def factor(self, nested: bool) -> tuple[Optional[Poly], Optional[int]]:
        tok = self.toks.next()
        kind, val, pos = tok
        if kind == "num":
            base = Poly.const(int(val))
        elif kind == "name" and val in self.toks.poly_vars:
            base = Poly.t()
        elif kind == "name" and val in _SYMBOLS:
            if not self.allow_ops or nested:
                raise self.toks.error(f"operator symbol {val!r} not allowed here", tok)
            basis = _SYMBOLS[val]
            if self.basis is not None and self.basis != basis:
                raise MixedBasis("D and T cannot appear in one expression", self.toks.byte(pos))
            self.basis = basis
            e = self._power()
            return None, 1 if e is None else e
        elif kind == "op" and val == "(":
            inner = self.expr(nested=True)
            self.toks.expect(")")
            base = inner.get(0, Poly())
        elif kind == "eof":
            raise self.toks.error("unexpected end of input", tok)
        else:
            raise self.toks.error(f"unexpected {val!r}", tok)
        e = self._power()
        return (base if e is None else base**e), None


def _finish(parser: _Parser):
    tok = parser.toks.peek()
    if tok[0] != "eof":
        raise parser.toks.error(f"unexpected {tok[1]!r}", tok)


def parse_operator(text: str, default_basis: str = "T") -> OperatorExpr:
    """Parse operator text; an expression without any symbol is order 0 in ``default_basis``."""
    parser = _Parser(_Tokens(text, ("t",)), allow_ops=True)
    terms = parser.expr()
    _finish(parser)
    return OperatorExpr(parser.basis or default_basis, [(c, k) for k, c in terms.items()])


def parse_op(text: str, default_basis: str = "T") -> ThetaOperator | DOperator:
    return parse_operator(text, default_basis).to_operator()


def parse_poly(text: str, variables: tuple[str, ...] = ("t",)) -> Poly:
    parser = _Parser(_Tokens(text, variables), allow_ops=False)
    terms = parser.expr()
    _finish(parser)
    return terms.get(0, Poly())


def parse_linear_form(text: str) -> LinearForm:
    toks = _Tokens(text, ("t",))
    parser = _Parser(toks, allow_ops=False)
    toks.expect("[")
    if toks.peek()[1] == "]" and toks.peek()[0] == "op":
        raise EmptyForm("a linear form needs at least one component", toks.byte(toks.peek()[2]))
    comps = []
    while True:
        comps.append(parser.expr().get(0, Poly()))
        tok = toks.next()
        if tok[0] == "op" and tok[1] == ",":
            continue
        if tok[0] == "op" and tok[1] == "]":
            break
        raise toks.error("expected ',' or ']'", tok)
    _finish(parser)
    return LinearForm(comps)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial(c: Fraction, k: int) -> str:
    """Unsigned monomial text for ``|c| t^k``."""
    c = abs(c)
    if k == 0:
        return _fmt_rational(c)
    var = "t" if k == 1 else f"t^{k}"
    return var if c == 1 else f"{_fmt_rational(c)}*{var}"


def _signed_terms(p: Poly) -> list[tuple[bool, str]]:
    return [(c < 0, _monomial(c, k)) for k, c in reversed(list(enumerate(p.coeffs))) if c]


def _join(parts: list[tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def print_poly(p: Poly) -> str:
    return _join(_signed_terms(p))


def print_operator(expr: OperatorExpr | _Operator) -> str:
    if isinstance(expr, _Operator):
        expr = OperatorExpr.from_operator(expr)
    parts: list[tuple[bool, str]] = []
    for c, k in expr.terms:
        if k == 0:
            parts.extend(_signed_terms(c))
            continue
        sym = expr.basis if k == 1 else f"{expr.basis}^{k}"
        neg = c.lc < 0
        mag = -c if neg else c
        if mag == 1:
            parts.append((neg, sym))
        elif mag.is_constant() or mag == Poly.t():
            parts.append((neg, f"{print_poly(mag)}*{sym}"))
        else:
            parts.append((neg, f"({print_poly(mag)})*{sym}"))
    return _join(parts)


def print_linear_form(L: LinearForm) -> str:
    return "[" + ", ".join(print_poly(a) for a in L.A) + "]"
