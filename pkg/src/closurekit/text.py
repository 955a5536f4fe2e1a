"""The algebra input language: rings, polynomials, ideals, matrices.

Grammar (whitespace-insensitive, ``*`` mandatory between factors)::

    ring     := field "[" ident ("," ident)* "]" ("/" "(" polylist ")")?
    field    := "Q" | "F" "(" int ")"
    polylist := poly (";" poly)* | poly ("," poly)*
    poly     := term (("+"|"-") term)*
    term     := factor ("*" factor)*
    factor   := atom ("^" int)? | "-" factor
    atom     := int ("/" int)? | ident | "(" poly ")"

Every syntax error carries a :class:`SourceSpan` of byte offsets.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .poly import QQ, PolyRing, Poly, PrimeField, is_prime


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, text: str = ""):
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span
        self.text = text

    def caret(self) -> str:
        """Two-line rendering with a caret under the offending span."""
        width = max(1, self.span.end - self.span.start)
        return f"{self.text}\n{' ' * self.span.start}{'^' * width}"


# ---------------------------------------------------------------------------
# abstract syntax


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: SourceSpan


@dataclass(frozen=True)
class Var:
    name: str
    span: SourceSpan


@dataclass(frozen=True)
class Neg:
    arg: "PolyExpr"
    span: SourceSpan


@dataclass(frozen=True)
class PowE:
    base: "PolyExpr"
    exp: int
    span: SourceSpan


@dataclass(frozen=True)
class MulE:
    factors: tuple
    span: SourceSpan


@dataclass(frozen=True)
class AddE:
    # (sign, term) pairs, sign is +1 or -1
    terms: tuple
    span: SourceSpan


PolyExpr = Union[Num, Var, Neg, PowE, MulE, AddE]


@dataclass(frozen=True)
class RingExpr:
    field_tag: str  # "Q" or "F"
    prime: int | None
    variables: tuple
    relations: tuple = ()
    span: SourceSpan = field(default=SourceSpan(0, 0))


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\],;/]))")


@dataclass(frozen=True)
class Token:
    kind: str  # int | ident | op | eof
    text: str
    span: SourceSpan


def tokenize(text: str) -> list[Token]:
    pos = 0
    out = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
        kind = m.lastgroup
        start = m.start(kind)
        out.append(Token(kind, m.group(kind), SourceSpan(start, m.end())))
        pos = m.end()
    out.append(Token("eof", "", SourceSpan(n, n)))
    return out


class _Parser:
    def __init__(self, text: str, variables=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.variables = None if variables is None else set(variables)

    def peek(self, k=0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def error(self, msg, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.span, self.text)

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.kind != "op" or t.text != text:
            found = t.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text == text

    def expect_end(self):
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")

    # ring ----------------------------------------------------------------

    def ring(self) -> RingExpr:
        start = self.peek().span.start
        t = self.next()
        if t.kind != "ident" or t.text not in ("Q", "F"):
            self.error("expected field 'Q' or 'F(p)'", t)
        prime = None
        if t.text == "F":
            self.expect("(")
            pt = self.next()
            if pt.kind != "int":
                self.error("expected a prime characteristic", pt)
            prime = int(pt.text)
            if not is_prime(prime):
                raise ParseError(f"characteristic {prime} is not a prime", pt.span, self.text)
            self.expect(")")
        self.expect("[")
        names = []
        seen = set()
        while True:
            v = self.next()
            if v.kind != "ident":
                self.error("expected a variable name", v)
            if v.text in seen:
                raise ParseError(f"duplicate variable {v.text!r}", v.span, self.text)
            seen.add(v.text)
            names.append(v.text)
            if self.at(","):
                self.next()
                continue
            break
        self.expect("]")
        self.variables = set(names)
        rels: tuple = ()
        if self.at("/"):
            self.next()
            self.expect("(")
            rels = tuple(self.polylist(stop=")"))
            self.expect(")")
        end = self.toks[self.i - 1].span.end
        self.expect_end()
        return RingExpr(t.text, prime, tuple(names), rels, SourceSpan(start, end))

    # polynomials -----------------------------------------------------------

    def polylist(self, stop=None) -> list:
        items = [self.poly()]
        sep = None
        while self.at(";") or self.at(","):
            t = self.next()
            if sep is None:
                sep = t.text
            elif t.text != sep:
                self.error("mixed ';' and ',' separators", t)
            items.append(self.poly())
        return items

    def poly(self) -> PolyExpr:
        start = self.peek().span.start
        terms = [(1, self.term())]
        while self.at("+") or self.at("-"):
            sign = 1 if self.next().text == "+" else -1
            terms.append((sign, self.term()))
        if len(terms) == 1:
            return terms[0][1]
        return AddE(tuple(terms), SourceSpan(start, self.toks[self.i - 1].span.end))

    def term(self) -> PolyExpr:
        start = self.peek().span.start
        factors = [self.factor()]
        while self.at("*"):
            self.next()
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return MulE(tuple(factors), SourceSpan(start, self.toks[self.i - 1].span.end))

    def factor(self) -> PolyExpr:
        t = self.peek()
        if self.at("-"):
            self.next()
            arg = self.factor()
            return Neg(arg, SourceSpan(t.span.start, self.toks[self.i - 1].span.end))
        base = self.atom()
        if self.at("^"):
            self.next()
            e = self.peek()
            if self.at("-"):
                j = self.next()
                raise ParseError("negative exponent", SourceSpan(j.span.start, self.peek().span.end), self.text)
            if e.kind != "int":
                self.error("malformed exponent: expected a non-negative integer", e)
            self.next()
            return PowE(base, int(e.text), SourceSpan(t.span.start, e.span.end))
        return base

    def atom(self) -> PolyExpr:
        t = self.next()
        if t.kind == "int":
            value = Fraction(int(t.text))
            end = t.span.end
            if self.at("/") and self.peek(1).kind == "int":
                self.next()
                d = self.next()
                if int(d.text) == 0:
                    raise ParseError("zero denominator", d.span, self.text)
                value = value / int(d.text)
                end = d.span.end
            return Num(value, SourceSpan(t.span.start, end))
        if t.kind == "ident":
            if self.variables is not None and t.text not in self.variables:
                raise ParseError(f"unknown variable {t.text!r}", t.span, self.text)
            return Var(t.text, t.span)
        if t.kind == "op" and t.text == "(":
            inner = self.poly()
            self.expect(")")
            return inner
        found = t.text or "end of input"
        self.error(f"unexpected {found!r}", t)


# ---------------------------------------------------------------------------
# public parsing API


def parse_ring(text: str) -> RingExpr:
    return _Parser(text).ring()


def parse_poly(text: str, ring: RingExpr | PolyRing) -> PolyExpr:
    p = _Parser(text, ring.variables)
    expr = p.poly()
    p.expect_end()
    return expr


def elaborate(expr: PolyExpr, ring: PolyRing) -> Poly:
    """Turn an AST into a polynomial; coefficients are reduced into the field here."""
    if isinstance(expr, Num):
        return ring.constant(expr.value)
    if isinstance(expr, Var):
        return ring.var(expr.name)
    if isinstance(expr, Neg):
        return -elaborate(expr.arg, ring)
    if isinstance(expr, PowE):
        return elaborate(expr.base, ring) ** expr.exp
    if isinstance(expr, MulE):
        out = ring.one()
        for f in expr.factors:
            out = out * elaborate(f, ring)
        return out
    if isinstance(expr, AddE):
        out = ring.zero()
        for sign, t in expr.terms:
            v = elaborate(t, ring)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(f"not a polynomial expression: {expr!r}")


def build_ring(expr: RingExpr) -> PolyRing:
    field_ = QQ if expr.field_tag == "Q" else PrimeField(expr.prime)
    amb = PolyRing(field_, expr.variables)
    rels = [elaborate(r, amb) for r in expr.relations]
    return PolyRing(field_, expr.variables, rels)


def ring_from_text(text: str) -> PolyRing:
    return build_ring(parse_ring(text))


def parse_poly_in(text: str, ring: PolyRing) -> Poly:
    return elaborate(parse_poly(text, ring), ring)


def _split_top(text: str, seps: tuple) -> list[tuple[str, int]]:
    """Split at separator characters outside parentheses; keeps offsets."""
    out = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in seps:
            out.append((text[start:i], start))
            start = i + 1
        i += 1
    out.append((text[start:], start))
    return out


def _parse_piece(piece: str, offset: int, ring: PolyRing, whole: str) -> Poly:
    try:
        return parse_poly_in(piece, ring)
    except ParseError as exc:
        span = SourceSpan(exc.span.start + offset, exc.span.end + offset)
        raise ParseError(exc.message, span, whole) from None


def parse_polylist(text: str, ring: PolyRing) -> list[Poly]:
    """Generators separated by ';' (or ','); empty or blank text is the empty list."""
    if not text.strip():
        return []
    sep = ";" if ";" in text else ","
    return [_parse_piece(p, off, ring, text) for p, off in _split_top(text, (sep,))]


def parse_matrix(text: str, ring: PolyRing) -> list[list[Poly]]:
    """Row-major matrix: rows separated by ';', entries by ','."""
    rows = []
    for row, off in _split_top(text, (";",)):
        rows.append([_parse_piece(e, off + o, ring, text) for e, o in _split_top(row, (",",))])
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("ragged matrix rows", SourceSpan(0, len(text)), text)
    return rows


def parse_vector(text: str, ring: PolyRing) -> list[Poly]:
    return [_parse_piece(e, o, ring, text) for e, o in _split_top(text, (",",))]


def parse_ideal_list(text: str, ring: PolyRing) -> list[list[Poly]]:
    """Several ideals separated by ';;'."""
    out = []
    pos = 0
    for chunk in text.split(";;"):
        try:
            out.append(parse_polylist(chunk, ring))
        except ParseError as exc:
            span = SourceSpan(exc.span.start + pos, exc.span.end + pos)
            raise ParseError(exc.message, span, text) from None
        pos += len(chunk) + 2
    return out


# ---------------------------------------------------------------------------
# printing


def _coef_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _mono_str(exps, names) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def print_canonical(p: Poly) -> str:
    """Terms in decreasing order under the ring's monomial order."""
    if not p.terms:
        return "0"
    names = p.ring.variables
    pieces = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        neg = p.ring.characteristic == 0 and c < 0
        mag = -c if neg else c
        mono = _mono_str(e, names)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if idx == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def print_ring(R: PolyRing) -> str:
    s = f"{R.field}[{','.join(R.variables)}]"
    if R.relation_terms:
        s += "/(" + "; ".join(print_canonical(r) for r in R.relations) + ")"
    return s


def print_vector(v) -> str:
    return ", ".join(print_canonical(x) for x in v)


def print_matrix(rows) -> str:
    return "; ".join(", ".join(print_canonical(x) for x in row) for row in rows)


# ---------------------------------------------------------------------------
# certificates

VERDICTS = ("member", "not_member", "not_found_within_bound", "witness_not_finite", "witness_not_cover")


def dumps(obj) -> str:
    """Deterministic JSON (sorted keys)."""
    return json.dumps(obj, sort_keys=True, indent=2)


def certificate_json(query: dict, verdict: str, witness: dict) -> str:
    if verdict not in VERDICTS:
        raise ValueError(f"unknown verdict {verdict!r}")
    return dumps({"query": query, "verdict": verdict, "witness": witness})
