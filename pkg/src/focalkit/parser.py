"""Polynomial expression language and the JSON family file format.

Grammar::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := rational | ident | '(' expr ')'
    rational := integer ('/' positive-integer)?
    ident    := letter (letter | digit)*

Whitespace is insignificant.  A leading minus is accepted so that rendered
polynomials parse back.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ParseError
from .exactalg import MPoly
from .exactalg.poly import render
from .families import FamilySpec

MAX_EXPONENT = 64
MAX_DEGREE = 64
MAX_DEPTH = 200


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_PUNCT = set("+-*^/()")


def tokenize(text, context=""):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start = col
        if ch in _PUNCT:
            tokens.append(Token(ch, ch, line, start))
            i, col = i + 1, col + 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, start))
            col += j - i
            i = j
        elif ch.isascii() and ch.isalpha():
            j = i
            while j < n and text[j].isascii() and text[j].isalnum():
                j += 1
            tokens.append(Token("ident", text[i:j], line, start))
            col += j - i
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col, context)
    tokens.append(Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text, variables, context):
        self.tokens = tokenize(text, context)
        self.pos = 0
        self.variables = tuple(variables)
        self.context = context
        self.depth = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column, self.context)

    def advance(self):
        t = self.tok
        self.pos += 1
        return t

    def expect(self, kind, what):
        if self.tok.kind != kind:
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(f"expected {what}, found {found}")
        return self.advance()

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return p

    def expr(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")
        neg = False
        if self.tok.kind == "-":
            self.advance()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        self.depth -= 1
        return acc

    def term(self):
        start = self.tok
        acc = self.factor()
        while self.tok.kind == "*":
            self.advance()
            rhs = self.factor()
            if acc.degree() + rhs.degree() > MAX_DEGREE:
                raise self.error(f"degree exceeds {MAX_DEGREE}", start)
            acc = acc * rhs
        return acc

    def factor(self):
        start = self.tok
        base = self.base()
        if self.tok.kind == "^":
            self.advance()
            tok = self.expect("int", "a natural-number exponent")
            e = int(tok.text)
            if e > MAX_EXPONENT:
                raise self.error(f"exponent {e} exceeds {MAX_EXPONENT}", tok)
            if base.degree() * e > MAX_DEGREE:
                raise self.error(f"degree exceeds {MAX_DEGREE}", start)
            base = base ** e
        return base

    def base(self):
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            if self.tok.kind == "/":
                self.advance()
                den = self.expect("int", "a positive integer denominator")
                if int(den.text) == 0:
                    raise self.error("zero denominator", den)
                value /= int(den.text)
            return MPoly.const(value, self.variables)
        if tok.kind == "ident":
            self.advance()
            if tok.text not in self.variables:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return MPoly.var(tok.text, self.variables)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise self.error(f"expected a number, variable or '(', found {found}")


def parse_expr(text, variables, context=""):
    """Parse one polynomial over the given variables; JSON integers are accepted as constants."""
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}", 1, 1, context)
    return _Parser(text, variables, context).parse()


def _field(doc, name, kind):
    if name not in doc:
        raise InputError(f"missing field {name!r}")
    value = doc[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InputError(f"field {name!r} must be an integer")
    if kind is list and not isinstance(value, list):
        raise InputError(f"field {name!r} must be a list")
    return value


def parse_family_file(text, context="<input>"):
    """JSON family description -> validated FamilySpec."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, context) from None
    if not isinstance(doc, dict):
        raise InputError("a family file must hold a JSON object")
    N = _field(doc, "N", int)
    k = _field(doc, "k", int)
    params = _field(doc, "params", list)
    points = _field(doc, "points", list)
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise InputError("field 'label' must be a string")
    if N < 1 or k < 0 or k >= N:
        raise InputError(f"need 0 <= k < N, got N = {N}, k = {k}")
    for p in params:
        if not isinstance(p, str) or not p or not p[0].isascii() or not p[0].isalpha() or not (p.isascii() and p.isalnum()):
            raise InputError(f"invalid parameter name {p!r}")
    if len(set(params)) != len(params):
        raise InputError("duplicate parameter names")
    if not params:
        raise InputError("at least one parameter is required")
    span = []
    for i, pt in enumerate(points):
        if not isinstance(pt, list):
            raise InputError(f"points[{i}] must be a list")
        if len(pt) != N + 1:
            raise InputError(f"points[{i}] has {len(pt)} coordinates, expected N+1 = {N + 1}")
        span.append([parse_expr(e, tuple(params), f"{context} points[{i}][{j}]") for j, e in enumerate(pt)])
    return FamilySpec(N, k, tuple(params), span, label)


def serialize_family(spec):
    """FamilySpec -> JSON text in the family file format (stable key order)."""
    doc = {
        "N": spec.N,
        "k": spec.k,
        "params": list(spec.params),
        "points": [[render(c) for c in pt] for pt in spec.span],
        "label": spec.label,
    }
    return json.dumps(doc, sort_keys=True, indent=2)
