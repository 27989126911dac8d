"""Parser for the batch session language.

A session is a sequence of ``;``-terminated statements::

    ring R vars x1 x2 x3 x4;
    order M weight [[0,2,2,3],[1,4,1,6]] tiebreak grevlex;
    poly f = x1^2*x2^2 - 4*x2^3 - x4^2;
    ideal I = [f];
    valuation nu matrix [[-3,-6,14,-9],[22,-2,-3,-3]] valueorder [[1,0],[0,1]] degrees [1,2,3,3];
    grading D = [1,2,3,3];
    groebner I M as G;

``#`` starts a comment that runs to the end of the line.  Polynomials are
parsed in the most recently declared ring.  Names must be declared before
use; command arguments are checked for kind and arity at parse time.
``str(session)`` re-serializes to a canonical text that parses back to an
equal session.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .polyring import ParseError, Polynomial, PolynomialRing, format_polynomial, parse_polynomial

BUILTIN_ORDERS = ("lex", "grlex", "grevlex")


# ---------------------------------------------------------------------------
# values

@dataclass(frozen=True)
class Name:
    value: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Number:
    value: Fraction

    def __str__(self):
        return _frac(self.value)


@dataclass(frozen=True)
class Vector:
    entries: tuple[Fraction, ...]

    def __str__(self):
        return "[" + ",".join(_frac(x) for x in self.entries) + "]"


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(_frac(x) for x in r) + "]" for r in self.rows) + "]"


@dataclass(frozen=True)
class NameList:
    names: tuple[str, ...]

    def __str__(self):
        return "[" + ", ".join(self.names) + "]"


@dataclass(frozen=True)
class Option:
    key: str
    value: "Value"

    def __str__(self):
        return f"{self.key}={self.value}"


Value = Union[Name, Number, Vector, Matrix, NameList]


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# statements

@dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple[str, ...]
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"ring {self.name} vars {' '.join(self.variables)};"


@dataclass(frozen=True)
class OrderDecl:
    name: str
    kind: str  # lex | grlex | grevlex | weight | valuation
    matrix: Matrix | None = None
    valuation: str | None = None
    tiebreak: str | None = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        if self.kind == "weight":
            return f"order {self.name} weight {self.matrix} tiebreak {self.tiebreak};"
        if self.kind == "valuation":
            return f"order {self.name} valuation {self.valuation} tiebreak {self.tiebreak};"
        return f"order {self.name} {self.kind};"


@dataclass(frozen=True)
class PolyDecl:
    name: str
    ring: str
    poly: Polynomial
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"poly {self.name} = {format_polynomial(self.poly)};"


@dataclass(frozen=True)
class IdealDecl:
    name: str
    members: tuple[str, ...]
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"ideal {self.name} = [{', '.join(self.members)}];"


@dataclass(frozen=True)
class ValuationDecl:
    name: str
    matrix: Matrix
    valueorder: Matrix
    degrees: Vector | None = None
    line: int = field(default=0, compare=False)

    def __str__(self):
        tail = f" degrees {self.degrees}" if self.degrees is not None else ""
        return f"valuation {self.name} matrix {self.matrix} valueorder {self.valueorder}{tail};"


@dataclass(frozen=True)
class GradingDecl:
    name: str
    degrees: Vector
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"grading {self.name} = {self.degrees};"


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple[Value, ...]
    options: tuple[Option, ...] = ()
    bind: str | None = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def option(self, key, default=None):
        for o in self.options:
            if o.key == key:
                return o.value
        return default

    def __str__(self):
        parts = [self.name] + [str(a) for a in self.args] + [str(o) for o in self.options]
        if self.bind:
            parts += ["as", self.bind]
        return " ".join(parts) + ";"


Statement = Union[RingDecl, OrderDecl, PolyDecl, IdealDecl, ValuationDecl, GradingDecl, Command]


@dataclass
class Session:
    statements: list = field(default_factory=list)

    @property
    def commands(self) -> list[Command]:
        return [s for s in self.statements if isinstance(s, Command)]

    def __str__(self):
        return "\n".join(str(s) for s in self.statements) + ("\n" if self.statements else "")

    def __eq__(self, other):
        return isinstance(other, Session) and self.statements == other.statements


# ---------------------------------------------------------------------------
# command signatures: positional argument kinds, allowed options, binds

# kinds: ring, order, poly, ideal, valuation, grading, gb, polylist, number, order|gb
COMMANDS: dict[str, dict] = {
    "groebner": {"args": [("ideal",), ("order",)], "options": {}, "binds": "gb"},
    "kernel": {"args": [("ring",), ("polylist",)], "options": {"order": "order"}, "binds": "ideal"},
    "normalform": {"args": [("poly",), ("gb",)], "options": {}, "binds": None},
    "subduct": {"args": [("poly",), ("polylist",), ("order", "gb")], "options": {}, "binds": None},
    "sagbi-vars": {"args": [("gb",)], "optional": [("valuation",)], "options": {}, "binds": None},
    "toric-lattice": {"args": [("gb", "valuation")], "options": {"bound": "number"}, "binds": None},
    "mu": {"args": [("gb",)], "options": {"grading": "grading", "polys": "polylist"}, "binds": None},
    "certificate": {"args": [("gb",), ("valuation",)],
                    "options": {"grading": "grading", "bound": "number"}, "binds": None},
    "nobody-direct": {"args": [("valuation",)], "options": {"grading": "grading"}, "binds": None},
    "nobody-alg1": {"args": [("gb", "valuation")], "optional": [("valuation",)],
                    "options": {"grading": "grading", "bound": "number", "W": "matrix",
                                "kbasis": "matrix", "ell": "number", "extension": "matrix",
                                "trials": "number"},
                    "binds": None},
    "affine-check": {"args": [("gb",), ("valuation",)],
                     "options": {"grading": "grading", "bound": "number", "extension": "matrix"},
                     "binds": None},
}

DECL_KEYWORDS = ("ring", "order", "poly", "ideal", "valuation", "grading")
RESERVED = DECL_KEYWORDS + BUILTIN_ORDERS + (
    "vars", "weight", "tiebreak", "matrix", "valueorder", "degrees", "as")

_LEX = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>-?\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<punct>[\[\],=;])
  | (?P<bad>.)
""", re.VERBOSE | re.DOTALL)


class _Tok:
    __slots__ = ("kind", "text", "line", "col", "pos")

    def __init__(self, kind, text, line, col, pos):
        self.kind, self.text, self.line, self.col, self.pos = kind, text, line, col, pos

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.line}:{self.col}"


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("−", "-")
        self.pos = 0
        self.session = Session()
        self.kinds: dict[str, str] = {}  # name -> kind
        self.rings: dict[str, PolynomialRing] = {}
        self.poly_ring: dict[str, str] = {}
        self.current_ring: str | None = None

    # -- lexing ------------------------------------------------------------
    def _next_raw(self):
        while self.pos < len(self.text):
            m = _LEX.match(self.text, self.pos)
            kind = m.lastgroup
            if kind == "ws":
                self.pos = m.end()
                continue
            line, col = _linecol(self.text, m.start())
            return _Tok(kind, m.group(kind), line, col, m.start()), m.end()
        line, col = _linecol(self.text, len(self.text))
        return _Tok("eof", "", line, col, len(self.text)), len(self.text)

    def peek(self) -> _Tok:
        return self._next_raw()[0]

    def take(self) -> _Tok:
        tok, end = self._next_raw()
        self.pos = end
        return tok

    def fail(self, tok: _Tok, msg: str, expected: str | None = None):
        raise ParseError(msg, tok.line, tok.col, expected)

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text:
            self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", repr(text))
        return tok

    def name(self, what: str = "name") -> _Tok:
        tok = self.take()
        if tok.kind != "name":
            self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", what)
        return tok

    # -- values ------------------------------------------------------------
    def value(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Number(Fraction(tok.text))
        if tok.kind == "name":
            self.take()
            return Name(tok.text)
        if tok.text == "[":
            return self.bracket()
        self.fail(tok, f"unexpected {tok.text or 'end of input'!r}", "name, number or '['")

    def bracket(self):
        open_tok = self.expect("[")
        if self.peek().text == "[":
            rows = [self.vector_body()]
            while self.peek().text == ",":
                self.take()
                rows.append(self.vector_body())
            self.expect("]")
            widths = {len(r) for r in rows}
            if len(widths) != 1 or 0 in widths:
                self.fail(open_tok, "matrix rows must be nonempty and of equal length")
            return Matrix(tuple(rows))
        items = []
        if self.peek().text != "]":
            items.append(self.take())
            while self.peek().text == ",":
                self.take()
                items.append(self.take())
        self.expect("]")
        kinds = {t.kind for t in items}
        if kinds <= {"num"}:
            if not items:
                return NameList(())
            return Vector(tuple(Fraction(t.text) for t in items))
        if kinds == {"name"}:
            return NameList(tuple(t.text for t in items))
        bad = next(t for t in items if t.kind != items[0].kind or t.kind not in ("num", "name"))
        self.fail(bad, "mixed or invalid list entries", "all names or all numbers")

    def vector_body(self) -> tuple[Fraction, ...]:
        self.expect("[")
        out = []
        tok = self.take()
        if tok.kind != "num":
            self.fail(tok, "matrix entries must be numbers", "fraction like -91/95")
        out.append(Fraction(tok.text))
        while self.peek().text == ",":
            self.take()
            tok = self.take()
            if tok.kind != "num":
                self.fail(tok, "matrix entries must be numbers", "fraction like -91/95")
            out.append(Fraction(tok.text))
        self.expect("]")
        return tuple(out)

    def matrix(self) -> Matrix:
        tok = self.peek()
        v = self.bracket() if tok.text == "[" else None
        if not isinstance(v, Matrix):
            self.fail(tok, "expected a matrix", "[[...],...]")
        return v

    def vector(self) -> Vector:
        tok = self.peek()
        v = self.bracket() if tok.text == "[" else None
        if not isinstance(v, Vector):
            self.fail(tok, "expected a vector of numbers", "[n, ...]")
        return v

    # -- name bookkeeping --------------------------------------------------
    def declare(self, tok: _Tok, kind: str):
        if tok.text in self.kinds:
            self.fail(tok, f"{tok.text!r} is already declared as a {self.kinds[tok.text]}")
        if tok.text in COMMANDS or tok.text in RESERVED:
            self.fail(tok, f"{tok.text!r} is reserved")
        self.kinds[tok.text] = kind

    def check_ref(self, tok, name: str, allowed: tuple[str, ...]):
        kind = self.kinds.get(name)
        if kind is None and "order" in allowed and name in BUILTIN_ORDERS:
            return "order"
        if kind is None:
            self.fail(tok, f"undeclared name {name!r}", " or ".join(allowed))
        if kind not in allowed:
            self.fail(tok, f"{name!r} is a {kind}", " or ".join(allowed))
        return kind

    # -- statements --------------------------------------------------------
    def parse(self) -> Session:
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return self.session
            if tok.kind != "name":
                self.fail(tok, f"unexpected {tok.text!r}", "statement keyword")
            handler = {
                "ring": self.ring, "order": self.order, "poly": self.poly,
                "ideal": self.ideal, "valuation": self.valuation, "grading": self.grading,
            }.get(tok.text)
            if handler is not None:
                self.session.statements.append(handler())
            elif tok.text in COMMANDS:
                self.session.statements.append(self.command())
            else:
                self.fail(tok, f"unknown statement {tok.text!r}",
                          "one of " + ", ".join(DECL_KEYWORDS + tuple(COMMANDS)))

    def ring(self) -> RingDecl:
        kw = self.take()
        name = self.name("ring name")
        v = self.take()
        if v.text != "vars":
            self.fail(v, f"unexpected {v.text!r}", "'vars'")
        names = []
        while self.peek().kind == "name" and self.peek().text not in RESERVED:
            t = self.take()
            if "-" in t.text:
                self.fail(t, "variable names may not contain '-'", "identifier")
            names.append(t.text)
        if not names:
            self.fail(self.peek(), "a ring needs at least one variable", "variable name")
        if len(set(names)) != len(names):
            self.fail(v, "duplicate variable names")
        self.expect(";")
        self.declare(name, "ring")
        self.rings[name.text] = PolynomialRing(tuple(names))
        self.current_ring = name.text
        return RingDecl(name.text, tuple(names), kw.line)

    def order(self) -> OrderDecl:
        kw = self.take()
        name = self.name("order name")
        kind = self.name("order kind")
        if kind.text in BUILTIN_ORDERS:
            self.expect(";")
            self.declare(name, "order")
            return OrderDecl(name.text, kind.text, line=kw.line)
        if kind.text == "weight":
            matrix = self.matrix()
            self.expect("tiebreak")
            tb = self.name("order name")
            self.check_ref(tb, tb.text, ("order",))
            self.expect(";")
            self.declare(name, "order")
            return OrderDecl(name.text, "weight", matrix=matrix, tiebreak=tb.text, line=kw.line)
        if kind.text == "valuation":
            val = self.name("valuation name")
            self.check_ref(val, val.text, ("valuation",))
            self.expect("tiebreak")
            tb = self.name("order name")
            self.check_ref(tb, tb.text, ("order",))
            self.expect(";")
            self.declare(name, "order")
            return OrderDecl(name.text, "valuation", valuation=val.text, tiebreak=tb.text, line=kw.line)
        self.fail(kind, f"unknown order kind {kind.text!r}", "lex, grlex, grevlex, weight or valuation")

    def poly(self) -> PolyDecl:
        kw = self.take()
        name = self.name("polynomial name")
        self.expect("=")
        if self.current_ring is None:
            self.fail(kw, "no ring declared before this polynomial", "ring declaration")
        start = self.pos
        end = self.text.find(";", start)
        if end < 0:
            line, col = _linecol(self.text, len(self.text))
            raise ParseError("unterminated polynomial", line, col, "';'")
        body = self.text[start:end]
        line, col = _linecol(self.text, start)
        poly = parse_polynomial(body, self.rings[self.current_ring], line, col)
        self.pos = end + 1
        self.declare(name, "poly")
        self.poly_ring[name.text] = self.current_ring
        return PolyDecl(name.text, self.current_ring, poly, kw.line)

    def ideal(self) -> IdealDecl:
        kw = self.take()
        name = self.name("ideal name")
        self.expect("=")
        tok = self.peek()
        lst = self.bracket() if tok.text == "[" else None
        if not isinstance(lst, NameList) or not lst.names:
            self.fail(tok, "an ideal is a nonempty list of polynomial names", "[name, ...]")
        rings = set()
        for n in lst.names:
            self.check_ref(tok, n, ("poly",))
            rings.add(self.poly_ring[n])
        if len(rings) != 1:
            self.fail(tok, "ideal generators live in different rings")
        self.expect(";")
        self.declare(name, "ideal")
        return IdealDecl(name.text, lst.names, kw.line)

    def valuation(self) -> ValuationDecl:
        kw = self.take()
        name = self.name("valuation name")
        self.expect("matrix")
        N = self.matrix()
        self.expect("valueorder")
        P = self.matrix()
        if len(P.rows) != len(P.rows[0]) or len(P.rows) != len(N.rows):
            self.fail(kw, "value order must be square with one row per valuation row")
        degrees = None
        if self.peek().text == "degrees":
            self.take()
            degrees = self.vector()
            if len(degrees.entries) != len(N.rows[0]):
                self.fail(kw, "one degree per matrix column is required")
        self.expect(";")
        self.declare(name, "valuation")
        return ValuationDecl(name.text, N, P, degrees, kw.line)

    def grading(self) -> GradingDecl:
        kw = self.take()
        name = self.name("grading name")
        self.expect("=")
        vec = self.vector()
        self.expect(";")
        self.declare(name, "grading")
        return GradingDecl(name.text, vec, kw.line)

    def command(self) -> Command:
        kw = self.take()
        sig = COMMANDS[kw.text]
        args, options, bind = [], [], None
        while True:
            tok = self.peek()
            if tok.text == ";":
                self.take()
                break
            if tok.kind == "eof":
                self.fail(tok, "unterminated command", "';'")
            if tok.kind == "name" and tok.text == "as":
                self.take()
                b = self.name("result name")
                bind = b
                continue
            if tok.kind == "name":
                # option?
                save = self.pos
                self.take()
                if self.peek().text == "=":
                    self.take()
                    if tok.text not in sig["options"]:
                        self.fail(tok, f"unknown option {tok.text!r} for {kw.text}",
                                  ", ".join(sig["options"]) or "no options")
                    val = self.value()
                    self._check_value(tok, val, sig["options"][tok.text])
                    options.append(Option(tok.text, val))
                    continue
                self.pos = save
            args.append((tok, self.value()))
        if bind is not None and sig["binds"] is None:
            self.fail(bind, f"{kw.text} produces no bindable result")
        required = sig["args"]
        optional = sig.get("optional", [])
        if not (len(required) <= len(args) <= len(required) + len(optional)):
            n = len(required)
            want = f"{n}" if not optional else f"{n} to {n + len(optional)}"
            self.fail(kw, f"{kw.text} takes {want} arguments, got {len(args)}")
        for (tok, val), kinds in zip(args, required + optional):
            self._check_value(tok, val, kinds)
        if bind is not None:
            self.declare(bind, sig["binds"])
        return Command(kw.text, tuple(v for _, v in args), tuple(options),
                       bind.text if bind is not None else None, kw.line, kw.col)

    def _check_value(self, tok, val, kinds):
        if isinstance(kinds, str):
            kinds = (kinds,)
        if "number" in kinds:
            if not isinstance(val, Number):
                self.fail(tok, "expected a number", "number")
            return
        if "matrix" in kinds:
            if not isinstance(val, Matrix):
                self.fail(tok, "expected a matrix", "[[...],...]")
            return
        if "polylist" in kinds:
            if not isinstance(val, NameList) or not val.names:
                self.fail(tok, "expected a list of polynomial names", "[name, ...]")
            for n in val.names:
                self.check_ref(tok, n, ("poly",))
            return
        if not isinstance(val, Name):
            self.fail(tok, "expected a name", " or ".join(kinds))
        self.check_ref(tok, val.value, kinds)


def parse_session(text: str) -> Session:
    """Parse session text; raises :class:`ParseError` with line and column."""
    return _Parser(text).parse()
