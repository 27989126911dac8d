"""Sparse multivariate polynomials over Q.

A polynomial is a map ``exponent tuple -> Fraction`` with no zero
coefficients.  Term order is not baked into the polynomial; operations that
need one (leading terms, printing in order) take a
:class:`~kbasis.orders.MonomialOrder`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import as_fraction
from .orders import MonomialOrder, grevlex


class RingMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Syntax error with 1-based line/column and an expected-token hint."""

    def __init__(self, message: str, line: int = 1, column: int = 1, expected: str | None = None):
        self.line, self.column, self.expected = line, column, expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"line {line}, column {column}: {message}{hint}")


@dataclass(frozen=True)
class PolynomialRing:
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: as_fraction(c)})

    def monomial(self, exp: Sequence[int], coeff=1) -> "Polynomial":
        exp = tuple(int(e) for e in exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent {exp} for {self.nvars} variables")
        return Polynomial(self, {exp: as_fraction(coeff)})

    def gens(self) -> list["Polynomial"]:
        n = self.nvars
        return [self.monomial([int(i == j) for j in range(n)]) for i in range(n)]

    def gen(self, name: str) -> "Polynomial":
        return self.gens()[self.variables.index(name)]

    def __call__(self, terms: Mapping) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self):
        return "Q[" + ", ".join(self.variables) + "]"


class Polynomial:
    """Immutable sparse polynomial; treat ``terms`` as read-only."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping | None = None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not fit {ring}")
            c = as_fraction(c)
            if c:
                clean[exp] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring, p.terms, p._hash = ring, terms, None
        return p

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(e) for e in self.terms)

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        weights = weights or [1] * self.ring.nvars
        return len(self.weighted_degrees(weights)) <= 1

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lead_term(self, order: MonomialOrder) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def lead_monomial(self, order: MonomialOrder) -> tuple[int, ...]:
        return self.lead_term(order)[0]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self * (1 / self.lead_term(order)[1])

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_fraction(scalar))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, exp: tuple[int, ...], coeff) -> "Polynomial":
        """``coeff * x^exp * self`` without building an intermediate polynomial."""
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {
            tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation ----------------------------------------------------
    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return substitute(self, images)

    def to_string(self, order: MonomialOrder = grevlex) -> str:
        return format_polynomial(self, order)

    def __str__(self):
        return format_polynomial(self, grevlex)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self, grevlex)!r})"


def leading_term(f: Polynomial, order: MonomialOrder) -> tuple[tuple[int, ...], Fraction]:
    return f.lead_term(order)


def two_leading_monomials(f: Polynomial, order: MonomialOrder) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The largest and second-largest exponents of ``f``."""
    if len(f.terms) < 2:
        raise ValueError("need at least two terms")
    first, second = sorted(f.terms, key=order.key, reverse=True)[:2]
    return first, second


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate ``f`` at ``x_i -> images[i]``."""
    if len(images) != f.ring.nvars:
        raise ValueError(f"expected {f.ring.nvars} images, got {len(images)}")
    if not images:
        raise ValueError("no images given")
    target = images[0].ring
    if any(g.ring != target for g in images):
        raise RingMismatchError("images live in different rings")
    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: g} for g in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k // 2) * power(i, k - k // 2)
        return cache[k]

    out = target.zero()
    for exp, c in f.terms.items():
        term = target.constant(c)
        for i, k in enumerate(exp):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# text form

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exp: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = grevlex) -> str:
    if not f.terms:
        return "0"
    out = []
    for exp, c in f.sorted_terms(order):
        mono = format_monomial(exp, f.ring.variables)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])|(?P<bad>\S))")


def _tokenize(text: str, line0: int = 1, col0: int = 1):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        kind = m.lastgroup
        start = m.start(kind)
        # line/column of the token start
        before = text[:start]
        line = line0 + before.count("\n")
        col = (start - before.rfind("\n")) if "\n" in before else col0 + start
        toks.append((kind, m.group(kind), line, col))
    return toks


def parse_polynomial(text: str, ring: PolynomialRing, line: int = 1, column: int = 1) -> Polynomial:
    """Parse ``+ - * / ^ ( )`` expressions with integer literals.

    Products need an explicit ``*``.  Exponents must be nonnegative integer
    literals; division is only by a nonzero numeric constant.
    """
    toks = _tokenize(text.replace("−", "-"), line, column)
    pos = 0
    end = ("end", None, line, column + len(text))

    def peek():
        return toks[pos] if pos < len(toks) else end

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def fail(tok, msg, expected=None):
        raise ParseError(msg, tok[2], tok[3], expected)

    def expr():
        t = peek()
        neg = False
        if t[0] == "op" and t[1] in "+-":
            take()
            neg = t[1] == "-"
        value = term()
        if neg:
            value = -value
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = power()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()
            rhs = power()
            if op[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    fail(op, "division by a non-constant or zero", "nonzero number")
                value = value / rhs.coefficient((0,) * ring.nvars)
        t = peek()
        if t[0] in ("num", "name") or (t[0] == "op" and t[1] == "("):
            fail(t, "implicit multiplication is not allowed", "'*'")
        return value

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            t = peek()
            if t[0] == "op" and t[1] == "(":
                take()
                inner = peek()
                if inner[0] != "num":
                    fail(inner, "exponent must be a nonnegative integer literal", "integer")
                take()
                close = take()
                if close[1] != ")":
                    fail(close, "unclosed exponent", "')'")
                return base ** int(inner[1])
            if t[0] != "num":
                fail(t, "exponent must be a nonnegative integer literal", "integer")
            take()
            return base ** int(t[1])
        return base

    def atom():
        t = take()
        kind, val = t[0], t[1]
        if kind == "num":
            return ring.constant(int(val))
        if kind == "name":
            if val not in ring.variables:
                fail(t, f"unknown variable {val!r}", "one of " + ", ".join(ring.variables))
            return ring.gen(val)
        if kind == "op" and val == "(":
            inner = expr()
            close = take()
            if close[1] != ")":
                fail(close, "unbalanced parenthesis", "')'")
            return inner
        if kind == "end":
            fail(t, "unexpected end of expression", "number, variable or '('")
        fail(t, f"unexpected token {val!r}", "number, variable or '('")

    result = expr()
    if pos < len(toks):
        fail(peek(), f"unexpected token {peek()[1]!r}", "operator or end of expression")
    return result
