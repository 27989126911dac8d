"""Monomial orders on exponent vectors.

Every order exposes ``key(exp)``: a tuple that sorts in the same order as
the monomials, largest monomial = largest key.  Leading terms are just
``max(terms, key=order.key)``, and ``compare`` reduces to tuple comparison.
All weight data is rescaled to integers up front (a positive row scaling
never changes a lexicographic comparison).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, as_fraction, det

LT, EQ, GT = -1, 0, 1


def _int_rows(m: RatMatrix) -> tuple[tuple[int, ...], ...]:
    rows = []
    for r in m.rows():
        den = 1
        for x in r:
            den = math.lcm(den, x.denominator)
        rows.append(tuple(int(x * den) for x in r))
    return tuple(rows)


class MonomialOrder:
    """Base class.  Subclasses implement ``_key``."""

    nvars: int | None = None

    def key(self, exp: tuple[int, ...]):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_cache", cache)
        k = cache.get(exp)
        if k is None:
            if self.nvars is not None and len(exp) != self.nvars:
                raise ValueError(f"{self} expects {self.nvars} variables, got {len(exp)}")
            k = self._key(exp)
            if len(cache) < 200_000:
                cache[exp] = k
        return k

    def _key(self, exp):  # pragma: no cover
        raise NotImplementedError

    def compare(self, a, b) -> int:
        if len(a) != len(b):
            raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")
        a, b = tuple(a), tuple(b)
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            if a != b:
                raise ArithmeticError(f"{self} ties distinct exponents {a} and {b}")
            return EQ
        return GT if ka > kb else LT

    def is_one_minimal(self, nvars: int | None = None) -> bool:
        """True iff ``1 < x_i`` for every variable (hence ``1 <= x^a`` always)."""
        n = self.nvars if self.nvars is not None else nvars
        if n is None:
            raise ValueError("number of variables needed")
        zero = (0,) * n
        return all(self.compare(tuple(int(i == j) for j in range(n)), zero) == GT
                   for i in range(n))

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("_cache", None)
        return state


@dataclass(frozen=True, eq=True)
class Lex(MonomialOrder):
    def _key(self, exp):
        return exp

    def __str__(self):
        return "lex"


@dataclass(frozen=True, eq=True)
class GrLex(MonomialOrder):
    def _key(self, exp):
        return (sum(exp), exp)

    def __str__(self):
        return "grlex"


@dataclass(frozen=True, eq=True)
class GRevLex(MonomialOrder):
    """Higher total degree wins; ties go to the smaller last nonzero entry of a - b."""

    def _key(self, exp):
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def __str__(self):
        return "grevlex"


lex, grlex, grevlex = Lex(), GrLex(), GRevLex()


@dataclass(frozen=True, eq=True)
class WeightOrder(MonomialOrder):
    """``x^a < x^b`` iff ``M a <_lex M b``; ties go to ``tiebreak``."""

    weights: RatMatrix
    tiebreak: MonomialOrder = grevlex
    _rows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_rows", _int_rows(self.weights))

    @property
    def nvars(self):
        return self.weights.ncols

    def _key(self, exp):
        return (tuple(sum(w * e for w, e in zip(row, exp)) for row in self._rows),
                self.tiebreak._key(exp))

    def __str__(self):
        return f"weight({[[str(x) for x in r] for r in self.weights.rows()]}, {self.tiebreak})"


@dataclass(frozen=True, eq=True)
class EliminationOrder(MonomialOrder):
    """Block order: blocks compared left to right.

    Each block but the last contributes its total degree followed by its
    inner order; the last block contributes only its inner order.
    """

    blocks: tuple[tuple[int, MonomialOrder], ...]

    @property
    def nvars(self):
        return sum(size for size, _ in self.blocks)

    def _key(self, exp):
        out = []
        start = 0
        last = len(self.blocks) - 1
        for i, (size, inner) in enumerate(self.blocks):
            part = exp[start:start + size]
            if i < last:
                out.append(sum(part))
            out.append(inner._key(part))
            start += size
        return tuple(out)

    def __str__(self):
        return "elimination(" + ", ".join(f"{s}:{o}" for s, o in self.blocks) + ")"


def elimination(sizes: Sequence[int], inner: MonomialOrder = grevlex) -> EliminationOrder:
    return EliminationOrder(tuple((s, inner) for s in sizes))


@dataclass(frozen=True, eq=True)
class PermutedOrder(MonomialOrder):
    """``base`` applied after reordering the variables by ``perm``."""

    perm: tuple[int, ...]
    base: MonomialOrder

    @property
    def nvars(self):
        return len(self.perm)

    def _key(self, exp):
        return self.base._key(tuple(exp[i] for i in self.perm))

    def __str__(self):
        return f"permuted({list(self.perm)}, {self.base})"


def variable_first_elimination(nvars: int, first: Sequence[int],
                               inner: MonomialOrder = grevlex) -> MonomialOrder:
    """Elimination order with the variables in ``first`` as the top block."""
    first = list(first)
    rest = [i for i in range(nvars) if i not in first]
    return PermutedOrder(tuple(first + rest),
                         EliminationOrder(((len(first), inner), (len(rest), inner))))


@dataclass(frozen=True, eq=True)
class ValueOrder:
    """Total order on Q^r: ``a < b`` iff ``P a <_lex P b`` with P nonsingular."""

    order_matrix: RatMatrix

    def __post_init__(self):
        m = self.order_matrix
        if m.nrows != m.ncols or det(m) == 0:
            raise ValueError("value order matrix must be square and nonsingular")

    @classmethod
    def lex(cls, r: int) -> "ValueOrder":
        return cls(RatMatrix.identity(r))

    @property
    def rank(self):
        return self.order_matrix.nrows

    def key(self, value: Sequence) -> tuple[Fraction, ...]:
        return tuple(self.order_matrix @ value)

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return EQ if ka == kb else (GT if ka > kb else LT)


@dataclass(frozen=True, eq=True)
class ValuationTable:
    """Values of the generators: column i of ``N`` is nu(g_i).

    The valuation of a monomial of the presentation ring is ``N @ exponent``.
    """

    N: RatMatrix
    value_order: ValueOrder
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.value_order.rank != self.N.nrows:
            raise ValueError("value order rank does not match the table")
        if self.degrees is not None:
            if len(self.degrees) != self.N.ncols:
                raise ValueError("one degree per generator is required")
            object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @classmethod
    def from_columns(cls, columns, value_order: ValueOrder | None = None, degrees=None):
        N = RatMatrix.from_columns(columns)
        return cls(N, value_order or ValueOrder.lex(N.nrows), degrees)

    @property
    def r(self) -> int:
        return self.N.nrows

    @property
    def m(self) -> int:
        return self.N.ncols

    def value(self, exp: Sequence[int]) -> tuple[Fraction, ...]:
        return self.N @ [as_fraction(e) for e in exp]


@dataclass(frozen=True, eq=True)
class ValuationInducedOrder(MonomialOrder):
    """``x^a > x^b`` iff ``N a`` precedes ``N b`` in the value order, else tiebreak."""

    table: ValuationTable
    tiebreak: MonomialOrder = grevlex
    _rows: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        PN = self.table.value_order.order_matrix @ self.table.N
        object.__setattr__(self, "_rows", _int_rows(PN * -1))

    @property
    def nvars(self):
        return self.table.m

    def _key(self, exp):
        return (tuple(sum(w * e for w, e in zip(row, exp)) for row in self._rows),
                self.tiebreak._key(exp))

    def __str__(self):
        return f"valuation({self.table.m} generators, tiebreak {self.tiebreak})"


def valuation_induced_order(table: ValuationTable, tiebreak: MonomialOrder = grevlex,
                            nvars: int | None = None) -> ValuationInducedOrder:
    if nvars is not None and nvars != table.m:
        raise ValueError(f"table has {table.m} generators but the ring has {nvars} variables")
    if tiebreak.nvars is not None and tiebreak.nvars != table.m:
        raise ValueError("tiebreak order has the wrong number of variables")
    return ValuationInducedOrder(table, tiebreak)


def compare(order: MonomialOrder, a, b) -> int:
    return order.compare(a, b)
