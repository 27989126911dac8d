"""Subduction and subalgebra bases of R and of quotients R/I.

Classes in R/I are stored by their normal form, so two classes are equal
exactly when their representatives are.  The leading term of a class is the
leading term of that normal form (it is automatically a standard monomial).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis, Ideal, buchberger, is_standard_monomial, normal_form
from .orders import MonomialOrder, ValuationTable, grevlex, valuation_induced_order, variable_first_elimination
from .polyring import Polynomial, RingMismatchError


class ZeroClassError(ValueError):
    pass


@dataclass(frozen=True)
class QuotientElement:
    gb: GroebnerBasis
    representative: Polynomial

    @classmethod
    def of(cls, f: Polynomial, gb: GroebnerBasis) -> "QuotientElement":
        return cls(gb, normal_form(f, gb))

    @property
    def ring(self):
        return self.gb.ring

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def _check(self, other: "QuotientElement"):
        if other.gb != self.gb:
            raise RingMismatchError("classes belong to different quotients")

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.gb, self.representative + other.representative)

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        self._check(other)
        return QuotientElement(self.gb, self.representative - other.representative)

    def __mul__(self, other):
        if isinstance(other, QuotientElement):
            self._check(other)
            return QuotientElement.of(self.representative * other.representative, self.gb)
        return QuotientElement(self.gb, self.representative * other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QuotientElement":
        out = QuotientElement.of(self.ring.one(), self.gb)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return self.gb == other.gb and self.representative == other.representative

    def __hash__(self):
        return hash(self.representative)

    def __str__(self):
        return f"[{self.representative.to_string(self.gb.order)}]"


@dataclass(frozen=True)
class QuotientLeadTerm:
    exponent: tuple[int, ...]
    coefficient: Fraction


def lead_term_quotient(e: QuotientElement) -> QuotientLeadTerm:
    if e.is_zero():
        raise ZeroClassError("the zero class has no leading term")
    exp, c = e.representative.lead_term(e.gb.order)
    return QuotientLeadTerm(exp, c)


@dataclass
class SubductionResult:
    """``f = sum c_a g^a + remainder (+ ideal_part)``.

    ``expansion`` maps a multi-index over the basis (a tuple of exponents) to
    its coefficient.  ``ideal_part`` is only set by quotient subduction.
    """

    expansion: dict[tuple[int, ...], Fraction]
    remainder: Polynomial
    ideal_part: Polynomial | None = None
    lead_exponents: dict[tuple[int, ...], tuple[int, ...]] = field(default_factory=dict)

    def used_indices(self) -> set[int]:
        return {i for alpha in self.expansion for i, a in enumerate(alpha) if a}


def _factor(target: tuple[int, ...], leads: Sequence[tuple[int, tuple[int, ...]]], nbasis: int):
    """Exponents ``alpha`` with ``sum alpha_j * lead_j == target``.

    ``leads`` holds (basis index, lead exponent) in search order.  The search
    is greedy (largest multiplicity of the earliest lead first) and
    backtracks when greedy gets stuck, so any factorization is found.
    """
    alpha = [0] * nbasis
    usable = [(j, e) for j, e in leads if any(e)]

    def rec(k: int, rest: tuple[int, ...]) -> bool:
        if not any(rest):
            return True
        if k == len(usable):
            return False
        j, e = usable[k]
        top = min((r // x for r, x in zip(rest, e) if x), default=0)
        for mult in range(top, -1, -1):
            nxt = tuple(r - mult * x for r, x in zip(rest, e))
            alpha[j] = mult
            if rec(k + 1, nxt):
                return True
        alpha[j] = 0
        return False

    return tuple(alpha) if rec(0, tuple(target)) else None


class _PowerCache:
    def __init__(self, basis, mult):
        self.basis, self.mult = basis, mult
        self.cache: dict = {}

    def power(self, j, k):
        if k == 0:
            return None
        key = (j, k)
        if key not in self.cache:
            self.cache[key] = self.basis[j] if k == 1 else self.mult(self.power(j, k - 1), self.basis[j])
        return self.cache[key]

    def product(self, alpha):
        out = None
        for j, k in enumerate(alpha):
            p = self.power(j, k)
            if p is not None:
                out = p if out is None else self.mult(out, p)
        return out


class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def subduction(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder,
               max_steps: int = 100_000) -> SubductionResult:
    """Subduce ``f`` against ``basis`` in the ambient polynomial ring."""
    if any(g.is_zero() for g in basis):
        raise ValueError("basis elements must be nonzero")
    leads = [g.lead_term(order) for g in basis]
    search = [(j, leads[j][0])
              for j in sorted(range(len(basis)), key=lambda j: (_Desc(order.key(leads[j][0])), j))]
    powers = _PowerCache(list(basis), lambda a, b: a * b)
    expansion: dict = {}
    lead_exps: dict = {}
    remainder = {}
    current = f
    steps = 0
    while current.terms:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("subduction did not terminate; is the order a well-order?")
        exp, c = current.lead_term(order)
        alpha = _factor(exp, search, len(basis))
        if alpha is None:
            remainder[exp] = c
            current = current - f.ring.monomial(exp, c)
            continue
        prod = powers.product(alpha)
        if prod is None:
            prod = f.ring.one()
        lc = prod.terms[exp]
        coeff = c / lc
        expansion[alpha] = expansion.get(alpha, 0) + coeff
        lead_exps[alpha] = exp
        current = current - prod * coeff
    return SubductionResult(expansion, Polynomial(f.ring, remainder), None, lead_exps)


def subduction_quotient(e: QuotientElement, basis: Sequence[QuotientElement],
                        max_steps: int = 100_000) -> SubductionResult:
    """Subduce a class against classes of the same quotient.

    Returns the identity ``f~ = sum c_a g~^a + r + h`` with ``h`` in I and
    ``r`` supported on standard monomials.
    """
    gb = e.gb
    for b in basis:
        e._check(b)
    order = gb.order
    ring = gb.ring
    reps = [b.representative for b in basis]
    nonzero = [j for j, r in enumerate(reps) if r.terms]
    leads = {j: reps[j].lead_monomial(order) for j in nonzero}
    search = [(j, leads[j]) for j in sorted(nonzero, key=lambda j: (_Desc(order.key(leads[j])), j))]
    raw_powers = _PowerCache(reps, lambda a, b: a * b)
    expansion: dict = {}
    lead_exps: dict = {}
    remainder = {}
    ideal_part = ring.zero()
    current = e.representative
    steps = 0
    while current.terms:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("subduction did not terminate; is the order a well-order?")
        exp, c = current.lead_term(order)
        alpha = _factor(exp, search, len(basis))
        if alpha is None:
            remainder[exp] = c
            current = current - ring.monomial(exp, c)
            continue
        raw = raw_powers.product(alpha)
        if raw is None:
            raw = ring.one()
        reduced = normal_form(raw, gb)
        lc = reduced.terms[exp]
        coeff = c / lc
        expansion[alpha] = expansion.get(alpha, 0) + coeff
        lead_exps[alpha] = exp
        current = current - reduced * coeff
        ideal_part = ideal_part + (reduced - raw) * coeff
    return SubductionResult(expansion, Polynomial(ring, remainder), ideal_part, lead_exps)


def reconstruct(result: SubductionResult, basis: Sequence[Polynomial]) -> Polynomial:
    """``sum c_a g^a + r (+ h)`` for a subduction result."""
    ring = result.remainder.ring
    total = result.remainder
    for alpha, c in result.expansion.items():
        term = ring.constant(c)
        for g, k in zip(basis, alpha):
            if k:
                term = term * g ** k
        total = total + term
    if result.ideal_part is not None:
        total = total + result.ideal_part
    return total


def standard_variable_set(G: GroebnerBasis) -> set[int]:
    n = G.ring.nvars
    return {i for i in range(n) if is_standard_monomial(tuple(int(i == j) for j in range(n)), G)}


def variable_classes(G: GroebnerBasis, indices: Sequence[int] | None = None) -> list[QuotientElement]:
    gens = G.ring.gens()
    if indices is None:
        indices = range(len(gens))
    return [QuotientElement.of(gens[i], G) for i in indices]


def minimality_reduce(ideal: Ideal, table: ValuationTable, indices: Sequence[int] | None = None,
                      tiebreak: MonomialOrder = grevlex) -> tuple[list[int], list[int]]:
    """Drop redundant variable classes from a subalgebra basis of R/I.

    Candidate ``i`` is tested under the valuation-induced order whose
    tiebreak is an elimination order with ``x_i`` (and everything already
    dropped) in the top block; ``[x_i]`` is dropped when its subduction
    against the remaining kept classes leaves remainder zero.

    Returns ``(kept indices, dropped indices)``.
    """
    n = ideal.ring.nvars
    kept = list(range(n)) if indices is None else list(indices)
    dropped: list[int] = []
    for i in list(kept):
        others = [j for j in kept if j != i]
        tb = variable_first_elimination(n, dropped + [i], tiebreak)
        order = valuation_induced_order(table, tb)
        G = buchberger(ideal, order)
        target = QuotientElement.of(ideal.ring.gens()[i], G)
        if target.is_zero():
            kept.remove(i)
            dropped.append(i)
            continue
        res = subduction_quotient(target, variable_classes(G, others))
        if res.remainder.is_zero():
            kept.remove(i)
            dropped.append(i)
    return kept, dropped
