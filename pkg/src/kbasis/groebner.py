"""Buchberger's algorithm over Q, normal forms and kernels of algebra maps."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .orders import MonomialOrder, grevlex, EliminationOrder
from .polyring import Polynomial, PolynomialRing, RingMismatchError


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Ideal:
    ring: PolynomialRing
    generators: tuple[Polynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ideal's ring")
        object.__setattr__(self, "generators", gens)

    def is_zero(self) -> bool:
        return not self.generators


class _Rev:
    """Heap entry ordering the largest key first."""

    __slots__ = ("k", "e")

    def __init__(self, k, e):
        self.k, self.e = k, e

    def __lt__(self, other):
        return self.k > other.k


def _reduce(terms: dict, divisors: Sequence[tuple[tuple[int, ...], Polynomial]],
            order: MonomialOrder, full: bool = True) -> dict:
    """Reduce ``terms`` (mutated) by monic divisors; return the remainder terms."""
    key = order.key
    heap = [_Rev(key(e), e) for e in terms]
    heapq.heapify(heap)
    queued = set(terms)
    rem = {}
    while heap:
        e = heapq.heappop(heap).e
        queued.discard(e)
        c = terms.get(e)
        if not c:
            continue
        for lm, g in divisors:
            if divides(lm, e):
                break
        else:
            rem[e] = terms.pop(e)
            if not full:
                rem.update(terms)
                terms.clear()
                break
            continue
        shift = tuple(x - y for x, y in zip(e, lm))
        for ge, gc in g.terms.items():
            ne = tuple(x + y for x, y in zip(ge, shift))
            v = terms.get(ne, 0) - c * gc
            if v:
                terms[ne] = v
                if ne not in queued:
                    queued.add(ne)
                    heapq.heappush(heap, _Rev(key(ne), ne))
            else:
                terms.pop(ne, None)
    return rem


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolynomialRing
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    reduced: bool = True
    _lms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lms", tuple(g.lead_monomial(self.order) for g in self.elements))

    @property
    def lead_monomials(self) -> tuple[tuple[int, ...], ...]:
        return self._lms

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def is_standard(self, exp) -> bool:
        return is_standard_monomial(exp, self)

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def max_degree(self) -> int:
        return max((g.total_degree() for g in self.elements), default=0)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    if f.ring != G.ring:
        raise RingMismatchError("polynomial and basis live in different rings")
    if not G.elements or not f.terms:
        return f
    rem = _reduce(dict(f.terms), list(zip(G.lead_monomials, G.elements)), G.order)
    return Polynomial._raw(f.ring, rem)


def is_standard_monomial(exp, G: GroebnerBasis) -> bool:
    exp = tuple(exp)
    return not any(divides(lm, exp) for lm in G.lead_monomials)


def _monomials_up_to(n: int, bound: int):
    for deg in range(bound + 1):
        for combo in itertools.combinations_with_replacement(range(n), deg):
            exp = [0] * n
            for i in combo:
                exp[i] += 1
            yield tuple(exp)


def standard_monomials_up_to(G: GroebnerBasis, degree_bound: int) -> list[tuple[int, ...]]:
    """Standard monomials of total degree <= bound, increasing in G's order."""
    out = [e for e in _monomials_up_to(G.ring.nvars, degree_bound) if is_standard_monomial(e, G)]
    return sorted(out, key=G.order.key)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    (a, ca), (b, cb) = f.lead_term(order), g.lead_term(order)
    L = lcm_exp(a, b)
    return (f.mul_term(tuple(x - y for x, y in zip(L, a)), 1 / ca)
            - g.mul_term(tuple(x - y for x, y in zip(L, b)), 1 / cb))


def _interreduce(polys: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    lms = [p.lead_monomial(order) for p in polys]
    keep = []
    for i, (p, lm) in enumerate(zip(polys, lms)):
        redundant = any(
            j != i and divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(polys)))
        if not redundant:
            keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = [(q.lead_monomial(order), q) for j, q in enumerate(keep) if j != i]
        lm, lc = p.lead_term(order)
        tail = dict(p.terms)
        del tail[lm]
        rem = _reduce(tail, others, order) if others else tail
        rem[lm] = lc
        out.append(Polynomial._raw(p.ring, rem).monic(order))
    out.sort(key=lambda q: order.key(q.lead_monomial(order)))
    return out


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder,
               ring: PolynomialRing | None = None) -> GroebnerBasis:
    """Reduced Groebner basis.

    Pairs are processed smallest lcm total degree first, then by index;
    coprime lead monomials and the chain criterion skip pairs.
    """
    if not isinstance(ideal, Ideal):
        gens = list(ideal)
        if ring is None:
            if not gens:
                raise ValueError("ring is required for an empty generator list")
            ring = gens[0].ring
        ideal = Ideal(ring, tuple(gens))
    ring = ideal.ring
    if order.nvars is not None and order.nvars != ring.nvars:
        raise ValueError(f"order is for {order.nvars} variables, ring has {ring.nvars}")

    G: list[Polynomial] = []
    lms: list[tuple[int, ...]] = []
    pending: set[tuple[int, int]] = set()
    queue: list = []

    def add(p: Polynomial):
        p = p.monic(order)
        k = len(G)
        G.append(p)
        lms.append(p.lead_monomial(order))
        for i in range(k):
            L = lcm_exp(lms[i], lms[k])
            pending.add((i, k))
            heapq.heappush(queue, (sum(L), i, k))

    for g in ideal.generators:
        r = normal_form_list(g, G, lms, order)
        if r:
            add(r)

    while queue:
        _, i, j = heapq.heappop(queue)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        a, b = lms[i], lms[j]
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        L = lcm_exp(a, b)
        if any(k != i and k != j and divides(lms[k], L)
               and (min(i, k), max(i, k)) not in pending
               and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue
        s = s_polynomial(G[i], G[j], order)
        r = normal_form_list(s, G, lms, order)
        if r:
            add(r)

    return GroebnerBasis(ring, order, tuple(_interreduce(G, order)) if G else (), True)


def normal_form_list(f: Polynomial, G: list[Polynomial], lms: list, order: MonomialOrder) -> Polynomial:
    if not G or not f.terms:
        return f
    return Polynomial._raw(f.ring, _reduce(dict(f.terms), list(zip(lms, G)), order))


def is_groebner(polys: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Check Buchberger's criterion: every S-polynomial reduces to zero."""
    polys = [p.monic(order) for p in polys if p]
    lms = [p.lead_monomial(order) for p in polys]
    for i, j in itertools.combinations(range(len(polys)), 2):
        s = s_polynomial(polys[i], polys[j], order)
        if normal_form_list(s, polys, lms, order):
            return False
    return True


def kernel_of_map(targets: Sequence[Polynomial], source: PolynomialRing,
                  order: MonomialOrder = grevlex) -> Ideal:
    """Generators of ker(x_i -> targets[i]) by elimination.

    The returned generators form a reduced Groebner basis of the kernel
    under ``order`` restricted to the source ring.
    """
    if len(targets) != source.nvars:
        raise ValueError(f"need {source.nvars} targets, got {len(targets)}")
    if any(t.is_zero() for t in targets):
        raise ValueError("targets must be nonzero")
    S = targets[0].ring
    if any(t.ring != S for t in targets):
        raise RingMismatchError("targets must share one ring")
    ns, nr = S.nvars, source.nvars
    combined = PolynomialRing(tuple(f"_s{i}" for i in range(ns)) + tuple(f"_x{i}" for i in range(nr)))
    elim = EliminationOrder(((ns, grevlex), (nr, order)))

    def lift(p: Polynomial, offset: int, width: int) -> Polynomial:
        pad_left, pad_right = (0,) * offset, (0,) * (ns + nr - offset - width)
        return Polynomial._raw(combined, {pad_left + e + pad_right: c for e, c in p.terms.items()})

    gens = []
    for i, t in enumerate(targets):
        x = combined.monomial([int(j == ns + i) for j in range(ns + nr)])
        gens.append(x - lift(t, 0, ns))
    G = buchberger(Ideal(combined, tuple(gens)), elim)
    out = []
    for g in G.elements:
        if all(not any(e[:ns]) for e in g.terms):
            out.append(Polynomial._raw(source, {e[ns:]: c for e, c in g.terms.items()}))
    if order.nvars is None or order.nvars == nr:
        out = _interreduce(out, order) if out else out
    return Ideal(source, tuple(out))
