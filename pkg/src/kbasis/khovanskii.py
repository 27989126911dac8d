"""Toric exponents, the lattice K, the quotient valuation mu and certificates.

Sign convention: a :class:`MuValue` holds the *positive* coordinates of a
leading exponent with respect to the columns ``w_{l+1}, ..., w_m`` of ``W``.
The min-valuation in the usual sense is its negation.  The order on values
(:func:`compare_mu`) is defined through minimal standard representatives,
so no sign juggling is needed anywhere else.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis, standard_monomials_up_to, _monomials_up_to
from .linalg import (Lattice, RatMatrix, dot, invert, lattice_from_generators,
                     orthogonal_extension, rank, vec)
from .orders import MonomialOrder, ValuationTable
from .polyring import Polynomial, two_leading_monomials
from .sagbi import QuotientElement, ZeroClassError, standard_variable_set


class MonomialInIdealError(ValueError):
    """A monomial showed up where the ideal must be prime and monomial-free."""


class BoundExceededError(LookupError):
    pass


def toric_exponent(f: Polynomial, order: MonomialOrder) -> tuple[int, ...]:
    if len(f.terms) < 2:
        raise ValueError("toric exponents need a polynomial with at least two terms")
    a, b = two_leading_monomials(f, order)
    return tuple(x - y for x, y in zip(a, b))


def lattice_K(G: GroebnerBasis) -> Lattice:
    """Lattice spanned by the toric exponents of the Groebner basis elements."""
    gens = []
    for g in G.elements:
        if len(g.terms) < 2:
            raise MonomialInIdealError(
                f"Groebner basis element {g} is a monomial; the ideal must be prime and monomial-free")
        gens.append(toric_exponent(g, G.order))
    return lattice_from_generators(gens, G.ring.nvars)


def lattice_K_from_valuation(table: ValuationTable, degree_bound: int) -> Lattice:
    """Span of ``a - b`` over monomials of degree <= bound with equal values."""
    classes = defaultdict(list)
    for exp in _monomials_up_to(table.m, degree_bound):
        classes[table.value(exp)].append(exp)
    gens = []
    for members in classes.values():
        base = members[0]
        gens.extend(tuple(x - y for x, y in zip(e, base)) for e in members[1:])
    return lattice_from_generators(gens, table.m)


@dataclass(frozen=True)
class MuValue:
    coords: tuple[Fraction, ...]

    def __add__(self, other: "MuValue") -> "MuValue":
        return MuValue(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "MuValue") -> "MuValue":
        return MuValue(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class MuContext:
    """Everything needed to evaluate mu: ``W = [K basis | d | extension]``.

    ``gb`` may be None when the lattice was supplied directly; then mu can
    only be evaluated on exponents, not on classes.
    """

    gb: GroebnerBasis | None
    K: Lattice
    W: RatMatrix
    Winv: RatMatrix
    ell: int
    degrees: tuple[int, ...] | None = None

    @property
    def m(self) -> int:
        return self.W.nrows

    def projection(self) -> RatMatrix:
        """Rows ``l+1..m`` of ``W^-1``: exponent -> mu coordinates."""
        return self.Winv.submatrix(range(self.ell, self.m), range(self.m))

    def mu_exponent(self, exp: Sequence[int]) -> MuValue:
        return MuValue(self.projection() @ exp)


def _complete_basis(vectors: list, m: int) -> list[tuple[int, ...]]:
    out = []
    current = list(vectors)
    for i in range(m):
        e = tuple(int(i == j) for j in range(m))
        if rank(current + [e]) > len(current):
            current.append(e)
            out.append(e)
    return out


def build_mu_context(G: GroebnerBasis | None, degrees: Sequence[int] | None = None, *,
                     k_basis: Lattice | Sequence[Sequence] | None = None,
                     W: RatMatrix | None = None,
                     extension: Sequence[Sequence[int]] | None = None) -> MuContext:
    """Assemble ``W`` and its inverse.

    ``K`` comes from ``G`` unless ``k_basis`` is given.  A full ``W`` may be
    supplied instead of computing an extension; its first ``l`` columns must
    then span ``K`` and, with degrees, column ``l+1`` must equal ``d``.
    """
    if k_basis is None:
        if G is None:
            if W is None:
                raise ValueError("need a Groebner basis, a lattice basis or a full W")
            K = None
        else:
            K = lattice_K(G)
    elif isinstance(k_basis, Lattice):
        K = k_basis
    else:
        m0 = G.ring.nvars if G is not None else (W.nrows if W is not None else len(k_basis[0]))
        K = lattice_from_generators(k_basis, m0)

    d = tuple(int(x) for x in degrees) if degrees is not None else None
    if W is not None:
        m = W.nrows
        if K is None:
            raise ValueError("a supplied W needs the lattice K (pass k_basis or G)")
        ell = K.rank
        first = lattice_from_generators(W.columns()[:ell], m) if ell else lattice_from_generators([], m)
        if first != K:
            raise ValueError("the first columns of W do not span K")
        if d is not None and tuple(W.column(ell)) != tuple(Fraction(x) for x in d):
            raise ValueError("column l+1 of W must be the degree vector")
        Winv = invert(W)
        return MuContext(G, K, W, Winv, ell, d)

    m = K.ambient_dim
    ell = K.rank
    kcols = K.generators()
    if d is not None:
        if len(d) != m:
            raise ValueError("one degree per variable is required")
        for v in kcols:
            if dot(v, d) != 0:
                raise ValueError(f"degree vector is not orthogonal to lattice vector "
                                 f"{tuple(int(x) for x in v)}")
        if extension is None:
            ext = orthogonal_extension(K, d)
        else:
            ext = [tuple(int(x) for x in v) for v in extension]
            for v in ext:
                if dot(v, d) != 0:
                    raise ValueError(f"extension vector {v} is not orthogonal to d")
        cols = kcols + [tuple(Fraction(x) for x in d)] + [vec(v) for v in ext]
    else:
        ext = [tuple(int(x) for x in v) for v in extension] if extension is not None \
            else _complete_basis(kcols, m)
        cols = kcols + [vec(v) for v in ext]
    if len(cols) != m or rank(cols) != m:
        raise ValueError("lattice basis, degree vector and extension do not form a basis of Q^m")
    Wm = RatMatrix.from_columns(cols, nrows=m)
    return MuContext(G, K, Wm, invert(Wm), ell, d)


def mu(e: QuotientElement, ctx: MuContext) -> MuValue:
    if e.is_zero():
        raise ZeroClassError("mu is not defined on the zero class")
    return ctx.mu_exponent(e.representative.lead_monomial(e.gb.order))


def mu_of_variable(i: int, ctx: MuContext) -> MuValue:
    m = ctx.m
    if ctx.gb is None:
        return ctx.mu_exponent(tuple(int(i == j) for j in range(m)))
    return mu(QuotientElement.of(ctx.gb.ring.gens()[i], ctx.gb), ctx)


@dataclass
class CheckResult:
    passed: bool
    witness: object = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def attained_twice_check(G: GroebnerBasis, table: ValuationTable) -> CheckResult:
    """Every basis element's two largest monomials must share a value."""
    pairs = []
    for g in G.elements:
        if len(g.terms) < 2:
            return CheckResult(False, g, {"reason": "monomial in the Groebner basis"})
        a, b = two_leading_monomials(g, G.order)
        va, vb = table.value(a), table.value(b)
        if va != vb:
            return CheckResult(False, g, {"pair": (a, b), "values": (va, vb)})
        pairs.append((a, b, va))
    return CheckResult(True, None, {"pairs": pairs})


def leaves_check(ctx: MuContext, degree_bound: int) -> CheckResult:
    """No two standard monomials of degree <= bound may share a mu value."""
    if ctx.gb is None:
        raise ValueError("the leaves check needs the Groebner basis")
    seen: dict = {}
    for exp in standard_monomials_up_to(ctx.gb, degree_bound):
        v = ctx.mu_exponent(exp)
        if v in seen:
            return CheckResult(False, (seen[v], exp), {"mu": v})
        seen[v] = exp
    return CheckResult(True, degree_bound, {"classes": len(seen)})


@dataclass
class KhovanskiiCertificate:
    attained_twice_ok: bool
    standard_vars_complete: bool
    leaves_ok_up_to: int | None
    verdict: str  # "certified-up-to-bound" | "refuted" | "inconclusive"
    witness: object = None
    degree_bound: int = 0

    @property
    def refuted(self) -> bool:
        return self.verdict == "refuted"


def default_degree_bound(G: GroebnerBasis) -> int:
    return max(2 * G.max_degree(), 2)


def khovanskii_certificate(G: GroebnerBasis, table: ValuationTable, ctx: MuContext,
                           degree_bound: int | None = None) -> KhovanskiiCertificate:
    """Finite evidence that the variable classes form a Khovanskii basis.

    Never claims more than the degree bound it checked.
    """
    bound = default_degree_bound(G) if degree_bound is None else degree_bound
    twice = attained_twice_check(G, table)
    complete = len(standard_variable_set(G)) == G.ring.nvars
    if not twice:
        return KhovanskiiCertificate(False, complete, None, "refuted", twice.witness, bound)
    leaves = leaves_check(ctx, bound)
    if not leaves:
        return KhovanskiiCertificate(True, complete, None, "refuted", leaves.witness, bound)
    verdict = "certified-up-to-bound" if complete else "inconclusive"
    return KhovanskiiCertificate(True, complete, bound, verdict, None, bound)


def minimal_representative(value: MuValue, ctx: MuContext, degree_bound: int) -> tuple[int, ...]:
    """Smallest standard monomial of degree <= bound with the given mu value."""
    if ctx.gb is None:
        raise ValueError("needs the Groebner basis")
    for exp in standard_monomials_up_to(ctx.gb, degree_bound):
        if ctx.mu_exponent(exp) == value:
            return exp
    raise BoundExceededError(f"no standard monomial of degree <= {degree_bound} has mu value {value}")


def compare_mu(a: MuValue, b: MuValue, ctx: MuContext, degree_bound: int) -> int:
    """-1 if ``a`` precedes ``b`` in the image order, 0 if equal, 1 otherwise.

    ``a`` precedes ``b`` when the minimal monomial of ``a`` is the larger one.
    """
    if a == b:
        return 0
    ra = minimal_representative(a, ctx, degree_bound)
    rb = minimal_representative(b, ctx, degree_bound)
    return -ctx.gb.order.compare(ra, rb)


@dataclass
class PhiReport:
    consistent: bool
    basis_indices: list[int]
    mismatches: list[int]
    invertible: bool


def phi_transformation(table: ValuationTable, ctx: MuContext) -> tuple[RatMatrix, PhiReport]:
    """Linear map sending ``mu([x_i])`` to ``nu(g_i)``.

    Solved on the first maximal independent set of the ``mu([x_i])`` and then
    checked on every generator.
    """
    m = ctx.m
    if table.m != m:
        raise ValueError("table and context disagree on the number of generators")
    mus = [mu_of_variable(i, ctx).coords for i in range(m)]
    dim = m - ctx.ell
    chosen: list[int] = []
    for i in range(m):
        if rank([mus[j] for j in chosen] + [mus[i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == dim:
            break
    if len(chosen) < dim:
        raise ValueError(f"mu values span only rank {len(chosen)} < {dim}; phi is underdetermined")
    Mu = RatMatrix.from_columns([mus[i] for i in chosen], nrows=dim)
    Nu = RatMatrix.from_columns([table.N.column(i) for i in chosen], nrows=table.r)
    phi = Nu @ invert(Mu)
    mismatches = [i for i in range(m) if phi @ mus[i] != table.N.column(i)]
    invertible = phi.nrows == phi.ncols and phi.rank() == dim
    return phi, PhiReport(not mismatches, chosen, mismatches, invertible)
