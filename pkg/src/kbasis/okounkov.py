"""Newton-Okounkov bodies and their normalized volumes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import GroebnerBasis
from .hull import Polytope, convex_hull, volume
from .khovanskii import (KhovanskiiCertificate, MuContext, build_mu_context,
                         khovanskii_certificate, phi_transformation)
from .linalg import Lattice, RatMatrix, lattice_from_generators, orthogonal_extension, primitive, rank
from .orders import ValuationTable, ValueOrder


class CertificateRefutedError(ValueError):
    def __init__(self, certificate: KhovanskiiCertificate):
        self.certificate = certificate
        super().__init__(f"Khovanskii certificate refuted; witness: {certificate.witness}")


@dataclass(frozen=True)
class GradedValuation:
    """``nu(f) = (top degree, nu'(top component))``.

    ``(m, a)`` precedes ``(n, b)`` iff ``m > n``, or ``m == n`` and ``a``
    precedes ``b``; i.e. higher degree means smaller value.
    """

    base: ValuationTable
    degrees: tuple[int, ...]
    table: ValuationTable

    @property
    def rank(self) -> int:
        return self.table.r

    def compare(self, a: Sequence, b: Sequence) -> int:
        return self.table.value_order.compare(a, b)


def extend_graded(table: ValuationTable, degrees: Sequence[int] | None = None) -> GradedValuation:
    d = tuple(int(x) for x in (degrees if degrees is not None else table.degrees or ()))
    if len(d) != table.m:
        raise ValueError("one degree per generator is required")
    if any(x <= 0 for x in d):
        raise ValueError("degrees must be positive")
    r = table.r
    N = RatMatrix.from_rows([d] + table.N.rows(), ncols=table.m)
    P = table.value_order.order_matrix
    order = RatMatrix.from_rows(
        [[-1] + [0] * r] + [[0] + list(P.row(i)) for i in range(r)], ncols=r + 1)
    return GradedValuation(table, d, ValuationTable(N, ValueOrder(order), d))


def _require_degrees(table: ValuationTable | None, degrees) -> tuple[int, ...]:
    if degrees is None:
        degrees = table.degrees if table is not None else None
    if degrees is None:
        raise ValueError("degrees are required")
    d = tuple(int(x) for x in degrees)
    if any(x <= 0 for x in d):
        raise ValueError("degrees must be positive")
    return d


def nobody_direct(table: ValuationTable, degrees: Sequence[int] | None = None) -> Polytope:
    """conv{nu'(g_i) / d_i} for a table of nu' values."""
    d = _require_degrees(table, degrees)
    pts = [tuple(x / di for x in table.N.column(i)) for i, di in enumerate(d)]
    return convex_hull(pts)


def value_lattice_slice(table: ValuationTable, degrees: Sequence[int] | None = None) -> tuple[Lattice, int]:
    """Degree-zero part of the lattice spanned by the ``(d_i, nu'(g_i))``.

    Returns ``(slice lattice in Q^r, gcd of the degrees)``.
    """
    d = _require_degrees(table, degrees)
    gens = [(Fraction(di),) + tuple(table.N.column(i)) for i, di in enumerate(d)]
    full = lattice_from_generators(gens, table.r + 1)
    # column HNF: only the first basis column has a nonzero degree entry
    cols = full.generators()
    return lattice_from_generators([c[1:] for c in cols[1:]], table.r), math.gcd(*d)


def direct_normalized_volume(table: ValuationTable, degrees: Sequence[int] | None = None) -> Fraction:
    """``r! vol(body) / covol(slice lattice)`` for the direct body."""
    body = nobody_direct(table, degrees)
    slice_lattice, _ = value_lattice_slice(table, degrees)
    r = table.r
    if body.dim < r:
        return Fraction(0)
    return math.factorial(r) * volume(body) / slice_lattice.covolume()


@dataclass
class NOBodyReport:
    body: Polytope
    ell: int
    m: int
    euclidean_volume: Fraction
    lattice_det: Fraction
    degree_gcd: int
    degree_norm_sq: int
    normalized_volume: Fraction
    W: RatMatrix
    V: RatMatrix
    L_prime: RatMatrix
    context: MuContext
    certificate: KhovanskiiCertificate | None = None
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def factorial_term(self) -> int:
        return math.factorial(self.m - self.ell - 1)

    def degree_scaled_view(self) -> list[tuple[Fraction, ...]]:
        """Points ``|d|^2 mu([x_i]) / mu([x_i])_1`` (degree coordinate dropped)."""
        B = self.context.projection()
        n2 = self.degree_norm_sq
        pts = []
        for i in range(self.m):
            col = B.column(i)
            pts.append(tuple(n2 * x / col[0] for x in col[1:]))
        return pts


def algorithm1_volume(G: GroebnerBasis | None, table: ValuationTable | None = None,
                      degrees: Sequence[int] | None = None, *,
                      W: RatMatrix | None = None,
                      k_basis=None,
                      extension: Sequence[Sequence[int]] | None = None,
                      degree_bound: int | None = None,
                      check_certificate: bool = True) -> NOBodyReport:
    """Normalized volume of the body of R/I with respect to mu.

    ``G`` is the Groebner basis of I under the valuation-induced order.  The
    lattice K, or the whole matrix W, can be supplied instead; the
    certificate is then skipped since there is no basis to check.
    """
    d = _require_degrees(table, degrees)
    cert = None
    notes = []
    ctx0 = None
    if G is not None and check_certificate:
        if table is None:
            raise ValueError("the certificate needs the valuation table")
        ctx0 = build_mu_context(G, d, k_basis=k_basis, extension=extension)
        cert = khovanskii_certificate(G, table, ctx0, degree_bound)
        if cert.refuted:
            raise CertificateRefutedError(cert)
    elif G is None:
        notes.append("certificate skipped: lattice supplied without a Groebner basis")
    ctx = ctx0 if (ctx0 is not None and W is None) else \
        build_mu_context(G, d, k_basis=k_basis, W=W, extension=extension)
    m, ell = ctx.m, ctx.ell
    if len(d) != m:
        raise ValueError("one degree per variable is required")
    B = ctx.projection()  # last m - ell rows of W^-1
    V = RatMatrix.from_rows(
        [[B[r, i] / d[i] for i in range(m)] for r in range(1, m - ell)], ncols=m)
    L = lattice_from_generators(B.columns(), m - ell)
    if L.rank != m - ell:
        raise ValueError("the mu images do not span a full-rank lattice")
    Lp = RatMatrix.from_columns(L.generators(), nrows=m - ell)
    ldet = L.covolume()
    g = math.gcd(*d)
    n2 = sum(x * x for x in d)
    k = m - ell - 1
    degenerate = False
    if k == 0:
        body = convex_hull([()])
        vol = Fraction(1)
        degenerate = True
        notes.append("body is a point; volume taken as 1")
    else:
        body = convex_hull(V.columns())
        vol = volume(body)
        if not body.is_full_dimensional:
            notes.append(f"body has dimension {body.dim} < {k}; volume is 0")
    normalized = math.factorial(k) * g * vol / (n2 * ldet)
    return NOBodyReport(body, ell, m, vol, ldet, g, n2, normalized, ctx.W, V, Lp, ctx,
                        cert, degenerate, notes)


def random_orthogonal_extension(k_basis: Lattice, d: Sequence[int], rng: random.Random,
                                spread: int = 3) -> list[tuple[int, ...]]:
    """A random valid extension: integer combinations of the canonical one.

    Each new vector mixes the canonical extension vectors (through a random
    nonsingular matrix) and adds random multiples of the K generators, so it
    stays orthogonal to ``d`` and completes the basis.
    """
    base = orthogonal_extension(k_basis, d)
    kcols = [tuple(int(x) for x in v) for v in k_basis.generators()] if k_basis.rank else []
    k = len(base)
    if k == 0:
        return []
    while True:
        A = [[rng.randint(-spread, spread) for _ in range(k)] for _ in range(k)]
        if RatMatrix.from_rows(A).rank() == k:
            break
    out = []
    for j in range(k):
        v = [sum(A[i][j] * base[i][t] for i in range(k)) for t in range(len(d))]
        for kv in kcols:
            c = rng.randint(-spread, spread)
            v = [a + c * b for a, b in zip(v, kv)]
        out.append(primitive(v))
    assert rank(kcols + [tuple(d)] + out) == len(d)
    return out


@dataclass
class AffineCheck:
    passed: bool
    M: RatMatrix | None = None
    b: tuple[Fraction, ...] | None = None
    reason: str = ""

    def __bool__(self):
        return self.passed

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        y = self.M @ x
        return tuple(a + c for a, c in zip(y, self.b))


def affine_equivalence(body_mu: Polytope, body_nu: Polytope, phi: RatMatrix,
                       degree_row: int = 0) -> AffineCheck:
    """Check that the affine map read off ``phi`` carries one body onto the other.

    ``phi`` maps mu coordinates (degree coordinate first) to graded values
    whose ``degree_row`` holds the degrees.  That row must read ``(s, 0, ..)``;
    the rest splits as ``[b | M]`` and the map is ``x -> M x + b / s``.
    """
    row = phi.row(degree_row)
    s = row[0]
    if s == 0 or any(x != 0 for x in row[1:]):
        return AffineCheck(False, reason="phi does not preserve the degree coordinate")
    others = [i for i in range(phi.nrows) if i != degree_row]
    M = phi.submatrix(others, range(1, phi.ncols))
    b = tuple(phi[i, 0] / s for i in others)
    check = AffineCheck(True, M, b)
    if M.ncols != body_mu.ambient_dim or M.nrows != body_nu.ambient_dim:
        return AffineCheck(False, M, b, "dimension mismatch")
    image = {check.apply(v) for v in body_mu.vertices}
    if image != body_nu.vertex_set() or len(image) != len(body_mu.vertices):
        return AffineCheck(False, M, b, "vertex sets do not correspond")
    if M.rank() < body_mu.dim:
        return AffineCheck(False, M, b, "map collapses the body")
    return check


def nobody_affine_check(report: NOBodyReport, table: ValuationTable,
                        degrees: Sequence[int] | None = None) -> AffineCheck:
    """Affine-equivalence check between the projected body and the direct body."""
    d = _require_degrees(table, degrees)
    graded = extend_graded(table, d)
    phi, rep = phi_transformation(graded.table, report.context)
    if not rep.consistent:
        return AffineCheck(False, reason=f"phi inconsistent on generators {rep.mismatches}")
    return affine_equivalence(report.body, nobody_direct(table, d), phi, 0)
