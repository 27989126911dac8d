"""Exact rational linear algebra and integer lattices.

Everything here works over :class:`fractions.Fraction` (or plain ``int``)
and never rounds.  Matrices are small and dense, so a plain row-major tuple
is the storage of choice.

Conventions
-----------
Lattices are spanned by the *columns* of a matrix.  :func:`hnf` returns the
column-style Hermite normal form ``H = M @ U``: ``H`` is lower echelon, each
pivot is positive, entries to the left of a pivot (same row) lie in
``[0, pivot)``, and zero columns are pushed to the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction | int, ...]


class SingularMatrixError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace("−", "-"))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact value")
    return Fraction(x)


def vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    return den


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = common_denominator(v)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major."""

    nrows: int
    ncols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError("entries length must equal nrows * ncols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RatMatrix":
        rows = [vec(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        cols = [vec(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], ncols=len(cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls(nrows, ncols, (Fraction(0),) * (nrows * ncols))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.ncols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> list[tuple[Fraction, ...]]:
        n = self.ncols
        return [self.entries[i * n:(i + 1) * n] for i in range(self.nrows)]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [tuple(self[i, j] for i in range(self.nrows)) for j in range(self.ncols)]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self[i, j] for i in range(self.nrows))

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix.from_columns(self.rows(), nrows=self.ncols)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RatMatrix":
        rows, cols = list(rows), list(cols)
        return RatMatrix.from_rows([[self[i, j] for j in cols] for i in rows], ncols=len(cols))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return RatMatrix.from_rows(
                [[dot(r, c) for c in ocols] for r in self.rows()], ncols=other.ncols)
        v = vec(other)
        if len(v) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        return tuple(dot(r, v) for r in self.rows())

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return RatMatrix(self.nrows, self.ncols, tuple(s * x for x in self.entries))

    __rmul__ = __mul__

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(self.nrows, self.ncols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other * -1

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.rows()]

    def rank(self) -> int:
        return len(_row_echelon(self.rows())[1])

    def det(self) -> Fraction:
        return det(self)

    def inv(self) -> "RatMatrix":
        return invert(self)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows())


def _row_echelon(rows):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return len(_row_echelon(vectors)[1])


def det(m: RatMatrix) -> Fraction:
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows()]
    n = m.nrows
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def invert(m: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if m.nrows != m.ncols:
        raise ValueError(f"cannot invert a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows())]
    red, pivots = _row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return RatMatrix.from_rows([r[n:] for r in red[:n]], ncols=n)


def nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, pivots = _row_echelon(m.rows())
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * m.ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -red[r][f]
        basis.append(tuple(x))
    return basis


def solve(m: RatMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``m x = b`` (free variables set to 0), or None."""
    b = vec(b)
    aug = [list(r) + [bi] for r, bi in zip(m.rows(), b)]
    red, pivots = _row_echelon(aug)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.ncols]
    return tuple(x)


# ---------------------------------------------------------------------------
# Hermite normal form

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(m) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``M @ U == H`` and ``U`` unimodular.  ``m`` may be
    a :class:`RatMatrix` with integer entries or a list of integer rows.
    """
    rows = m.to_int_rows() if isinstance(m, RatMatrix) else [[int(x) for x in r] for r in m]
    if not rows or not rows[0]:
        raise ValueError("hnf of an empty matrix")
    nr, nc = len(rows), len(rows[0])
    # work column-wise: cols[j] is column j of A, ucols[j] is column j of U
    cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
    ucols = [[int(i == j) for i in range(nc)] for j in range(nc)]

    def combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        cj, ck = cols[j], cols[k]
        cols[j] = [a * x + b * y for x, y in zip(cj, ck)]
        cols[k] = [c * x + d * y for x, y in zip(cj, ck)]
        uj, uk = ucols[j], ucols[k]
        ucols[j] = [a * x + b * y for x, y in zip(uj, uk)]
        ucols[k] = [c * x + d * y for x, y in zip(uj, uk)]

    piv = 0
    for i in range(nr):
        if piv == nc:
            break
        for k in range(piv + 1, nc):
            b = cols[k][i]
            if b == 0:
                continue
            a = cols[piv][i]
            if a == 0:
                cols[piv], cols[k] = cols[k], cols[piv]
                ucols[piv], ucols[k] = ucols[k], ucols[piv]
                continue
            g, x, y = _xgcd(a, b)
            combine(piv, k, x, y, -b // g, a // g)
        p = cols[piv][i]
        if p == 0:
            continue
        if p < 0:
            cols[piv] = [-x for x in cols[piv]]
            ucols[piv] = [-x for x in ucols[piv]]
            p = -p
        for j in range(piv):
            q = cols[j][i] // p
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[piv])]
                ucols[j] = [x - q * y for x, y in zip(ucols[j], ucols[piv])]
        piv += 1
    H = [[cols[j][i] for j in range(nc)] for i in range(nr)]
    U = [[ucols[j][i] for j in range(nc)] for i in range(nc)]
    return H, U


# ---------------------------------------------------------------------------
# Lattices

@dataclass(frozen=True)
class Lattice:
    """A lattice in Q^n stored as ``(1/scale) * Z{basis columns}``.

    ``basis`` is the column HNF of the scaled integer generators with zero
    columns dropped, so two Lattice objects are equal exactly when they are
    the same set.
    """

    ambient_dim: int
    basis: RatMatrix
    scale: int = 1

    @property
    def rank(self) -> int:
        return self.basis.ncols

    def generators(self) -> list[tuple[Fraction, ...]]:
        """Basis vectors as rational points (already divided by ``scale``)."""
        return [tuple(x / self.scale for x in c) for c in self.basis.columns()]

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of ``v`` in the basis if ``v`` lies in the Q-span, else None."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if self.rank == 0:
            return () if all(x == 0 for x in v) else None
        target = tuple(x * self.scale for x in v)
        return solve(self.basis, target)

    def __contains__(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(g in self for g in other.generators())

    def covolume(self) -> Fraction:
        """Volume of a fundamental domain inside the lattice's own Q-span.

        Only defined here for full-rank lattices (square basis).
        """
        if self.rank != self.ambient_dim:
            raise ValueError("covolume is only implemented for full-rank lattices")
        return abs(det(self.basis)) / Fraction(self.scale) ** self.rank


def lattice_from_generators(vectors: Sequence[Sequence], ambient_dim: int | None = None) -> Lattice:
    """Integer span of rational vectors, as a canonical :class:`Lattice`."""
    vectors = [vec(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient_dim is required when no vectors are given")
        ambient_dim = len(vectors[0])
    if any(len(v) != ambient_dim for v in vectors):
        raise ValueError("all generators must share one ambient dimension")
    vectors = [v for v in vectors if any(x != 0 for x in v)]
    if not vectors:
        return Lattice(ambient_dim, RatMatrix.zeros(ambient_dim, 0), 1)
    scale = common_denominator(x for v in vectors for x in v)
    int_rows = [[int(v[i] * scale) for v in vectors] for i in range(ambient_dim)]
    H, _ = hnf(int_rows)
    keep = [j for j in range(len(vectors)) if any(H[i][j] for i in range(ambient_dim))]
    basis = RatMatrix.from_rows([[H[i][j] for j in keep] for i in range(ambient_dim)], ncols=len(keep))
    # reduce scale if every basis entry shares a factor with it
    g = scale
    for x in basis.entries:
        g = math.gcd(g, int(x))
    if g > 1:
        basis = RatMatrix(basis.nrows, basis.ncols, tuple(x / g for x in basis.entries))
        scale //= g
    return Lattice(ambient_dim, basis, scale)


def orthogonal_extension(k_basis: Lattice, d: Sequence) -> list[tuple[int, ...]]:
    """Primitive integer vectors orthogonal to ``d`` completing ``k_basis + d``.

    The result, stacked with the lattice basis and ``d``, is a Q-basis of
    Q^m.  Candidates are ``d_i e_p - d_p e_i`` for the first index ``p`` of
    smallest nonzero ``|d_p|``, taken in index order; the kept vectors are
    made primitive and sorted.
    """
    d = vec(d)
    m = len(d)
    if m != k_basis.ambient_dim:
        raise ValueError("d and the lattice live in different dimensions")
    if all(x == 0 for x in d):
        raise ValueError("d must be nonzero")
    for g in k_basis.generators():
        if dot(g, d) != 0:
            raise ValueError(f"d is not orthogonal to lattice vector {tuple(str(x) for x in g)}")
    chosen = list(k_basis.generators()) + [d]
    if rank(chosen) != len(chosen):
        raise ValueError("lattice basis and d are linearly dependent")
    p = min((i for i in range(m) if d[i] != 0), key=lambda i: (abs(d[i]), i))
    out = []
    for i in range(m):
        if i == p:
            continue
        cand = [Fraction(0)] * m
        cand[p] = d[i]
        cand[i] = -d[p]
        if rank(chosen + [tuple(cand)]) > len(chosen):
            chosen.append(tuple(cand))
            out.append(primitive(cand))
        if len(chosen) == m:
            break
    return sorted(out)
