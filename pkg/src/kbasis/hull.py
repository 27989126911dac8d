"""Exact convex hulls and volumes of small rational point sets.

Points are reduced to coordinates in their own affine span first, so
lower-dimensional inputs (collinear, coplanar, ...) are handled uniformly.
Dimension 2 uses Andrew's monotone chain; higher dimensions use
beneath-beyond insertion with exact orientation tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import RatMatrix, det, dot, nullspace, primitive, rank, solve, vec

MAX_DIM = 6


@dataclass(frozen=True)
class Polytope:
    """Convex hull of ``vertices``.

    ``facets`` holds ``(normal, offset)`` pairs with ``normal . x <= offset``
    and is only filled in when the polytope is full-dimensional in its
    ambient space.  In dimension 2 the vertices are listed counterclockwise
    starting from the lexicographically smallest one; otherwise they are
    sorted lexicographically.
    """

    ambient_dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    dim: int
    facets: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def contains(self, point) -> bool:
        if not self.is_full_dimensional:
            raise ValueError("membership via facets needs a full-dimensional polytope")
        p = vec(point)
        return all(dot(n, p) <= off for n, off in self.facets)


def _affine_frame(points):
    """Base point, direction vectors and local coordinates of every point."""
    p0 = points[0]
    dirs = []
    for p in points[1:]:
        d = tuple(a - b for a, b in zip(p, p0))
        if rank(dirs + [d]) > len(dirs):
            dirs.append(d)
    if not dirs:
        return p0, dirs, [() for _ in points]
    B = RatMatrix.from_columns(dirs, nrows=len(p0))
    local = [solve(B, tuple(a - b for a, b in zip(p, p0))) for p in points]
    return p0, dirs, local


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(idx_pts):
    pts = sorted(idx_pts, key=lambda t: t[1])
    lower, upper = [], []
    for t in pts:
        while len(lower) >= 2 and _cross(lower[-2][1], lower[-1][1], t[1]) <= 0:
            lower.pop()
        lower.append(t)
    for t in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2][1], upper[-1][1], t[1]) <= 0:
            upper.pop()
        upper.append(t)
    return lower[:-1] + upper[:-1]


def _hyperplane(pts, interior):
    """Primitive outward normal and offset of the hyperplane through ``pts``."""
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(q, base)) for q in pts[1:]]
    normal = tuple(Fraction(x) for x in primitive(nullspace(RatMatrix.from_rows(diffs, ncols=len(base)))[0]))
    off = dot(normal, base)
    if dot(normal, interior) > off:
        normal, off = tuple(-x for x in normal), -off
    return normal, off


def _initial_simplex(local, k):
    chosen = [0]
    for j in range(1, len(local)):
        cand = chosen + [j]
        if rank([tuple(a - b for a, b in zip(local[i], local[0])) for i in cand[1:]]) == len(cand) - 1:
            chosen = cand
            if len(chosen) == k + 1:
                break
    return chosen


def _beneath_beyond(local, k):
    """Simplicial boundary of a full-dimensional point set in Q^k.

    A point is added when some boundary simplex sees it strictly; the
    visible simplices are removed and the horizon ridges are coned to the
    point.  Returns ``({vertex index set: (outward normal, offset)}, an
    interior point)``.
    """
    simplex = _initial_simplex(local, k)
    interior = tuple(sum(local[i][c] for i in simplex) / (k + 1) for c in range(k))
    facets = {}
    for drop in simplex:
        idx = frozenset(i for i in simplex if i != drop)
        facets[idx] = _hyperplane([local[i] for i in sorted(idx)], interior)
    for j in range(len(local)):
        if j in simplex:
            continue
        p = local[j]
        visible = [f for f, (nrm, off) in facets.items() if dot(nrm, p) > off]
        if not visible:
            continue
        ridges: dict = {}
        for f in visible:
            for i in f:
                r = f - {i}
                ridges[r] = ridges.get(r, 0) + 1
        for f in visible:
            del facets[f]
        for r, count in ridges.items():
            if count == 1:
                idx = r | {j}
                facets[idx] = _hyperplane([local[i] for i in sorted(idx)], interior)
    return facets, interior


def _facets_local(local, k):
    """Supporting hyperplanes ``[(normal, offset, incident point indices)]``.

    Coplanar boundary simplices are merged; normals are primitive.
    """
    merged = {}
    for normal, off in _beneath_beyond(local, k)[0].values():
        if normal not in merged:
            incident = frozenset(i for i, q in enumerate(local) if dot(normal, q) == off)
            merged[normal] = (normal, off, incident)
    return list(merged.values())


def _dedupe(points):
    return sorted(set(vec(p) for p in points))


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    pts = _dedupe(points)
    if not pts:
        raise ValueError("convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of different dimensions")
    p0, dirs, local = _affine_frame(pts)
    k = len(dirs)
    if k > MAX_DIM:
        raise ValueError(f"hulls of dimension {k} > {MAX_DIM} are not supported")
    if k == 0:
        return Polytope(n, (p0,), 0, () if n else ())
    if k == 1:
        lo = min(range(len(pts)), key=lambda i: local[i])
        hi = max(range(len(pts)), key=lambda i: local[i])
        verts = tuple(sorted((pts[lo], pts[hi])))
        facets = ()
        if n == 1:
            facets = (((Fraction(-1),), -verts[0][0]), ((Fraction(1),), verts[1][0]))
        return Polytope(n, verts, 1, facets)
    if k == 2:
        ring = _monotone_chain(list(enumerate(local)))
        # orientation in local coordinates may be flipped relative to the ambient plane
        if n == 2:
            B = RatMatrix.from_columns(dirs, nrows=2)
            if det(B) < 0:
                ring = ring[::-1]
        idx = [i for i, _ in ring]
        start = min(range(len(idx)), key=lambda j: pts[idx[j]])
        idx = idx[start:] + idx[:start]
        verts = tuple(pts[i] for i in idx)
        facets = ()
        if n == 2:
            fs = []
            for a, b in zip(verts, verts[1:] + verts[:1]):
                normal = (b[1] - a[1], a[0] - b[0])
                fs.append((normal, dot(normal, a)))
            facets = tuple(fs)
        return Polytope(n, verts, 2, facets)
    faces = _facets_local(local, k)
    vert_idx = [j for j in range(len(pts))
                if rank([f[0] for f in faces if j in f[2]]) == k]
    verts = tuple(pts[j] for j in sorted(vert_idx, key=lambda j: pts[j]))
    facets = ()
    if k == n:
        B = RatMatrix.from_columns(dirs, nrows=n)
        Binv = B.inv()
        fs = []
        for normal, off, _ in faces:
            a = tuple(dot(normal, Binv.column(j)) for j in range(n))
            fs.append((a, off + dot(a, p0)))
        facets = tuple(fs)
    return Polytope(n, verts, k, facets)


def _simplex_volume(simplex) -> Fraction:
    v0 = simplex[0]
    k = len(simplex) - 1
    M = RatMatrix.from_columns([tuple(a - b for a, b in zip(v, v0)) for v in simplex[1:]], nrows=k)
    return abs(det(M)) / math.factorial(k)


def triangulate(points: Sequence[Sequence], apex: int = 0) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Fan triangulation of conv(points) into simplices of its own dimension.

    ``apex`` indexes the hull vertices (in :class:`Polytope` order); every
    facet avoiding the apex is triangulated recursively and coned off.
    """
    pts = _dedupe(points)
    p0, dirs, local = _affine_frame(pts)
    k = len(dirs)
    if k == 0:
        return [(pts[0],)]
    if k <= 2:
        verts = list(convex_hull(pts).vertices)
        a = verts[apex % len(verts)]
        if k == 1:
            return [tuple(verts)]
        # fan over the polygon cycle
        j = verts.index(a)
        cyc = verts[j:] + verts[:j]
        return [(cyc[0], cyc[i], cyc[i + 1]) for i in range(1, len(cyc) - 1)]
    faces = _facets_local(local, k)
    verts = sorted(pts[j] for j in range(len(pts)) if rank([f[0] for f in faces if j in f[2]]) == k)
    a = verts[apex % len(verts)]
    ai = pts.index(a)
    out = []
    for normal, off, incident in faces:
        if ai in incident:
            continue
        face_pts = [pts[j] for j in sorted(incident)]
        for s in triangulate(face_pts, 0):
            out.append((a,) + s)
    return out


def volume(p: Polytope) -> Fraction:
    """Euclidean volume; 0 for polytopes that are not full-dimensional."""
    if not p.is_full_dimensional:
        return Fraction(0)
    if p.dim == 0:
        return Fraction(1)
    if p.dim == 1:
        return p.vertices[1][0] - p.vertices[0][0]
    if p.dim == 2:
        vs = p.vertices
        s = sum((a[0] * b[1] - b[0] * a[1] for a, b in zip(vs, vs[1:] + vs[:1])), Fraction(0))
        return abs(s) / 2
    # cone the boundary simplices from an interior point
    verts = list(p.vertices)
    pieces, interior = _beneath_beyond(verts, p.dim)
    return sum((_simplex_volume((interior,) + tuple(verts[i] for i in sorted(f))) for f in pieces),
               Fraction(0))


def fan_volume(points: Sequence[Sequence], apex: int = 0) -> Fraction:
    """Volume as a sum of simplex volumes over :func:`triangulate`."""
    simplices = triangulate(points, apex)
    if not simplices or len(simplices[0]) - 1 != len(simplices[0][0]):
        return Fraction(0)
    return sum((_simplex_volume(s) for s in simplices), Fraction(0))
