"""
Lattices and exact hulls
========================

The two pieces of exact geometry underneath the volume computation:
Hermite normal forms of integer lattices and convex hulls of rational
points, with volumes checked against a fan triangulation.
"""

from fractions import Fraction

from kbasis import RatMatrix, convex_hull, hnf, lattice_from_generators, volume
from kbasis.hull import fan_volume

###############################################################################
# Column Hermite normal form: H = M U with U unimodular (integer rows in,
# integer rows out).
M = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
H, U = hnf(M)
print("H =", H)
print("M U == H:", RatMatrix.from_rows(M) @ RatMatrix.from_rows(U) == RatMatrix.from_rows(H))

###############################################################################
# Lattices compare as sets, whatever generators they were built from.
L1 = lattice_from_generators([(2, 0), (0, 3)], 2)
L2 = lattice_from_generators([(2, 3), (4, 3), (2, 0)], 2)
print("same lattice:", L1 == L2, " covolume:", L1.covolume())
L3 = lattice_from_generators([(Fraction(1, 2), 0), (0, Fraction(1, 3))], 2)
print("rational lattice covolume:", L3.covolume())

###############################################################################
# Hulls in dimensions 2 and 3; interior points are dropped.
square = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
print("square:", [tuple(map(str, v)) for v in square.vertices], "area", volume(square))
octa = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1), (0, 0, 0)]
P = convex_hull(octa)
print("octahedron:", len(P.vertices), "vertices,", len(P.facets), "facets, volume", volume(P))
print("fan volumes from each apex:", {str(fan_volume(octa, a)) for a in range(len(P.vertices))})
