"""
Plane cubics through four points
================================

A graded algebra with an eight-element Khovanskii basis in degrees
1,1,1,1,1,1,2,3.  The values of the basis elements span a pentagon; the
quotient valuation gives a smaller body that is affinely
equivalent to it, and both give normalized volume 5.
"""

from pathlib import Path

from kbasis import (PolynomialRing, RatMatrix, ValuationTable, ValueOrder, buchberger,
                    emit_svg, extend_graded, grevlex, kernel_of_map, valuation_induced_order)
from kbasis.hull import volume
from kbasis.khovanskii import lattice_K
from kbasis.okounkov import (algorithm1_volume, direct_normalized_volume,
                             nobody_affine_check, nobody_direct)

###############################################################################
# The valuation table: column i is the value of the i-th basis element.
nu = RatMatrix.from_rows([[1, 2, 0, 1, 2, 3, 1, 4], [1, 0, 3, 2, 1, 0, 3, 1]])
d = (1, 1, 1, 1, 1, 1, 2, 3)
table = ValuationTable(nu, ValueOrder(RatMatrix.from_rows([[-1, -1], [-1, 0]])), d)

pentagon = nobody_direct(table)
print("direct body:", [tuple(map(str, v)) for v in pentagon.vertices])
print("area:", volume(pentagon), " normalized volume:", direct_normalized_volume(table))

###############################################################################
# The projection with a fixed W: its first five columns span the lattice K of
# exponent differences with equal value, column six is the degree vector.
W = RatMatrix.from_rows([
    [1, 2, 3, -3, -4, 1, 0, 0],
    [-1, -2, -3, 1, 0, 1, 0, 0],
    [-1, -1, -1, 0, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1, 2, 3],
    [0, 0, 0, 1, 0, 2, -1, 0],
    [0, 0, 0, 0, 1, 3, 0, -1],
])
report = algorithm1_volume(None, table, d, W=W, k_basis=W.columns()[:5])
print("V =")
for row in report.V.rows():
    print("   ", " ".join(f"{str(x):>8}" for x in row))
print("vol(conv V) =", report.euclidean_volume, " det L' =", report.lattice_det,
      " gcd =", report.degree_gcd, " |d|^2 =", report.degree_norm_sq,
      " (m-l-1)! =", report.factorial_term)
print("normalized volume:", report.normalized_volume)

###############################################################################
# The toric algebra of the initial terms has the same table; its
# presentation ideal lets us run the whole pipeline, certificate included.
S = PolynomialRing(("s", "a", "b"))
targets = [S.monomial((d[i], int(nu[0, i]), int(nu[1, i]))) for i in range(8)]
R = PolynomialRing(tuple(f"z{i}" for i in range(8)))
graded = extend_graded(table).table
G = buchberger(kernel_of_map(targets, R), valuation_induced_order(graded, grevlex))
print("Groebner basis size:", len(G), " rank K:", lattice_K(G).rank)
full = algorithm1_volume(G, graded, d, degree_bound=3)
print("certificate:", full.certificate.verdict, " normalized volume:", full.normalized_volume)
check = nobody_affine_check(report, table)
print("V-body -> pentagon affine map found:", check.passed)

###############################################################################
out = Path("demo_output")
out.mkdir(exist_ok=True)
emit_svg(pentagon, out / "cubics_direct.svg")
emit_svg(report.body, out / "cubics_alg1.svg")
