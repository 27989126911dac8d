"""
Invariants of the alternating group
===================================

The ring of polynomials in z1, z2, z3 fixed by even permutations is
generated by the elementary symmetric polynomials e1, e2, e3 and the
Vandermonde product y.  We find the single relation among them, put a
valuation on the quotient, certify that the four generators form a
Khovanskii basis and compute the normalized volume of the
Newton-Okounkov body two ways.
"""

from fractions import Fraction
from pathlib import Path

from kbasis import (PolynomialRing, RatMatrix, ValuationTable, ValueOrder, buchberger,
                    emit_svg, extend_graded, grevlex, kernel_of_map, lex,
                    valuation_induced_order)
from kbasis.khovanskii import attained_twice_check, lattice_K
from kbasis.okounkov import (algorithm1_volume, direct_normalized_volume,
                             nobody_affine_check, nobody_direct)
from kbasis.sagbi import subduction

###############################################################################
# Symmetric polynomials are polynomials in e1, e2, e3.  Subduction finds the
# expression; here it recovers Newton's identity p2 = e1^2 - 2 e2.
Z = PolynomialRing(("z1", "z2", "z3"))
z1, z2, z3 = Z.gens()
e = [z1 + z2 + z3, z1 * z2 + z1 * z3 + z2 * z3, z1 * z2 * z3]
y = (z1 - z2) * (z1 - z3) * (z2 - z3)

res = subduction(z1 ** 2 + z2 ** 2 + z3 ** 2, e, lex)
print("p2 expansion:", {k: str(v) for k, v in res.expansion.items()}, "remainder:", res.remainder)

###############################################################################
# The kernel of x_i -> (e1, e2, e3, y) is principal: y^2 is the discriminant.
R = PolynomialRing(("x1", "x2", "x3", "x4"))
I = kernel_of_map(e + [y], R)
f = I.generators[0]
print("relation:", f)

###############################################################################
# A valuation on the generators, given by its values on them, and the
# monomial order it induces (grevlex breaks ties).  The leading two
# monomials of the relation tie, which is what a Khovanskii basis needs.
table = ValuationTable(RatMatrix.from_rows([[-3, -6, 14, -9], [22, -2, -3, -3]]),
                       ValueOrder.lex(2), (1, 2, 3, 3))
G = buchberger(I, valuation_induced_order(table, grevlex))
print("attained twice:", attained_twice_check(G, table).detail["pairs"])
print("lattice K:", [tuple(int(x) for x in v) for v in lattice_K(G).generators()])

###############################################################################
# The projection works in the quotient; grading by degree first makes the
# induced order a well-order.
graded = extend_graded(table).table
G = buchberger(I, valuation_induced_order(graded, grevlex))
report = algorithm1_volume(G, graded, (1, 2, 3, 3))
print("certificate:", report.certificate.verdict, "up to degree", report.certificate.degree_bound)
print("body vertices:", [tuple(map(str, v)) for v in report.body.vertices])
print("vol =", report.euclidean_volume, " det L' =", report.lattice_det,
      " |d|^2 =", report.degree_norm_sq)
print("normalized volume (projection):", report.normalized_volume)

###############################################################################
# The same number from the values of the generators directly, and an
# explicit affine map between the two bodies.
print("normalized volume (direct):", direct_normalized_volume(table))
check = nobody_affine_check(report, table)
print("affine map:", check.passed, "M =", [list(map(str, r)) for r in check.M.rows()],
      "b =", tuple(map(str, check.b)))
assert report.normalized_volume == direct_normalized_volume(table) == Fraction(1, 3)

###############################################################################
# Pictures of both bodies.
out = Path("demo_output")
out.mkdir(exist_ok=True)
emit_svg(report.body, out / "alternating_alg1.svg")
emit_svg(nobody_direct(table), out / "alternating_direct.svg")
