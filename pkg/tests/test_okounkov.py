import random
from fractions import Fraction as F

import pytest

import data
from kbasis import (PolynomialRing, RatMatrix, ValuationTable, ValueOrder, buchberger, extend_graded,
                    grevlex, grlex, lex, valuation_induced_order)
from kbasis.hull import convex_hull
from kbasis.khovanskii import build_mu_context, lattice_K
from kbasis.linalg import lattice_from_generators
from kbasis.okounkov import (AffineCheck, CertificateRefutedError, affine_equivalence,
                             algorithm1_volume, direct_normalized_volume, nobody_affine_check,
                             nobody_direct, random_orthogonal_extension, value_lattice_slice)


def _fr(rows):
    return [[F(x) for x in row] for row in rows]


def _alt_graded(tiebreak=grevlex):
    a = data.alternating()
    g = extend_graded(a.table).table
    return a, g, buchberger([a.f], valuation_induced_order(g, tiebreak))


def test_extend_graded():
    a = data.alternating()
    gv = extend_graded(a.table)
    assert gv.rank == 3
    assert gv.table.N.rows()[0] == tuple(F(x) for x in a.d)
    # higher degree means smaller value
    assert gv.compare((F(3), F(0), F(0)), (F(1), F(-100), F(0))) < 0
    with pytest.raises(ValueError):
        extend_graded(a.table, (1, 2, 3))
    with pytest.raises(ValueError):
        extend_graded(a.table, (1, 2, 0, 3))


def test_graded_order_is_one_minimal(alt):
    g = extend_graded(alt.table).table
    assert valuation_induced_order(g, grevlex).is_one_minimal(4)


def test_nobody_direct_pentagon(cubics):
    P = nobody_direct(cubics.table)
    assert P.vertex_set() == frozenset(tuple(F(x) for x in v) for v in data.CUBICS_PENTAGON)
    assert direct_normalized_volume(cubics.table) == 5
    L, g = value_lattice_slice(cubics.table)
    assert g == 1 and L.covolume() == 1


def test_nobody_direct_alternating(alt):
    P = nobody_direct(alt.table)
    assert P.vertex_set() == {(F(-3), F(-1)), (F(14, 3), F(-1)), (F(-3), F(22))}
    assert direct_normalized_volume(alt.table) == F(1, 3)


def test_nobody_direct_requires_degrees():
    t = ValuationTable(RatMatrix.from_rows([[1, 2]]), ValueOrder.lex(1))
    with pytest.raises(ValueError, match="degrees"):
        nobody_direct(t)


def test_algorithm1_cubics_override(cubics):
    rep = algorithm1_volume(None, cubics.table, cubics.d, W=cubics.W, k_basis=cubics.K)
    assert rep.ell == 5 and rep.m == 8
    assert rep.euclidean_volume == F(1, 4)
    assert abs(rep.lattice_det) == F(1, 190)
    assert rep.degree_norm_sq == 19 and rep.degree_gcd == 1 and rep.factorial_term == 2
    assert rep.normalized_volume == 5
    assert [list(r) for r in rep.V.rows()] == _fr(data.CUBICS_V)
    assert rep.body.vertex_set() == frozenset(tuple(F(x) for x in v) for v in data.CUBICS_V_HULL)
    assert rep.certificate is None and any("skipped" in n for n in rep.notes)
    L = RatMatrix.from_rows(_fr(data.CUBICS_LPRIME))
    assert lattice_from_generators(L.columns(), 3) == lattice_from_generators(rep.L_prime.columns(), 3)


def test_algorithm1_cubics_pipeline(cubics):
    rep = algorithm1_volume(cubics.G, cubics.graded, cubics.d, degree_bound=3)
    assert rep.normalized_volume == 5
    assert rep.certificate.verdict == "certified-up-to-bound"
    assert lattice_K(cubics.G) == rep.context.K


def test_algorithm1_alternating():
    a, g, G = _alt_graded()
    rep = algorithm1_volume(G, g, a.d, degree_bound=6)
    assert rep.normalized_volume == F(1, 3) == direct_normalized_volume(a.table)
    assert rep.euclidean_volume == F(1, 12) and rep.lattice_det == F(1, 46)
    assert rep.degree_norm_sq == 23 and rep.factorial_term == 2
    assert rep.body.vertex_set() == {(F(-5, 23), F(3, 23)), (F(13, 46), F(-14, 69)),
                                     (F(13, 46), F(3, 23))}


def test_first_row_is_degree_over_norm():
    a, g, G = _alt_graded()
    rep = algorithm1_volume(G, g, a.d)
    B = rep.context.projection()
    assert tuple(B.row(0)) == tuple(F(x, 23) for x in a.d)


def test_degree_scaled_view_is_rescaled_body():
    a, g, G = _alt_graded()
    rep = algorithm1_volume(G, g, a.d)
    view = convex_hull(rep.degree_scaled_view())
    # mu([x_i])_1 = d_i / |d|^2, so the view is |d|^4 times the body
    assert view.vertex_set() == {tuple(23 ** 2 * x for x in v) for v in rep.body.vertices}


def test_degenerate_point():
    X = PolynomialRing(("x",))
    t = ValuationTable(RatMatrix.from_rows([[1]]), ValueOrder.lex(1), (1,))
    G = buchberger([X.zero()], valuation_induced_order(extend_graded(t).table, grevlex))
    rep = algorithm1_volume(G, None, (1,), check_certificate=False)
    assert rep.degenerate and rep.normalized_volume == 1
    assert rep.ell == 0 and rep.body.dim == 0


def test_missing_degrees(alt):
    with pytest.raises(ValueError, match="degrees"):
        algorithm1_volume(alt.G, ValuationTable(alt.table.N, alt.table.value_order))


def test_refuted_certificate(alt):
    generic = ValuationTable(RatMatrix.from_rows([[1, 3, 7, 19], [2, 5, 11, 23]]), ValueOrder.lex(2),
                             alt.d)
    G = buchberger([alt.f], valuation_induced_order(generic, grevlex))
    with pytest.raises(CertificateRefutedError) as e:
        algorithm1_volume(G, generic, alt.d)
    assert e.value.certificate.witness.monic(G.order) == alt.f.monic(G.order)


@pytest.mark.parametrize("tiebreak", [grevlex, grlex, lex])
def test_invariance_alternating(tiebreak):
    a, g, G = _alt_graded(tiebreak)
    K = lattice_K(G)
    rng = random.Random(7)
    exts = [random_orthogonal_extension(K, a.d, rng) for _ in range(3)]
    assert len({tuple(map(tuple, e)) for e in exts}) == 3
    vols = {algorithm1_volume(G, g, a.d, extension=e).normalized_volume for e in exts}
    assert vols == {F(1, 3)}


def test_invariance_cubics(cubics):
    rng = random.Random(11)
    K = lattice_K(cubics.G)
    for _ in range(3):
        ext = random_orthogonal_extension(K, cubics.d, rng)
        rep = algorithm1_volume(cubics.G, cubics.graded, cubics.d, extension=ext, degree_bound=2)
        assert rep.normalized_volume == 5


def test_extension_is_valid(alt):
    K = lattice_K(alt.G)
    ext = random_orthogonal_extension(K, alt.d, random.Random(0))
    for v in ext:
        assert sum(x * y for x, y in zip(v, alt.d)) == 0
    build_mu_context(alt.G, alt.d, extension=ext)


def test_affine_identity():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    phi = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    chk = affine_equivalence(P, P, phi)
    assert chk and chk.M == RatMatrix.from_rows([[1, 0], [0, 1]]) and chk.b == (0, 0)


def test_affine_failures():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    Q = convex_hull([(0, 0), (2, 0), (0, 1)])
    ident = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert not affine_equivalence(P, Q, ident)
    bad = RatMatrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert "degree" in affine_equivalence(P, P, bad).reason
    assert isinstance(affine_equivalence(P, Q, ident), AffineCheck)


def test_affine_alternating():
    a, g, G = _alt_graded()
    rep = algorithm1_volume(G, g, a.d)
    chk = nobody_affine_check(rep, a.table)
    assert chk, chk.reason
    assert chk.M == RatMatrix.from_rows([[0, -23], [46, 69]])


def test_affine_cubics(cubics):
    rep = algorithm1_volume(cubics.G, cubics.graded, cubics.d, degree_bound=2)
    chk = nobody_affine_check(rep, cubics.table)
    assert chk, chk.reason
    # with the reference W the map is fixed
    rep_w = algorithm1_volume(None, cubics.table, cubics.d, W=cubics.W, k_basis=cubics.K)
    chk_w = nobody_affine_check(rep_w, cubics.table)
    assert chk_w and chk_w.b == (F(23, 19), F(16, 19))
    # area scales by |det M|: 1/4 -> 5/2
    assert abs(chk_w.M.det()) * rep_w.euclidean_volume == F(5, 2)
