from fractions import Fraction as F

import pytest

from kbasis import (EQ, GT, LT, RatMatrix, ValuationTable, ValueOrder, WeightOrder, compare,
                    elimination, grevlex, grlex, lex, valuation_induced_order)
from kbasis.orders import PermutedOrder, variable_first_elimination

import data


def test_one_is_minimal_everywhere(alt):
    for order in (lex, grlex, grevlex, alt.M, alt.order):
        assert compare(order, (0, 0, 0, 0), (1, 0, 0, 0)) == LT


def test_weight_matrix_example(alt):
    # M (2,2,0,0) = (4,10) <lex (6,12) = M (0,3,0,0)
    assert compare(alt.M, (2, 2, 0, 0), (0, 3, 0, 0)) == LT


def test_weight_tie_broken_by_grevlex(alt):
    # both weigh (6,12); grevlex prefers total degree 3 over 2
    assert compare(alt.M, (0, 3, 0, 0), (0, 0, 0, 2)) == GT


def test_eq_only_for_equal():
    assert compare(grevlex, (1, 2), (1, 2)) == EQ
    assert compare(grevlex, (1, 2), (2, 1)) != EQ


def test_grevlex_convention():
    # x*z^2 vs y^3 in three variables: equal degree, smaller last exponent wins
    assert compare(grevlex, (0, 3, 0), (1, 0, 2)) == GT
    assert compare(grlex, (0, 3, 0), (1, 0, 2)) == LT
    assert compare(lex, (1, 0, 0), (0, 5, 5)) == GT


def test_length_mismatch():
    with pytest.raises(ValueError):
        compare(grevlex, (1, 0), (1, 0, 0))


def test_trivial_table_is_tiebreak():
    table = ValuationTable(RatMatrix.zeros(2, 3), ValueOrder.lex(2))
    o = valuation_induced_order(table, grlex)
    exps = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    for a in exps:
        for b in exps:
            assert compare(o, a, b) == compare(grlex, a, b)


def test_alternating_tie_goes_to_tiebreak(alt):
    assert alt.table.value((0, 3, 0, 0)) == alt.table.value((0, 0, 0, 2)) == (F(-18), F(-6))
    assert compare(alt.order, (0, 3, 0, 0), (0, 0, 0, 2)) == GT
    o = valuation_induced_order(alt.table, PermutedOrder((3, 2, 1, 0), lex))
    assert compare(o, (0, 3, 0, 0), (0, 0, 0, 2)) == LT


def test_dimension_mismatch(alt):
    with pytest.raises(ValueError):
        valuation_induced_order(alt.table, grevlex, nvars=3)
    with pytest.raises(ValueError):
        valuation_induced_order(alt.table, WeightOrder(RatMatrix.from_rows([[1, 1, 1]]), grevlex))


def test_value_order_requires_nonsingular():
    with pytest.raises(ValueError):
        ValueOrder(RatMatrix.from_rows([[1, 1], [2, 2]]))


def test_raw_alternating_order_is_not_one_minimal(alt):
    # x3 has value (14,-3), which follows 0 in lex; the graded extension repairs this
    assert not alt.order.is_one_minimal()
    from kbasis import extend_graded
    graded = valuation_induced_order(extend_graded(alt.table).table, grevlex)
    assert graded.is_one_minimal()


def test_elimination_orders():
    o = elimination((1, 2), grevlex)
    assert compare(o, (1, 0, 0), (0, 5, 5)) == GT
    assert compare(o, (0, 2, 0), (0, 0, 1)) == GT
    v = variable_first_elimination(3, [2], grevlex)
    assert compare(v, (0, 0, 1), (9, 9, 0)) == GT


def test_cubics_valuation_order_matches_weight_matrix(cubics):
    M = WeightOrder(RatMatrix.from_rows(data.CUBICS_WEIGHTS), grevlex)
    import itertools
    exps = [e for e in itertools.product(range(3), repeat=8) if sum(e) <= 3]
    # the graded valuation order and the weight matrix order agree; check a sample of pairs
    sample = exps[::7]
    for a in sample:
        for b in sample[::11]:
            assert compare(M, a, b) == compare(cubics.order, a, b)
