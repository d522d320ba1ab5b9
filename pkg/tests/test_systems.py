import math

import pytest

from fatpoint3 import (
    CurveClass,
    DivisorClass,
    LinearSystem,
    LineCycle,
    canonical_class,
    expected_dimension,
    intersect_curve,
    normalize,
    point_conditions,
    to_divisor,
    triple_product,
    virtual_dimension,
)
from fatpoint3.literals import parse_system


def test_normalize_sorts_and_drops_zeros():
    assert normalize(LinearSystem(5, (2, 4, 0, 4, 2, 2, 2))) == LinearSystem(
        5, (4, 4, 2, 2, 2, 2)
    )


def test_normalize_point_free_identity():
    assert normalize(LinearSystem(1)) == LinearSystem(1)


def test_normalize_keeps_negatives():
    out = normalize(LinearSystem(4, (3, 3, 3, 3, -1, -1)))
    assert out == LinearSystem(4, (3, 3, 3, 3, -1, -1))


@pytest.mark.parametrize(
    "literal, expected",
    [("12 7^6", -50), ("10 6^5", 5), ("16 11 7^8", 10), ("1", 3)],
)
def test_virtual_dimension_reference_values(literal, expected):
    assert virtual_dimension(parse_system(literal)) == expected


def test_virtual_dimension_ignores_nonpositive_mults():
    assert virtual_dimension(LinearSystem(3, (-2, 0, -5))) == virtual_dimension(
        LinearSystem(3)
    )


def test_virtual_dimension_rejects_negative_degree():
    with pytest.raises(ValueError):
        virtual_dimension(LinearSystem(-1, (1,)))


def test_virtual_dimension_simple_points():
    # all multiplicities 1: each point is a single condition
    for d, r in [(3, 5), (6, 11), (2, 1)]:
        assert virtual_dimension(LinearSystem(d, (1,) * r)) == math.comb(d + 3, 3) - r - 1


@pytest.mark.parametrize(
    "literal, expected", [("12 7^6", -1), ("10 6^5", 5), ("0", 0)]
)
def test_expected_dimension(literal, expected):
    assert expected_dimension(parse_system(literal)) == expected


def test_intersect_curve_reference_values():
    assert intersect_curve(parse_system("7 4^6"), CurveClass(3, (1,) * 6)) == -3
    assert intersect_curve(parse_system("5 4^2 2^4"), CurveClass(1, (1, 1))) == -3


def test_intersect_curve_line_missing_all_points():
    assert intersect_curve(parse_system("9 3^7"), CurveClass(1)) == 9


def test_intersect_curve_rejects_incidence_classes():
    line_on_l12 = CurveClass(1, (0, 0, 0, 0), ((0, 1, 1),))
    with pytest.raises(ValueError):
        intersect_curve(parse_system("3 1^4"), line_on_l12)


def test_triple_product_reference_value():
    q = DivisorClass(2, (1,) * 9)
    l_minus_q = DivisorClass(14, (10,) + (6,) * 8)
    l_minus_k = DivisorClass(20, (13,) + (9,) * 8)
    assert triple_product(q, l_minus_q, l_minus_k) == -2


def test_triple_product_homogeneous_closed_form():
    # for L(d, m^9): Q(L-Q)(L-K) = 2(d-2)(d+4) - 9(m-1)(m+2); checked at (8, 4)
    d, m = 8, 4
    q = DivisorClass(2, (1,) * 9)
    ell = DivisorClass(d, (m,) * 9)
    value = triple_product(q, ell - q, ell - canonical_class(9))
    assert value == 2 * (d - 2) * (d + 4) - 9 * (m - 1) * (m + 2) == -18


def test_triple_product_zero_factor():
    zero = DivisorClass(0, (0, 0))
    assert triple_product(zero, DivisorClass(3, (2, 1)), DivisorClass(5, (1, 1))) == 0


def test_canonical_class_shifts_degree_and_mults():
    # L - K must come out as (d+4; (m_i+2)^r)
    ell = parse_system("16 11 7^8")
    shifted = to_divisor(ell) - canonical_class(ell.npoints)
    assert shifted == DivisorClass(20, (13,) + (9,) * 8)
    assert canonical_class(0) == DivisorClass(-4)
    assert canonical_class(2) == DivisorClass(-4, (-2, -2))


def test_divisor_arithmetic_pads():
    a = DivisorClass(1, (1,))
    b = DivisorClass(2, (1, 1, 1))
    assert a + b == DivisorClass(3, (2, 1, 1))
    assert b - a == DivisorClass(1, (0, 1, 1))


def test_additivity_identity_on_small_split():
    # v(L) = v(M) + v(F) + F.M.(L-K)/2 for L = F + M over the same points
    f = LinearSystem(1, (1, 0))
    m = LinearSystem(2, (1, 1))
    total = LinearSystem(3, (2, 1))
    lhs = 2 * (virtual_dimension(total) - virtual_dimension(m) - virtual_dimension(f))
    rhs = triple_product(
        to_divisor(f), to_divisor(m), to_divisor(total) - canonical_class(2)
    )
    assert lhs == rhs


def test_point_conditions():
    assert [point_conditions(m) for m in (-1, 0, 1, 2, 3)] == [0, 0, 1, 4, 10]


def test_curve_class_incidence_validation():
    with pytest.raises(ValueError):
        CurveClass(1, (), ((0, 4, 1),))
    with pytest.raises(ValueError):
        CurveClass(1, (), ((0, 1, 1), (0, 1, 2)))
    assert CurveClass(1, (), ((0, 1, 0),)).incidences == ()


def test_line_cycle_container():
    cycle = LineCycle.from_dict({(1, 0): 2, (2, 3): -1, (0, 2): 0})
    assert cycle.weight(0, 1) == 2
    assert cycle.weight(1, 0) == 2
    assert cycle.weight(0, 2) == 0
    assert cycle.as_dict() == {(0, 1): 2, (2, 3): -1}
    with pytest.raises(ValueError):
        LineCycle(((1, 1, 2),))
