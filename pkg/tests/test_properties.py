"""Property-based checks of the algebraic identities behind the procedure."""

import math

from hypothesis import assume, given, settings, strategies as st

from fatpoint3 import (
    CurveClass,
    LinearSystem,
    LineCycle,
    canonical_class,
    conjectured_dimension,
    cremona_curve,
    cremona_curve_full,
    cremona_system,
    cremona_with_lines,
    curve_invariants,
    expected_dimension,
    gamma_cycle,
    intersect_curve,
    is_standard_form,
    normalize,
    quadric_triple,
    remove_quadrics,
    speciality_correction,
    to_divisor,
    triple_product,
    virtual_dimension,
)
from fatpoint3.literals import format_curve, format_system, parse_curve, parse_system

mult_lists = st.lists(st.integers(-4, 9), max_size=8).map(tuple)
quadruples = st.permutations(range(8)).map(lambda p: tuple(p[:4]))


@st.composite
def systems(draw):
    return LinearSystem(draw(st.integers(-3, 15)), draw(mult_lists))


@st.composite
def honest_systems(draw):
    """Non-negative degree and multiplicities bounded by it."""
    d = draw(st.integers(0, 12))
    r = draw(st.integers(0, 8))
    mults = tuple(draw(st.integers(0, d)) for _ in range(r))
    return LinearSystem(d, mults)


@st.composite
def plain_curves(draw):
    return CurveClass(draw(st.integers(-3, 12)), draw(mult_lists))


@st.composite
def full_curves(draw):
    mults = tuple(draw(st.integers(-3, 6)) for _ in range(4))
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    incidences = tuple((i, j, draw(st.integers(-2, 3))) for i, j in pairs)
    return CurveClass(draw(st.integers(-4, 10)), mults, incidences)


@given(systems(), quadruples)
def test_cremona_system_is_an_involution(system, idx):
    once = cremona_system(system, idx)
    twice = cremona_system(once, idx)
    padded = system.mults + (0,) * (twice.npoints - system.npoints)
    assert twice == LinearSystem(system.degree, padded)


@given(plain_curves(), quadruples)
def test_cremona_curve_is_an_involution(curve, idx):
    twice = cremona_curve(cremona_curve(curve, idx), idx)
    padded = curve.mults + (0,) * (twice.npoints - curve.npoints)
    assert twice == CurveClass(curve.degree, padded)


@given(full_curves())
def test_cremona_curve_full_is_an_involution(curve):
    assert cremona_curve_full(cremona_curve_full(curve)) == curve


@given(
    st.integers(-6, 12),
    st.tuples(st.integers(-4, 8), st.integers(-4, 8), st.integers(-4, 8), st.integers(-4, 8)),
    st.dictionaries(
        st.sampled_from([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        st.integers(-3, 3),
    ),
)
def test_cremona_with_lines_is_an_involution(degree, mults, weights):
    cycle = LineCycle.from_dict(weights)
    assert cremona_with_lines(*cremona_with_lines(degree, mults, cycle)) == (
        degree,
        mults,
        cycle,
    )


@given(honest_systems(), quadruples)
def test_virtual_dimension_change_formula(system, idx):
    # with 2d >= any three selected multiplicities, the change of v under the
    # transform is a signed count over pair excesses within the quadruple
    mults = system.mults + (0,) * max(0, max(idx) + 1 - system.npoints)
    selected = [mults[i] for i in idx]
    assume(all(2 * system.degree >= sum(selected) - m for m in selected))
    image = cremona_system(system, idx)
    lhs = virtual_dimension(image) - virtual_dimension(system)
    rhs = 0
    for a in range(4):
        for b in range(a + 1, 4):
            t = selected[a] + selected[b] - system.degree
            if t >= 2:
                rhs += math.comb(1 + t, 3)
            elif t <= -2:
                rhs -= math.comb(1 - t, 3)
    assert lhs == rhs


@st.composite
def degree_dropping_systems(draw):
    """Honest systems whose top quadruple meets the triple bound yet forces a
    strict degree drop: 2d >= m_i+m_j+m_k for all selected triples, 2d < sum."""
    d = draw(st.integers(1, 12))
    m1 = draw(st.integers(1, d))
    m2 = draw(st.integers(1, m1))
    assume(2 * d - m1 - m2 >= 1)
    m3 = draw(st.integers(1, min(m2, 2 * d - m1 - m2)))
    lowest = 2 * d - m1 - m2 - m3 + 1
    assume(lowest <= m3)
    m4 = draw(st.integers(max(1, lowest), m3))
    extras = tuple(draw(st.lists(st.integers(0, d), max_size=3)))
    return LinearSystem(d, (m1, m2, m3, m4) + extras)


@given(degree_dropping_systems())
def test_degree_drop_cannot_drop_virtual_dimension(system):
    image = cremona_system(system, (0, 1, 2, 3))
    assert image.degree < system.degree
    assert virtual_dimension(image) >= virtual_dimension(system)


@given(honest_systems(), st.data())
def test_intersection_invariant_under_simultaneous_transform(system, data):
    idx = data.draw(quadruples)
    r = max(system.npoints, max(idx) + 1)
    mu = tuple(data.draw(st.integers(0, 5)) for _ in range(r))
    curve = CurveClass(data.draw(st.integers(0, 10)), mu)
    assert intersect_curve(system, curve) == intersect_curve(
        cremona_system(system, idx), cremona_curve(curve, idx)
    )


@given(plain_curves(), quadruples)
def test_curve_invariants_preserved(curve, idx):
    assert curve_invariants(cremona_curve(curve, idx)) == curve_invariants(curve)


@given(honest_systems(), honest_systems())
def test_virtual_dimension_additivity(first, second):
    n = max(first.npoints, second.npoints)
    fm = first.mults + (0,) * (n - first.npoints)
    sm = second.mults + (0,) * (n - second.npoints)
    total = LinearSystem(first.degree + second.degree, tuple(x + y for x, y in zip(fm, sm)))
    lhs = 2 * (
        virtual_dimension(total) - virtual_dimension(first) - virtual_dimension(second)
    )
    rhs = triple_product(
        to_divisor(first), to_divisor(second), to_divisor(total) - canonical_class(n)
    )
    assert lhs == rhs


@given(honest_systems())
def test_normalize_is_idempotent_and_preserves_conditions(system):
    once = normalize(system)
    assert normalize(once) == once
    assert virtual_dimension(once) == virtual_dimension(system)


@given(honest_systems(), st.randoms(use_true_random=False))
def test_intersection_invariant_under_simultaneous_reindexing(system, rng):
    r = system.npoints
    mu = tuple(rng.randrange(0, 5) for _ in range(r))
    curve = CurveClass(rng.randrange(0, 9), mu)
    perm = list(range(r))
    rng.shuffle(perm)
    permuted_system = LinearSystem(system.degree, tuple(system.mults[i] for i in perm))
    permuted_curve = CurveClass(curve.degree, tuple(mu[i] for i in perm))
    assert intersect_curve(system, curve) == intersect_curve(
        permuted_system, permuted_curve
    )


@given(honest_systems())
def test_reduction_terminates_without_raising_the_degree(system):
    from fatpoint3 import reduce_to_standard

    trace = reduce_to_standard(system)
    assert trace.final.degree <= system.degree
    if not trace.empty:
        assert is_standard_form(trace.final)


@given(honest_systems(), quadruples)
def test_conjectured_dimension_blind_to_a_leading_transform(system, idx):
    image = normalize(cremona_system(system, idx))
    assert conjectured_dimension(image)[0] == conjectured_dimension(system)[0]


@given(honest_systems())
def test_reduction_clamped_at_empty(system):
    dim, trace = conjectured_dimension(system)
    assert dim >= -1
    assert trace.empty == (dim == -1)


@given(honest_systems())
def test_standard_no_quadric_systems_meet_expectation(system):
    system = normalize(system)
    assume(is_standard_form(system))
    if system.npoints >= 9 and system.mults[8] >= 1:
        assume(quadric_triple(system) >= 0)
    dim, _ = conjectured_dimension(system)
    assert dim >= expected_dimension(system)


@given(honest_systems())
def test_quadric_removal_keeps_standard_form_on_nonempty_systems(system):
    system = normalize(system)
    assume(is_standard_form(system))
    final, steps = remove_quadrics(system)
    if conjectured_dimension(system)[0] >= 0:
        for step in steps:
            assert is_standard_form(step.after)


@given(st.integers(0, 25), st.integers(0, 12))
def test_quadric_sign_matches_homogeneous_closed_form(degree, mult):
    system = LinearSystem(degree, (mult,) * 9)
    closed_form = 2 * (degree - 2) * (degree + 4) - 9 * (mult - 1) * (mult + 2)
    assert quadric_triple(system) == closed_form


@given(honest_systems())
def test_gamma_cycle_weights_match_line_intersections(system):
    for (i, j), t in gamma_cycle(system).as_dict().items():
        line = CurveClass(1, tuple(1 if k in (i, j) else 0 for k in range(system.npoints)))
        assert intersect_curve(system, line) == -t
        assert t >= 1


@given(honest_systems())
def test_correction_counts_only_deep_pairs(system):
    assert speciality_correction(system) >= 0
    if all(
        system.mults[i] + system.mults[j] - system.degree <= 1
        for i in range(system.npoints)
        for j in range(i + 1, system.npoints)
    ):
        assert speciality_correction(system) == 0


@given(systems())
def test_system_literal_round_trip(system):
    assert parse_system(format_system(system)) == system


@given(full_curves())
def test_curve_literal_round_trip(curve):
    assert parse_curve(format_curve(curve)) == curve
