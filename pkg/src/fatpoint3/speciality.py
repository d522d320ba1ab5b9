"""The conjectural dimension procedure: base-line corrections, quadric removal,
and speciality verdicts."""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple

from .cremona import REMOVE_QUADRIC, ReductionStep, ReductionTrace, reduce_to_standard
from .systems import (
    DivisorClass,
    LinearSystem,
    LineCycle,
    canonical_class,
    expected_dimension,
    normalize,
    point_conditions,
    to_divisor,
    triple_product,
    virtual_dimension,
)

__all__ = [
    "gamma_cycle",
    "speciality_correction",
    "quadric_triple",
    "remove_quadrics",
    "conjectured_dimension",
    "is_special",
    "line_speciality_bound",
    "classify_homogeneous",
    "QuadricPencilReport",
    "quadric_pencil_system",
    "quadric_pencil_dimension",
    "VERDICT_EMPTY",
    "VERDICT_SPECIAL",
    "VERDICT_NON_SPECIAL",
    "VERDICT_PROCEDURE",
]

VERDICT_EMPTY = "empty"
VERDICT_SPECIAL = "special"
VERDICT_NON_SPECIAL = "non_special"
VERDICT_PROCEDURE = "procedure_required"


def _line_excesses(system: LinearSystem):
    for i, j in itertools.combinations(range(system.npoints), 2):
        yield i, j, system.mults[i] + system.mults[j] - system.degree


def gamma_cycle(system: LinearSystem) -> LineCycle:
    """Lines forced into the base locus: the pair {i, j} enters with weight
    t_ij = m_i + m_j - d whenever that excess is at least 1."""
    weights = {(i, j): t for i, j, t in _line_excesses(system) if t >= 1}
    return LineCycle.from_dict(weights)


def speciality_correction(system: LinearSystem) -> int:
    """Dimension excess contributed by base lines: sum of C(t_ij+1, 3) over
    all point pairs with t_ij >= 2."""
    return sum(math.comb(t + 1, 3) for _, _, t in _line_excesses(system) if t >= 2)


def quadric_triple(system: LinearSystem) -> int:
    """The quadric test number Q(L-Q)(L-K), with Q through the nine points of
    largest multiplicity. Requires a normalized system with at least 9 points."""
    r = system.npoints
    if r < 9:
        raise ValueError("quadric test needs at least nine points")
    q = DivisorClass(2, (1,) * 9 + (0,) * (r - 9))
    ell = to_divisor(system)
    return triple_product(q, ell - q, ell - canonical_class(r))


def remove_quadrics(
    system: LinearSystem,
) -> tuple[LinearSystem, tuple[ReductionStep, ...]]:
    """Strip base quadrics off a standard-form system.

    While the degree is at least 2 (a quadric cannot divide anything smaller),
    there are at least nine points, the nine largest multiplicities are all
    positive, and the quadric test number is negative, subtract the quadric
    through those nine points and renormalize.
    """
    current = normalize(system)
    steps: list[ReductionStep] = []
    while (
        current.degree >= 2
        and current.npoints >= 9
        and current.mults[8] >= 1
        and quadric_triple(current) < 0
    ):
        mults = tuple(m - 1 for m in current.mults[:9]) + current.mults[9:]
        after = normalize(LinearSystem(current.degree - 2, mults))
        steps.append(ReductionStep(REMOVE_QUADRIC, tuple(range(9)), current, after))
        current = after
    return current, tuple(steps)


def conjectured_dimension(system: LinearSystem) -> tuple[int, ReductionTrace]:
    """Run the full procedure: reduce to standard form, strip base quadrics,
    then return v(final) plus the base-line correction, clamped at -1.

    The returned trace chains every step; its ``empty`` flag is set when the
    answer is -1.
    """
    reduction = reduce_to_standard(system)
    if reduction.empty:
        return -1, reduction
    final, quadric_steps = remove_quadrics(reduction.final)
    steps = reduction.steps + quadric_steps
    if final.mults and final.mults[0] > final.degree:
        # a multiplicity above the degree means empty, and the closing
        # formula does not apply (its vanishing assumption fails)
        return -1, ReductionTrace(steps, final, empty=True)
    value = virtual_dimension(final) + speciality_correction(final)
    dim = max(-1, value)
    trace = ReductionTrace(steps, final, empty=dim < 0)
    return dim, trace


def is_special(system: LinearSystem) -> tuple[bool, int]:
    """Whether the system's conjectured dimension strictly exceeds the
    expected one, together with the excess."""
    norm = normalize(system)
    dim, _ = conjectured_dimension(norm)
    if dim < 0:
        return False, 0
    excess = dim - expected_dimension(norm)
    return excess > 0, excess


def line_speciality_bound(system: LinearSystem, pair: tuple[int, int]) -> int:
    """Guaranteed dimension excess C(t+1, 3) contributed by the line through
    the two points, defined when its excess t = m_i + m_j - d is at least 2."""
    i, j = pair
    t = system.mults[i] + system.mults[j] - system.degree
    if t < 2:
        raise ValueError("line excess below 2 guarantees no contribution")
    return math.comb(t + 1, 3)


def classify_homogeneous(degree: int, mult: int, npoints: int) -> str:
    """Speciality verdict for the homogeneous system L(d, m^r).

    Systems with d >= 2m are in standard form: special exactly for r = 9 with
    a negative quadric test (equivalently 2(d+1)^2 < 9m(m+1)). For d <= 2m-1
    the system is empty once r >= 8, and needs the full procedure otherwise.
    """
    if degree < 0 or mult < 0 or npoints < 1:
        raise ValueError("need d >= 0, m >= 0 and at least one point")
    if degree >= 2 * mult:
        if (
            npoints == 9
            and mult >= 1
            and quadric_triple(LinearSystem(degree, (mult,) * 9)) < 0
        ):
            return VERDICT_SPECIAL
        return VERDICT_NON_SPECIAL
    if npoints >= 8:
        return VERDICT_EMPTY
    return VERDICT_PROCEDURE


class QuadricPencilReport(NamedTuple):
    dimension: int
    virtual: int
    special: bool


def quadric_pencil_system(weights: tuple[int, ...]) -> LinearSystem:
    """The system spanned by quadrics through eight shared points, taken with
    the given positive weights: L(2r, r^8, r_1, ..., r_n) with r = sum r_i."""
    if not weights or any(w < 1 for w in weights):
        raise ValueError("weights must be a non-empty list of positive integers")
    r = sum(weights)
    return normalize(LinearSystem(2 * r, (r,) * 8 + tuple(weights)))


def quadric_pencil_dimension(weights: tuple[int, ...]) -> QuadricPencilReport:
    """These systems are rigid: dimension 0, with virtual dimension
    sum(r_i - C(r_i+2, 3)), which vanishes exactly when every weight is 1."""
    if not weights or any(w < 1 for w in weights):
        raise ValueError("weights must be a non-empty list of positive integers")
    virtual = sum(w - point_conditions(w) for w in weights)
    return QuadricPencilReport(0, virtual, virtual < 0)
