"""Cubic Cremona action on systems and curves, and the standard-form reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .literals import format_system
from .systems import CurveClass, LinearSystem, LineCycle, normalize

__all__ = [
    "CREMONA",
    "REMOVE_COMPONENT",
    "REMOVE_QUADRIC",
    "ReductionStep",
    "ReductionTrace",
    "cremona_system",
    "cremona_curve",
    "cremona_curve_full",
    "cremona_with_lines",
    "is_standard_form",
    "reduce_to_standard",
    "has_fixed_plane",
    "curve_invariants",
    "line_orbit",
    "grouped_steps",
    "render_trace",
]

CREMONA = "cremona"
REMOVE_COMPONENT = "remove_component"
REMOVE_QUADRIC = "remove_quadric"

_ARROWS = {CREMONA: "(i)", REMOVE_COMPONENT: "(ii)", REMOVE_QUADRIC: "(iii)"}

_PAIRS4 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _complement(i: int, j: int) -> tuple[int, int]:
    rest = tuple(k for k in range(4) if k not in (i, j))
    return rest


@dataclass(frozen=True)
class ReductionStep:
    """One step of the reduction: a Cremona transform, the removal of a fixed
    exceptional component, or the removal of a base quadric.

    ``before`` and ``after`` are the normalized systems around the step;
    ``indices`` are positions in ``before``. For component removals ``alpha``
    records the multiplicity stripped off.
    """

    kind: str
    indices: tuple[int, ...]
    before: LinearSystem
    after: LinearSystem
    alpha: int | None = None


@dataclass(frozen=True)
class ReductionTrace:
    """Chained reduction steps ending at ``final``; ``empty`` marks a system
    recognized as empty along the way."""

    steps: tuple[ReductionStep, ...]
    final: LinearSystem
    empty: bool = False


def _check_quadruple(idx: tuple[int, ...]) -> None:
    if len(idx) != 4 or len(set(idx)) != 4:
        raise ValueError("need four distinct point indices")
    if min(idx) < 0:
        raise ValueError("point indices must be non-negative")


def _padded(mults: tuple[int, ...], idx: tuple[int, ...]) -> list[int]:
    need = max(idx) + 1
    out = list(mults)
    if need > len(out):
        out += [0] * (need - len(out))
    return out


def cremona_system(system: LinearSystem, idx: tuple[int, ...]) -> LinearSystem:
    """Transform by the cubic involution based at the four chosen points.

    With k = 2d - sum of the selected multiplicities, the degree becomes d+k
    and each selected multiplicity gains k. Missing points are treated as
    zero multiplicities; the result is not normalized.
    """
    idx = tuple(idx)
    _check_quadruple(idx)
    mults = _padded(system.mults, idx)
    k = 2 * system.degree - sum(mults[i] for i in idx)
    for i in idx:
        mults[i] += k
    return LinearSystem(system.degree + k, tuple(mults))


def cremona_curve(curve: CurveClass, idx: tuple[int, ...]) -> CurveClass:
    """Transform a curve class disjoint from the six coordinate lines: with
    h = delta - sum of the selected multiplicities, delta gains 2h and each
    selected multiplicity gains h."""
    idx = tuple(idx)
    _check_quadruple(idx)
    if curve.has_incidences:
        raise ValueError("class meets the coordinate lines; use cremona_curve_full")
    mults = _padded(curve.mults, idx)
    h = curve.degree - sum(mults[i] for i in idx)
    for i in idx:
        mults[i] += h
    return CurveClass(curve.degree + 2 * h, tuple(mults))


def cremona_curve_full(curve: CurveClass) -> CurveClass:
    """Involution on curve classes carrying incidence counts, acting on the
    first four points. Incidence counts swap to the complementary pair."""
    mults = list(curve.mults) + [0] * max(0, 4 - curve.npoints)
    delta = curve.degree
    beta_sum = sum(curve.beta(i, j) for i, j in _PAIRS4)
    new_degree = 3 * delta - 2 * sum(mults[:4]) - beta_sum
    new_mults = []
    for r in range(4):
        others = sum(mults[j] for j in range(4) if j != r)
        off_pairs = sum(curve.beta(i, j) for i, j in _PAIRS4 if r not in (i, j))
        new_mults.append(delta - others - off_pairs)
    new_inc = tuple((i, j, curve.beta(*_complement(i, j))) for i, j in _PAIRS4)
    return CurveClass(new_degree, tuple(new_mults) + tuple(mults[4:]), new_inc)


def cremona_with_lines(
    degree: int, mults: tuple[int, ...], cycle: LineCycle
) -> tuple[int, tuple[int, int, int, int], LineCycle]:
    """Transform a four-point system together with formal line multiplicities.

    Returns (d', m', n') where s = 2d - sum(m), d' = d+s, m'_i = m_i+s and
    n'_ij = d - m_i - m_j + n_hk with {h,k} the complementary pair.
    """
    if len(mults) != 4:
        raise ValueError("exactly four points carry line data")
    s = 2 * degree - sum(mults)
    new_weights = {}
    for i, j in _PAIRS4:
        h, k = _complement(i, j)
        new_weights[(i, j)] = degree - mults[i] - mults[j] + cycle.weight(h, k)
    return (
        degree + s,
        tuple(m + s for m in mults),
        LineCycle.from_dict(new_weights),
    )


def is_standard_form(system: LinearSystem) -> bool:
    """True when no four-point transform can lower the degree: d >= 0, all
    multiplicities >= 0, and 2d >= the sum of the four largest."""
    if system.degree < 0:
        return False
    if any(m < 0 for m in system.mults):
        return False
    top = sorted(system.mults, reverse=True)[:4]
    return 2 * system.degree >= sum(top)


def reduce_to_standard(system: LinearSystem) -> ReductionTrace:
    """Drive a system to standard form.

    Repeatedly transforms on the four largest multiplicities (each such step
    strictly lowers the degree), stripping negative multiplicities one at a
    time as fixed-component removals and renormalizing throughout. Declares
    the system empty when the degree turns negative or some multiplicity
    exceeds the degree.
    """
    current = normalize(system)
    steps: list[ReductionStep] = []
    while True:
        if current.degree < 0:
            return ReductionTrace(tuple(steps), current, empty=True)
        while any(m < 0 for m in current.mults):
            i = next(pos for pos, m in enumerate(current.mults) if m < 0)
            alpha = -current.mults[i]
            stripped = current.mults[:i] + (0,) + current.mults[i + 1 :]
            after = normalize(LinearSystem(current.degree, stripped))
            steps.append(ReductionStep(REMOVE_COMPONENT, (i,), current, after, alpha=alpha))
            current = after
        if current.mults and current.mults[0] > current.degree:
            return ReductionTrace(tuple(steps), current, empty=True)
        if is_standard_form(current):
            return ReductionTrace(tuple(steps), current, empty=False)
        after = normalize(cremona_system(current, (0, 1, 2, 3)))
        steps.append(ReductionStep(CREMONA, (0, 1, 2, 3), current, after))
        current = after


def has_fixed_plane(system: LinearSystem, i: int, j: int, k: int) -> bool:
    """Diagnostic: the plane through points i, j, k is forced into the base
    locus exactly when 2d - m_i - m_j - m_k < 0."""
    if len({i, j, k}) != 3 or min(i, j, k) < 0:
        raise ValueError("need three distinct point indices")
    mults = system.mults

    def get(t: int) -> int:
        return mults[t] if t < len(mults) else 0

    return 2 * system.degree - get(i) - get(j) - get(k) < 0


def curve_invariants(curve: CurveClass) -> tuple[int, int]:
    """The pair (2*delta - sum mu_i, delta^2 - 2*sum mu_i^2 + 3), both
    preserved by every four-point transform of plain curve classes."""
    if curve.has_incidences:
        raise ValueError("invariants are defined for plain curve classes")
    first = 2 * curve.degree - sum(curve.mults)
    second = curve.degree**2 - 2 * sum(mu * mu for mu in curve.mults) + 3
    return first, second


def _canonical_curve(curve: CurveClass, npoints: int) -> CurveClass:
    mults = sorted(curve.mults, reverse=True)
    mults += [0] * (npoints - len(mults))
    return CurveClass(curve.degree, tuple(mults[:npoints]))


def line_orbit(npoints: int, max_degree: int) -> dict[CurveClass, bool]:
    """Closure of the line-through-two-points class under four-point
    transforms over ``npoints`` points, pruned at ``max_degree``.

    Classes are canonical (multiplicities sorted, padded to ``npoints``);
    images that are not curve classes (degree < 1 or a negative multiplicity)
    are discarded. The value flags whether the class is also reachable along
    a path whose degree strictly increases at every step.
    """
    if not 2 <= npoints <= 10:
        raise ValueError("point count must be between 2 and 10")
    if not 1 <= max_degree <= 50:
        raise ValueError("degree cap must be between 1 and 50")
    start = CurveClass(1, (1, 1) + (0,) * (npoints - 2))
    quadruples = (
        tuple(itertools.combinations(range(npoints), 4)) if npoints >= 4 else ()
    )

    def images(cls: CurveClass) -> Iterator[tuple[CurveClass, bool]]:
        for quad in quadruples:
            image = cremona_curve(cls, quad)
            if image.degree < 1 or image.degree > max_degree:
                continue
            if any(mu < 0 for mu in image.mults):
                continue
            yield _canonical_curve(image, npoints), image.degree > cls.degree

    def closure(increasing_only: bool) -> set[CurveClass]:
        found = {start}
        frontier = [start]
        while frontier:
            fresh = []
            for cls in frontier:
                for image, increased in images(cls):
                    if increasing_only and not increased:
                        continue
                    if image not in found:
                        found.add(image)
                        fresh.append(image)
            frontier = fresh
        return found

    orbit = closure(increasing_only=False)
    monotone = closure(increasing_only=True)
    ordered = sorted(orbit, key=lambda c: (c.degree, tuple(-m for m in c.mults)))
    return {cls: cls in monotone for cls in ordered}


def grouped_steps(trace: ReductionTrace) -> list[tuple[str, LinearSystem]]:
    """Collapse runs of consecutive component removals into a single displayed
    step, mirroring how hand-written traces batch them."""
    out: list[tuple[str, LinearSystem]] = []
    for step in trace.steps:
        if step.kind == REMOVE_COMPONENT and out and out[-1][0] == REMOVE_COMPONENT:
            out[-1] = (REMOVE_COMPONENT, step.after)
        else:
            out.append((step.kind, step.after))
    return out


def render_trace(trace: ReductionTrace, start: LinearSystem | None = None) -> str:
    """Render a trace with one arrow line per displayed step:
    ``->(i)`` Cremona, ``->(ii)`` component removal, ``->(iii)`` quadric removal."""
    if start is None:
        start = trace.steps[0].before if trace.steps else trace.final
    lines = [format_system(start)]
    for kind, after in grouped_steps(trace):
        lines.append(f"  ->{_ARROWS[kind]} {format_system(after)}")
    if trace.empty:
        lines.append("  (empty)")
    return "\n".join(lines)
