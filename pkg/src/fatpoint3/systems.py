"""Core value types for fat-point linear systems on P^3 and their basic numerics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable

__all__ = [
    "LinearSystem",
    "CurveClass",
    "DivisorClass",
    "LineCycle",
    "normalize",
    "virtual_dimension",
    "expected_dimension",
    "intersect_curve",
    "triple_product",
    "canonical_class",
    "to_divisor",
    "point_conditions",
]


def point_conditions(mult: int) -> int:
    """Number of linear conditions imposed by a point of multiplicity ``mult``.

    Non-positive multiplicities impose none.
    """
    return math.comb(mult + 2, 3) if mult > 0 else 0


@dataclass(frozen=True)
class LinearSystem:
    """Surfaces of degree ``degree`` through points with multiplicities ``mults``."""

    degree: int
    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @property
    def npoints(self) -> int:
        return len(self.mults)


@dataclass(frozen=True)
class CurveClass:
    """Curves of degree ``degree`` with point multiplicities ``mults``.

    ``incidences`` optionally records intersection counts against the six
    lines spanned by the first four points, as triples ``(i, j, count)`` with
    0 <= i < j <= 3. Zero counts are dropped, so classes compare by content.
    """

    degree: int
    mults: tuple[int, ...] = ()
    incidences: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))
        kept = []
        seen = set()
        for i, j, count in self.incidences:
            if not 0 <= i < j <= 3:
                raise ValueError(f"incidence pair ({i}, {j}) must lie among the first four points")
            if (i, j) in seen:
                raise ValueError(f"duplicate incidence pair ({i}, {j})")
            seen.add((i, j))
            if count:
                kept.append((i, j, int(count)))
        object.__setattr__(self, "incidences", tuple(sorted(kept)))

    @property
    def npoints(self) -> int:
        return len(self.mults)

    @property
    def has_incidences(self) -> bool:
        return bool(self.incidences)

    def beta(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        for a, b, count in self.incidences:
            if (a, b) == key:
                return count
        return 0


@dataclass(frozen=True)
class DivisorClass:
    """Class a*H - sum_i b_i*E_i on the blow-up of P^3 at r points.

    Coordinates are kept in multiplicity form ``(a; b_1, ..., b_r)``, so a
    linear system embeds with its degree and multiplicities unchanged.
    Componentwise arithmetic zero-pads the shorter coefficient list.
    """

    h_coeff: int
    e_coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "e_coeffs", tuple(int(b) for b in self.e_coeffs))

    def _padded(self, n: int) -> tuple[int, ...]:
        return self.e_coeffs + (0,) * (n - len(self.e_coeffs))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        n = max(len(self.e_coeffs), len(other.e_coeffs))
        return DivisorClass(
            self.h_coeff + other.h_coeff,
            tuple(x + y for x, y in zip(self._padded(n), other._padded(n))),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.h_coeff, tuple(-b for b in self.e_coeffs))


@dataclass(frozen=True)
class LineCycle:
    """Formal 1-cycle supported on the lines through point pairs.

    Stored as sorted triples ``(i, j, weight)`` with i < j; zero weights are
    dropped so cycles compare by content. Weights may be negative when the
    cycle is used as a formal coefficient record.
    """

    entries: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        norm: dict[tuple[int, int], int] = {}
        for i, j, weight in self.entries:
            if i == j:
                raise ValueError("a line needs two distinct points")
            key = (min(i, j), max(i, j))
            if key in norm:
                raise ValueError(f"duplicate pair {key}")
            if weight:
                norm[key] = int(weight)
        object.__setattr__(
            self, "entries", tuple((i, j, norm[(i, j)]) for (i, j) in sorted(norm))
        )

    @classmethod
    def from_dict(cls, weights: dict[tuple[int, int], int]) -> "LineCycle":
        return cls(tuple((i, j, w) for (i, j), w in weights.items()))

    def weight(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        for a, b, w in self.entries:
            if (a, b) == key:
                return w
        return 0

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): w for i, j, w in self.entries}


def normalize(system: LinearSystem) -> LinearSystem:
    """Sort multiplicities non-increasing and drop zeros; negatives pass through."""
    kept = tuple(sorted((m for m in system.mults if m != 0), reverse=True))
    return LinearSystem(system.degree, kept)


def virtual_dimension(system: LinearSystem) -> int:
    """C(d+3, 3) - sum_i C(m_i+2, 3) - 1, with non-positive m_i contributing 0."""
    if system.degree < 0:
        raise ValueError("virtual dimension requires non-negative degree")
    conditions = sum(point_conditions(m) for m in system.mults)
    return math.comb(system.degree + 3, 3) - conditions - 1


def expected_dimension(system: LinearSystem) -> int:
    return max(virtual_dimension(system), -1)


def intersect_curve(system: LinearSystem, curve: CurveClass) -> int:
    """Intersection number of strict transforms on the blow-up.

    Computes d*delta - sum_i mu_i*m_i; the shorter multiplicity list is
    zero-padded. Classes carrying incidence data are rejected, they live on a
    finer model.
    """
    if curve.has_incidences:
        raise ValueError("curve carries incidence data; only plain classes intersect here")
    dot = sum(m * mu for m, mu in zip_longest(system.mults, curve.mults, fillvalue=0))
    return system.degree * curve.degree - dot


def triple_product(d1: DivisorClass, d2: DivisorClass, d3: DivisorClass) -> int:
    """Triple intersection number: H^3 = E_i^3 = 1 and mixed monomials vanish,
    giving a1*a2*a3 - sum_i b1i*b2i*b3i."""
    mixed = sum(
        x * y * z
        for x, y, z in zip_longest(d1.e_coeffs, d2.e_coeffs, d3.e_coeffs, fillvalue=0)
    )
    return d1.h_coeff * d2.h_coeff * d3.h_coeff - mixed


def canonical_class(npoints: int) -> DivisorClass:
    """Canonical class -4H + 2*sum_i E_i, i.e. (-4; (-2)^r) in multiplicity form."""
    if npoints < 0:
        raise ValueError("point count must be non-negative")
    return DivisorClass(-4, (-2,) * npoints)


def to_divisor(system: LinearSystem) -> DivisorClass:
    return DivisorClass(system.degree, system.mults)
