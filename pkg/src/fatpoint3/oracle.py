"""Ground-truth dimensions from exact interpolation-matrix ranks over a prime field.

For each seed, points are sampled in general position, the matrix of vanishing
conditions imposed by the fat points is assembled over F_p, and its rank is
computed by exact Gaussian elimination. The dimension is the column count minus
the best rank across seeds, minus one.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass

import numpy as np

from .cremona import cremona_system
from .speciality import conjectured_dimension
from .systems import LinearSystem, expected_dimension, normalize

__all__ = [
    "DEFAULT_PRIME",
    "ALL_RANDOM",
    "FUNDAMENTAL",
    "SeedDisagreement",
    "OracleConfig",
    "DEFAULT_CONFIG",
    "monomial_basis",
    "ConditionsMatrix",
    "conditions_matrix",
    "rank_mod_p",
    "oracle_dimension",
    "oracle_h1",
    "OracleReport",
    "oracle_report",
    "GridRow",
    "GridReport",
    "verify_grid",
    "cremona_equivariance_check",
]

DEFAULT_PRIME = 2**31 - 1
_M31 = 2**31 - 1

ALL_RANDOM = "all_random"
FUNDAMENTAL = "fundamental_plus_random"


class SeedDisagreement(UserWarning):
    """Ranks differed across seeds: at least one sample was not general."""


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, exact for n < 3.3 * 10^24
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class OracleConfig:
    """Field characteristic, sampling seeds, and point placement mode."""

    prime: int = DEFAULT_PRIME
    seeds: tuple[int, ...] = (1, 2, 3)
    point_mode: str = ALL_RANDOM

    def __post_init__(self) -> None:
        object.__setattr__(self, "seeds", tuple(self.seeds))
        if not 2 <= self.prime < 2**31:
            raise ValueError("prime must fit in 31 bits for exact vectorized arithmetic")
        if not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if self.point_mode not in (ALL_RANDOM, FUNDAMENTAL):
            raise ValueError(f"unknown point mode {self.point_mode!r}")


DEFAULT_CONFIG = OracleConfig()


def monomial_basis(degree: int) -> tuple[tuple[int, int, int, int], ...]:
    """Exponent vectors of all degree-d monomials in four variables, in
    descending lexicographic order. Count C(d+3, 3)."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    basis = []
    for a0 in range(degree, -1, -1):
        for a1 in range(degree - a0, -1, -1):
            for a2 in range(degree - a0 - a1, -1, -1):
                basis.append((a0, a1, a2, degree - a0 - a1 - a2))
    return tuple(basis)


def _derivative_orders(mult: int) -> tuple[tuple[int, int, int], ...]:
    # all three-variable orders with |alpha| <= mult - 1, graded then lex
    orders = []
    for total in range(mult):
        for a1 in range(total, -1, -1):
            for a2 in range(total - a1, -1, -1):
                orders.append((a1, a2, total - a1 - a2))
    return tuple(orders)


# --- modular arithmetic on int64 arrays -------------------------------------
#
# All inputs stay in [0, p) with p < 2^31, so any single product plus one
# addend stays below 2^62 and int64 never overflows.


def _fold_m31(x: np.ndarray) -> np.ndarray:
    # reduce values in [0, 2^62) modulo the Mersenne prime 2^31 - 1, in place
    hi = x >> 31
    x &= _M31
    x += hi
    np.right_shift(x, 31, out=hi)
    x &= _M31
    x += hi
    np.subtract(x, _M31, out=x, where=x >= _M31)
    return x


def _reduce(x: np.ndarray, p: int) -> np.ndarray:
    # consumes x (a temporary produced by the caller)
    return _fold_m31(x) if p == _M31 else np.mod(x, p, out=x)


def _mulmod(x, y, p: int):
    return _reduce(np.multiply(x, y, dtype=np.int64), p)


def _limbs(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (x >> 16).astype(np.float64), (x & 0xFFFF).astype(np.float64)


def _matmul_limbs(
    xh: np.ndarray, xl: np.ndarray, yh: np.ndarray, yl: np.ndarray, p: int
) -> np.ndarray:
    """Exact matrix product mod p from 16-bit limb factors held in float64.

    Each partial sum is bounded by 2^32 * inner_dim, so the inner dimension
    must stay below 2^13 for the 53-bit mantissa to hold it exactly.
    """
    hh = _reduce((xh @ yh).astype(np.int64), p)
    mid = _reduce((xh @ yl + xl @ yh).astype(np.int64), p)
    ll = _reduce((xl @ yl).astype(np.int64), p)
    out = _reduce(hh * ((1 << 32) % p), p)
    out = _reduce(out + mid * ((1 << 16) % p), p)
    return _reduce(out + ll, p)


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    xh, xl = _limbs(x)
    yh, yl = _limbs(y)
    return _matmul_limbs(xh, xl, yh, yl, p)


def _rank_elim(a: np.ndarray, p: int) -> int:
    # straight row echelon; entries already reduced into [0, p)
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        if r + 1 < m:
            f = _mulmod(a[r + 1 :, c], inv, p)
            a[r + 1 :, c:] = _reduce(
                a[r + 1 :, c:] + (p - f)[:, None] * a[r, c:][None, :], p
            )
        r += 1
    return r


_BLOCK = 128  # inner dimension of the limb matmul; must stay below 2^13


def _rank_blocked(a: np.ndarray, p: int) -> int:
    """Row echelon in column panels: multipliers collected per panel, the
    trailing matrix updated with one exact matrix product per panel."""
    m, n = a.shape
    r = 0
    c = 0
    while r < m and c < n:
        width = min(_BLOCK, n - c)
        r0 = r
        piv_cols = []
        for j in range(c, c + width):
            if r == m:
                break
            nz = np.flatnonzero(a[r:, j])
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            inv = pow(int(a[r, j]), -1, p)
            if r + 1 < m:
                f = _mulmod(a[r + 1 :, j], inv, p)
                a[r + 1 :, j + 1 : c + width] = _reduce(
                    a[r + 1 :, j + 1 : c + width]
                    + (p - f)[:, None] * a[r, j + 1 : c + width][None, :],
                    p,
                )
                a[r + 1 :, j] = f  # stash the multipliers in the cleared column
            piv_cols.append(j)
            r += 1
        k = r - r0
        if k and c + width < n:
            pc = np.array(piv_cols)
            trail = a[r0:, c + width :]
            w = trail.shape[1]
            # pivot rows settle in order, each against the rows above it;
            # limb copies of settled rows are kept so nothing is re-split
            uh = np.empty((k, w))
            ul = np.empty((k, w))
            uh[0], ul[0] = _limbs(trail[0])
            for t in range(1, k):
                fh, fl = _limbs(a[r0 + t, pc[:t]][None, :])
                acc = _matmul_limbs(fh, fl, uh[:t], ul[:t], p)[0]
                trail[t] = _reduce(trail[t] + (p - acc), p)
                uh[t], ul[t] = _limbs(trail[t])
            if r < m:
                lh, ll = _limbs(a[r:, pc])
                prod = _matmul_limbs(lh, ll, uh, ul, p)
                a[r:, c + width :] = _reduce(a[r:, c + width :] + (p - prod), p)
        c += width
    return r


def rank_mod_p(matrix: np.ndarray, prime: int) -> int:
    """Rank over F_p by Gaussian elimination, pivoting on the first nonzero
    entry of each column. Deterministic for a given matrix."""
    if not 2 <= prime < 2**31:
        raise ValueError("prime must fit in 31 bits")
    if not _is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    a = np.asarray(matrix, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("need a two-dimensional matrix")
    if a.size == 0:
        return 0
    a = np.mod(a, prime)  # np.mod also maps negative entries into [0, p)
    if min(a.shape) <= 2 * _BLOCK:
        return _rank_elim(a, prime)
    return _rank_blocked(a, prime)


# --- conditions matrix -------------------------------------------------------


@dataclass(frozen=True)
class ConditionsMatrix:
    """Dense matrix over F_p of the vanishing conditions imposed by fat points.

    Columns are indexed by the degree-d monomials in descending lex order;
    rows are grouped per point, ordered by derivative order (graded lex).
    """

    entries: np.ndarray
    prime: int

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]

    def rank(self) -> int:
        return rank_mod_p(self.entries, self.prime)


def _as_homogeneous(point, prime: int) -> tuple[int, int, int, int]:
    coords = tuple(int(c) % prime for c in point)
    if len(coords) == 3:
        coords = (1,) + coords
    if len(coords) != 4:
        raise ValueError("points need 3 affine or 4 homogeneous coordinates")
    if not any(coords):
        raise ValueError("(0:0:0:0) is not a projective point")
    return coords


def _projective_key(coords: tuple[int, int, int, int], prime: int):
    chart = next(i for i, c in enumerate(coords) if c)
    inv = pow(coords[chart], -1, prime)
    return tuple(c * inv % prime for c in coords)


def _point_block(
    exponents: np.ndarray, coords: tuple[int, int, int, int], mult: int, prime: int
) -> np.ndarray:
    """Rows of derivative conditions for one fat point.

    The point is dehomogenized in the chart of its first nonzero coordinate
    and all partial derivatives of order below ``mult`` are evaluated there.
    """
    p = prime
    chart = next(i for i, c in enumerate(coords) if c)
    inv = pow(coords[chart], -1, p)
    chart_vars = [i for i in range(4) if i != chart]
    q = [coords[i] * inv % p for i in chart_vars]
    degree = int(exponents[0].sum()) if len(exponents) else 0
    orders = np.array(_derivative_orders(mult), dtype=np.int64)

    # tables[v][t, e] = e*(e-1)*...*(e-t+1) * q_v^(e-t) mod p, zero when e < t
    tables = []
    for v in range(3):
        powers = np.ones(degree + 1, dtype=np.int64)
        for e in range(1, degree + 1):
            powers[e] = powers[e - 1] * q[v] % p
        fall = np.zeros((mult, degree + 1), dtype=np.int64)
        fall[0] = 1
        for t in range(1, mult):
            if t > degree:
                break
            fall[t, t:] = _mulmod(fall[t - 1, t:], np.arange(1, degree - t + 2), p)
        table = np.zeros((mult, degree + 1), dtype=np.int64)
        for t in range(mult):
            if t > degree:
                break
            table[t, t:] = _mulmod(fall[t, t:], powers[: degree - t + 1], p)
        tables.append(table)

    evars = exponents[:, chart_vars]
    block = tables[0][orders[:, 0][:, None], evars[:, 0][None, :]]
    block = _mulmod(block, tables[1][orders[:, 1][:, None], evars[:, 1][None, :]], p)
    block = _mulmod(block, tables[2][orders[:, 2][:, None], evars[:, 2][None, :]], p)
    return block


def conditions_matrix(
    system: LinearSystem, points, prime: int = DEFAULT_PRIME
) -> ConditionsMatrix:
    """Assemble the interpolation matrix for the system at the given points.

    ``points`` holds one point per multiplicity, as 3 affine (chart x0 = 1)
    or 4 homogeneous coordinates. The prime must exceed the degree so that
    no derivative coefficient vanishes in characteristic p.
    """
    if system.degree < 0:
        raise ValueError("degree must be non-negative")
    if any(m < 0 for m in system.mults):
        raise ValueError("multiplicities must be non-negative")
    if prime <= system.degree:
        raise ValueError("prime must exceed the degree")
    if not _is_prime(prime) or prime >= 2**31:
        raise ValueError("need a prime below 2**31")
    pts = [_as_homogeneous(pt, prime) for pt in points]
    if len(pts) != system.npoints:
        raise ValueError("need exactly one point per multiplicity")
    keys = {_projective_key(pt, prime) for pt in pts}
    if len(keys) != len(pts):
        raise ValueError("points must be pairwise distinct")
    exponents = np.array(monomial_basis(system.degree), dtype=np.int64)
    blocks = [
        _point_block(exponents, pt, m, prime)
        for pt, m in zip(pts, system.mults)
        if m >= 1
    ]
    if blocks:
        entries = np.vstack(blocks)
    else:
        entries = np.zeros((0, len(exponents)), dtype=np.int64)
    return ConditionsMatrix(entries, prime)


# --- the oracle ---------------------------------------------------------------


def _sample_points(npoints: int, seed: int, prime: int, mode: str):
    rng = random.Random(seed)
    pts: list[tuple[int, int, int, int]] = []
    seen = set()
    if mode == FUNDAMENTAL:
        for v in range(min(4, npoints)):
            vertex = tuple(1 if i == v else 0 for i in range(4))
            pts.append(vertex)
            seen.add(vertex)
    while len(pts) < npoints:
        pt = (1, rng.randrange(prime), rng.randrange(prime), rng.randrange(prime))
        if pt in seen:
            continue
        pts.append(pt)
        seen.add(pt)
    return pts


def _seed_ranks(system: LinearSystem, config: OracleConfig) -> list[int]:
    ranks = []
    for seed in config.seeds:
        pts = _sample_points(system.npoints, seed, config.prime, config.point_mode)
        ranks.append(conditions_matrix(system, pts, config.prime).rank())
    return ranks


def oracle_dimension(system: LinearSystem, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """True projective dimension at the sampled points: C(d+3,3) minus the
    best rank across seeds, minus one; -1 means the system is empty.

    Multiplicities are taken as given (no reordering), so index positions
    keep their meaning in fundamental point mode. A warning is attached when
    ranks disagree across seeds.
    """
    if system.degree < 0:
        raise ValueError("degree must be non-negative")
    if any(m < 0 for m in system.mults):
        raise ValueError("multiplicities must be non-negative")
    ranks = _seed_ranks(system, config)
    if len(set(ranks)) > 1:
        warnings.warn(
            f"ranks {ranks} disagree across seeds for degree {system.degree}, "
            f"mults {system.mults}; using the maximum",
            SeedDisagreement,
            stacklevel=2,
        )
    return math.comb(system.degree + 3, 3) - max(ranks) - 1


def oracle_h1(system: LinearSystem, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """Measured speciality: oracle dimension minus expected dimension for a
    non-empty system, and 0 for an empty one."""
    dim = oracle_dimension(system, config)
    if dim < 0:
        return 0
    return dim - expected_dimension(normalize(system))


@dataclass(frozen=True)
class OracleReport:
    system: LinearSystem
    prime: int
    seeds: tuple[int, ...]
    point_mode: str
    n_rows: int
    n_cols: int
    ranks: tuple[int, ...]
    dimension: int
    h1: int

    @property
    def seeds_agree(self) -> bool:
        return len(set(self.ranks)) == 1


def oracle_report(system: LinearSystem, config: OracleConfig = DEFAULT_CONFIG) -> OracleReport:
    """Run the oracle and keep the per-seed ranks and matrix shape."""
    if system.degree < 0:
        raise ValueError("degree must be non-negative")
    if any(m < 0 for m in system.mults):
        raise ValueError("multiplicities must be non-negative")
    ranks = tuple(_seed_ranks(system, config))
    n_cols = math.comb(system.degree + 3, 3)
    n_rows = sum(math.comb(m + 2, 3) for m in system.mults if m > 0)
    dim = n_cols - max(ranks) - 1
    h1 = dim - expected_dimension(normalize(system)) if dim >= 0 else 0
    return OracleReport(
        system,
        config.prime,
        config.seeds,
        config.point_mode,
        n_rows,
        n_cols,
        ranks,
        dim,
        h1,
    )


# --- grid verification --------------------------------------------------------


@dataclass(frozen=True)
class GridRow:
    degree: int
    mult: int
    npoints: int
    conjectured: int
    oracle: int

    @property
    def match(self) -> bool:
        return self.conjectured == self.oracle


@dataclass(frozen=True)
class GridReport:
    d_max: int
    m_max: int
    r_max: int
    prime: int
    seeds: tuple[int, ...]
    rows: tuple[GridRow, ...]

    @property
    def mismatches(self) -> tuple[GridRow, ...]:
        return tuple(row for row in self.rows if not row.match)

    def to_tsv(self) -> str:
        return "\n".join(
            f"{row.degree}\t{row.mult}\t{row.npoints}\t{row.conjectured}"
            f"\t{row.oracle}\t{'ok' if row.match else 'MISMATCH'}"
            for row in self.rows
        )

    def to_json_dict(self) -> dict:
        return {
            "d_max": self.d_max,
            "m_max": self.m_max,
            "r_max": self.r_max,
            "prime": self.prime,
            "seeds": list(self.seeds),
            "cells": len(self.rows),
            "mismatches": [
                {
                    "d": row.degree,
                    "m": row.mult,
                    "r": row.npoints,
                    "conjectured": row.conjectured,
                    "oracle": row.oracle,
                }
                for row in self.mismatches
            ],
        }


def verify_grid(
    d_max: int, m_max: int, r_max: int, config: OracleConfig = DEFAULT_CONFIG
) -> GridReport:
    """Compare the reduction procedure against the rank oracle on every
    homogeneous system in the box d <= d_max, 1 <= m <= m_max, 1 <= r <= r_max."""
    if math.comb(d_max + 3, 3) > 20000:
        raise ValueError("grid degree bound too large for dense elimination")
    rows = []
    for d in range(d_max + 1):
        for m in range(1, m_max + 1):
            for r in range(1, r_max + 1):
                system = LinearSystem(d, (m,) * r)
                conjectured = conjectured_dimension(system)[0]
                measured = oracle_dimension(system, config)
                rows.append(GridRow(d, m, r, conjectured, measured))
    return GridReport(d_max, m_max, r_max, config.prime, config.seeds, tuple(rows))


def cremona_equivariance_check(system: LinearSystem, config: OracleConfig) -> bool:
    """Oracle dimensions agree before and after the transform based at the
    four coordinate vertices.

    Requires fundamental point mode, so the first four points sit at the
    vertices and both systems are measured against the same point set.
    """
    if config.point_mode != FUNDAMENTAL:
        raise ValueError("equivariance check requires fundamental point mode")
    norm = normalize(system)
    padded = LinearSystem(norm.degree, norm.mults + (0,) * max(0, 4 - norm.npoints))
    image = cremona_system(padded, (0, 1, 2, 3))
    if image.degree < 0 or any(m < 0 for m in image.mults):
        raise ValueError("transform leaves the admissible range for the oracle")
    return oracle_dimension(padded, config) == oracle_dimension(image, config)
