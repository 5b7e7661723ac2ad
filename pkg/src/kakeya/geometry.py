"""Vectors, directions, hyperplanes and subspace counting over F_q^n.

A direction is the canonical normal vector of an (n-1)-dimensional linear
subspace: the unique scalar multiple whose first nonzero coordinate is 1.
Directions are ordered by the point index of that normal, which fixes the
meaning of "direction #i" everywhere (witness files, CLI output, search).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .field import FieldSpec, field_add, field_inv, field_mul, field_neg, field_sub, size_cap
from .pointset import PointSet

ENUM_CAP = 10**6


# -- point indexing ---------------------------------------------------------


def point_index(coords, q: int) -> int:
    """Base-q positional encoding; coordinate 0 is the lowest digit."""
    idx = 0
    for c in reversed(coords):
        if not 0 <= c < q:
            raise ValueError(f"coordinate {c} out of range for q={q}")
        idx = idx * q + c
    return idx


def point_coords(index: int, q: int, n: int) -> tuple[int, ...]:
    if not 0 <= index < q**n:
        raise ValueError(f"point index {index} out of range")
    out = []
    for _ in range(n):
        index, r = divmod(index, q)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Point:
    coords: tuple[int, ...]
    index: int

    @classmethod
    def from_coords(cls, coords, q: int) -> "Point":
        coords = tuple(coords)
        return cls(coords, point_index(coords, q))

    @classmethod
    def from_index(cls, index: int, q: int, n: int) -> "Point":
        return cls(point_coords(index, q, n), index)


# -- directions and hyperplanes ---------------------------------------------


@dataclass(frozen=True)
class Direction:
    """Canonical normal of an (n-1)-dimensional subspace."""

    normal: tuple[int, ...]

    def index(self, q: int) -> int:
        return point_index(self.normal, q)


@dataclass(frozen=True)
class AffineHyperplane:
    """The coset { x : normal . x = level } of a direction's subspace."""

    direction: Direction
    level: int


@dataclass(frozen=True)
class SubspaceBasis:
    """A k-dimensional subspace as its unique RREF basis (k x n rows)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)


def canonical_normal(f: FieldSpec, vec) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1; rejects the zero vector."""
    vec = tuple(vec)
    for a in vec:
        if a:
            if a == 1:
                return vec
            inv = field_inv(f, a)
            return tuple(field_mul(f, inv, x) for x in vec)
    raise ValueError("zero vector spans no direction")


def dot(f: FieldSpec, u, v) -> int:
    """Standard bilinear form sum_i u_i * v_i."""
    if f.k == 1:
        s = 0
        for a, b in zip(u, v):
            s += a * b
        return s % f.p
    acc = 0
    for a, b in zip(u, v):
        acc = field_add(f, acc, field_mul(f, a, b))
    return acc


def count_directions_formula(q: int, n: int) -> int:
    """(q^n - 1)/(q - 1), the number of hyperplane directions."""
    if q < 2 or n < 1:
        raise ValueError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    num = q**n - 1
    assert num % (q - 1) == 0
    return num // (q - 1)


def enumerate_directions(f: FieldSpec, n: int) -> list[Direction]:
    """All canonical normals, ascending by their point index."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    q = f.q
    total = q**n
    if total > size_cap():
        raise ValueError(f"point space size {total} exceeds size cap {size_cap()}")
    if count_directions_formula(q, n) > ENUM_CAP:
        raise ValueError("direction count exceeds enumeration cap")
    dirs = []
    for idx in range(1, total):
        coords = point_coords(idx, q, n)
        first = next(a for a in coords if a)
        if first == 1:
            dirs.append(Direction(coords))
    return dirs


def count_spanning_tuples(q: int, n: int) -> int:
    """Number of (n-1)-tuples of vectors spanning an (n-1)-dim subspace."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    out = 1
    for h in range(n - 1):
        out *= q**n - q**h
    return out


def count_fiber(q: int, n: int) -> int:
    """Number of spanning (n-1)-tuples with a fixed (n-1)-dim span."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    out = 1
    for h in range(n - 1):
        out *= q ** (n - 1) - q**h
    return out


def count_subspaces(q: int, n: int, k: int) -> int:
    """Gaussian binomial: number of k-dim subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise ValueError(f"subspace dimension {k} out of range for n={n}")
    num = 1
    den = 1
    for h in range(k):
        num *= q**n - q**h
        den *= q**k - q**h
    assert num % den == 0
    return num // den


# -- row reduction and subspace enumeration ---------------------------------


def rref(f: FieldSpec, rows) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over F_q; returns (nonzero rows, pivots)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        if m[r][c] != 1:
            inv = field_inv(f, m[r][c])
            m[r] = [field_mul(f, inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                coef = m[i][c]
                m[i] = [field_sub(f, x, field_mul(f, coef, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(f: FieldSpec, rows) -> int:
    return len(rref(f, rows)[1])


def null_space_basis(f: FieldSpec, rows, n: int) -> tuple[tuple[int, ...], ...]:
    """Basis of { x : r . x = 0 for every row r }; dimension n - rank."""
    reduced, pivots = rref(f, rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [0] * n
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field_neg(f, reduced[i][free])
        basis.append(tuple(v))
    return tuple(basis)


def enumerate_subspaces(f: FieldSpec, n: int, k: int) -> list[SubspaceBasis]:
    """Each k-dim subspace exactly once, as its unique RREF basis.

    RREF matrices are generated directly: pick pivot columns, then fill the
    free positions (right of each pivot, outside pivot columns) with every
    field value.
    """
    if not 0 <= k <= n:
        raise ValueError(f"subspace dimension {k} out of range for n={n}")
    total = count_subspaces(f.q, n, k)
    if total > ENUM_CAP:
        raise ValueError("subspace count exceeds enumeration cap")
    if k == 0:
        return [SubspaceBasis(())]
    q = f.q
    out = []
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_pos = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivot_set
        ]
        for values in itertools.product(range(q), repeat=len(free_pos)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free_pos, values):
                rows[i][j] = v
            out.append(SubspaceBasis(tuple(tuple(r) for r in rows)))
    assert len(out) == total
    return out


def subspace_from_direction(f: FieldSpec, d: Direction) -> SubspaceBasis:
    """The (n-1)-dim subspace { x : normal . x = 0 } in RREF form."""
    n = len(d.normal)
    basis = null_space_basis(f, [d.normal], n)
    reduced, _ = rref(f, basis)
    return SubspaceBasis(reduced)


# -- hyperplane point sets ---------------------------------------------------


def hyperplane_points(f: FieldSpec, n: int, h: AffineHyperplane) -> PointSet:
    """All q^(n-1) points x with normal . x = level."""
    q = f.q
    if not 0 <= h.level < q:
        raise ValueError(f"level {h.level} out of range for {f}")
    normal = h.direction.normal
    bits = 0
    for idx in range(q**n):
        if dot(f, normal, point_coords(idx, q, n)) == h.level:
            bits |= 1 << idx
    return PointSet(q, n, bits)


def intersect_hyperplanes(
    f: FieldSpec, h1: AffineHyperplane, h2: AffineHyperplane
) -> PointSet:
    """Intersection of two hyperplanes.

    Distinct directions meet in exactly q^(n-2) points; parallel distinct
    cosets are disjoint; equal hyperplanes coincide.
    """
    n = len(h1.direction.normal)
    if len(h2.direction.normal) != n:
        raise ValueError("hyperplanes live in different dimensions")
    q = f.q
    n1, n2 = h1.direction.normal, h2.direction.normal
    bits = 0
    for idx in range(q**n):
        coords = point_coords(idx, q, n)
        if dot(f, n1, coords) == h1.level and dot(f, n2, coords) == h2.level:
            bits |= 1 << idx
    return PointSet(q, n, bits)
