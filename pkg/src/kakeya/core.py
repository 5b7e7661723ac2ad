"""Kakeya verification, hyperplane-union construction and incidence counts.

A set E is Kakeya with respect to hyperplanes when every direction has at
least one full coset of its subspace inside E.  Fixing one level per
direction (an OffsetAssignment) determines a union of hyperplanes that is
Kakeya by construction, and any Kakeya set contains such a union.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .field import FieldSpec, make_field
from .geometry import (
    Direction,
    dot,
    enumerate_directions,
    enumerate_subspaces,
    null_space_basis,
    point_coords,
    point_index,
)
from .pointset import PointSet


@dataclass(frozen=True)
class OffsetAssignment:
    """One level per direction, in enumerate_directions order."""

    levels: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)


@dataclass(frozen=True)
class IncidenceReport:
    """Exact counts behind the double-counting bound |E| >= |I|^2/|W|."""

    s_count: int
    i_count: int
    w_count: int
    cs_bound: Fraction
    set_size: int


@dataclass(frozen=True)
class KakeyaVerdict:
    """Outcome of the verifier.

    For plane_dim = n-1 the witness is an OffsetAssignment; for smaller
    plane dimensions it is a tuple with one coset-representative point
    index per subspace (enumerate_subspaces order).  On failure,
    failing_index points into the same enumeration order.
    """

    ok: bool
    plane_dim: int
    witness: OffsetAssignment | tuple[int, ...] | None
    failing_index: int | None


def _all_coords(q: int, n: int) -> list[tuple[int, ...]]:
    return [point_coords(i, q, n) for i in range(q**n)]


def level_masks(f: FieldSpec, n: int, dirs: list[Direction] | None = None) -> list[list[int]]:
    """Per direction, per level: the bitmask of that hyperplane's points."""
    if dirs is None:
        dirs = enumerate_directions(f, n)
    q = f.q
    coords_list = _all_coords(q, n)
    masks = []
    for d in dirs:
        normal = d.normal
        row = [0] * q
        for idx, coords in enumerate(coords_list):
            row[dot(f, normal, coords)] |= 1 << idx
        masks.append(row)
    return masks


def _check_assignment(f: FieldSpec, dirs, assignment: OffsetAssignment) -> tuple[int, ...]:
    levels = tuple(assignment.levels)
    if len(levels) != len(dirs):
        raise ValueError(
            f"assignment covers {len(levels)} directions, expected {len(dirs)}"
        )
    for lvl in levels:
        if not 0 <= lvl < f.q:
            raise ValueError(f"level {lvl} out of range for {f}")
    return levels


def build_union(f: FieldSpec, n: int, assignment: OffsetAssignment) -> PointSet:
    """Union over all directions of the assigned hyperplane."""
    dirs = enumerate_directions(f, n)
    levels = _check_assignment(f, dirs, assignment)
    q = f.q
    coords_list = _all_coords(q, n)
    bits = 0
    for d, lvl in zip(dirs, levels):
        normal = d.normal
        for idx, coords in enumerate(coords_list):
            if dot(f, normal, coords) == lvl:
                bits |= 1 << idx
    return PointSet(q, n, bits)


def random_assignment(f: FieldSpec, n: int, seed: int) -> OffsetAssignment:
    """Seeded uniform level per direction; deterministic for a fixed seed."""
    rng = random.Random(seed)
    count = len(enumerate_directions(f, n))
    return OffsetAssignment(tuple(rng.randrange(f.q) for _ in range(count)))


def random_kakeya(f: FieldSpec, n: int, seed: int) -> PointSet:
    """Union built from a seeded random assignment; Kakeya by construction."""
    return build_union(f, n, random_assignment(f, n, seed))


def _resolve_plane_dim(n: int, plane_dim: int | None) -> int:
    if plane_dim is None:
        plane_dim = n - 1
    if n == 1:
        if plane_dim != 0:
            raise ValueError(f"plane dimension {plane_dim} invalid for n=1")
        return 0
    if not 1 <= plane_dim <= n - 1:
        raise ValueError(f"plane dimension {plane_dim} out of range for n={n}")
    return plane_dim


def is_kakeya(f: FieldSpec, pset: PointSet, plane_dim: int | None = None) -> KakeyaVerdict:
    """Check whether pset contains a full coset in every plane direction.

    Points of E are bucket-counted by their level with respect to each
    direction (the dual functionals for plane_dim < n-1); a coset is fully
    contained exactly when its bucket reaches the coset size.  The witness
    picks the smallest qualifying level per direction.
    """
    if f.q != pset.q:
        raise ValueError("field order does not match the point set")
    n = pset.n
    plane_dim = _resolve_plane_dim(n, plane_dim)
    q = f.q
    members = [point_coords(i, q, n) for i in pset.indices()]

    if plane_dim == n - 1 or n == 1:
        target = q ** (n - 1)
        levels = []
        for pos, d in enumerate(enumerate_directions(f, n)):
            counts = [0] * q
            normal = d.normal
            for coords in members:
                counts[dot(f, normal, coords)] += 1
            lvl = next((c for c in range(q) if counts[c] == target), None)
            if lvl is None:
                return KakeyaVerdict(False, plane_dim, None, pos)
            levels.append(lvl)
        return KakeyaVerdict(True, plane_dim, OffsetAssignment(tuple(levels)), None)

    target = q**plane_dim
    reps = []
    for pos, sub in enumerate(enumerate_subspaces(f, n, plane_dim)):
        duals = null_space_basis(f, sub.rows, n)
        counts: dict[tuple[int, ...], int] = {}
        first_point: dict[tuple[int, ...], int] = {}
        for coords in members:
            key = tuple(dot(f, u, coords) for u in duals)
            counts[key] = counts.get(key, 0) + 1
            if key not in first_point:
                first_point[key] = point_index(coords, q)
        hit = [key for key, c in counts.items() if c == target]
        if not hit:
            return KakeyaVerdict(False, plane_dim, None, pos)
        reps.append(min(first_point[key] for key in hit))
    return KakeyaVerdict(True, plane_dim, tuple(reps), None)


def hyperplane_coverage(f: FieldSpec, pset: PointSet, assignment: OffsetAssignment) -> list[int]:
    """Diagnostic |w' intersect E| per direction for the assigned hyperplanes."""
    dirs = enumerate_directions(f, pset.n)
    levels = _check_assignment(f, dirs, assignment)
    masks = level_masks(f, pset.n, dirs)
    return [(masks[i][levels[i]] & pset.bits).bit_count() for i in range(len(dirs))]


def incidence_stats(f: FieldSpec, pset: PointSet, assignment: OffsetAssignment) -> IncidenceReport:
    """Exact |I| and |W| for a set containing every assigned hyperplane.

    |I| counts (direction, point) incidences on the chosen hyperplanes and
    equals |S| q^(n-1).  |W| counts triples (w1, w2, v) with v on both
    chosen hyperplanes; under containment the case split gives
    |I| + |S|(|S|-1) q^(n-2) exactly.  The quotient |I|^2/|W| is an exact
    rational lower bound for |E|.
    """
    if f.q != pset.q:
        raise ValueError("field order does not match the point set")
    q, n = pset.q, pset.n
    dirs = enumerate_directions(f, n)
    levels = _check_assignment(f, dirs, assignment)
    masks = level_masks(f, n, dirs)

    i_count = 0
    for pos in range(len(dirs)):
        hp = masks[pos][levels[pos]]
        if hp & ~pset.bits:
            raise ValueError(
                f"hyperplane for direction #{pos} is not contained in the set"
            )
        i_count += (hp & pset.bits).bit_count()

    s = len(dirs)
    pairs_term = s * (s - 1) * q ** (n - 2) if n >= 2 else 0
    w_count = i_count + pairs_term
    return IncidenceReport(
        s_count=s,
        i_count=i_count,
        w_count=w_count,
        cs_bound=Fraction(i_count * i_count, w_count),
        set_size=pset.cardinality,
    )


# -- serialization -----------------------------------------------------------


def point_set_to_json(f: FieldSpec, pset: PointSet, include_points: bool = False) -> dict:
    obj = {
        "q": pset.q,
        "p": f.p,
        "k": f.k,
        "n": pset.n,
        "bits_hex": pset.bits_hex(),
    }
    if include_points:
        obj["points"] = [list(point_coords(i, pset.q, pset.n)) for i in pset.indices()]
    return obj


def point_set_from_json(obj: dict) -> tuple[FieldSpec, PointSet]:
    """Validate and decode the point-set schema (q, p, k, n, bits_hex[, points])."""
    for key in ("q", "p", "k", "n", "bits_hex"):
        if key not in obj:
            raise ValueError(f"point set file missing key {key!r}")
    q, p, k, n = (int(obj[key]) for key in ("q", "p", "k", "n"))
    f = make_field(p, k)
    if f.q != q:
        raise ValueError(f"q={q} does not equal p^k={f.q}")
    total = q**n
    width = (total + 3) // 4
    hx = obj["bits_hex"]
    if not isinstance(hx, str) or len(hx) != width:
        raise ValueError(f"bits_hex must be a {width}-digit hex string")
    try:
        bits = int(hx, 16)
    except ValueError:
        raise ValueError("bits_hex is not valid hexadecimal") from None
    if bits.bit_length() > total:
        raise ValueError("bits_hex sets bits beyond the point space")
    pset = PointSet(q, n, bits)
    if obj.get("points") is not None:
        listed = {point_index(tuple(c), q) for c in obj["points"]}
        if listed != set(pset.indices()):
            raise ValueError("points list disagrees with bits_hex")
    return f, pset


def write_point_set(path, f: FieldSpec, pset: PointSet, include_points: bool = False) -> None:
    obj = point_set_to_json(f, pset, include_points)
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_point_set(path) -> tuple[FieldSpec, PointSet]:
    return point_set_from_json(json.loads(Path(path).read_text()))


def assignment_to_json(f: FieldSpec, n: int, assignment: OffsetAssignment) -> dict:
    return {"q": f.q, "n": n, "levels": list(assignment.levels)}


def assignment_from_json(obj) -> OffsetAssignment:
    if isinstance(obj, list):
        levels = obj
    elif isinstance(obj, dict) and "levels" in obj:
        levels = obj["levels"]
    else:
        raise ValueError("witness file must be a list of levels or have a 'levels' key")
    return OffsetAssignment(tuple(int(v) for v in levels))


def write_assignment(path, f: FieldSpec, n: int, assignment: OffsetAssignment) -> None:
    Path(path).write_text(
        json.dumps(assignment_to_json(f, n, assignment), indent=2, sort_keys=True) + "\n"
    )


def read_assignment(path) -> OffsetAssignment:
    return assignment_from_json(json.loads(Path(path).read_text()))
