"""Brute-force cross-checks, independent of the counting formulas they test.

These deliberately re-derive quantities by direct enumeration (spans of
explicit tuples, literal triple counting, axiom tables) so the fast paths
elsewhere can be validated against them at small sizes.
"""

from __future__ import annotations

import itertools
import random

from .core import OffsetAssignment
from .field import FieldSpec, field_add, field_inv, field_mul, field_neg
from .geometry import dot, enumerate_directions, point_coords, rref
from .pointset import PointSet


def span_count_brute(f: FieldSpec, n: int) -> int:
    """Count distinct 1-dimensional spans by grouping nonzero vectors."""
    q = f.q
    vectors = [point_coords(i, q, n) for i in range(1, q**n)]
    seen = set()
    for v in vectors:
        multiples = frozenset(
            tuple(field_mul(f, c, x) for x in v) for c in range(1, q)
        )
        seen.add(multiples)
    return len(seen)


def hyperplane_span_count_brute(f: FieldSpec, n: int) -> int:
    """Count distinct (n-1)-dimensional spans of vector tuples directly.

    Enumerates index-increasing (n-1)-tuples of nonzero vectors (every
    subspace has such a spanning tuple), keeps the full-rank ones and
    dedupes by RREF.
    """
    q = f.q
    if n == 1:
        return 1 if q >= 2 else 0
    vectors = [point_coords(i, q, n) for i in range(1, q**n)]
    seen = set()
    for combo in itertools.combinations(vectors, n - 1):
        reduced, pivots = rref(f, combo)
        if len(pivots) == n - 1:
            seen.add(reduced)
    return len(seen)


def spanning_tuple_census(f: FieldSpec, n: int) -> tuple[int, dict[tuple, int]]:
    """All ordered (n-1)-tuples spanning an (n-1)-dim subspace, by span.

    Returns (total count, {RREF key: fiber size}).  Quadratic in q^n; meant
    for desk-scale cross-checks only.
    """
    q = f.q
    vectors = [point_coords(i, q, n) for i in range(q**n)]
    total = 0
    fibers: dict[tuple, int] = {}
    for combo in itertools.product(vectors, repeat=n - 1):
        reduced, pivots = rref(f, combo)
        if len(pivots) == n - 1:
            total += 1
            fibers[reduced] = fibers.get(reduced, 0) + 1
    return total, fibers


def triple_count_direct(
    f: FieldSpec, pset: PointSet, assignment: OffsetAssignment
) -> int:
    """Literal count of (w1, w2, v) with v in E on both chosen hyperplanes."""
    q, n = pset.q, pset.n
    dirs = enumerate_directions(f, n)
    levels = list(assignment.levels)
    member_coords = [point_coords(i, q, n) for i in pset.indices()]
    # level of every member w.r.t. every direction, computed point by point
    member_levels = [
        [dot(f, d.normal, coords) for coords in member_coords] for d in dirs
    ]
    count = 0
    for i in range(len(dirs)):
        for j in range(len(dirs)):
            li, lj = levels[i], levels[j]
            row_i, row_j = member_levels[i], member_levels[j]
            for m in range(len(member_coords)):
                if row_i[m] == li and row_j[m] == lj:
                    count += 1
    return count


def coset_containment_brute(f: FieldSpec, pset: PointSet, sub_rows, n: int) -> bool:
    """Does some coset of the given subspace lie entirely in pset?

    Builds every coset explicitly from the span and translates it through
    all points; no bucket counting involved.
    """
    q = f.q
    k = len(sub_rows)
    span = set()
    for coeffs in itertools.product(range(q), repeat=k):
        v = [0] * n
        for c, row in zip(coeffs, sub_rows):
            for pos in range(n):
                v[pos] = field_add(f, v[pos], field_mul(f, c, row[pos]))
        span.add(tuple(v))
    member = set(pset.indices())
    seen_cosets = set()
    for start in range(q**n):
        base = point_coords(start, q, n)
        coset = frozenset(
            sum(
                field_add(f, a, b) * q**pos
                for pos, (a, b) in enumerate(zip(base, s))
            )
            for s in span
        )
        if coset in seen_cosets:
            continue
        seen_cosets.add(coset)
        if coset <= member:
            return True
    return False


def check_field_axioms(f: FieldSpec, triple_sample: int = 2000, seed: int = 0) -> None:
    """Exhaustive field-axiom check; raises AssertionError on any failure.

    Pairs are checked exhaustively.  Triples (associativity, distributivity)
    are exhaustive for q <= 32 and sampled with a seeded generator above.
    """
    q = f.q
    elems = range(q)
    zero, one = 0, 1

    for a in elems:
        assert field_add(f, a, zero) == a
        assert field_mul(f, a, one) == a
        assert field_mul(f, a, zero) == zero
        assert field_add(f, a, field_neg(f, a)) == zero
        if a != zero:
            assert field_mul(f, a, field_inv(f, a)) == one

    for a in elems:
        for b in elems:
            assert field_add(f, a, b) == field_add(f, b, a)
            assert field_mul(f, a, b) == field_mul(f, b, a)

    if q <= 32:
        triples = itertools.product(elems, repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(q), rng.randrange(q), rng.randrange(q))
            for _ in range(triple_sample)
        )
    for a, b, c in triples:
        assert field_add(f, field_add(f, a, b), c) == field_add(f, a, field_add(f, b, c))
        assert field_mul(f, field_mul(f, a, b), c) == field_mul(f, a, field_mul(f, b, c))
        assert field_mul(f, a, field_add(f, b, c)) == field_add(
            f, field_mul(f, a, b), field_mul(f, a, c)
        )


def check_multiplicative_order(f: FieldSpec) -> None:
    """a^(q-1) = 1 for every nonzero a; raises AssertionError otherwise."""
    q = f.q
    for a in range(1, q):
        acc = 1
        for _ in range(q - 1):
            acc = field_mul(f, acc, a)
        assert acc == 1, f"element {a} has order not dividing {q - 1}"
