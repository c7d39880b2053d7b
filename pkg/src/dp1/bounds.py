"""Existence thresholds for Frobenius classes via degree-2 bad-locus bounds.

A degree-1 del Pezzo surface with a rational exceptional curve is the
blow-up of a degree-2 surface at a rational point lying off that
surface's *bad locus* -- the union of its exceptional curves and the
ramification curve of its anticanonical double cover.  Bounding the
rational points of the bad locus therefore turns a point count into an
existence certificate: once the surface has more rational points than
the bound, a usable blow-up point exists.

The bound depends only on the degree-2 class: the number n of rational
exceptional curves contributes n(q+1); orbits of size 2, 3 or 4 can meet
the rational points in at most one point each (m orbits); larger orbits
contribute nothing; and the ramification curve -- a smooth quartic for
odd q, twice a conic in characteristic 2 -- adds q + 1 + 6*sqrt(q) or
2(q+1).  Comparisons against the point count q^2 + trace*q + 1 are done
in exact integer arithmetic (the square-root term is squared away), so
thresholds sitting directly on the boundary are decided correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .excomb import TableSet, load_tables
from .gfield import prime_power

_SEARCH_CAP = 1 << 20


@dataclass(frozen=True)
class Deg2Profile:
    """Bad-locus data of one degree-2 class.

    ``n`` counts rational exceptional curves (orbits of size 1), ``m``
    the orbits of sizes 2, 3 and 4; ``trace`` is the Frobenius trace on
    the full Picard lattice, so the surface has q^2 + trace*q + 1
    rational points; ``exists_from`` is the least q where the class is
    realized at degree 2 at all.
    """

    e7_type: int
    n: int
    m: int
    trace: int
    exists_from: int


def deg2_profile(e7_type: int, tables: TableSet | None = None) -> Deg2Profile:
    tables = tables if tables is not None else load_tables()
    if e7_type not in tables.e7:
        raise ValueError("unknown degree-2 class index")
    rec = tables.e7[e7_type]
    sizes = dict(rec.orbit_type)
    n = sizes.get(1, 0)
    m = sum(mult for size, mult in rec.orbit_type if size in (2, 3, 4))
    return Deg2Profile(e7_type, n, m, rec.trace,
                       tables.deg2_thresholds[e7_type])


def bad_locus_bound(profile: Deg2Profile, q: int) -> float:
    """Upper bound for the rational points of the bad locus over F_q."""
    if q < 2:
        raise ValueError("field out of range")
    base = profile.n * (q + 1) + profile.m
    if q % 2 == 0:
        return float(base + 2 * (q + 1))
    return base + q + 1 + 6 * math.sqrt(q)


def point_off_bad_locus(profile: Deg2Profile, q: int) -> bool:
    """Whether q^2 + trace*q + 1 strictly exceeds the bad-locus bound.

    Exact: for odd q the comparison N > base + (q+1) + 6*sqrt(q) is
    evaluated as D > 0 and D^2 > 36 q with D = N - base - (q+1), so no
    floating-point rounding can flip a boundary case.  Ties count as
    inconclusive -- the bound may collapse overlapping points, so N = B
    does not certify a point off the locus.
    """
    count = q * q + profile.trace * q + 1
    base = profile.n * (q + 1) + profile.m
    if q % 2 == 0:
        return count > base + 2 * (q + 1)
    d = count - base - (q + 1)
    return d > 0 and d * d > 36 * q


def _is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


def profile_threshold(profile: Deg2Profile) -> tuple[int, int]:
    """Least (odd, even) prime powers clearing the bound and existing.

    Both conditions are upward closed: the deg-2 existence statements
    are of the form q >= c, and once the point count exceeds the bound
    it stays ahead (the difference has positive derivative wherever it
    vanishes).  The least admissible q is therefore a genuine threshold.
    """
    q_odd = None
    q = 3
    while q_odd is None:
        if q > _SEARCH_CAP:
            raise RuntimeError("threshold search ran away")
        if _is_prime_power(q) and q >= profile.exists_from \
                and point_off_bad_locus(profile, q):
            q_odd = q
        q += 2
    q_even = None
    q = 2
    while q_even is None:
        if q > _SEARCH_CAP:
            raise RuntimeError("threshold search ran away")
        if q >= profile.exists_from and point_off_bad_locus(profile, q):
            q_even = q
        q *= 2
    return q_odd, q_even


def parent_profiles(deg1_type: int,
                    tables: TableSet | None = None) -> tuple[Deg2Profile, ...]:
    """The degree-2 classes blowing up to the given degree-1 class."""
    tables = tables if tables is not None else load_tables()
    if deg1_type not in tables.parents:
        raise ValueError("no rational-curve lower bound for this type")
    return tuple(deg2_profile(i, tables) for i in tables.parents[deg1_type])


def existence_threshold(deg1_type: int,
                        tables: TableSet | None = None) -> tuple[int, int]:
    """Least (odd, even) prime powers guaranteeing the degree-1 class.

    When several degree-2 classes blow up to the same degree-1 class,
    any one of them suffices, so the thresholds combine by componentwise
    minimum.
    """
    pairs = [profile_threshold(p) for p in parent_profiles(deg1_type, tables)]
    return (min(a for a, _ in pairs), min(b for _, b in pairs))


def lower_bounds_table(tables: TableSet | None = None) -> dict[int, tuple[int, int]]:
    """Recompute every stored (odd, even) threshold pair, verifying them.

    Raises with the list of differing rows if the recomputation ever
    disagrees with the shipped table; returns the recomputed mapping.
    """
    tables = tables if tables is not None else load_tables()
    out = {}
    bad = []
    for idx in sorted(tables.lower_bounds):
        got = existence_threshold(idx, tables)
        out[idx] = got
        want = tables.lower_bounds[idx]
        if got != want:
            bad.append(f"type {idx}: recomputed {got}, stored {want}")
    if bad:
        raise ValueError("lower-bound table mismatch: " + "; ".join(bad))
    return out
