"""Point configurations in P^2 over finite fields.

General-position testing via the determinant/kernel criteria, exhaustive
orbit-constrained configuration search, and the normal-basis witness
construction for the two-quartic-orbit case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from .gfield import Fq, FieldDesc, OrbitSpec, embed, make_field, normal_basis, prime_power, field_name
from .matfq import MatFq, det, kernel_dim


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class ProjPoint:
    """Point of P^2 over a fixed field, normalized so the first nonzero
    coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldDesc, coords):
        codes = []
        for c in coords:
            if isinstance(c, Fq):
                if c.desc is not field:
                    raise ValueError("coordinate from a different field")
                codes.append(c.code)
            else:
                codes.append(int(c) % field.p)
        if len(codes) != 3:
            raise ValueError("three coordinates required")
        pivot = next((c for c in codes if c), None)
        if pivot is None:
            raise ValueError("not a projective point")
        inv = field.inv(pivot)
        self.field = field
        self.coords = tuple(field.mul(inv, c) for c in codes)

    def frobenius(self, t: int = 1, base_degree: int = 1) -> "ProjPoint":
        F = self.field
        if F.k % base_degree:
            raise ValueError("incoherent tower")
        j = (t * base_degree) % F.k if F.k > 1 else 0
        return ProjPoint(F, [Fq(F, F.frob_p(c, j)) for c in self.coords])

    def degree(self, base_degree: int = 1) -> int:
        """Size of the Frobenius orbit over F_{p^base_degree}."""
        F = self.field
        if F.k % base_degree:
            raise ValueError("incoherent tower")
        rel = F.k // base_degree
        for d in _divisors(rel):
            shift = (d * base_degree) % F.k if F.k > 1 else 0
            if all(F.frob_p(c, shift) == c for c in self.coords):
                return d
        return rel

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProjPoint)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.coords))

    def __repr__(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Violation:
    criterion: str  # "collinear" | "conic" | "singular-cubic"
    indices: tuple[int, ...]


# ---------------------------------------------------------------------------
# determinant / kernel criteria


def _line_row(F: FieldDesc, t):
    return list(t)


def _conic_row(F: FieldDesc, t):
    x, y, z = t
    m = F.mul
    return [m(x, x), m(y, y), m(z, z), m(x, y), m(x, z), m(y, z)]


def _cubic_row(F: FieldDesc, t):
    x, y, z = t
    m = F.mul
    x2, y2, z2 = m(x, x), m(y, y), m(z, z)
    return [
        m(x2, x), m(y2, y), m(z2, z),
        m(x2, y), m(x2, z), m(x, y2),
        m(y2, z), m(x, z2), m(y, z2),
        m(m(x, y), z),
    ]


def _singular_rows(F: FieldDesc, t):
    # gradient rows of the general cubic at the point, with the integer
    # coefficients 3 and 2 reduced mod p
    x, y, z = t
    m = F.mul
    two, three = 2 % F.p, 3 % F.p
    x2, y2, z2 = m(x, x), m(y, y), m(z, z)
    xy, xz, yz = m(x, y), m(x, z), m(y, z)
    return [
        [m(three, x2), 0, 0, m(two, xy), m(two, xz), y2, 0, z2, 0, yz],
        [0, m(three, y2), 0, x2, 0, m(two, xy), m(two, yz), 0, z2, xz],
        [0, 0, m(three, z2), 0, x2, 0, y2, m(two, xz), m(two, yz), xy],
    ]


def _det_codes(F: FieldDesc, n: int, rows) -> int:
    entries = [Fq(F, c) for row in rows for c in row]
    return det(MatFq(F, n, n, entries)).code


def _cubic_kernel_trivial(F: FieldDesc, triples, i: int) -> bool:
    rows = [_cubic_row(F, t) for t in triples]
    rows.extend(_singular_rows(F, triples[i]))
    entries = [Fq(F, c) for row in rows for c in row]
    return kernel_dim(MatFq(F, 11, 10, entries)) == 0


def check_general_position(points: list[ProjPoint]):
    """None if the points are in general position, else the first Violation.

    All three criteria run over the common field of the input points:
    no collinear triple, no six on a conic, and (for eight points) no
    cubic singular at one of them through all eight.
    """
    if not 1 <= len(points) <= 8:
        raise ValueError("at most eight points")
    if len({p.coords for p in points}) != len(points):
        raise ValueError("points must be distinct")
    F = points[0].field
    if any(p.field is not F for p in points):
        raise ValueError("points must share a field")
    triples = [p.coords for p in points]
    for sub in itertools.combinations(range(len(points)), 3):
        if _det_codes(F, 3, [_line_row(F, triples[i]) for i in sub]) == 0:
            return Violation("collinear", sub)
    if len(points) >= 6:
        for sub in itertools.combinations(range(len(points)), 6):
            if _det_codes(F, 6, [_conic_row(F, triples[i]) for i in sub]) == 0:
                return Violation("conic", sub)
    if len(points) == 8:
        for i in range(8):
            if not _cubic_kernel_trivial(F, triples, i):
                return Violation("singular-cubic", (i,))
    return None


# ---------------------------------------------------------------------------
# configurations


class Configuration:
    """Galois-stable point set grouped into Frobenius orbits.

    orbits is a list of (degree j, [j conjugate ProjPoints over F_{q^j}]),
    ordered as found; the whole set must be in general position to be a
    valid blow-up locus, but validity here only covers orbit structure.
    """

    __slots__ = ("base_q", "orbits", "orbit_spec")

    def __init__(self, base_q: FieldDesc, orbits, orbit_spec: OrbitSpec):
        seen_lengths = [0] * len(orbit_spec.counts)
        for j, block in orbits:
            if len(block) != j:
                raise ValueError("orbit length mismatch")
            ext = block[0].field
            if ext.p != base_q.p or ext.k != base_q.k * j:
                raise ValueError("orbit over the wrong extension")
            for t in range(j):
                if block[(t + 1) % j] != block[t].frobenius(1, base_q.k):
                    raise ValueError("orbit not closed under Frobenius")
            if block[0].degree(base_q.k) != j:
                raise ValueError("orbit length mismatch")
            if j > len(seen_lengths):
                raise ValueError("orbit length not in specification")
            seen_lengths[j - 1] += 1
        if tuple(seen_lengths) != tuple(orbit_spec.counts):
            raise ValueError("orbit lengths do not match specification")
        self.base_q = base_q
        self.orbits = [(j, list(block)) for j, block in orbits]
        self.orbit_spec = orbit_spec

    def points_in_common_field(self) -> list[ProjPoint]:
        degs = [j for j, _ in self.orbits] or [1]
        L = 1
        for j in degs:
            L = lcm(L, j)
        common = make_field(self.base_q.p, self.base_q.k * L)
        out = []
        for j, block in self.orbits:
            ext = block[0].field
            for pt in block:
                out.append(
                    ProjPoint(common, [embed(Fq(ext, c), common) for c in pt.coords])
                )
        return out

    def to_dict(self) -> dict:
        return {
            "q": field_name(self.base_q),
            "orbits": [
                [j, [list(pt.coords) for pt in block]] for j, block in self.orbits
            ],
        }

    def __repr__(self) -> str:
        body = "; ".join(f"deg {j}: {block}" for j, block in self.orbits)
        return f"Configuration({field_name(self.base_q)}: {body})"


# ---------------------------------------------------------------------------
# the exhaustive orbit-constrained search


def _element_degree_code(ext: FieldDesc, base_k: int, code: int, j: int) -> int:
    for d in _divisors(j):
        shift = (d * base_k) % ext.k if ext.k > 1 else 0
        if ext.frob_p(code, shift) == code:
            return d
    return j


def _orbit_candidates(base: FieldDesc, j: int, restricted: bool, allow_inf: bool,
                      start_key=None):
    """Orbit representatives of exact degree j, ascending.

    Yields (key, block). Affine chart first ([x:y:1], coordinate codes
    ascending), then the z=0 line when allowed. Only the lexicographically
    least conjugate pair of each orbit is emitted.
    """
    ext = make_field(base.p, base.k * j)
    shift = base.k % ext.k if ext.k > 1 else 0
    lo = 1 if restricted else 0
    deg_cache: dict[int, int] = {}

    def deg_of(c):
        d = deg_cache.get(c)
        if d is None:
            d = deg_cache.setdefault(c, _element_degree_code(ext, base.k, c, j))
        return d

    for xc in range(lo, ext.order):
        dx = deg_of(xc)
        if j % dx:
            continue
        for yc in range(lo, ext.order):
            key = (0, xc, yc)
            if start_key is not None and key <= start_key:
                continue
            if lcm(dx, deg_of(yc)) != j:
                continue
            # canonical representative: least conjugate pair
            cx, cy, minimal = xc, yc, True
            for _ in range(j - 1):
                cx, cy = ext.frob_p(cx, shift), ext.frob_p(cy, shift)
                if (cx, cy) < (xc, yc):
                    minimal = False
                    break
            if not minimal:
                continue
            block, px, py = [], xc, yc
            for _ in range(j):
                block.append(ProjPoint(ext, [Fq(ext, px), Fq(ext, py), Fq(ext, 1)]))
                px, py = ext.frob_p(px, shift), ext.frob_p(py, shift)
            yield key, block
    if allow_inf:
        for tc in range(ext.order):
            key = (1, tc, 0)
            if start_key is not None and key <= start_key:
                continue
            if deg_of(tc) != j:
                continue
            c, minimal = tc, True
            for _ in range(j - 1):
                c = ext.frob_p(c, shift)
                if c < tc:
                    minimal = False
                    break
            if not minimal:
                continue
            block, pt = [], tc
            for _ in range(j):
                block.append(ProjPoint(ext, [Fq(ext, 1), Fq(ext, pt), Fq(ext, 0)]))
                pt = ext.frob_p(pt, shift)
            yield key, block


def _extension_ok(existing, new_triples, F: FieldDesc) -> bool:
    """Incremental general-position test: new points against the running set."""
    for t in new_triples:
        if t in existing:
            return False
    if len(set(new_triples)) != len(new_triples):
        return False
    allt = existing + new_triples
    n0, n = len(existing), len(allt)
    for sub in itertools.combinations(range(n), 3):
        if sub[2] < n0:
            continue
        if _det_codes(F, 3, [allt[i] for i in sub]) == 0:
            return False
    if n >= 6:
        for sub in itertools.combinations(range(n), 6):
            if sub[5] < n0:
                continue
            if _det_codes(F, 6, [_conic_row(F, allt[i]) for i in sub]) == 0:
                return False
    if n == 8:
        for i in range(8):
            if not _cubic_kernel_trivial(F, allt, i):
                return False
    return True


def search_configuration(q: int, spec) -> Configuration | None:
    """Lexicographically first Galois-stable general-position configuration
    with the requested orbit-length multiset, or None after exhaustion.

    With at least three rational points requested, the first points are
    normalized to the coordinate frame and all remaining coordinates range
    over the unit groups (any vanishing coordinate would align the point
    with two frame points). With fewer, the safe superset is searched:
    the full affine chart in each degree, plus the z=0 line in the one
    case a conjugate pair may sit there.
    """
    if not isinstance(spec, OrbitSpec):
        counts = tuple(int(c) for c in spec)
        if sum((i + 1) * c for i, c in enumerate(counts)) > 8:
            raise ValueError("more than 8 geometric points")
        spec = OrbitSpec(counts=counts)
    base = make_field(*prime_power(q))
    counts = spec.counts
    n1 = counts[0] if counts else 0
    degs = [j for j, c in enumerate(counts, 1) if c]
    L = 1
    for j in degs:
        L = lcm(L, j)
    common = make_field(base.p, base.k * L)

    frame = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    if n1 >= 4:
        fixed, free_rational, restricted = frame, n1 - 4, True
    elif n1 == 3:
        fixed, free_rational, restricted = frame[:3], 0, True
    else:
        fixed, free_rational, restricted = frame[:n1], 0, False

    fixed_triples = [tuple(c for c in t) for t in fixed]  # codes 0/1 embed as-is
    slots = []
    if free_rational:
        slots.extend([1] * free_rational)
    for j in range(2, len(counts) + 1):
        slots.extend([j] * counts[j - 1])

    def lift(block):
        ext = block[0].field
        return [
            tuple(embed(Fq(ext, c), common).code for c in pt.coords) for pt in block
        ]

    found: list[Configuration] = []

    def rec(si, prev_key, existing, blocks):
        if si == len(slots):
            orbits = [(1, [ProjPoint(base, t)]) for t in fixed] + blocks
            found.append(Configuration(base, orbits, spec))
            return True
        j = slots[si]
        same = prev_key if si and slots[si - 1] == j else None
        allow_inf = not restricted and n1 == 0 and j == 2
        for key, block in _orbit_candidates(base, j, restricted, allow_inf, same):
            if restricted and j == 1 and block[0].coords == (1, 1, 1):
                continue
            new_triples = lift(block)
            if not _extension_ok(existing, new_triples, common):
                continue
            if rec(si + 1, key, existing + new_triples, blocks + [(j, block)]):
                return True
        return False

    if rec(0, None, list(fixed_triples), []):
        return found[0]
    return None


# ---------------------------------------------------------------------------
# the two-quartic-orbit witness


def type35_witness(q: int):
    """(x, Configuration) for the two-degree-4-point configuration.

    For q >= 59 the eight points [1:a_i:a_i^3], [1:a_i+x:a_i^3] over a
    normal basis a_i of F_{q^4}/F_q are in general position for some
    rational x != 0 (the failing determinants have total x-degree 55);
    the least such x is returned. Smaller q falls back to the exhaustive
    search, returning (None, configuration).
    """
    base = make_field(*prime_power(q))
    if q < 59:
        counts = (0, 0, 0, 2)
        return None, search_configuration(q, OrbitSpec(counts=counts))
    nb = normal_basis(base, 4)
    ext = nb[0].desc
    cubes = [a * a * a for a in nb]
    one = Fq(ext, 1)
    p_block = [ProjPoint(ext, [one, nb[i], cubes[i]]) for i in range(4)]
    for xc in range(1, base.order):
        x = embed(Fq(base, xc), ext)
        q_block = [ProjPoint(ext, [one, nb[i] + x, cubes[i]]) for i in range(4)]
        if check_general_position(p_block + q_block) is None:
            spec = OrbitSpec(counts=(0, 0, 0, 2))
            cfg = Configuration(base, [(4, p_block), (4, q_block)], spec)
            return Fq(base, xc), cfg
    raise AssertionError("witness guaranteed for q >= 59")
