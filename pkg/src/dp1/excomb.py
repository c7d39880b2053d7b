"""Conjugacy-class tables and exceptional-class combinatorics.

This module owns the embedded W(E7)/W(E8) class data (Carter symbol, orbit
type on the exceptional classes, eigenvalues of the lattice action, twist
partner, trace) together with the H^1 comparison rows, the degree-2
existence thresholds and parent map, the lower-bounds table, and the
open-case lists.  ``load_tables`` revalidates every structural invariant on
each call; everything downstream (type identification from point counts,
blow-up combinatorics, twists) works from the validated records.

Eigenvalues are stored as reduced pairs (N, k) meaning e^(2*pi*i*k/N).
Their power sums are evaluated exactly by reducing exponent polynomials
modulo the M-th cyclotomic polynomial (M the lcm of the orders); a nonzero
coefficient above degree zero means corrupt data, never rounding error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence

from . import _data
from .gfield import prime_power

__all__ = [
    "ClassRecord",
    "H1Record",
    "OpenCase",
    "OrbitTrace",
    "TableSet",
    "blowup_orbit_structure",
    "blowup_symbol",
    "fixed_curve_counts",
    "identify_type",
    "load_tables",
    "symbol_factors",
    "trace_sequence",
    "twist",
]

MAX_DEPTH = 60


# ---------------------------------------------------------------------------
# record types

@dataclass(frozen=True)
class ClassRecord:
    """One conjugacy class acting on the exceptional classes."""

    group: str                                # "E7" or "E8"
    index: int
    carter: str                               # product symbol, primes kept
    orbit_type: tuple[tuple[int, int], ...]   # (orbit size, multiplicity)
    eigenvalues: tuple[tuple[int, int], ...]  # (order, exponent), reduced
    twist: int                                # partner index
    trace: int

    @property
    def order(self) -> int:
        return lcm(*(n for n, _ in self.eigenvalues))


@dataclass(frozen=True)
class H1Record:
    deg1_symbol: str
    deg2_symbol: Optional[str]
    value: str  # "0" or "(Z/2)^2"


@dataclass(frozen=True)
class OpenCase:
    type: int
    type_resolved: bool
    twist: int
    twist_resolved: bool


@dataclass(frozen=True)
class OrbitTrace:
    """Point counts a_n over extensions plus known curve-orbit counts b_n.

    The two lists may have different lengths; a trailing unknown region is
    simply absent.  a_n counts points over the degree-n extension, b_n the
    Galois orbits of (-1)-curves of size exactly n.
    """

    q: int
    a: tuple[int, ...]
    b: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        prime_power(self.q)
        if not self.a:
            raise ValueError("orbit-trace data needs at least one point count")
        if any(an < 1 for an in self.a):
            raise ValueError("point counts must be positive")
        if any(bn < 0 for bn in self.b):
            raise ValueError("orbit counts must be nonnegative")
        if sum(n * bn for n, bn in enumerate(self.b, start=1)) > 240:
            raise ValueError("orbit counts exceed 240 curves")


@dataclass(frozen=True, eq=False)
class TableSet:
    e7: Mapping[int, ClassRecord]
    e8: Mapping[int, ClassRecord]
    h1: tuple[H1Record, ...]
    deg2_thresholds: Mapping[int, int]        # E7 index -> least q realized
    parents: Mapping[int, tuple[int, ...]]    # E8 index -> E7 indices
    lower_bounds: Mapping[int, tuple[int, int]]
    open_non_minimal: tuple[OpenCase, ...]
    open_minimal: tuple[OpenCase, ...]


# ---------------------------------------------------------------------------
# exact root-of-unity arithmetic

@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_exact(poly, _cyclotomic(d))
    return tuple(poly)


def _poly_div_exact(num: Sequence[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ValueError("eigenvalue data inconsistent")
    return out


def _root_power_sum(eigenvalues: Iterable[tuple[int, int]], n: int) -> int:
    """Exact integer value of sum(zeta_N^(k*n)) over the given pairs."""
    eigenvalues = tuple(eigenvalues)
    m = lcm(*(order for order, _ in eigenvalues))
    coeffs = [0] * m
    for order, k in eigenvalues:
        coeffs[(k * n * (m // order)) % m] += 1
    phi = _cyclotomic(m)
    deg = len(phi) - 1
    for i in range(m - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = 0
            for j in range(deg):
                coeffs[i - deg + j] -= c * phi[j]
    if any(coeffs[1:deg]):
        raise ValueError("eigenvalue data inconsistent")
    return coeffs[0]


def trace_sequence(record: ClassRecord, n_max: int) -> list[int]:
    """Exact traces t_1..t_{n_max} of the powers of the class on the lattice.

    t_n = 1 + sum of n-th powers of the eigenvalues; periodic with period
    ``record.order``.
    """
    if not 1 <= n_max <= MAX_DEPTH:
        raise ValueError("depth out of range")
    return [1 + _root_power_sum(record.eigenvalues, n)
            for n in range(1, n_max + 1)]


def fixed_curve_counts(record: ClassRecord, n_max: int) -> list[int]:
    """F_1..F_{n_max}: curve classes fixed by the n-th power of the class."""
    if not 1 <= n_max <= MAX_DEPTH:
        raise ValueError("depth out of range")
    return [sum(size * mult for size, mult in record.orbit_type
                if n % size == 0)
            for n in range(1, n_max + 1)]


# ---------------------------------------------------------------------------
# Carter product symbols

_FACTOR_RE = re.compile(r"([ADE])(\d+)(?:\(a(\d+)\))?$")


def _factor_key(factor: str):
    m = _FACTOR_RE.match(factor)
    if not m:
        raise ValueError(f"bad Carter factor {factor!r}")
    letter, sub, variant = m.groups()
    return ("EDA".index(letter), -int(sub), int(variant or 0))


def symbol_factors(symbol: str) -> tuple[str, ...]:
    """Expand a product symbol into sorted factors, prime marks stripped.

    ``"(A3xA1^2)'"`` -> ``("A3", "A1", "A1")``; the empty symbol is ``()``.
    """
    s = symbol
    if s.endswith("'"):
        s = s.rstrip("'")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
    if not s:
        return ()
    out: list[str] = []
    for part in s.split("x"):
        head, sep, count = part.rpartition("^")
        if sep:
            out.extend([head] * int(count))
        else:
            out.append(part)
    out.sort(key=_factor_key)
    return tuple(out)


def blowup_symbol(base_symbol: str, point_degree: int) -> str:
    """Symbol after blowing up a closed point of the given degree.

    Appends A_{n-1} to the product (nothing for a rational point since A_0
    is empty).  The result is rendered as a plain x-joined product and may
    be ambiguous between primed variants; orbit data decides those.
    """
    if point_degree < 1:
        raise ValueError("point degree must be positive")
    factors = list(symbol_factors(base_symbol))
    if point_degree >= 2:
        factors.append(f"A{point_degree - 1}")
    factors.sort(key=_factor_key)
    return "x".join(factors)


# ---------------------------------------------------------------------------
# table loading and validation

def _corrupt(group, index):
    return ValueError(f"table corrupt at ({group}, {index})")


def _check_record(rec: ClassRecord, rank: int, class_total: int):
    bad = _corrupt(rec.group, rec.index)
    if len(rec.eigenvalues) != rank:
        raise bad
    for order, k in rec.eigenvalues:
        if order < 1 or not 0 <= k < order:
            raise bad
        if gcd(k, order) != 1 and (order, k) != (1, 0):
            raise bad
    if sum(s * m for s, m in rec.orbit_type) != class_total:
        raise bad
    if any(s < 1 or m < 1 for s, m in rec.orbit_type):
        raise bad
    for size, _ in rec.orbit_type:
        if not any(size % order == 0 for order, _ in rec.eigenvalues):
            raise bad
    try:
        if rec.trace != 1 + _root_power_sum(rec.eigenvalues, 1):
            raise bad
    except ValueError:
        raise bad from None


def _negated(eigenvalues):
    out = []
    for order, k in eigenvalues:
        if order % 2 == 0:
            num, den = k + order // 2, order
        else:
            num, den = 2 * k + order, 2 * order
        g = gcd(num % den, den) or den
        out.append((den // g, (num % den) // g))
    return sorted(out)


def _check_group(records: dict[int, ClassRecord], rank: int, total: int,
                 count: int, group: str):
    if sorted(records) != list(range(1, count + 1)):
        raise _corrupt(group, 0)
    for rec in records.values():
        _check_record(rec, rank, total)
        partner = records.get(rec.twist)
        if partner is None or partner.twist != rec.index:
            raise _corrupt(group, rec.index)
        if rec.trace + partner.trace != 2:
            raise _corrupt(group, rec.index)
        if _negated(rec.eigenvalues) != sorted(partner.eigenvalues):
            raise _corrupt(group, rec.index)


def _load_group(name: str, group: str, rank: int, total: int,
                count: int) -> dict[int, ClassRecord]:
    raw = _data.load_json(name)
    if raw.get("group") != group:
        raise _corrupt(group, 0)
    records = {}
    for row in raw["classes"]:
        rec = ClassRecord(
            group=group,
            index=row["index"],
            carter=row["carter"],
            orbit_type=tuple((int(s), int(m)) for s, m in row["orbits"]),
            eigenvalues=tuple((int(n), int(k)) for n, k in row["eigenvalues"]),
            twist=row["twist"],
            trace=row["trace"],
        )
        if rec.index in records:
            raise _corrupt(group, rec.index)
        records[rec.index] = rec
    _check_group(records, rank, total, count, group)
    return records


def load_tables() -> TableSet:
    """Load and fully revalidate the embedded tables."""
    e7 = _load_group("we7.json", "E7", 7, 56, 60)
    e8 = _load_group("we8.json", "E8", 8, 240, 112)

    h1_raw = _data.load_json("h1.json")["rows"]
    h1 = tuple(H1Record(r["deg1"], r["deg2"], r["value"]) for r in h1_raw)
    primed = sorted(r.carter for r in e8.values() if r.carter.endswith("'"))
    if sorted(r.deg1_symbol for r in h1) != primed or len(h1) != 10:
        raise _corrupt("H1", 0)
    for row in h1:
        expected = "0" if row.deg1_symbol.endswith("''") else "(Z/2)^2"
        if row.value != expected:
            raise _corrupt("H1", 0)

    deg2 = _data.load_json("deg2_existence.json")
    default = deg2["default_threshold"]
    thresholds = {idx: int(deg2["thresholds"].get(str(idx), default))
                  for idx in e7}
    parents = {}
    for key, vals in deg2["parents"].items():
        deg1 = int(key)
        parents[deg1] = tuple(int(v) for v in vals)
        if deg1 not in e8 or not parents[deg1]:
            raise _corrupt("deg2", deg1)
        for p in parents[deg1]:
            if p not in e7:
                raise _corrupt("deg2", deg1)
            if symbol_factors(e7[p].carter) != symbol_factors(e8[deg1].carter):
                raise _corrupt("deg2", deg1)
    lower = {}
    for key, (q0, q0p) in deg2["lower_bounds"].items():
        deg1 = int(key)
        if deg1 not in parents:
            raise _corrupt("deg2", deg1)
        lower[deg1] = (int(q0), int(q0p))

    oc = _data.load_json("open_cases.json")

    def cases(rows):
        out = []
        for r in rows:
            case = OpenCase(r["type"], r["type_resolved"],
                            r["twist"], r["twist_resolved"])
            if case.type not in e8 or e8[case.type].twist != case.twist:
                raise _corrupt("open", case.type)
            out.append(case)
        return tuple(out)

    return TableSet(
        e7=e7, e8=e8, h1=h1,
        deg2_thresholds=thresholds,
        parents=parents,
        lower_bounds=lower,
        open_non_minimal=cases(oc["non_minimal"]),
        open_minimal=cases(oc["minimal"]),
    )


def twist(group: str, index: int, tables: Optional[TableSet] = None) -> int:
    """Table partner under eigenvalue negation (Geiser for E7, Bertini E8)."""
    tables = tables if tables is not None else load_tables()
    records = {"E7": tables.e7, "E8": tables.e8}[group]
    return records[index].twist


# ---------------------------------------------------------------------------
# blow-up combinatorics on the 240 exceptional classes

def _exceptional_classes():
    """The 240 classes as combinatorial tags over the symbols 1..8.

    Tags: base divisors; lines through two points; conics through five;
    cubics with a double point through six more; quartics double at three;
    quintics double at six; sextics triple at one and double at the rest.
    """
    syms = range(1, 9)
    classes = [("div", i) for i in syms]
    classes += [("line", frozenset(p)) for p in combinations(syms, 2)]
    classes += [("conic", frozenset(p)) for p in combinations(syms, 5)]
    classes += [("cubic", i, frozenset(s))
                for i in syms
                for s in combinations([j for j in syms if j != i], 6)]
    classes += [("quartic", frozenset(p)) for p in combinations(syms, 3)]
    classes += [("quintic", frozenset(p)) for p in combinations(syms, 6)]
    classes += [("sextic", i) for i in syms]
    assert len(classes) == 240
    return classes


def blowup_orbit_structure(perm: Sequence[int]):
    """Orbit type and trace sequence of the permutation action.

    ``perm`` lists the images of 1..8 (so ``perm[i-1]`` is where symbol i
    goes).  Returns ``(orbit_type, traces)`` where ``orbit_type`` is a
    sorted tuple of (size, multiplicity) pairs over the 240 exceptional
    classes, and ``traces[k-1] = 1 + #fixed(perm^k)`` for k up to the
    permutation order.
    """
    if sorted(perm) != list(range(1, 9)):
        raise ValueError("not a permutation of 1..8")
    sigma = {i: perm[i - 1] for i in range(1, 9)}

    def act(c):
        tag = c[0]
        if tag in ("div", "sextic"):
            return (tag, sigma[c[1]])
        if tag == "cubic":
            return (tag, sigma[c[1]], frozenset(sigma[j] for j in c[2]))
        return (tag, frozenset(sigma[j] for j in c[1]))

    sizes: dict[int, int] = {}
    seen = set()
    for start in _exceptional_classes():
        if start in seen:
            continue
        size, x = 0, start
        while not (size and x == start):
            seen.add(x)
            size += 1
            x = act(x)
        sizes[size] = sizes.get(size, 0) + 1

    cycle_lengths = []
    left = set(range(1, 9))
    while left:
        i = left.pop()
        n, j = 1, sigma[i]
        while j != i:
            left.remove(j)
            n, j = n + 1, sigma[j]
        cycle_lengths.append(n)
    order = lcm(*cycle_lengths)
    powers = {i: i for i in range(1, 9)}
    traces = []
    for _ in range(order):
        powers = {i: sigma[powers[i]] for i in powers}
        traces.append(1 + sum(1 for i in powers if powers[i] == i))
    return tuple(sorted(sizes.items())), tuple(traces)


# ---------------------------------------------------------------------------
# type identification

def identify_type(ot: OrbitTrace,
                  tables: Optional[TableSet] = None) -> tuple[frozenset, bool]:
    """All E8 classes consistent with the given counts, plus a resolved flag.

    A class survives when every provided a_n equals q^2n + t_n q^n + 1 and
    every prefix of provided orbit counts matches the fixed-class counts
    via the divisor sum.  An empty result means the inputs do not come from
    a class in the table at this q, which signals an upstream bug.
    """
    tables = tables if tables is not None else load_tables()
    q = ot.q
    candidates = set()
    for rec in tables.e8.values():
        traces = trace_sequence(rec, len(ot.a))
        if any(ot.a[n - 1] != q ** (2 * n) + traces[n - 1] * q ** n + 1
               for n in range(1, len(ot.a) + 1)):
            continue
        fixed = fixed_curve_counts(rec, len(ot.b)) if ot.b else []
        if any(sum(d * ot.b[d - 1] for d in range(1, n + 1) if n % d == 0)
               != fixed[n - 1]
               for n in range(1, len(ot.b) + 1)):
            continue
        candidates.add(rec.index)
    if not candidates:
        raise ValueError("no matching class")
    return frozenset(candidates), len(candidates) == 1
