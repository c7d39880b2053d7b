"""Exhaustive classification runs over coefficient families.

Over the four smallest coefficient fields a short list of families of
weighted sextics meets every isomorphism class of smooth surface, so a
single deterministic walk over those families settles which conjugacy
classes of Frobenius actions occur over the field.  Each family pins a
handful of coefficients to fixed forms and lets the rest range freely;
a member is addressed by the mixed-radix index of its free coefficients,
most significant slot first, which makes the walk order the plain
lexicographic order on the full 21-code vector.

The classification policy is depth-on-demand: every smooth member gets
the cheap level-one data (points over the base field, curves over the
base field); deeper counts are computed only while the member's
candidate class set still meets the set of classes not yet exhibited.
A walk extends the cheaper side first and stops as soon as the member
is pinned to a single class, stops mattering, or hits the enumeration
caps.  Long runs checkpoint to JSON (atomic write-then-rename) and can
be partitioned over worker processes; reports merge by keeping the
first member in walk order that exhibits each class, so the final
report is byte-identical no matter how the work was split.

For fields outside the curated list a single free-coefficient family
(the characteristic-appropriate reduced form) supports random example
hunting; exhausting it is not realistic and not attempted.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass
from itertools import product
from multiprocessing import get_context

from . import excomb
from .gfield import FieldDesc, field_name, make_field, prime_power
from .sextic import (Sextic, _orbits_from_counts, count_points, eckardt_points,
                     exceptional_curves, is_smooth, parse_sextic, sextic_text)

__all__ = [
    "CHECKPOINT_VERSION",
    "Family",
    "SweepReport",
    "enumerate_family",
    "families",
    "family",
    "family_total",
    "hunt",
    "load_report",
    "member_at",
    "random_member",
    "run_sweep",
    "verify_fixture",
]

CHECKPOINT_VERSION = 1

# Slot layout of the 21 coefficient codes: the five binary forms in
# degree order 1,2,3,4,6, each with x-descending monomials.
_F1 = (0, 1)                        # x, y
_F2 = (2, 3, 4)                     # x2, xy, y2
_F3 = (5, 6, 7, 8)                  # x3, x2y, xy2, y3
_F4 = (9, 10, 11, 12, 13)           # x4, x3y, x2y2, xy3, y4
_F6 = (14, 15, 16, 17, 18, 19, 20)  # x6 .. y6

# Walk caps: point counts extend while the extension field still fits a
# code table, curve counts while the search space of quadratic-form
# triples stays enumerable.
_A_FIELD_CAP = 1 << 20
_B_TRIPLE_CAP = 1 << 21
_A_MAX = 12
_B_MAX = 7


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Family:
    """One coefficient family: pinned forms plus freely ranging slots.

    ``template`` holds all 21 codes with the free slots zeroed;
    ``free_slots`` lists (ascending) which of the 21 positions range over
    the whole field.  ``supplemental`` marks the one family appended
    beyond the published normal forms (see ``families`` for q = 7).
    """

    field: FieldDesc
    id: int
    template: tuple[int, ...]
    free_slots: tuple[int, ...]
    supplemental: bool = False

    def __post_init__(self):
        if len(self.template) != 21:
            raise ValueError("template must have 21 codes")
        if any(not 0 <= c < self.field.order for c in self.template):
            raise ValueError("template code out of range")
        if list(self.free_slots) != sorted(set(self.free_slots)):
            raise ValueError("free slots must be ascending and distinct")

    @property
    def size(self) -> int:
        return self.field.order ** len(self.free_slots)


def _free_family(q: int, fid: int = 1) -> Family:
    """The reduced-form family with every remaining coefficient free."""
    p, k = prime_power(q)
    F = make_field(p, k)
    if p == 2:
        free = _F1 + _F3 + _F4 + _F6
    elif p == 3:
        free = _F2 + _F4 + _F6
    else:
        free = _F4 + _F6
    return Family(F, fid, (0,) * 21, free)


def _pinned(field, pins, free) -> Family:
    template = [0] * 21
    for slot, code in pins:
        template[slot] = code
    return Family(field, 0, tuple(template), tuple(free), False)


def _families_f3() -> tuple[Family, ...]:
    F = make_field(3, 1)
    quad = _F4[1:3]     # x3y, x2y2 free
    quad_low = _F4[3:]  # xy3, y4 free
    fams = [
        _pinned(F, [(2, 1), (4, 1)], quad + _F6),
        _pinned(F, [(2, 1), (4, 2)], quad + _F6),
        _pinned(F, [(2, 1)], quad_low + _F6),
        _pinned(F, [(2, 2)], quad_low + _F6),
        # last family: no z^2 term, quartic free, sextic missing the
        # x6, x3y3 and y6 monomials (absorbed by shifts in z)
        _pinned(F, [], _F4 + (15, 16, 18, 19)),
    ]
    return tuple(_renumber(fams))


def _families_f4() -> tuple[Family, ...]:
    F = make_field(2, 2)
    a = F.generator_code
    a2 = F.mul(a, a)
    cubics = []
    for c in (1, a, a2):
        cubics.append(([(5, c)], (14, 16, 17, 19)))                    # c*x3
    cubics.append(([(7, 1)], (15, 16, 19, 20)))                        # x*y2
    for c in (1, a, a2):
        cubics.append(([(5, c), (8, c)], (14, 18, 19, 20)))            # c*(x3+y3)
    for c in (1, a, a2):                                               # c*x*(x2+xy+a*y2)
        cubics.append(([(5, c), (6, c), (7, F.mul(c, a))], (14, 18, 19, 20)))
    for c in (1, a, a2):                                               # c*(x3+a*y3)
        cubics.append(([(5, c), (8, F.mul(c, a))], (14, 18, 19, 20)))
    fams = [
        # w-coefficient x: cubic and sextic free, quartic reduced to y4
        _pinned(F, [(0, 1)], _F3 + (13,) + _F6),
        # no w terms at all
        _pinned(F, [], _F4 + (15, 17, 19)),
    ]
    for pins, sextic_free in cubics:
        fams.append(_pinned(F, pins, _F4 + sextic_free))
    return tuple(_renumber(fams))


def _families_f7() -> tuple[Family, ...]:
    F = make_field(7, 1)
    fams = []
    for a, c, d, e in product((1, 3), (1, 3), (0, 1, 2, 3), range(7)):
        fams.append(_pinned(F, [(9, a), (11, c), (12, d), (13, e)], _F6))
    for a, d, e in product((1, 3), (0, 1, 2, 3), (0, 1, 3)):
        fams.append(_pinned(F, [(9, a), (12, d), (13, e)], _F6))
    fams = _renumber(fams)
    # The published quartic normal forms assume a nonzero quartic, and a
    # zero quartic cannot be reached from a nonzero one, so exhaustive
    # nonexistence claims need the zero-quartic stratum as well.  It is
    # appended as a supplemental family and excluded from family_total.
    fams.append(Family(F, len(fams) + 1, (0,) * 21, _F6, supplemental=True))
    return tuple(fams)


def _renumber(fams):
    return [Family(f.field, i, f.template, f.free_slots, f.supplemental)
            for i, f in enumerate(fams, start=1)]


def families(q: int) -> tuple[Family, ...]:
    """The curated family list for q in {2, 3, 4, 7}, else the free family."""
    if q == 2:
        return (_free_family(2),)
    if q == 3:
        return _families_f3()
    if q == 4:
        return _families_f4()
    if q == 7:
        return _families_f7()
    return (_free_family(q),)


def family(q: int, fid: int) -> Family:
    for fam in families(q):
        if fam.id == fid:
            return fam
    raise ValueError("no such family")


def family_total(q: int) -> int:
    """Member count over the published families (supplemental excluded)."""
    return sum(f.size for f in families(q) if not f.supplemental)


def member_at(fam: Family, index: int) -> Sextic:
    if not 0 <= index < fam.size:
        raise ValueError("member index out of range")
    N = fam.field.order
    codes = list(fam.template)
    rem = index
    for slot in reversed(fam.free_slots):
        codes[slot] = rem % N
        rem //= N
    return Sextic.from_codes(fam.field, codes)


def enumerate_family(fam: Family, start: int = 0):
    """Members in walk order (lexicographic on the code vector)."""
    if not 0 <= start <= fam.size:
        raise ValueError("member index out of range")
    N = fam.field.order
    field = fam.field
    slots = fam.free_slots
    codes = list(fam.template)
    rem = start
    for slot in reversed(slots):
        codes[slot] = rem % N
        rem //= N
    for _ in range(start, fam.size):
        yield Sextic.from_codes(field, codes)
        for slot in reversed(slots):
            c = codes[slot] + 1
            if c < N:
                codes[slot] = c
                break
            codes[slot] = 0


def random_member(fam: Family, rng: random.Random) -> tuple[int, Sextic]:
    index = rng.randrange(fam.size)
    return index, member_at(fam, index)


# ---------------------------------------------------------------------------
# the classification walk


def _walk(S: Sextic, tables, needed: frozenset):
    """Deepen counts until S is pinned down or stops meeting ``needed``.

    Returns (orbit data, candidate classes, resolved flag).  The walk
    always starts from the level-one data and extends the cheaper side
    first, so its outcome depends only on the member and on which of
    the needed classes its data keeps matching.
    """
    q = S.field.order
    a = [count_points(S, 1)]
    counts = [len(exceptional_curves(S, 1))]
    while True:
        ot = excomb.OrbitTrace(q, tuple(a), tuple(_orbits_from_counts(counts)))
        cands, resolved = excomb.identify_type(ot, tables)
        if resolved or not (cands & needed):
            return ot, cands, resolved
        na, nb = len(a), len(counts)
        cost_a = cost_b = None
        if na < _A_MAX and q ** (na + 1) <= _A_FIELD_CAP:
            cost_a = q ** (2 * (na + 1))
        if nb < _B_MAX and q ** (3 * (nb + 1)) <= _B_TRIPLE_CAP:
            cost_b = q ** (3 * (nb + 1))
        if cost_a is None and cost_b is None:
            return ot, cands, resolved
        if cost_b is None or (cost_a is not None and cost_a <= cost_b):
            a.append(count_points(S, na + 1))
        else:
            counts.append(len(exceptional_curves(S, nb + 1)))


def _scan_range(q, fid, start, stop, known):
    """Classify members [start, stop) of one family.

    ``known`` are classes already exhibited elsewhere; they are skipped
    for recording but resolutions are still reported so the reducer can
    keep the earliest member per class.  Returns plain tuples only, so
    the result can cross a process boundary.
    """
    tables = excomb.load_tables()
    fam = family(q, fid)
    all_types = frozenset(tables.e8)
    local = set(known)
    smooth = 0
    resolutions = []
    markers = {}
    index = start
    for S in enumerate_family(fam, start):
        if index >= stop:
            break
        if is_smooth(S):
            smooth += 1
            needed = all_types - local
            ot, cands, resolved = _walk(S, tables, needed)
            if resolved:
                t = next(iter(cands))
                if t not in local:
                    local.add(t)
                    resolutions.append(
                        (t, index, S.coeff_codes(), ot.a, ot.b))
            elif cands & needed:
                for t in sorted(cands):
                    if t not in markers:
                        markers[t] = (index, S.coeff_codes(),
                                      tuple(sorted(cands)), ot.a, ot.b)
        index += 1
    return {"family": fid, "start": start, "stop": index, "smooth": smooth,
            "resolutions": resolutions, "markers": markers}


def _scan_task(args):
    return _scan_range(*args)


# ---------------------------------------------------------------------------
# reports


@dataclass
class SweepReport:
    q: int
    family_sizes: tuple[tuple[int, int], ...]
    complete: bool
    frontier: tuple[int, int] | None
    enumerated: int
    smooth: int
    singular: int
    found: dict
    unresolved: dict
    absent: tuple[int, ...]
    wall_clock: float
    lineage: tuple[str, ...]
    jobs: int

    @property
    def classified(self) -> int:
        return len(self.found)

    def canonical(self) -> dict:
        """The run-order-independent core of the report."""
        return {
            "version": CHECKPOINT_VERSION,
            "q": self.q,
            "families": [list(fs) for fs in self.family_sizes],
            "complete": self.complete,
            "frontier": list(self.frontier) if self.frontier else None,
            "totals": {"enumerated": self.enumerated, "smooth": self.smooth,
                       "singular": self.singular,
                       "classified": self.classified},
            "found": {str(t): _evidence_json(e)
                      for t, e in sorted(self.found.items())},
            "unresolved": {str(t): _marker_json(e)
                           for t, e in sorted(self.unresolved.items())},
            "absent": list(self.absent),
            "deep": {str(t): [len(e["a"]), len(e["b"])]
                     for t, e in sorted(self.found.items())
                     if len(e["a"]) > 3 or len(e["b"]) > 3},
        }

    def canonical_json(self) -> str:
        return json.dumps(self.canonical(), sort_keys=True,
                          separators=(",", ":"))

    def to_json(self) -> str:
        doc = self.canonical()
        doc["wall_clock"] = round(self.wall_clock, 3)
        doc["lineage"] = list(self.lineage)
        doc["jobs"] = self.jobs
        return json.dumps(doc, indent=1, sort_keys=True)


def _evidence_json(e):
    return {"family": e["family"], "index": e["index"],
            "codes": list(e["codes"]), "a": list(e["a"]), "b": list(e["b"])}


def _marker_json(e):
    out = _evidence_json(e)
    out["candidates"] = list(e["candidates"])
    return out


def _evidence(fid, index, codes, a, b):
    return {"family": fid, "index": index, "codes": tuple(codes),
            "a": tuple(a), "b": tuple(b)}


# ---------------------------------------------------------------------------
# the sweep driver


class _State:
    """Merged frontier of a (possibly resumed, possibly partial) sweep."""

    def __init__(self, q, fam_ids):
        self.q = q
        self.fam_ids = list(fam_ids)
        self.pos = 0          # position in fam_ids of the family being walked
        self.cursor = 0       # next member index within that family
        self.found = {}
        self.known = frozenset()   # snapshot of found keys, swapped atomically
        self.markers = {}
        self.enumerated = 0
        self.smooth = 0
        self.elapsed = 0.0
        self.lineage = []

    def merge(self, result):
        fid = result["family"]
        self.enumerated += result["stop"] - result["start"]
        self.smooth += result["smooth"]
        for t, index, codes, a, b in result["resolutions"]:
            if t not in self.found:
                self.found[t] = _evidence(fid, index, codes, a, b)
        self.known = frozenset(self.found)
        for t, (index, codes, cands, a, b) in sorted(result["markers"].items()):
            if t not in self.markers:
                m = _evidence(fid, index, codes, a, b)
                m["candidates"] = tuple(cands)
                self.markers[t] = m

    def checkpoint_doc(self):
        return {
            "version": CHECKPOINT_VERSION,
            "q": self.q,
            "family_ids": self.fam_ids,
            "family": self.fam_ids[self.pos] if self.pos < len(self.fam_ids)
                      else None,
            "cursor": self.cursor,
            "found": {str(t): _evidence_json(e)
                      for t, e in sorted(self.found.items())},
            "markers": {str(t): _marker_json(e)
                        for t, e in sorted(self.markers.items())},
            "counters": {"enumerated": self.enumerated, "smooth": self.smooth,
                         "elapsed": round(self.elapsed, 3)},
            "lineage": self.lineage,
        }


def _load_state(path, q, fam_ids):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != CHECKPOINT_VERSION:
        raise ValueError("checkpoint version mismatch")
    if doc.get("q") != q or doc.get("family_ids") != list(fam_ids):
        raise ValueError("checkpoint does not match the requested sweep")
    st = _State(q, fam_ids)
    st.cursor = doc["cursor"]
    if doc["family"] is None:
        st.pos = len(st.fam_ids)
    else:
        st.pos = st.fam_ids.index(doc["family"])
    st.found = {int(t): _evidence(e["family"], e["index"], e["codes"],
                                  e["a"], e["b"])
                for t, e in doc["found"].items()}
    for t, e in doc["markers"].items():
        m = _evidence(e["family"], e["index"], e["codes"], e["a"], e["b"])
        m["candidates"] = tuple(e["candidates"])
        st.markers[int(t)] = m
    st.enumerated = doc["counters"]["enumerated"]
    st.smooth = doc["counters"]["smooth"]
    st.elapsed = doc["counters"]["elapsed"]
    st.lineage = list(doc["lineage"])
    return st


def _write_checkpoint(path, state):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state.checkpoint_doc(), fh, indent=1, sort_keys=True)
    os.replace(tmp, path)


def _build_report(state, fams, jobs):
    complete = state.pos >= len(fams)
    unresolved = {t: e for t, e in state.markers.items()
                  if t not in state.found}
    absent = ()
    if complete:
        all_types = sorted(excomb.load_tables().e8)
        absent = tuple(t for t in all_types
                       if t not in state.found and t not in unresolved)
    frontier = None
    if not complete:
        frontier = (fams[state.pos].id, state.cursor)
    return SweepReport(
        q=state.q,
        family_sizes=tuple((f.id, f.size) for f in fams),
        complete=complete,
        frontier=frontier,
        enumerated=state.enumerated,
        smooth=state.smooth,
        singular=state.enumerated - state.smooth,
        found=dict(sorted(state.found.items())),
        unresolved=dict(sorted(unresolved.items())),
        absent=absent,
        wall_clock=state.elapsed,
        lineage=tuple(state.lineage),
        jobs=jobs,
    )


def run_sweep(q: int, *, family_ids=None, checkpoint: str | None = None,
              jobs: int = 1, limit: int | None = None, chunk: int = 4096,
              checkpoint_every: int = 65536, progress=None) -> SweepReport:
    """Walk the families of q, classify every smooth member, and report.

    ``family_ids`` restricts the walk (absence claims then stay empty
    since they need the whole list).  ``limit`` bounds the members
    processed in this call, rounded up to a chunk; together with
    ``checkpoint`` this runs long sweeps in tranches.  ``jobs`` > 1
    partitions chunks over worker processes; reports are identical for
    any worker count.
    """
    fams = families(q)
    if family_ids is not None:
        fams = tuple(family(q, fid) for fid in family_ids)
    if jobs < 1:
        raise ValueError("worker count must be positive")
    fam_ids = [f.id for f in fams]

    if checkpoint and os.path.exists(checkpoint):
        state = _load_state(checkpoint, q, fam_ids)
    else:
        state = _State(q, fam_ids)
    if state.pos < len(fams):
        state.lineage.append(
            f"segment from {fams[state.pos].id}:{state.cursor}")

    t0 = time.monotonic()
    done_this_call = 0
    since_checkpoint = 0

    def tasks():
        # Chunks in walk order; each carries a snapshot of the classes
        # already exhibited at generation time.  A stale snapshot only
        # costs extra deepening, never a missed first member.
        pos, cur = state.pos, state.cursor
        budgeted = limit if limit is not None else None
        while pos < len(fams):
            fam = fams[pos]
            while cur < fam.size:
                if budgeted is not None and budgeted <= 0:
                    return
                stop = min(cur + chunk, fam.size)
                yield (q, fam.id, cur, stop, frozenset(state.found))
                if budgeted is not None:
                    budgeted -= stop - cur
                cur = stop
            pos += 1
            cur = 0

    def commit(fid, start, stop, result):
        nonlocal done_this_call, since_checkpoint
        state.merge(fid, result)
        state.cursor = stop
        if stop >= family(q, fid).size:
            state.pos += 1
            state.cursor = 0
        done_this_call += result["enumerated"]
        since_checkpoint += result["enumerated"]
        state.elapsed += time.monotonic() - commit.last
        commit.last = time.monotonic()
        if checkpoint and since_checkpoint >= checkpoint_every:
            _write_checkpoint(checkpoint, state)
            since_checkpoint = 0
        if progress is not None:
            progress({"family": fid, "cursor": stop,
                      "enumerated": state.enumerated,
                      "smooth": state.smooth,
                      "classified": len(state.found)})

    commit.last = t0
    if jobs == 1:
        for args in tasks():
            _, fid, start, stop, _ = args
            commit(fid, start, stop, _scan_range(*args))
    else:
        ctx = get_context("fork")
        with ctx.Pool(jobs) as pool:
            pending = []
            for args, result in zip_pending(pool, tasks(), pending):
                _, fid, start, stop, _ = args
                commit(fid, start, stop, result)

    if checkpoint:
        _write_checkpoint(checkpoint, state)
    return _build_report(state, fams, jobs)


def zip_pending(pool, task_iter, pending):
    """imap-style ordered dispatch that keeps the task args paired."""
    task_list = []

    def argfeed():
        for args in task_iter:
            task_list.append(args)
            yield args

    for i, result in enumerate(pool.imap(_scan_task, argfeed())):
        yield task_list[i], result


# ---------------------------------------------------------------------------
# loading and re-verification


def _verify_found(q, t, e, tables):
    S = Sextic.from_codes(make_field(*prime_power(q)), e["codes"])
    if not is_smooth(S):
        raise ValueError(f"report verification failed: type {t} member "
                         "is singular")
    a = [count_points(S, n) for n in range(1, len(e["a"]) + 1)]
    counts = [len(exceptional_curves(S, n))
              for n in range(1, len(e["b"]) + 1)]
    b = _orbits_from_counts(counts)
    if tuple(a) != tuple(e["a"]) or tuple(b) != tuple(e["b"]):
        raise ValueError(f"report verification failed: type {t} counts "
                         "do not reproduce")
    cands, resolved = excomb.identify_type(
        excomb.OrbitTrace(q, tuple(a), tuple(b)), tables)
    if not resolved or next(iter(cands)) != t:
        raise ValueError(f"report verification failed: type {t} member "
                         "does not pin to its class")
    traces = excomb.trace_sequence(tables.e8[t], len(a))
    if any(a[n - 1] != q ** (2 * n) + traces[n - 1] * q ** n + 1
           for n in range(1, len(a) + 1)):
        raise ValueError(f"report verification failed: type {t} counts "
                         "break the point-count identity")


def load_report(path: str, verify: bool = True, tables=None) -> SweepReport:
    """Read a report written by ``run_sweep``; re-verify found examples."""
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("version") != CHECKPOINT_VERSION:
        raise ValueError("report version mismatch")
    tables = tables if tables is not None else excomb.load_tables()
    q = doc["q"]
    found = {}
    for t, e in doc["found"].items():
        found[int(t)] = _evidence(e["family"], e["index"], e["codes"],
                                  e["a"], e["b"])
    unresolved = {}
    for t, e in doc["unresolved"].items():
        m = _evidence(e["family"], e["index"], e["codes"], e["a"], e["b"])
        m["candidates"] = tuple(e["candidates"])
        unresolved[int(t)] = m
    if verify:
        for t, e in sorted(found.items()):
            _verify_found(q, t, e, tables)
    return SweepReport(
        q=q,
        family_sizes=tuple((fid, size) for fid, size in doc["families"]),
        complete=doc["complete"],
        frontier=tuple(doc["frontier"]) if doc.get("frontier") else None,
        enumerated=doc["totals"]["enumerated"],
        smooth=doc["totals"]["smooth"],
        singular=doc["totals"]["singular"],
        found=found,
        unresolved=unresolved,
        absent=tuple(doc["absent"]),
        wall_clock=doc.get("wall_clock", 0.0),
        lineage=tuple(doc.get("lineage", ())),
        jobs=doc.get("jobs", 1),
    )


# ---------------------------------------------------------------------------
# fixtures


def verify_fixture(path: str, tables=None) -> dict:
    """Recompute a fixture surface's claims; raise on any mismatch.

    The fixture is a one-line surface file; its claims live in a JSON
    sidecar with the same stem: {"type": int, "points": [...],
    "orbits": [...], "eckardt": {"count": int, "concurrency": int}}.
    Only "type" is required.
    """
    tables = tables if tables is not None else excomb.load_tables()
    with open(path) as fh:
        S = parse_sextic(fh.readline())
    sidecar = os.path.splitext(path)[0] + ".json"
    if not os.path.exists(sidecar):
        raise ValueError("fixture sidecar missing")
    with open(sidecar) as fh:
        claims = json.load(fh)
    claimed_type = claims["type"]
    q = S.field.order

    if not is_smooth(S):
        raise ValueError("fixture claim mismatch: surface is singular")

    points = [int(v) for v in claims.get("points", ())] or None
    orbits = [int(v) for v in claims.get("orbits", ())] or None
    a = [count_points(S, n)
         for n in range(1, (len(points) if points else 1) + 1)]
    if points and a[:len(points)] != points:
        raise ValueError("fixture claim mismatch: point counts "
                         f"{a[:len(points)]} != {points}")
    b = []
    if orbits:
        counts = [len(exceptional_curves(S, n))
                  for n in range(1, len(orbits) + 1)]
        b = _orbits_from_counts(counts)
        if b != orbits:
            raise ValueError(f"fixture claim mismatch: orbit counts {b} "
                             f"!= {orbits}")
    cands, resolved = excomb.identify_type(
        excomb.OrbitTrace(q, tuple(a), tuple(b)), tables)
    if not resolved:
        raise ValueError("fixture claim mismatch: claimed data does not "
                         "pin the class")
    got = next(iter(cands))
    if got != claimed_type:
        raise ValueError(f"fixture claim mismatch: class {got} != "
                         f"{claimed_type}")
    traces = excomb.trace_sequence(tables.e8[claimed_type], len(a))
    if any(a[n - 1] != q ** (2 * n) + traces[n - 1] * q ** n + 1
           for n in range(1, len(a) + 1)):
        raise ValueError("fixture claim mismatch: point-count identity "
                         "fails for the claimed class")

    report = {"path": path, "surface": sextic_text(S), "q": q,
              "type": claimed_type, "points": a, "orbits": b}
    eck = claims.get("eckardt")
    if eck:
        concur = eckardt_points(S, tables)
        n_pts = len(concur.points)
        if (n_pts != eck["count"]
                or concur.max_concurrency != eck["concurrency"]):
            raise ValueError(
                "fixture claim mismatch: concurrency report "
                f"({n_pts}, {concur.max_concurrency}) != "
                f"({eck['count']}, {eck['concurrency']})")
        report["eckardt"] = {"count": n_pts,
                             "concurrency": concur.max_concurrency}
    return report


# ---------------------------------------------------------------------------
# random example hunting


def hunt(q: int, targets, tries: int = 10000, seed: int = 0,
         tables=None) -> dict:
    """Random search of the free-coefficient family for given classes.

    Returns {"q", "seed", "tries", "found": {type: {trial, codes, a, b}}}.
    Deterministic for a fixed seed.  Meant for existence hunting at
    fields where exhaustion is out of reach.
    """
    tables = tables if tables is not None else excomb.load_tables()
    fam = _free_family(q)
    rng = random.Random(seed)
    missing = set(targets)
    found = {}
    trial = 0
    while trial < tries and missing:
        trial += 1
        _, S = random_member(fam, rng)
        if not is_smooth(S):
            continue
        ot, cands, resolved = _walk(S, tables, frozenset(missing))
        if resolved:
            t = next(iter(cands))
            if t in missing:
                missing.discard(t)
                found[t] = {"trial": trial, "codes": list(S.coeff_codes()),
                            "a": list(ot.a), "b": list(ot.b)}
    return {"q": q, "seed": seed, "tries": trial,
            "found": {str(t): found[t] for t in sorted(found)},
            "missing": sorted(missing)}
