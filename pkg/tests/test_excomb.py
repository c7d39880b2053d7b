"""Class tables, exact traces, blow-up combinatorics, type identification."""

import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from dp1 import _data
from dp1.excomb import (
    ClassRecord,
    OrbitTrace,
    blowup_orbit_structure,
    blowup_symbol,
    fixed_curve_counts,
    identify_type,
    load_tables,
    symbol_factors,
    trace_sequence,
    twist,
)

from oracles import root_of_unity_sum

TABLES = load_tables()


# ---------------------------------------------------------------------------
# shape and pinned rows

def test_table_shape():
    assert len(TABLES.e8) == 112 and sorted(TABLES.e8) == list(range(1, 113))
    assert len(TABLES.e7) == 60 and sorted(TABLES.e7) == list(range(1, 61))
    assert len(TABLES.h1) == 10
    assert len(TABLES.parents) == 57
    assert len(TABLES.lower_bounds) == 57
    assert len(TABLES.open_non_minimal) == 6
    assert len(TABLES.open_minimal) == 14


def test_identity_row():
    r = TABLES.e8[1]
    assert r.carter == ""
    assert r.orbit_type == ((1, 240),)
    assert r.eigenvalues == ((1, 0),) * 8
    assert r.trace == 9 and r.order == 1


def test_single_reflection_row():
    r = TABLES.e8[2]
    assert symbol_factors(r.carter) == ("A1",)
    assert r.trace == 7 and r.order == 2
    assert r.orbit_type == ((1, 126), (2, 57))


def test_minus_identity_row():
    r = TABLES.e8[83]
    assert r.eigenvalues == ((2, 1),) * 8
    assert r.trace == -7 and r.twist == 1
    assert r.orbit_type == ((2, 120),)


def test_double_primed_four_reflections_row():
    r = TABLES.e8[9]
    assert r.carter == "(A1^4)''"
    assert r.orbit_type == ((1, 8), (2, 116))


# ---------------------------------------------------------------------------
# twists

def test_twist_pins():
    assert twist("E8", 1, TABLES) == 83
    assert twist("E8", 83, TABLES) == 1
    assert twist("E8", 92, TABLES) == 92
    assert twist("E7", 1, TABLES) == 49
    assert twist("E7", 49, TABLES) == 1


def test_twist_involution_and_trace_pairing():
    for records in (TABLES.e7, TABLES.e8):
        for rec in records.values():
            partner = records[rec.twist]
            assert partner.twist == rec.index
            assert rec.trace + partner.trace == 2
            # even powers of the twisted class act identically
            assert fixed_curve_counts(rec, 12)[1::2] == \
                fixed_curve_counts(partner, 12)[1::2]


# ---------------------------------------------------------------------------
# trace sequences

def test_trace_frozen_values():
    # frozen from oracles.root_of_unity_sum, recomputed live below
    assert trace_sequence(TABLES.e8[2], 2) == [7, 9]
    assert trace_sequence(TABLES.e8[83], 1) == [-7]
    assert trace_sequence(TABLES.e8[112], 6) == [5, -3, -7, -3, 5, 9]
    for idx, n_max in ((2, 2), (83, 1), (112, 6)):
        rec = TABLES.e8[idx]
        live = [1 + root_of_unity_sum(list(rec.eigenvalues), n)
                for n in range(1, n_max + 1)]
        assert trace_sequence(rec, n_max) == live


def test_trace_sequence_matches_packet_oracle_everywhere():
    # cyclotomic-remainder evaluation vs the Mobius-packet route
    for records in (TABLES.e7, TABLES.e8):
        for rec in records.values():
            got = trace_sequence(rec, 12)
            want = [1 + root_of_unity_sum(list(rec.eigenvalues), n)
                    for n in range(1, 13)]
            assert got == want, rec.index


def test_trace_periodicity_and_bounds():
    for records, rank in ((TABLES.e7, 7), (TABLES.e8, 8)):
        for rec in records.values():
            depth = min(60, 2 * rec.order)
            seq = trace_sequence(rec, depth)
            assert all(abs(t) <= rank + 1 for t in seq)
            for n in range(1, depth + 1):
                if n % rec.order == 0:
                    assert seq[n - 1] == rank + 1
                if n + rec.order <= depth:
                    assert seq[n - 1] == seq[n + rec.order - 1]


def test_trace_depth_rejected():
    with pytest.raises(ValueError, match="depth out of range"):
        trace_sequence(TABLES.e8[1], 0)
    with pytest.raises(ValueError, match="depth out of range"):
        trace_sequence(TABLES.e8[1], 61)
    with pytest.raises(ValueError, match="depth out of range"):
        fixed_curve_counts(TABLES.e8[1], 61)


def test_unbalanced_eigenvalues_rejected():
    fake = ClassRecord(
        group="E8", index=0, carter="", twist=0, trace=6,
        orbit_type=((1, 240),),
        eigenvalues=((5, 1), (5, 2), (5, 3)) + ((1, 0),) * 5,
    )
    with pytest.raises(ValueError, match="eigenvalue data inconsistent"):
        trace_sequence(fake, 1)


# ---------------------------------------------------------------------------
# fixed-class counts

def test_fixed_curve_counts_pins():
    assert fixed_curve_counts(TABLES.e8[1], 3) == [240, 240, 240]
    assert fixed_curve_counts(TABLES.e8[2], 2) == [126, 240]
    # rows 61 and 95 agree to depth 6 and split at 7
    f61 = fixed_curve_counts(TABLES.e8[61], 7)
    f95 = fixed_curve_counts(TABLES.e8[95], 7)
    assert f61[:6] == f95[:6] == [0, 2, 0, 2, 0, 2]
    assert (f61[6], f95[6]) == (126, 0)


def test_fixed_counts_divisor_structure():
    for rec in TABLES.e8.values():
        counts = fixed_curve_counts(rec, 30)
        assert counts[rec.order - 1] == 240
        for n in range(1, 31):
            for d in range(1, n + 1):
                if n % d == 0:
                    assert counts[d - 1] <= counts[n - 1]


# ---------------------------------------------------------------------------
# orbit-trace records and identification

def test_orbit_trace_validation():
    with pytest.raises(ValueError):
        OrbitTrace(q=6, a=(7,))  # not a prime power
    with pytest.raises(ValueError, match="at least one"):
        OrbitTrace(q=2, a=())
    with pytest.raises(ValueError, match="positive"):
        OrbitTrace(q=2, a=(0,))
    with pytest.raises(ValueError, match="nonnegative"):
        OrbitTrace(q=2, a=(5,), b=(-1,))
    with pytest.raises(ValueError, match="exceed 240"):
        OrbitTrace(q=2, a=(5,), b=(241,))


def test_identify_split_surface_example():
    # q=8 point count 73 with curve orbits (24, 108)
    ids, resolved = identify_type(OrbitTrace(q=8, a=(73,), b=(24, 108)), TABLES)
    assert (ids, resolved) == (frozenset({8}), True)
    # split surface: 4 + 9*2 + 1 points and 240 rational curves
    ids, resolved = identify_type(OrbitTrace(q=2, a=(23,), b=(240,)), TABLES)
    assert (ids, resolved) == (frozenset({1}), True)


def test_identify_needs_seventh_count():
    # frozen q=2 point counts of row 61; row 95 matches them through n=6
    a = (5, 25, 65, 289, 1025, 4225, 17281)
    ids, resolved = identify_type(OrbitTrace(q=2, a=a[:6]), TABLES)
    assert ids == frozenset({61, 95}) and not resolved
    ids, resolved = identify_type(OrbitTrace(q=2, a=a), TABLES)
    assert (ids, resolved) == (frozenset({61}), True)


def test_identify_no_match():
    with pytest.raises(ValueError, match="no matching class"):
        identify_type(OrbitTrace(q=2, a=(6,)), TABLES)


@settings(max_examples=60, deadline=None)
@given(
    idx=st.integers(min_value=1, max_value=112),
    q=st.sampled_from([2, 3, 4, 5, 7, 8, 9]),
    depth=st.integers(min_value=1, max_value=8),
)
def test_identify_monotone_and_sound(idx, q, depth):
    rec = TABLES.e8[idx]
    traces = trace_sequence(rec, depth)
    a = tuple(q ** (2 * n) + traces[n - 1] * q ** n + 1
              for n in range(1, depth + 1))
    # some classes force a negative count over small fields: they simply
    # cannot occur there, so no orbit-trace record exists to identify
    assume(min(a) >= 1)
    shallow, _ = identify_type(OrbitTrace(q=q, a=a[:1]), TABLES)
    deep, _ = identify_type(OrbitTrace(q=q, a=a), TABLES)
    assert idx in deep and deep <= shallow


# ---------------------------------------------------------------------------
# blow-up combinatorics

def test_blowup_identity():
    orbit_type, traces = blowup_orbit_structure([1, 2, 3, 4, 5, 6, 7, 8])
    assert orbit_type == ((1, 240),) and traces == (9,)
    assert orbit_type == TABLES.e8[1].orbit_type


def test_blowup_four_transpositions_is_double_primed():
    orbit_type, traces = blowup_orbit_structure([2, 1, 4, 3, 6, 5, 8, 7])
    assert orbit_type == ((1, 8), (2, 116)) == TABLES.e8[9].orbit_type
    assert traces == (1, 9)


def test_blowup_eight_cycle():
    orbit_type, traces = blowup_orbit_structure([2, 3, 4, 5, 6, 7, 8, 1])
    assert orbit_type == ((4, 2), (8, 29)) == TABLES.e8[63].orbit_type
    assert traces == tuple(trace_sequence(TABLES.e8[63], 8))


def _partitions(n, most=8):
    if n == 0:
        yield ()
        return
    for first in range(min(n, most), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def test_every_cycle_type_matches_exactly_one_class():
    for part in _partitions(8):
        perm, base = [], 0
        for c in part:
            perm.extend(list(range(base + 2, base + c + 1)) + [base + 1])
            base += c
        orbit_type, traces = blowup_orbit_structure(perm)
        matches = [r for r in TABLES.e8.values() if r.orbit_type == orbit_type]
        assert len(matches) == 1, part
        rec = matches[0]
        assert traces == tuple(trace_sequence(rec, len(traces)))
        want = tuple(sorted((f"A{c - 1}" for c in part if c > 1),
                            key=lambda f: -int(f[1:])))
        assert symbol_factors(rec.carter) == want


def test_blowup_rejects_non_permutation():
    with pytest.raises(ValueError, match="permutation"):
        blowup_orbit_structure([1, 1, 3, 4, 5, 6, 7, 8])


# ---------------------------------------------------------------------------
# Carter symbols

def test_symbol_factors_pins():
    assert symbol_factors("") == ()
    assert symbol_factors("A1") == ("A1",)
    assert symbol_factors("(A3xA1^2)''") == ("A3", "A1", "A1")
    assert symbol_factors("(A1^4)'") == symbol_factors("(A1^4)''")
    assert symbol_factors("D4(a1)^2") == ("D4(a1)", "D4(a1)")
    assert symbol_factors("E7(a2)xA1") == ("E7(a2)", "A1")
    assert symbol_factors("E8(a4)") == ("E8(a4)",)
    assert symbol_factors("D5(a1)xA2") == ("D5(a1)", "A2")


def test_blowup_symbol_pins():
    assert blowup_symbol("", 8) == "A7"
    assert blowup_symbol("A1", 1) == "A1"
    assert blowup_symbol("A2", 3) == "A2xA2"
    assert blowup_symbol("D4(a1)", 2) == "D4(a1)xA1"
    assert blowup_symbol("A1", 4) == "A3xA1"
    with pytest.raises(ValueError, match="positive"):
        blowup_symbol("A1", 0)


# ---------------------------------------------------------------------------
# the comparison rows and open cases

def test_h1_rows():
    by_symbol = {r.deg1_symbol: r for r in TABLES.h1}
    assert len(by_symbol) == 10
    for row in TABLES.h1:
        if row.deg1_symbol.endswith("''"):
            assert row.value == "0"
        else:
            assert row.value == "(Z/2)^2"
    # the primed labels cross between the two degrees
    assert by_symbol["(A1^4)'"].deg2_symbol == "(A1^4)''"
    assert by_symbol["(A1^4)''"].deg2_symbol == "(A1^4)'"
    # two rows have no degree-2 counterpart at all
    assert by_symbol["(A3^2)''"].deg2_symbol is None
    assert by_symbol["(A7)''"].deg2_symbol is None
    assert by_symbol["(A7)'"].deg2_symbol == "A7"


def test_open_cases():
    nm = {c.type: c for c in TABLES.open_non_minimal}
    assert sorted(nm) == [42, 43, 58, 68, 69, 79]
    assert nm[79].twist == 61 and not nm[79].type_resolved
    assert nm[58].twist == 76 and nm[58].twist_resolved
    m = {c.type: c for c in TABLES.open_minimal}
    assert len(m) == 14
    assert 84 in m and m[84].twist == 112 and not m[84].twist_resolved
    assert m[66].type_resolved and m[66].twist == 66
    for case in TABLES.open_non_minimal + TABLES.open_minimal:
        assert TABLES.e8[case.type].twist == case.twist


def test_parent_symbols_are_compatible():
    for deg1, parents in TABLES.parents.items():
        for p in parents:
            assert symbol_factors(TABLES.e7[p].carter) == \
                symbol_factors(TABLES.e8[deg1].carter)
    # crossings pinned by the comparison rows
    assert TABLES.parents[8] == (10,)
    assert TABLES.parents[9] == (9,)
    assert TABLES.parents[5] == (5, 6)
    assert TABLES.parents[23] == (25, 26)


# ---------------------------------------------------------------------------
# corruption detection through the data override

def _write_doctored(tmp_path, mutate):
    raw = json.loads(_data.text("we8.json"))
    mutate(raw)
    (tmp_path / "we8.json").write_text(json.dumps(raw))


def test_override_with_faithful_copy(tmp_path, monkeypatch):
    (tmp_path / "we8.json").write_text(_data.text("we8.json"))
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    assert len(load_tables().e8) == 112


def test_corrupt_trace_detected(tmp_path, monkeypatch):
    def mutate(raw):
        raw["classes"][16]["trace"] += 1
    _write_doctored(tmp_path, mutate)
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    with pytest.raises(ValueError, match=r"table corrupt at \(E8, 17\)"):
        load_tables()


def test_corrupt_orbit_sum_detected(tmp_path, monkeypatch):
    def mutate(raw):
        raw["classes"][44]["orbits"][0][1] += 1
    _write_doctored(tmp_path, mutate)
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    with pytest.raises(ValueError, match=r"table corrupt at \(E8, 45\)"):
        load_tables()


def test_corrupt_twist_detected(tmp_path, monkeypatch):
    def mutate(raw):
        raw["classes"][0]["twist"] = 82  # genuine partner is 83
    _write_doctored(tmp_path, mutate)
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    with pytest.raises(ValueError, match=r"table corrupt at \(E8, "):
        load_tables()


def test_corrupt_eigenvalue_detected(tmp_path, monkeypatch):
    def mutate(raw):
        raw["classes"][111]["eigenvalues"][0] = [6, 2]  # not reduced
    _write_doctored(tmp_path, mutate)
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    # caught either at the row itself or at its twist partner (84)
    with pytest.raises(ValueError, match=r"table corrupt at \(E8, (84|112)\)"):
        load_tables()


def test_corrupt_orbit_size_detected(tmp_path, monkeypatch):
    def mutate(raw):
        # size 5 orbit on a class of order 6: impossible
        row = raw["classes"][111]
        row["orbits"] = [[5, 48]]
    _write_doctored(tmp_path, mutate)
    monkeypatch.setenv("DP1_DATA", str(tmp_path))
    with pytest.raises(ValueError, match=r"table corrupt at \(E8, 112\)"):
        load_tables()
