"""Configuration search and general-position criteria."""

import random

import pytest

from dp1.gfield import Fq, OrbitSpec, embed, make_field, normal_basis
from dp1.genpos import (
    Configuration,
    ProjPoint,
    Violation,
    check_general_position,
    search_configuration,
    type35_witness,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F5 = make_field(5, 1)
F7 = make_field(7, 1)


def _pts(F, triples):
    return [ProjPoint(F, t) for t in triples]


# ---------------------------------------------------------------------------
# projective points


def test_point_normalization():
    p = ProjPoint(F5, [2, 4, 1])
    assert p.coords == (1, 2, 3)  # scaled by 2^-1 = 3
    assert ProjPoint(F5, [0, 0, 2]).coords == (0, 0, 1)
    with pytest.raises(ValueError, match="not a projective point"):
        ProjPoint(F5, [0, 0, 0])


def test_point_degree_and_frobenius():
    F8 = make_field(2, 3)
    b = Fq(F8, 2)
    p = ProjPoint(F8, [Fq(F8, 1), b, b * b * b])
    assert p.degree() == 3
    assert p.frobenius().coords == (1, (b * b).code, (b**6).code)
    assert p.frobenius(3) == p
    assert ProjPoint(F8, [1, 0, 1]).degree() == 1


# ---------------------------------------------------------------------------
# the determinant / kernel criteria


def test_frame_is_general_position():
    pts = _pts(F7, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    assert check_general_position(pts) is None


def test_collinear_violation():
    pts = _pts(F7, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    v = check_general_position(pts)
    assert v == Violation("collinear", (0, 1, 2))


def test_conic_violation():
    # five frame-ish points plus a sixth forced onto their conic:
    # x^2 - yz vanishes on [1:1:1], [0:1:0]... use points on the conic yz = x^2
    pts = []
    for t in range(5):
        x = Fq(F7, t)
        pts.append(ProjPoint(F7, [x, Fq(F7, 1), x * x]))
    pts.append(ProjPoint(F7, [0, 0, 1]))  # [0:0:1] also satisfies yz = x^2
    v = check_general_position(pts)
    assert v is not None and v.criterion == "conic"


def test_singular_cubic_violation():
    # eight points on the cuspidal cubic x^2 z = y^3 over F_19: the cusp
    # [0:0:1] plus [1:t:t^3] for t = 1..7.  No three are collinear (a line
    # through the cusp meets the rest in one point; three parametrized points
    # are collinear only when t1+t2+t3 = 0) and no six lie on a conic (a conic
    # cuts the parametrization in a degree-6 polynomial with no t^5 term, so
    # it would need six roots summing to zero), so only the cubic criterion
    # can fire
    F = make_field(19, 1)
    pts = [ProjPoint(F, [0, 0, 1])]
    for t in range(1, 8):
        u = Fq(F, t)
        pts.append(ProjPoint(F, [Fq(F, 1), u, u * u * u]))
    v = check_general_position(pts)
    assert v is not None and v.criterion == "singular-cubic"


def test_check_input_validation():
    pts = _pts(F7, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    with pytest.raises(ValueError, match="at most eight points"):
        check_general_position(pts * 3)
    with pytest.raises(ValueError, match="points must be distinct"):
        check_general_position(pts + [ProjPoint(F7, (1, 0, 0))])


def test_check_permutation_invariant():
    rng = random.Random(3)
    pts = _pts(F7, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)])
    base = check_general_position(pts) is None
    for _ in range(10):
        rng.shuffle(pts)
        assert (check_general_position(pts) is None) == base


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_normal_basis_octet_general_position(q):
    from dp1.gfield import prime_power

    base = make_field(*prime_power(q))
    nb = normal_basis(base, 8)
    ext = nb[0].desc
    one = Fq(ext, 1)
    pts = [ProjPoint(ext, [one, a, a * a * a]) for a in nb]
    assert check_general_position(pts) is None


# ---------------------------------------------------------------------------
# configuration search


def test_search_degree8_over_f2():
    cfg = search_configuration(2, OrbitSpec(counts=(0, 0, 0, 0, 0, 0, 0, 1)))
    assert cfg is not None
    assert [(j, len(b)) for j, b in cfg.orbits] == [(8, 8)]
    assert check_general_position(cfg.points_in_common_field()) is None


def test_search_two_quartic_orbits_over_f3():
    cfg = search_configuration(3, OrbitSpec(counts=(0, 0, 0, 2)))
    assert cfg is not None
    assert [(j, len(b)) for j, b in cfg.orbits] == [(4, 4), (4, 4)]
    assert check_general_position(cfg.points_in_common_field()) is None


def test_search_eight_rational_over_f7_is_exhausted():
    assert search_configuration(7, OrbitSpec(counts=(8,))) is None


def test_search_five_rational_over_f2_is_exhausted():
    # P^2(F_2) has only 7 points and every point outside the frame lies on
    # a line through two frame points
    assert search_configuration(2, OrbitSpec(counts=(5,))) is None


def test_search_mixed_orbits():
    cfg = search_configuration(3, OrbitSpec(counts=(1, 2)))
    assert cfg is not None
    lengths = sorted(j for j, _ in cfg.orbits)
    assert lengths == [1, 2, 2]
    assert check_general_position(cfg.points_in_common_field()) is None


def test_search_rational_plus_frame():
    cfg = search_configuration(7, OrbitSpec(counts=(6,)))
    assert cfg is not None
    pts = cfg.points_in_common_field()
    assert len(pts) == 6
    assert check_general_position(pts) is None
    # frame normalization pins the first four points
    assert [p.coords for p in pts[:4]] == [
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1),
    ]


def test_six_rational_points_small_fields():
    # six rational points in general position exist over F_4 but not F_5
    assert search_configuration(4, OrbitSpec(counts=(6,))) is not None
    assert search_configuration(5, OrbitSpec(counts=(6,))) is None


def test_search_is_deterministic():
    a = search_configuration(2, OrbitSpec(counts=(0, 0, 0, 2)))
    b = search_configuration(2, OrbitSpec(counts=(0, 0, 0, 2)))
    assert a is not None and a.to_dict() == b.to_dict()


def test_search_overflow_message():
    with pytest.raises(ValueError, match="more than 8 geometric points"):
        search_configuration(3, (9,))


def test_orbit_structure_recomputed():
    cfg = search_configuration(2, OrbitSpec(counts=(0, 1, 1)))
    assert cfg is not None
    for j, block in cfg.orbits:
        assert all(pt.degree(cfg.base_q.k) == j for pt in block)
        for t in range(j):
            assert block[(t + 1) % j] == block[t].frobenius(1, cfg.base_q.k)


def test_frobenius_permutes_configuration():
    cfg = search_configuration(3, OrbitSpec(counts=(0, 0, 0, 2)))
    pts = cfg.points_in_common_field()
    conj = {p.frobenius(1, cfg.base_q.k) for p in pts}
    assert conj == set(pts)


def test_search_survives_change_of_frame():
    # transform a found configuration by a random invertible matrix; the image
    # is still a valid configuration, so the search must still report found
    cfg = search_configuration(5, OrbitSpec(counts=(5,)))
    assert cfg is not None
    rng = random.Random(99)
    from dp1.matfq import MatFq, det

    while True:
        entries = [rng.randrange(5) for _ in range(9)]
        if det(MatFq(F5, 3, 3, [Fq(F5, e) for e in entries])).code:
            break
    moved = []
    for p in cfg.points_in_common_field():
        new = [
            F5.add(
                F5.add(F5.mul(entries[3 * i], p.coords[0]), F5.mul(entries[3 * i + 1], p.coords[1])),
                F5.mul(entries[3 * i + 2], p.coords[2]),
            )
            for i in range(3)
        ]
        moved.append(ProjPoint(F5, [Fq(F5, c) for c in new]))
    assert check_general_position(moved) is None
    assert search_configuration(5, OrbitSpec(counts=(5,))) is not None


def test_configuration_serialization():
    cfg = search_configuration(3, OrbitSpec(counts=(0, 0, 0, 2)))
    d = cfg.to_dict()
    assert d["q"] == "3^1"
    assert len(d["orbits"]) == 2
    for j, pts in d["orbits"]:
        assert j == 4 and len(pts) == 4
        assert all(len(t) == 3 for t in pts)


# ---------------------------------------------------------------------------
# the two-quartic witness


def test_type35_direct_witness_q59():
    x, cfg = type35_witness(59)
    assert x is not None and x.code != 0
    pts = cfg.points_in_common_field()
    assert check_general_position(pts) is None
    assert [(j, len(b)) for j, b in cfg.orbits] == [(4, 4), (4, 4)]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_type35_fallback_small_q(q):
    x, cfg = type35_witness(q)
    assert x is None and cfg is not None
    assert check_general_position(cfg.points_in_common_field()) is None
    assert sorted(j for j, _ in cfg.orbits) == [4, 4]
