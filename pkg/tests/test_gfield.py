"""Field tower: construction, Frobenius, embeddings, normal bases, table data."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from dp1.gfield import (
    Fq,
    OrbitSpec,
    element_degree,
    embed,
    field_name,
    frobenius,
    make_field,
    normal_basis,
    parse_field,
    prime_power,
)

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F8 = make_field(2, 3)
F9 = make_field(3, 2)
F64 = make_field(2, 6)


# ---------------------------------------------------------------------------
# construction


def test_pinned_moduli():
    assert F4.modulus == (1, 1, 1)  # x^2 + x + 1
    assert F8.modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert make_field(7, 1).modulus == (4, 1)  # x - 3, least primitive root


def test_make_field_idempotent():
    assert make_field(2, 3) is F8
    assert make_field(3, 2) is F9


def test_make_field_errors():
    with pytest.raises(ValueError, match="invalid characteristic"):
        make_field(6, 1)
    with pytest.raises(ValueError, match="invalid characteristic"):
        make_field(1, 1)
    with pytest.raises(ValueError, match="field out of range"):
        make_field(2, 25)
    with pytest.raises(ValueError, match="field out of range"):
        make_field(23, 9)
    with pytest.raises(ValueError, match="field out of range"):
        make_field(67, 1)


def test_element_codes_roundtrip():
    for F in (F2, F4, F9, make_field(5, 2)):
        for code in range(F.order):
            x = Fq(F, code)
            assert x.code == code
            assert sum(c * F.p**i for i, c in enumerate(x.coeffs)) == code


def test_modulus_is_satisfied():
    # the generator is a root of the table modulus, in every field
    for p, k in [(2, 4), (3, 3), (5, 2), (7, 2), (11, 2), (13, 1)]:
        F = make_field(p, k)
        g = Fq(F, F.generator_code)
        acc = Fq(F, 0)
        for c in reversed(F.modulus):
            acc = acc * g + c
        assert acc.code == 0


# ---------------------------------------------------------------------------
# arithmetic laws


@pytest.mark.parametrize("p,k", [(2, 1), (2, 4), (3, 2), (5, 1), (7, 1), (13, 1)])
def test_fermat_exhaustive(p, k):
    F = make_field(p, k)
    for code in range(F.order):
        x = Fq(F, code)
        assert x ** F.order == x
        if code:
            assert (x * x**-1).code == 1


def test_fermat_sampled_large():
    rng = random.Random(7)
    for p, k in [(2, 16), (2, 20), (3, 9), (5, 6), (23, 4)]:
        F = make_field(p, k)
        for _ in range(50):
            x = Fq(F, rng.randrange(1, F.order))
            assert x ** F.order == x
            assert (x * (1 / x)).code == 1


@given(st.integers(0, 8**2 - 1), st.integers(0, 8**2 - 1))
def test_field_ring_laws(a, b):
    F = F64
    x, y = Fq(F, a), Fq(F, b)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + Fq(F, 1)) == x * y + x
    assert (x - y) + y == x


# ---------------------------------------------------------------------------
# frobenius


def test_frobenius_prime_field_fixed():
    for code in range(2):
        assert frobenius(Fq(F2, code), 1) == Fq(F2, code)


def test_frobenius_generator_f8():
    b = Fq(F8, 2)
    assert frobenius(b, 1) == b * b
    assert frobenius(b, 3) == b


def test_frobenius_order():
    for F in (F4, F8, F9, F64):
        for code in range(F.order):
            x = Fq(F, code)
            assert frobenius(x, F.k) == x


@settings(max_examples=60)
@given(st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1), st.integers(0, 7))
def test_frobenius_ring_homomorphism(a, b, t):
    F = make_field(3, 4)
    x, y = Fq(F, a), Fq(F, b)
    assert frobenius(x + y, t) == frobenius(x, t) + frobenius(y, t)
    assert frobenius(x * y, t) == frobenius(x, t) * frobenius(y, t)


def test_frobenius_base_degree():
    # over F4, the relative Frobenius is x -> x^4
    for code in range(F64.order):
        x = Fq(F64, code)
        assert frobenius(x, 1, base_degree=2) == x ** 4
    with pytest.raises(ValueError, match="incoherent tower"):
        frobenius(Fq(F64, 5), 1, base_degree=4)


# ---------------------------------------------------------------------------
# embeddings


def test_embed_constants():
    assert embed(Fq(F2, 1), F64).code == 1
    assert embed(Fq(F3, 0), F9).code == 0


def test_embed_errors():
    with pytest.raises(ValueError, match="no canonical embedding"):
        embed(Fq(F4, 2), F8)  # 2 does not divide 3
    with pytest.raises(ValueError, match="no canonical embedding"):
        embed(Fq(F3, 1), F4)  # wrong characteristic


def test_embed_tower_coherence_exhaustive():
    # F2 -> F4 -> F64 equals F2 -> F64, and likewise through F8
    for code in range(F4.order):
        x = Fq(F4, code)
        assert embed(embed(x, F4), F64) == embed(x, F64)
    for code in range(F2.order):
        x = Fq(F2, code)
        assert embed(embed(x, F8), F64) == embed(x, F64)
        assert embed(embed(x, F4), F64) == embed(x, F64)
    F3_6 = make_field(3, 6)
    for code in range(F9.order):
        x = Fq(F9, code)
        assert embed(embed(x, F9), F3_6) == embed(x, F3_6)


def test_embed_is_injective_hom():
    seen = set()
    for code in range(F8.order):
        x = Fq(F8, code)
        y = embed(x, make_field(2, 6))
        assert y.code not in seen
        seen.add(y.code)
    for a in range(F8.order):
        for b in range(F8.order):
            x, y = Fq(F8, a), Fq(F8, b)
            T = make_field(2, 6)
            assert embed(x + y, T) == embed(x, T) + embed(y, T)
            assert embed(x * y, T) == embed(x, T) * embed(y, T)


def test_embed_preserves_element_degree():
    for code in range(F9.order):
        x = Fq(F9, code)
        assert element_degree(embed(x, make_field(3, 6))) == element_degree(x)


# ---------------------------------------------------------------------------
# element degree


def test_element_degree_examples():
    assert element_degree(Fq(F64, 1)) == 1
    assert element_degree(Fq(F8, 2)) == 3
    assert element_degree(Fq(F9, F9.generator_code)) == 2


def test_element_degree_divides():
    for F in (F8, F9, F64):
        for code in range(F.order):
            assert F.k % element_degree(Fq(F, code)) == 0


def test_element_degree_relative():
    g = Fq(F64, 2)
    assert element_degree(g, base_degree=2) == 3
    assert element_degree(g, base_degree=3) == 2
    assert element_degree(embed(Fq(F4, 2), F64), base_degree=2) == 1


# ---------------------------------------------------------------------------
# normal bases


def test_normal_basis_trivial():
    assert [e.code for e in normal_basis(F2, 1)] == [1]


def test_normal_basis_f4():
    # alpha, alpha+1 with alpha^2+alpha+1 = 0
    assert [e.code for e in normal_basis(F2, 2)] == [2, 3]


def test_normal_basis_f3_quartic():
    assert [e.code for e in normal_basis(F3, 4)] == [4, 28, 40, 49]


def test_normal_basis_f2_cubic():
    assert [e.code for e in normal_basis(F2, 3)] == [3, 5, 7]


@pytest.mark.parametrize(
    "q_desc,r",
    [(F2, 2), (F2, 3), (F2, 4), (F3, 2), (F3, 3), (F4, 2), (F4, 3), (F9, 2)],
)
def test_normal_basis_conjugates_and_rank(q_desc, r):
    nb = normal_basis(q_desc, r)
    assert len(nb) == len({e.code for e in nb}) == r
    # consecutive entries are q-power conjugates (cyclically)
    for i in range(r):
        assert frobenius(nb[i], 1, base_degree=q_desc.k) == nb[(i + 1) % r]
    # independence: no F_q-linear combination vanishes (exhaustive, small q^r)
    F = nb[0].desc
    combos = set()
    stack = [(0, Fq(F, 0))]
    while stack:
        i, acc = stack.pop()
        if i == r:
            combos.add(acc.code)
            continue
        for c in range(q_desc.order):
            coef = embed(Fq(q_desc, c), F)
            stack.append((i + 1, acc + coef * nb[i]))
    assert len(combos) == q_desc.order**r  # all distinct => independent


# ---------------------------------------------------------------------------
# orbit specifications


def test_orbit_spec_degrees():
    assert OrbitSpec(counts=(8,)).total_degree == 8
    assert OrbitSpec(counts=(2, 1, 0, 1)).total_degree == 8
    assert OrbitSpec(counts=(0, 0, 0, 0, 0, 0, 0, 1)).total_degree == 8
    assert OrbitSpec(counts=(1,)).total_degree == 1


def test_orbit_spec_rejects_overweight():
    with pytest.raises(ValueError, match="invalid orbit specification"):
        OrbitSpec(counts=(9,))
    with pytest.raises(ValueError, match="invalid orbit specification"):
        OrbitSpec(counts=(1, 4))


# ---------------------------------------------------------------------------
# names and serialization


def test_parse_and_name():
    assert parse_field("2^3") is F8
    assert parse_field("49") is make_field(7, 2)
    assert parse_field("7") is make_field(7, 1)
    assert field_name(F9) == "3^2"
    assert parse_field(field_name(make_field(5, 1))) is make_field(5, 1)
    assert prime_power(59) == (59, 1)
    assert prime_power(64) == (2, 6)
    with pytest.raises(ValueError, match="invalid characteristic"):
        parse_field("6")
    with pytest.raises(ValueError, match="field out of range"):
        parse_field("2^30")


# ---------------------------------------------------------------------------
# shipped modulus table


def _table_entries():
    from dp1._data import text

    out = {}
    for line in text("conway.dat").splitlines():
        parts = line.split()
        if not parts:
            continue
        p, k = int(parts[0]), int(parts[1])
        out[(p, k)] = [int(c) for c in parts[2:]]
    return out


def test_table_coverage():
    tab = _table_entries()
    for p in (2, 3):
        assert all((p, k) in tab for k in range(1, 25))
    assert all((7, k) in tab for k in range(1, 15))
    for p in (11, 13, 17, 19, 23):
        assert all((p, k) in tab for k in range(1, 9))
    assert (5, 18) in tab and (5, 24) in tab
    assert (59, 4) in tab and (61, 4) in tab


def test_table_moduli_irreducible_sample():
    sympy = pytest.importorskip("sympy")
    from sympy import GF, Poly, Symbol

    x = Symbol("x")
    tab = _table_entries()
    sample = [(2, 8), (2, 24), (3, 12), (5, 8), (7, 7), (11, 6), (23, 8), (59, 4)]
    for p, k in sample:
        coeffs = tab[(p, k)]
        poly = Poly(list(reversed(coeffs)), x, domain=GF(p))
        assert poly.degree() == k
        assert len(poly.factor_list()[1]) == 1
        assert poly.factor_list()[1][0][1] == 1


def test_table_moduli_primitive_sample():
    sympy = pytest.importorskip("sympy")
    from sympy import factorint

    # x must have full multiplicative order p^k - 1 modulo the table polynomial
    for p, k in [(2, 10), (2, 15), (3, 6), (5, 4), (7, 3), (13, 4), (61, 2)]:
        F = make_field(p, k)
        g = Fq(F, F.generator_code)
        n = F.order - 1
        assert g**n == Fq(F, 1)
        for ell in factorint(n):
            assert g ** (n // ell) != Fq(F, 1)


def test_table_norm_compatibility():
    # for m | n the m-generator equals the n-generator raised to the norm
    # exponent; equivalently g_n^((p^n-1)/(p^m-1)) satisfies the m-modulus
    checked = 0
    for p, n in [(2, 12), (2, 24), (3, 8), (3, 12), (5, 8), (7, 6), (11, 4), (23, 8)]:
        F = make_field(p, n)
        for m in range(1, n):
            if n % m:
                continue
            E = make_field(p, m)
            g = Fq(F, F.generator_code) ** ((F.order - 1) // (E.order - 1))
            acc = Fq(F, 0)
            for c in reversed(E.modulus):
                acc = acc * g + c
            assert acc.code == 0, (p, m, n)
            checked += 1
    assert checked > 20
