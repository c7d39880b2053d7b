"""Weighted sextic models of degree-1 del Pezzo surfaces over finite fields.

A surface is cut out in the weighted projective space P(1,1,2,3) with
coordinates (x, y, z, w) by

    w^2 + z^3 + w*z*f1 + z^2*f2 + w*f3 + z*f4 + f6 = 0,

where fi is a binary form of degree i in (x, y).  Every such smooth
surface carries the distinguished rational point [0:0:-1:1] and exactly
240 exceptional curves over the algebraic closure, each parametrized by
a pair of forms (q, c) of degrees (2, 3) via z = q(x,y), w = c(x,y).

This module provides construction/serialization, a complete smoothness
test with singular witnesses, point counting over extensions, exceptional
curve enumeration, Frobenius orbit statistics, and the concurrency
analysis of points where many exceptional curves meet.

The smoothness test never leaves the base polynomial ring F_q[t]: on each
of the two affine charts of the (x:y) line it eliminates the fiber
coordinates (z, w) by hand -- the fiber equation is quadratic in w and
cubic in z, so critical points have closed forms -- and reduces the
existence of a singular point to gcd computations on univariate
polynomials.  This avoids building large extension fields and stays
correct for surfaces whose fibration is everywhere degenerate (in
characteristics 2 and 3 a vanishing discriminant form does not imply the
surface itself is singular).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd as _int_gcd

from . import excomb
from .gfield import Fq, FieldDesc, element_degree, embed, field_name, make_field, parse_field
from .polyfq import (
    BinForm,
    UniPoly,
    _add,
    _derivative,
    _divmod,
    _eval,
    _gcd,
    _mul,
    _one_root_split,
    _powmod,
    _scale,
    _sqrt_code,
    _sub,
    _trim,
    factor,
)

_FORM_DEGREES = (1, 2, 3, 4, 6)

# enumeration ceilings for the automatic depth policy of orbit_trace
_POINT_BUDGET = 1 << 22
_CURVE_BUDGET = 1 << 21
_MAX_AUTO_DEPTH = 7


# ---------------------------------------------------------------------------
# points and curves


@dataclass(frozen=True)
class SurfacePoint:
    """A point of P(1,1,2,3) over a finite field, in normalized codes.

    Normalization: x = 1 if possible, else y = 1, else the base point
    representative (0, 0, -1, 1).
    """

    field: FieldDesc
    x: int
    y: int
    z: int
    w: int

    @classmethod
    def make(cls, field: FieldDesc, x: int, y: int, z: int, w: int) -> "SurfacePoint":
        if x:
            l = field.inv(x)
            l2 = field.mul(l, l)
            return cls(field, 1, field.mul(y, l), field.mul(z, l2),
                       field.mul(w, field.mul(l2, l)))
        if y:
            l = field.inv(y)
            l2 = field.mul(l, l)
            return cls(field, 0, 1, field.mul(z, l2),
                       field.mul(w, field.mul(l2, l)))
        if not z and not w:
            raise ValueError("not a point of the weighted space")
        return cls(field, 0, 0, field.neg(1), 1)

    def codes(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.w)


@dataclass(frozen=True)
class ExceptionalCurve:
    """One exceptional curve, written over a splitting extension.

    ``degree`` is the least extension degree (over the surface's base
    field) containing every coefficient; it divides the level the curve
    was enumerated at.  ``quadratic`` and ``cubic`` are the forms q, c
    with z = q(x, y), w = c(x, y).
    """

    degree: int
    quadratic: BinForm
    cubic: BinForm


@dataclass(frozen=True)
class ConcurrencyReport:
    """Where exceptional curves crowd together.

    ``histogram`` maps a concurrency count m >= 2 to the number of points
    of the surface (over the algebraic closure) where exactly m of the
    240 curves meet.  ``points`` lists the points achieving the
    characteristic-dependent maximum, with that maximum count.
    """

    splitting_degree: int
    max_concurrency: int
    histogram: dict[int, int]
    points: tuple[tuple[SurfacePoint, int], ...]


# ---------------------------------------------------------------------------
# the surface


class Sextic:
    """A weighted sextic, with cached geometry."""

    __slots__ = ("field", "f1", "f2", "f3", "f4", "f6",
                 "_leads", "_curves", "_counts")

    def __init__(self, field: FieldDesc, f1, f2, f3, f4, f6):
        forms = []
        for deg, f in zip(_FORM_DEGREES, (f1, f2, f3, f4, f6)):
            if not isinstance(f, BinForm):
                f = BinForm(field, deg, list(f))
            if f.degree != deg:
                raise ValueError("form degree mismatch")
            if f.field != field:
                raise ValueError("coefficient field mismatch")
            forms.append(f)
        self.field = field
        self.f1, self.f2, self.f3, self.f4, self.f6 = forms
        self._leads = None
        self._curves = {}
        self._counts = {}

    # -- identity ---------------------------------------------------------

    def coeff_codes(self) -> tuple[int, ...]:
        out = []
        for f in (self.f1, self.f2, self.f3, self.f4, self.f6):
            out.extend(f.coeffs)
        return tuple(out)

    @classmethod
    def from_codes(cls, field: FieldDesc, codes) -> "Sextic":
        codes = list(codes)
        if len(codes) != 21:
            raise ValueError("need 21 coefficient codes")
        if any(not 0 <= c < field.order for c in codes):
            raise ValueError("coefficient code out of range")
        return cls(field, codes[0:2], codes[2:5], codes[5:9],
                   codes[9:14], codes[14:21])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Sextic) and self.field == other.field
                and self.coeff_codes() == other.coeff_codes())

    def __hash__(self) -> int:
        return hash((self.field, self.coeff_codes()))

    def __repr__(self) -> str:
        return f"Sextic({field_name(self.field)}, {list(self.coeff_codes())})"


def sextic_text(S: Sextic) -> str:
    """One-line form: field tag then the 21 codes, x-degree descending."""
    return " ".join([field_name(S.field)] + [str(c) for c in S.coeff_codes()])


def parse_sextic(text: str) -> Sextic:
    toks = text.split()
    if len(toks) != 22:
        raise ValueError("malformed surface line")
    field = parse_field(toks[0])
    try:
        codes = [int(t) for t in toks[1:]]
    except ValueError:
        raise ValueError("malformed surface line") from None
    return Sextic.from_codes(field, codes)


def base_change(S: Sextic, n: int) -> Sextic:
    """The same surface regarded over the degree-n extension."""
    if n < 1:
        raise ValueError("extension degree must be positive")
    F = S.field
    E = make_field(F.p, F.k * n)
    lift = _lift_fn(F, E)
    return Sextic(E, *(f.map_field(E, lift)
                       for f in (S.f1, S.f2, S.f3, S.f4, S.f6)))


def _lift_fn(src: FieldDesc, dst: FieldDesc):
    if src is dst or src == dst:
        return lambda c: c
    return lambda c: embed(Fq(src, c), dst).code


# ---------------------------------------------------------------------------
# Weierstrass data and the discriminant form


def _b_forms(S: Sextic):
    # completing the fiber cubic: z -> -z turns the equation into the
    # long Weierstrass shape with a1 = -f1, a2 = -f2, a3 = f3, a4 = f4,
    # a6 = -f6; the bi are the usual characteristic-free combinations
    F = S.field
    m1 = -1
    a1 = S.f1.scale(m1)
    a2 = S.f2.scale(m1)
    a3 = S.f3
    a4 = S.f4
    a6 = S.f6.scale(m1)
    b2 = a1 * a1 + a2.scale(4)
    b4 = a4.scale(2) + a1 * a3
    b6 = a3 * a3 + a6.scale(4)
    b8 = (a1 * a1 * a6 + (a2 * a6).scale(4) + (a1 * a3 * a4).scale(m1)
          + a2 * a3 * a3 + (a4 * a4).scale(m1))
    return b2, b4, b6, b8


def discriminant(S: Sextic) -> BinForm:
    """The degree-12 discriminant form of the fibration by (x : y)."""
    b2, b4, b6, b8 = _b_forms(S)
    out = (b2 * b2 * b8).scale(-1)
    out = out + (b4 * b4 * b4).scale(-8)
    out = out + (b6 * b6).scale(-27)
    return out + (b2 * b4 * b6).scale(9)


# ---------------------------------------------------------------------------
# smoothness
#
# On the chart y = 1 write Ei(t) = fi(t, 1).  A singular point with y != 0
# satisfies F = F_z = F_w = 0 (a degenerate point of its fiber) together
# with dF/dt = 0; the remaining partial then vanishes automatically by the
# weighted Euler identity x f_x + y f_y + 2z f_z + 3w f_w = 6 f.  The x != 0
# chart is the same computation with the coefficient lists reversed, and the
# base point x = y = 0 is checked directly (it is always smooth).
#
# Leads record where a singular point lives without building its field:
#   ("rational", chart, t0_code, branch)
#   ("ring", chart, modulus_coeffs, branch)   -- an irreducible factor h(t)


def _e_lists(S: Sextic, chart: int):
    forms = (S.f1, S.f2, S.f3, S.f4, S.f6)
    if chart == 0:
        return [_trim(list(reversed(f.coeffs))) for f in forms]
    return [_trim(list(f.coeffs)) for f in forms]


def _strip_common(F, g, d):
    # remove from g every factor shared with d (root-killing for spurious
    # denominators); g == [] is preserved
    if not g or not d:
        return g
    while True:
        c = _gcd(F, g, d)
        if len(c) <= 1:
            return g
        g = _divmod(F, g, c)[0]


def _subst_ratio(F, coeffs, num, den):
    # value of sum coeffs[j] * z^j at z = -num/den, cleared by den^(len-1)
    k = len(coeffs) - 1
    acc = []
    dpow = [ [1] ]
    for _ in range(k):
        dpow.append(_mul(F, dpow[-1], den))
    npow = [ [1] ]
    mnum = [F.neg(c) for c in num]
    for _ in range(k):
        npow.append(_mul(F, npow[-1], mnum))
    for j, cj in enumerate(coeffs):
        if cj:
            acc = _add(F, acc, _mul(F, cj, _mul(F, npow[j], dpow[k - j])))
    return acc


def _irr_factors(F, g):
    return [list(irr.coeffs) for irr, _ in factor(UniPoly(F, g))
            if irr.degree >= 1]


class _Ring:
    """F_q[t] modulo an irreducible h: a field presented as residues."""

    def __init__(self, F: FieldDesc, h):
        self.F = F
        self.h = list(h)
        self.deg = len(h) - 1

    def red(self, a):
        return _divmod(self.F, a, self.h)[1]

    def mul(self, a, b):
        return _divmod(self.F, _mul(self.F, a, b), self.h)[1]

    def add(self, a, b):
        return _add(self.F, a, b)

    def inv(self, a):
        return _powmod(self.F, a, self.F.order ** self.deg - 2, self.h)

    def proot(self, a):
        # p-th root: Frobenius is invertible on a finite field
        e = self.F.k * self.deg
        return _powmod(self.F, a, self.F.p ** (e - 1), self.h)


def _chart_leads_char2(F, E, chart):
    E1, E2, E3, E4, E6 = E
    D1, D2, D3, D4, D6 = (_derivative(F, e) for e in E)
    leads = []

    if E1:
        # fibers with E1(t) != 0: the fiber critical point is rational,
        # z0 = E3/E1, w0 = (z0^2 + E4)/E1; clear denominators
        u = E3
        v = _add(F, _mul(F, u, u), _mul(F, E4, _mul(F, E1, E1)))
        p2 = _mul(F, E1, E1)
        p3 = _mul(F, p2, E1)
        p4 = _mul(F, p2, p2)
        n1 = _mul(F, v, v)
        n1 = _add(F, n1, _mul(F, _mul(F, u, _mul(F, u, u)), p3))
        n1 = _add(F, n1, _mul(F, _mul(F, u, v), p3))
        n1 = _add(F, n1, _mul(F, _mul(F, _mul(F, u, u), E2), p4))
        n1 = _add(F, n1, _mul(F, _mul(F, v, E3), p3))
        n1 = _add(F, n1, _mul(F, _mul(F, u, E4), _mul(F, p4, E1)))
        n1 = _add(F, n1, _mul(F, E6, _mul(F, p4, p2)))
        n2 = _mul(F, _mul(F, u, v), D1)
        n2 = _add(F, n2, _mul(F, _mul(F, _mul(F, u, u), D2), p2))
        n2 = _add(F, n2, _mul(F, _mul(F, v, D3), E1))
        n2 = _add(F, n2, _mul(F, _mul(F, u, D4), p3))
        n2 = _add(F, n2, _mul(F, D6, p4))
        if not n1 and not n2:
            for t0 in range(F.order):
                if _eval(F, E1, t0):
                    leads.append(("rational", chart, t0, "crit"))
                    break
        else:
            g = _strip_common(F, _gcd(F, n1, n2), E1)
            if len(g) > 1:
                for h in _irr_factors(F, g):
                    leads.append(("ring", chart, tuple(h), "crit"))

        # the lone fiber where E1 vanishes (E1 has degree <= 1)
        if len(E1) == 2:
            t0 = F.mul(F.neg(E1[0]), F.inv(E1[1]))
            if not _eval(F, E3, t0):
                if _cusp_test_char2(F, E, (D1, D2, D3, D4, D6), t0):
                    leads.append(("rational", chart, t0, "cusp"))
        return leads

    # E1 == 0: the w-derivative is E3(t) on every fiber
    if E3:
        for h in _irr_factors(F, E3):
            R = _Ring(F, h)
            if _cusp_test_ring_char2(R, E, (D1, D2, D3, D4, D6)):
                leads.append(("ring", chart, tuple(h), "cusp"))
        return leads

    # E1 == E3 == 0: every fiber has a unique degenerate point
    # (z0, w0) = (sqrt(E4), sqrt(...)); the t-derivative there squares to
    # d = (E4*E2' + E6')^2 + E4*E4'^2
    s = _add(F, _mul(F, E4, D2), D6)
    d = _add(F, _mul(F, s, s), _mul(F, E4, _mul(F, D4, D4)))
    if not d:
        leads.append(("rational", chart, 0, "cusp"))
    elif len(d) > 1:
        for h in _irr_factors(F, d):
            leads.append(("ring", chart, tuple(h), "cusp"))
    return leads


def _cusp_values_char2(ops, E, D, sqrt):
    # shared cusp-point evaluation: elements e* of the coefficient field
    # (or a residue ring) with e1 = e3 = 0; returns the t-derivative value
    E1, E2, E3, E4, E6 = E
    D1, D2, D3, D4, D6 = D
    mul, add = ops
    e2, e4, e6 = E2, E4, E6
    z0 = sqrt(e4)
    z2 = mul(z0, z0)
    inner = add(add(mul(z2, z0), mul(z2, e2)), add(mul(z0, e4), e6))
    w0 = sqrt(inner)
    ft = add(mul(z2, D2), mul(w0, D3))
    ft = add(ft, mul(z0, D4))
    return add(ft, D6), z0, w0


def _cusp_test_char2(F, E, D, t0):
    Ev = [ _eval(F, e, t0) for e in E ]
    Dv = [ _eval(F, d, t0) for d in D ]
    # include the w*z*E1' term: E1 may vanish at t0 while E1' does not
    sqrt = lambda a: F.frob_p(a, F.k - 1)
    ft, z0, w0 = _cusp_values_char2((F.mul, F.add),
                                    Ev, Dv, sqrt)
    ft = F.add(ft, F.mul(F.mul(w0, z0), Dv[0]))
    return ft == 0


def _cusp_test_ring_char2(R, E, D):
    Ev = [R.red(list(e)) for e in E]
    Dv = [R.red(list(d)) for d in D]
    ft, z0, w0 = _cusp_values_char2((R.mul, R.add), Ev, Dv, R.proot)
    ft = R.add(ft, R.mul(R.mul(w0, z0), Dv[0]))
    return not ft


def _chart_leads_odd(F, E, chart):
    # complete the square in w; the fiber data is the cubic
    # H(z, t) = (E1 z + E3)^2 - 4 (z^3 + E2 z^2 + E4 z + E6)
    E1, E2, E3, E4, E6 = E
    p = F.p
    c3 = [F.neg(4 % p)]
    c2 = _sub(F, _mul(F, E1, E1), _scale(F, E2, 4 % p))
    c1 = _sub(F, _scale(F, _mul(F, E1, E3), 2), _scale(F, E4, 4 % p))
    c0 = _sub(F, _mul(F, E3, E3), _scale(F, E6, 4 % p))
    h_coeffs = [c0, c1, c2, c3]
    ht_coeffs = [_derivative(F, c0), _derivative(F, c1), _derivative(F, c2)]
    hz_coeffs = [c1, _scale(F, c2, 2), _scale(F, c3, 3 % p)]
    leads = []

    def linear_root_leads(r0, r1, branch, check_hz):
        # common zeros of H, H_t (and H_z, unless the caller constructed
        # z = -r0/r1 as a root of H_z already) along that section, with
        # denominators cleared by powers of r1
        polys = [_subst_ratio(F, h_coeffs, r0, r1),
                 _subst_ratio(F, ht_coeffs, r0, r1)]
        if check_hz:
            polys.append(_subst_ratio(F, hz_coeffs, r0, r1))
        if not any(polys):
            # singular along the whole section; any fiber avoiding the
            # roots of r1 works, and a rational one exists once the field
            # outgrows deg r1
            for d in range(1, 5):
                ext = make_field(F.p, F.k * d) if d > 1 else F
                lift = _lift_fn(F, ext)
                rl = [lift(c) for c in r1]
                for t0 in range(ext.order):
                    if _eval(ext, rl, t0):
                        if d == 1:
                            leads.append(("rational", chart, t0, branch))
                        else:
                            leads.append(("scan", chart, d, branch))
                        return
            return
        g = polys[0]
        for pn in polys[1:]:
            g = _gcd(F, g, pn)
        g = _strip_common(F, g, r1)
        if len(g) > 1:
            for h in _irr_factors(F, g):
                leads.append(("ring", chart, tuple(h), branch))

    if p == 3:
        # H_z = 2 c2 z + c1
        if c2:
            linear_root_leads(c1, _scale(F, c2, 2), "slide", False)
            both = _gcd(F, c2, c1)
            if len(both) > 1:
                for h in _irr_factors(F, both):
                    R = _Ring(F, h)
                    if _triple_test_char3(F, R, c0, ht_coeffs):
                        leads.append(("ring", chart, tuple(h), "triple"))
        elif c1:
            for h in _irr_factors(F, c1):
                R = _Ring(F, h)
                if _triple_test_char3(F, R, c0, ht_coeffs):
                    leads.append(("ring", chart, tuple(h), "triple"))
        else:
            d0 = _derivative(F, c0)
            if not d0:
                leads.append(("rational", chart, 0, "triple"))
            elif len(d0) > 1:
                for h in _irr_factors(F, d0):
                    leads.append(("ring", chart, tuple(h), "triple"))
            # nonzero constant d0: the cusp section never meets x_t = 0
        return leads

    # p >= 5: the z-resultant machinery, with the triple-root locus
    # handled by the rational formula z* = c2 / 12
    r1h = _add(F, _mul(F, c2, c2), _scale(F, c1, 12 % p))
    r1 = _scale(F, r1h, 2)
    r0 = _add(F, _mul(F, c2, c1), _scale(F, c0, 36 % p))
    if r1:
        linear_root_leads(r0, r1, "node", True)
    t1 = _add(F, _scale(F, _mul(F, _mul(F, c2, c2), c2), 2),
              _add(F, _scale(F, _mul(F, c1, c2), 36 % p), _scale(F, c0, 432 % p)))
    t3 = _add(F, _mul(F, ht_coeffs[2], _mul(F, c2, c2)),
              _add(F, _scale(F, _mul(F, ht_coeffs[1], c2), 12 % p),
                   _scale(F, ht_coeffs[0], 144 % p)))
    gt = _gcd(F, _gcd(F, t1, r1h), t3)
    if not t1 and not r1h and not t3:
        leads.append(("rational", chart, 0, "triple"))
    elif len(gt) > 1:
        for h in _irr_factors(F, gt):
            leads.append(("ring", chart, tuple(h), "triple"))
    return leads


def _triple_test_char3(F, R, c0, ht_coeffs):
    # fiber shape -z^3 + c0: the unique critical z is the cube root; the
    # surface is singular there iff H_t vanishes too
    z0 = R.proot(R.red(list(c0)))
    acc = R.mul(R.mul(z0, z0), R.red(list(ht_coeffs[2])))
    acc = R.add(acc, R.mul(z0, R.red(list(ht_coeffs[1]))))
    acc = R.add(acc, R.red(list(ht_coeffs[0])))
    return not _trim(acc)


def _singular_leads(S: Sextic):
    if S._leads is not None:
        return S._leads
    F = S.field
    leads = []
    # base point [0:0:-1:1]: f_z = 3z^2 = 3, f_w = 2w = 2 there; one of the
    # two is a unit in every characteristic, so it is always smooth -- but
    # verify rather than assume
    z0, w0 = F.neg(1), 1
    vals = _partials(S, F, 0, 0, z0, w0)
    if not any(vals):
        leads.append(("rational", -1, 0, "base"))
    for chart in (0, 1):
        E = _e_lists(S, chart)
        if F.p == 2:
            leads.extend(_chart_leads_char2(F, E, chart))
        else:
            leads.extend(_chart_leads_odd(F, E, chart))
    S._leads = leads
    return leads


def is_smooth(S: Sextic) -> bool:
    return not _singular_leads(S)


def _partials(S: Sextic, K: FieldDesc, x, y, z, w):
    """(f, f_x, f_y, f_z, f_w) at a point with coordinates in K."""
    lift = _lift_fn(S.field, K)
    f1, f2, f3, f4, f6 = (f.map_field(K, lift)
                          for f in (S.f1, S.f2, S.f3, S.f4, S.f6))
    mul, add = K.mul, K.add
    e = [f.eval_codes(x, y) for f in (f1, f2, f3, f4, f6)]
    z2 = mul(z, z)
    z3 = mul(z2, z)
    wz = mul(w, z)
    f_val = add(add(mul(w, w), z3), mul(wz, e[0]))
    f_val = add(f_val, mul(z2, e[1]))
    f_val = add(f_val, mul(w, e[2]))
    f_val = add(f_val, mul(z, e[3]))
    f_val = add(f_val, e[4])

    def dx(B):
        d = B.degree
        return BinForm(K, max(d - 1, 0),
                       [mul((d - i) % K.p, c) for i, c in enumerate(B.coeffs)][:-1]
                       or [0])

    def dy(B):
        d = B.degree
        return BinForm(K, max(d - 1, 0),
                       [mul(i % K.p, c) for i, c in enumerate(B.coeffs)][1:]
                       or [0])

    fx = fy = 0
    for B, zw in ((f1, wz), (f2, z2), (f3, w), (f4, z), (f6, 1)):
        fx = add(fx, mul(zw, dx(B).eval_codes(x, y)))
        fy = add(fy, mul(zw, dy(B).eval_codes(x, y)))
    fz = add(mul(3 % K.p, z2), add(mul(w, e[0]), add(mul(mul(2 % K.p, z), e[1]), e[3])))
    fw = add(mul(2 % K.p, w), add(mul(z, e[0]), e[2]))
    return f_val, fx, fy, fz, fw


def singular_witness(S: Sextic) -> SurfacePoint | None:
    """A singular point over its field of definition, or None if smooth."""
    leads = _singular_leads(S)
    if not leads:
        return None
    kind, chart, data, branch = leads[0]
    F = S.field
    if branch == "base":
        return SurfacePoint.make(F, 0, 0, F.neg(1), 1)
    if kind == "ring":
        h = list(data)
        K = make_field(F.p, F.k * (len(h) - 1))
        lift = _lift_fn(F, K)
        t0 = _one_root_split(K, [lift(c) for c in h])
    elif kind == "scan":
        K = make_field(F.p, F.k * data)
        t0 = None  # found below
    else:
        K, t0 = F, data
    E = [[_lift_fn(F, K)(c) for c in e] for e in _e_lists(S, chart)]
    E1, E2, E3, E4, E6 = E
    if t0 is None:
        # any fiber avoiding the denominator roots works
        p = K.p
        c2 = _sub(K, _mul(K, E1, E1), _scale(K, E2, 4 % p))
        c1 = _sub(K, _scale(K, _mul(K, E1, E3), 2), _scale(K, E4, 4 % p))
        den = (_scale(K, c2, 2) if p == 3
               else _scale(K, _add(K, _mul(K, c2, c2), _scale(K, c1, 12 % p)), 2))
        t0 = next(t for t in range(K.order) if _eval(K, den, t))
    ev = [_eval(K, e, t0) for e in E]
    dv = [_eval(K, _derivative(K, e), t0) for e in E]
    if K.p == 2:
        if branch == "crit":
            iv = K.inv(ev[0])
            z0 = K.mul(ev[2], iv)
            w0 = K.mul(K.add(K.mul(z0, z0), ev[3]), iv)
        else:
            sqrt = lambda a: K.frob_p(a, K.k - 1)
            _, z0, w0 = _cusp_values_char2((K.mul, K.add), ev, dv, sqrt)
    else:
        p = K.p
        c2v = K.sub(K.mul(ev[0], ev[0]), K.mul(4 % p, ev[1]))
        c1v = K.sub(K.mul(2 % p, K.mul(ev[0], ev[2])), K.mul(4 % p, ev[3]))
        c0v = K.sub(K.mul(ev[2], ev[2]), K.mul(4 % p, ev[4]))
        if branch == "slide":
            z0 = K.mul(K.neg(c1v), K.inv(K.mul(2 % p, c2v)))
        elif branch == "node":
            r1v = K.mul(2 % p, K.add(K.mul(c2v, c2v), K.mul(12 % p, c1v)))
            r0v = K.add(K.mul(c2v, c1v), K.mul(36 % p, c0v))
            z0 = K.mul(K.neg(r0v), K.inv(r1v))
        elif p == 3:
            z0 = K.frob_p(c0v, K.k - 1)
        else:
            z0 = K.mul(c2v, K.inv(12 % p))
        w0 = K.mul(K.neg(K.add(K.mul(ev[0], z0), ev[2])), K.inv(2 % p))
    x, y = (t0, 1) if chart == 0 else (1, t0)
    vals = _partials(S, K, x, y, z0, w0)
    if any(vals):
        raise AssertionError("witness reconstruction failed")
    return SurfacePoint.make(K, x, y, z0, w0)


# ---------------------------------------------------------------------------
# point counting


def _require_smooth(S: Sextic):
    if not is_smooth(S):
        raise ValueError("not a del Pezzo surface")


def count_points(S: Sextic, n: int = 1) -> int:
    """Rational points of the surface over the degree-n extension."""
    _require_smooth(S)
    if n in S._counts:
        return S._counts[n]
    F = S.field
    E = make_field(F.p, F.k * n)
    lift = _lift_fn(F, E)
    forms = [f.map_field(E, lift) for f in (S.f1, S.f2, S.f3, S.f4, S.f6)]
    N = E.order
    mul, add, inv = E.mul, E.add, E.inv
    total = 1  # the base point
    reps = [(1, t) for t in range(N)] + [(0, 1)]
    if E.p == 2:
        tr = bytearray(N)
        for c in range(1, N):
            acc, u = 0, c
            for _ in range(E.k):
                acc ^= u
                u = mul(u, u)
            tr[c] = acc
        for xc, yc in reps:
            e1, e2, e3, e4, e6 = (f.eval_codes(xc, yc) for f in forms)
            if e1 == 0 and e3 == 0:
                total += N  # w -> w^2 bijective: one w per z
                continue
            if e1 == 0:
                ib = inv(mul(e3, e3))
                for z in range(N):
                    c = add(add(mul(add(mul(add(z, e2), z), e4), z), e6), 0)
                    if not tr[mul(c, ib)]:
                        total += 2
                continue
            for z in range(N):
                b = add(mul(e1, z), e3)
                c = add(mul(add(mul(add(z, e2), z), e4), z), e6)
                if b == 0:
                    total += 1
                elif not tr[mul(c, inv(mul(b, b)))]:
                    total += 2
    else:
        chi = bytearray(N)  # 0: zero, 1: square, 2: non-square
        g = E.generator_code
        acc = 1
        for i in range(N - 1):  # even powers of a generator are the squares
            chi[acc] = 1 if i % 2 == 0 else 2
            acc = mul(acc, g)
        four = 4 % E.p
        for xc, yc in reps:
            e1, e2, e3, e4, e6 = (f.eval_codes(xc, yc) for f in forms)
            for z in range(N):
                b = add(mul(e1, z), e3)
                c = add(mul(add(mul(add(z, e2), z), e4), z), e6)
                disc = E.sub(mul(b, b), mul(four, c))
                v = chi[disc]
                total += 1 if v == 0 else (2 if v == 1 else 0)
    S._counts[n] = total
    return total


# ---------------------------------------------------------------------------
# exceptional curves


def _conv(E, a, b, out_len):
    out = [0] * out_len
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = E.add(out[i + j], E.mul(ai, bj))
    return out


def _sqrt_even_list(E, d):
    """Square root of a degree-6 coefficient list (x-descending), or None."""
    lead = 0
    while lead < 7 and not d[lead]:
        lead += 1
    if lead == 7:
        return [0, 0, 0, 0]
    if lead % 2:
        return None
    body = d[lead:]
    if E.pow(body[0], (E.order - 1) // 2) != 1:
        return None
    r0 = _sqrt_code(E, body[0])
    rdeg = (len(body) - 1) // 2
    r = [r0] + [0] * rdeg
    itwo = E.inv(E.add(r0, r0))
    for m in range(1, rdeg + 1):
        acc = body[m] if m < len(body) else 0
        for i in range(1, m):
            acc = E.sub(acc, E.mul(r[i], r[m - i]))
        r[m] = E.mul(acc, itwo)
    if _conv(E, r, r, len(body)) != list(body):
        return None
    out = [0, 0, 0, 0]
    for i, c in enumerate(r):
        out[lead // 2 + i] = c
    return out


class _Char2Solver:
    """Solve T^2 + A T = B for cubic-form coefficient vectors over F_2^e.

    The map is F_2-linear in the 4e coefficient bits of T; columns are
    reduced into an xor-echelon basis with source masks so each right-hand
    side costs one sweep.  The kernel is {0, A}.
    """

    def __init__(self, E: FieldDesc, a4):
        self.E = E
        self.e = E.k
        self.a4 = list(a4)
        self.abits = self._pack(a4)
        self.pivots = []
        mul = E.mul
        for j in range(4):
            for beta in range(self.e):
                code = 1 << beta
                img = [0] * 7
                img[2 * j] = mul(code, code)
                for i, ac in enumerate(a4):
                    if ac:
                        img[i + j] = E.add(img[i + j], mul(ac, code))
                self._insert(self._pack(img), 1 << (j * self.e + beta))

    def _pack(self, codes):
        out = 0
        for i, c in enumerate(codes):
            out |= c << (i * self.e)
        return out

    def _insert(self, v, m):
        for pb, pv, pm in self.pivots:
            if (v >> pb) & 1:
                v ^= pv
                m ^= pm
        if v:
            self.pivots.append((v.bit_length() - 1, v, m))

    def solve(self, b7):
        r = self._pack(b7)
        sol = 0
        for pb, pv, pm in self.pivots:
            if (r >> pb) & 1:
                r ^= pv
                sol ^= pm
        if r:
            return []
        mask = (1 << self.e) - 1
        first = tuple((sol >> (j * self.e)) & mask for j in range(4))
        if not self.abits:
            return [first]
        alt = sol ^ self.abits
        return [first, tuple((alt >> (j * self.e)) & mask for j in range(4))]


def exceptional_curves(S: Sextic, n: int = 1) -> list[ExceptionalCurve]:
    """All exceptional curves with coefficients in the degree-n extension.

    Quadratics are enumerated in coefficient-code order (x^2 coefficient
    outermost); for each, the cubic satisfies T^2 + (q f1 + f3) T +
    (q^3 + q^2 f2 + q f4 + f6) = 0, solved by a square root of the
    discriminant in odd characteristic and by F_2-linear algebra in
    characteristic 2.  Every returned pair is re-verified against the
    defining identity.
    """
    _require_smooth(S)
    if n in S._curves:
        return S._curves[n]
    F = S.field
    E = make_field(F.p, F.k * n)
    lift = _lift_fn(F, E)
    F1 = [lift(c) for c in S.f1.coeffs]
    F2c = [lift(c) for c in S.f2.coeffs]
    F3c = [lift(c) for c in S.f3.coeffs]
    F4c = [lift(c) for c in S.f4.coeffs]
    F6c = [lift(c) for c in S.f6.coeffs]
    f1_zero = not any(F1)
    f2_zero = not any(F2c)
    add = E.add
    N = E.order

    solver = _Char2Solver(E, F3c) if (E.p == 2 and f1_zero) else None
    itwo = None if E.p == 2 else E.inv(2 % E.p)

    out = []
    for s in itertools.product(range(N), repeat=3):
        if any(s):
            s2 = _conv(E, s, s, 5)
            b = _conv(E, s2, s, 7)
            if not f2_zero:
                for i, v in enumerate(_conv(E, s2, F2c, 7)):
                    b[i] = add(b[i], v)
        else:
            b = [0] * 7
        for i, v in enumerate(_conv(E, s, F4c, 7)):
            b[i] = add(b[i], v)
        for i, v in enumerate(F6c):
            b[i] = add(b[i], v)

        if f1_zero:
            a = F3c
        else:
            a = _conv(E, s, F1, 4)
            for i, v in enumerate(F3c):
                a[i] = add(a[i], v)

        if E.p == 2:
            sv = solver if f1_zero else _Char2Solver(E, a)
            sols = sv.solve(b)
        else:
            d = _conv(E, a, a, 7)
            four = 4 % E.p
            for i, v in enumerate(b):
                d[i] = E.sub(d[i], E.mul(four, v))
            if not any(d):
                sols = [tuple(E.mul(E.neg(c), itwo) for c in a)]
            else:
                r = _sqrt_even_list(E, d)
                if r is None:
                    sols = []
                else:
                    sols = [
                        tuple(E.mul(E.sub(r[i], a[i]), itwo) for i in range(4)),
                        tuple(E.mul(E.sub(E.neg(a[i]), r[i]), itwo)
                              for i in range(4)),
                    ]
        for t in sols:
            ident = _conv(E, t, t, 7)
            for i, v in enumerate(_conv(E, a, t, 7)):
                ident[i] = add(ident[i], v)
            for i, v in enumerate(b):
                ident[i] = add(ident[i], v)
            if any(ident):
                raise AssertionError("curve substitution identity failed")
            d_min = 1
            for c in itertools.chain(s, t):
                d_min = d_min * element_degree(Fq(E, c), F.k) // _int_gcd(
                    d_min, element_degree(Fq(E, c), F.k))
            out.append(ExceptionalCurve(d_min, BinForm(E, 2, list(s)),
                                        BinForm(E, 3, list(t))))
    out.sort(key=lambda c: (tuple(c.quadratic.coeffs), tuple(c.cubic.coeffs)))
    S._curves[n] = out
    return out


# ---------------------------------------------------------------------------
# orbit statistics and class identification


def _orbits_from_counts(counts):
    """Curve counts C_1..C_m over successive extensions -> orbit counts b_d.

    C_n = sum of d*b_d over d | n, so the b_d are recovered by a divisor
    recursion; a negative or non-divisible remainder means the counts do
    not come from a Galois action and is a hard error.
    """
    out = []
    for m, total in enumerate(counts, start=1):
        s = sum(d * out[d - 1] for d in range(1, m) if m % d == 0)
        rem = total - s
        if rem < 0 or rem % m:
            raise AssertionError("inconsistent curve counts")
        out.append(rem // m)
    return out


def orbit_trace(S: Sextic, depth_a: int | None = None,
                depth_b: int | None = None) -> excomb.OrbitTrace:
    """Point counts and curve-orbit counts packaged for identification.

    With explicit depths the requested levels are computed outright.  By
    default three levels of each are attempted within an enumeration
    budget, then the cheapest informative extension is added until the
    conjugacy class is pinned down or depth 7 is reached.
    """
    _require_smooth(S)
    q = S.field.order
    auto = depth_a is None and depth_b is None
    if depth_a is None:
        depth_a = 3
    if depth_b is None:
        depth_b = 3
        while depth_b > 1 and q ** (3 * depth_b) > _CURVE_BUDGET:
            depth_b -= 1
    if not 1 <= depth_a <= excomb.MAX_DEPTH or not 0 <= depth_b <= excomb.MAX_DEPTH:
        raise ValueError("depth out of range")

    a = [count_points(S, i) for i in range(1, depth_a + 1)]
    counts = [len(exceptional_curves(S, i)) for i in range(1, depth_b + 1)]

    b = _orbits_from_counts(counts)
    ot = excomb.OrbitTrace(q, tuple(a), tuple(b))
    if not auto:
        return ot

    while True:
        _, resolved = excomb.identify_type(ot)
        if resolved:
            return ot
        na, nb = len(a), len(b)
        cost_a = q ** (2 * (na + 1)) if na < _MAX_AUTO_DEPTH else None
        cost_b = q ** (3 * (nb + 1)) if nb < _MAX_AUTO_DEPTH else None
        if cost_a is not None and cost_a > _POINT_BUDGET:
            cost_a = None
        if cost_b is not None and cost_b > _CURVE_BUDGET:
            cost_b = None
        if cost_a is None and cost_b is None:
            return ot
        if cost_b is None or (cost_a is not None and cost_a <= cost_b):
            a.append(count_points(S, na + 1))
        else:
            counts.append(len(exceptional_curves(S, nb + 1)))
            b = _orbits_from_counts(counts)
        ot = excomb.OrbitTrace(q, tuple(a), tuple(b))


def identify_surface(S: Sextic, tables=None, depth_a: int | None = None,
                     depth_b: int | None = None):
    """(orbit data, candidate conjugacy classes, resolved flag)."""
    ot = orbit_trace(S, depth_a, depth_b)
    cands, resolved = excomb.identify_type(ot, tables)
    return ot, cands, resolved


# ---------------------------------------------------------------------------
# concurrency of exceptional curves


def _max_concurrency(p: int) -> int:
    return 16 if p == 2 else (12 if p == 3 else 10)


def eckardt_points(S: Sextic, tables=None) -> ConcurrencyReport:
    """Concurrency statistics of the 240 exceptional curves.

    The splitting extension is found from the identified conjugacy class
    candidates (least class order realizing all 240 curves).  Meeting
    points are located on the splitting P^1 by direct evaluation and, for
    conjugate pairs and triples off that line, through gcds of coordinate
    form differences, which have degree at most 3.
    """
    _require_smooth(S)
    if tables is None:
        tables = excomb.load_tables()
    _, cands, _ = identify_surface(S, tables)
    F = S.field
    orders = sorted({tables.e8[i].order for i in cands})
    curves = None
    n_split = None
    for n in orders:
        if F.k * n > 24 or F.order ** (3 * n) > (1 << 24):
            break
        cs = exceptional_curves(S, n)
        if len(cs) == 240:
            curves, n_split = cs, n
            break
    if curves is None:
        raise ValueError("extension out of range")
    E = make_field(F.p, F.k * n_split)
    N = E.order

    buckets: dict[tuple[int, int, int, int], int] = {}
    for c in curves:
        q_form, c_form = c.quadratic, c.cubic
        for xc, yc in itertools.chain(((1, t) for t in range(N)), ((0, 1),)):
            key = (xc, yc, q_form.eval_codes(xc, yc), c_form.eval_codes(xc, yc))
            buckets[key] = buckets.get(key, 0) + 1

    histogram: dict[int, int] = {}
    cap = _max_concurrency(F.p)
    top: list[tuple[SurfacePoint, int]] = []
    for (xc, yc, zc, wc), m in buckets.items():
        if m >= 2:
            histogram[m] = histogram.get(m, 0) + 1
            if m == cap:
                top.append((SurfacePoint.make(E, xc, yc, zc, wc), m))

    # meeting points off the splitting line: common roots of coordinate
    # differences; a pair of distinct curves shares a locus of degree <= 3
    ext_roots: dict[int, set[int]] = {}
    for i in range(len(curves)):
        qi, ci = curves[i].quadratic.coeffs, curves[i].cubic.coeffs
        for j in range(i + 1, len(curves)):
            dq = _trim([E.sub(a, b) for a, b in
                        zip(reversed(qi), reversed(curves[j].quadratic.coeffs))])
            dc = _trim([E.sub(a, b) for a, b in
                        zip(reversed(ci), reversed(curves[j].cubic.coeffs))])
            g = _gcd(E, dq, dc)
            if len(g) - 1 >= 2:
                for irr, _m in factor(UniPoly(E, g)):
                    if irr.degree >= 2:
                        ext_roots.setdefault(irr.degree, set()).add(
                            tuple(irr.coeffs))
    for d, mods in sorted(ext_roots.items()):
        try:
            Ed = make_field(F.p, F.k * n_split * d)
        except ValueError:
            raise ValueError("extension out of range") from None
        lift = _lift_fn(E, Ed)
        lifted_curves = [(c.quadratic.map_field(Ed, lift),
                          c.cubic.map_field(Ed, lift)) for c in curves]
        seen = set()
        for mod in mods:
            root = _one_root_split(Ed, [lift(c) for c in mod])
            for _ in range(d):
                if root in seen:
                    break
                seen.add(root)
                counts: dict[tuple[int, int], int] = {}
                for qf, cf in lifted_curves:
                    key = (qf.eval_codes(root, 1), cf.eval_codes(root, 1))
                    counts[key] = counts.get(key, 0) + 1
                for (zc, wc), m in counts.items():
                    if m >= 2:
                        histogram[m] = histogram.get(m, 0) + 1
                        if m == cap:
                            top.append((SurfacePoint.make(Ed, root, 1, zc, wc), m))
                root = Ed.frob_p(root, F.k * n_split)

    if histogram and max(histogram) > cap:
        raise AssertionError("concurrency bound exceeded")
    top.sort(key=lambda t: (t[0].field.k, t[0].codes()))
    return ConcurrencyReport(n_split, cap, histogram, tuple(top))
