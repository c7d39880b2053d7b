"""Univariate polynomials and binary forms over the shipped finite fields.

Coefficients are stored as canonical integer codes throughout; the public
wrappers (UniPoly, BinForm) are thin views over code lists plus a field
descriptor.  Everything here is deterministic: factorization splits with
seeds tried in canonical code order, so repeated runs (and parallel
workers) produce byte-identical output.
"""

from __future__ import annotations

from .gfield import FieldDesc, Fq

# ---------------------------------------------------------------------------
# raw helpers on (desc, list-of-codes); constant term first


def _trim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


def _add(F: FieldDesc, a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return _trim(out)


def _sub(F: FieldDesc, a, b):
    return _add(F, a, [F.neg(c) for c in b])


def _scale(F: FieldDesc, a, s):
    if not s:
        return []
    return [F.mul(c, s) for c in a]


def _mul(F: FieldDesc, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _divmod(F: FieldDesc, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = F.inv(b[-1])
    while a and len(a) >= len(b):
        c = F.mul(a[-1], inv)
        d = len(a) - len(b)
        q[d] = c
        for i in range(len(b)):
            a[d + i] = F.sub(a[d + i], F.mul(c, b[i]))
        _trim(a)
    return _trim(q), a


def _monic(F: FieldDesc, a):
    if not a or a[-1] == 1:
        return list(a)
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def _gcd(F: FieldDesc, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(F, a, b)[1]
    return _monic(F, a)


def _powmod(F: FieldDesc, base, e, mod):
    r = [1]
    base = _divmod(F, base, mod)[1]
    while e:
        if e & 1:
            r = _divmod(F, _mul(F, r, base), mod)[1]
        e >>= 1
        if e:
            base = _divmod(F, _mul(F, base, base), mod)[1]
    return r


def _eval(F: FieldDesc, a, x):
    r = 0
    for c in reversed(a):
        r = F.add(F.mul(r, x), c)
    return r


def _derivative(F: FieldDesc, a):
    p = F.p
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], i % p))
    return _trim(out)


def _pth_root(F: FieldDesc, a):
    # a has nonzero coefficients only at indices divisible by p
    p, k = F.p, F.k
    out = []
    for i in range(0, len(a), p):
        out.append(F.frob_p(a[i], k - 1))
    return _trim(out)


def _poly_code(F: FieldDesc, a) -> int:
    code = 0
    for c in reversed(a):
        code = code * F.order + c
    return code


# ---------------------------------------------------------------------------
# public wrappers


class UniPoly:
    """Univariate polynomial; coeffs are codes, constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs):
        self.field = field
        self.coeffs = _trim([c.code if isinstance(c, Fq) else int(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"UniPoly({self.field.p}^{self.field.k}, {self.coeffs})"

    def __call__(self, x) -> Fq:
        code = x.code if isinstance(x, Fq) else int(x) % self.field.p
        return Fq(self.field, _eval(self.field, self.coeffs, code))


class BinForm:
    """Homogeneous binary form of tagged degree d.

    coeffs[i] is the code of the coefficient of x^(d-i) * y^i; the zero
    form keeps its degree tag.
    """

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: FieldDesc, degree: int, coeffs):
        coeffs = [c.code if isinstance(c, Fq) else int(c) for c in coeffs]
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient list must have degree+1 entries")
        self.field = field
        self.degree = degree
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinForm)
            and self.field == other.field
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.degree, tuple(self.coeffs)))

    def __repr__(self) -> str:
        return f"BinForm({self.field.p}^{self.field.k}, {self})"

    def evaluate(self, x, y) -> Fq:
        xc = x.code if isinstance(x, Fq) else int(x) % self.field.p
        yc = y.code if isinstance(y, Fq) else int(y) % self.field.p
        return Fq(self.field, self.eval_codes(xc, yc))

    def eval_codes(self, xc: int, yc: int) -> int:
        # Horner in y, with the matching x-power maintained alongside
        F = self.field
        acc = 0
        xpow = 1
        for c in reversed(self.coeffs):
            acc = F.mul(acc, yc)
            if c:
                acc = F.add(acc, F.mul(c, xpow))
            xpow = F.mul(xpow, xc)
        return acc

    def __add__(self, other: "BinForm") -> "BinForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        F = self.field
        return BinForm(
            F, self.degree, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "BinForm") -> "BinForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        F = self.field
        return BinForm(
            F, self.degree, [F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other: "BinForm") -> "BinForm":
        F = self.field
        d = self.degree + other.degree
        out = [0] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinForm(F, d, out)

    def scale(self, s) -> "BinForm":
        F = self.field
        sc = s.code if isinstance(s, Fq) else int(s) % F.p
        return BinForm(F, self.degree, [F.mul(c, sc) for c in self.coeffs])

    def map_field(self, target: FieldDesc, embed_fn) -> "BinForm":
        return BinForm(
            target, self.degree, [embed_fn(c) for c in self.coeffs]
        )


def form_str(B: BinForm) -> str:
    """Render in the x-degree-descending monomial convention."""
    parts = []
    for i, c in enumerate(B.coeffs):
        if not c:
            continue
        xs, ys = B.degree - i, i
        bits = []
        if xs:
            bits.append("x" if xs == 1 else f"x^{xs}")
        if ys:
            bits.append("y" if ys == 1 else f"y^{ys}")
        if not bits or c != 1:
            bits.insert(0, str(c))
        parts.append("*".join(bits))
    return " + ".join(parts) if parts else "0"


def parse_form(field: FieldDesc, text: str, degree: int | None = None) -> BinForm:
    """Parse the form grammar: terms like ``5*x^3*y^3`` joined by ``+``."""
    text = text.strip()
    terms = []
    max_deg = 0
    if text and text != "0":
        for raw in text.split("+"):
            coeff = 1
            xs = ys = 0
            for piece in raw.strip().split("*"):
                piece = piece.strip()
                if not piece:
                    raise ValueError(f"bad form term: {raw!r}")
                if piece[0] == "x":
                    xs = int(piece[2:]) if piece.startswith("x^") else 1
                elif piece[0] == "y":
                    ys = int(piece[2:]) if piece.startswith("y^") else 1
                else:
                    coeff = int(piece)
            terms.append((coeff, xs, ys))
            max_deg = max(max_deg, xs + ys)
    d = degree if degree is not None else max_deg
    coeffs = [0] * (d + 1)
    for coeff, xs, ys in terms:
        if xs + ys != d:
            raise ValueError("form is not homogeneous of the declared degree")
        code = coeff % field.p if field.k == 1 else coeff
        if not 0 <= code < field.order:
            raise ValueError(f"coefficient code out of range: {coeff}")
        coeffs[ys] = field.add(coeffs[ys], code)
    return BinForm(field, d, coeffs)


# ---------------------------------------------------------------------------
# factorization


def factor(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, code)."""
    if f.is_zero():
        raise ValueError("cannot factor zero")
    F = f.field
    work = _monic(F, f.coeffs)
    out = []
    for part, mult in _squarefree(F, work):
        for irr in _factor_squarefree(F, part):
            out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]) - 1, _poly_code(F, t[0])))
    return [(UniPoly(F, c), m) for c, m in out]


def _squarefree(F: FieldDesc, f) -> list[tuple[list[int], int]]:
    if len(f) - 1 == 0:
        return []
    out = []
    d = _derivative(F, f)
    if not d:
        # f = v(x^p)
        for part, mult in _squarefree(F, _pth_root(F, f)):
            out.append((part, mult * F.p))
        return out
    c = _gcd(F, f, d)
    w = _divmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(F, w, c)
        part = _divmod(F, w, y)[0]
        if len(part) > 1:
            out.append((part, i))
        w = y
        c = _divmod(F, c, y)[0]
        i += 1
    if len(c) > 1:
        for part, mult in _squarefree(F, _pth_root(F, c)):
            out.append((part, mult * F.p))
    return out


def _factor_squarefree(F: FieldDesc, f) -> list[list[int]]:
    # distinct-degree, then deterministic equal-degree splitting
    out = []
    q = F.order
    h = [0, 1]
    rest = list(f)
    d = 0
    while len(rest) - 1 > 0:
        d += 1
        if 2 * d > len(rest) - 1:
            out.append(rest)
            break
        h = _powmod(F, h, q, rest)
        g = _gcd(F, _sub(F, h, [0, 1]), rest)
        if len(g) > 1:
            out.extend(_split_equal_degree(F, g, d))
            rest = _divmod(F, rest, g)[0]
            h = _divmod(F, h, rest)[1]
    return out


def _split_equal_degree(F: FieldDesc, f, d) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    q, p = F.order, F.p
    stack = [f]
    done = []
    while stack:
        g = stack.pop()
        if len(g) - 1 == d:
            done.append(g)
            continue
        for s in _seed_polys(F, len(g) - 1):
            if p == 2:
                # additive trace of s over F_2 splits in char 2
                t = []
                w = _divmod(F, s, g)[1]
                for _ in range(d * F.k):
                    t = _add(F, t, w)
                    w = _divmod(F, _mul(F, w, w), g)[1]
            else:
                t = _powmod(F, s, (q**d - 1) // 2, g)
                t = _sub(F, t, [1])
            h = _gcd(F, t, g) if t else []
            if h and 0 < len(h) - 1 < len(g) - 1:
                stack.append(h)
                stack.append(_divmod(F, g, h)[0])
                break
    return done


def _seed_polys(F: FieldDesc, deg_bound: int):
    # Monomial seeds c*y^j with c running over the power basis come first: in
    # char 2 the splitting criterion is an absolute-trace pairing, and seeds
    # of the shape y + c shift every root's trace by the same amount, so the
    # basis multipliers are what actually separates roots.  Enumerating all
    # polynomials by code can stay inside the useless family for ~order
    # steps before reaching the first basis multiple.
    for j in range(1, deg_bound):
        for t in range(F.k):
            s = [0] * j + [F.p**t]
            yield s
    # fall back to everything non-constant, in canonical code order
    seed = F.order
    while True:
        out = []
        code = seed
        for _ in range(deg_bound):
            code, c = divmod(code, F.order)
            out.append(c)
        yield _trim(out)
        seed += 1


# ---------------------------------------------------------------------------
# roots and quadratics


def projective_roots(B: BinForm, n: int):
    """Roots of B in P^1(F_{q^n}) as ((x0, y0), multiplicity) pairs.

    Points are Fq pairs over the degree-n extension, normalized to y0 = 1
    or (1, 0), sorted by code; the total multiplicity is at most deg B.
    """
    from . import gfield

    if B.is_zero():
        raise ValueError("identically zero")
    F = B.field
    ext = gfield.make_field(F.p, F.k * n)
    one = Fq(ext, 1)
    out = []
    # dehomogenize at y = 1; the x-degree drop is the multiplicity of [1:0]
    g = _trim(list(reversed(B.coeffs)))
    drop = B.degree - (len(g) - 1)
    if drop:
        out.append(((one, Fq(ext, 0)), drop))
    # factor over the base field, then split factors whose degree divides n
    for irr, mult in factor(UniPoly(F, g)):
        e = irr.degree
        if n % e:
            continue
        lifted_irr = [gfield.embed(Fq(F, c), ext).code for c in irr.coeffs]
        root = _one_root_split(ext, lifted_irr)
        for _ in range(e):
            out.append(((Fq(ext, root), one), mult))
            root = ext.frob_p(root, F.k)
    affine = sorted(
        ((pt, m) for pt, m in out if pt[1].code == 1), key=lambda t: t[0][0].code
    )
    inf = [(pt, m) for pt, m in out if pt[1].code == 0]
    return affine + inf


def _one_root_split(ext: FieldDesc, f) -> int:
    """One root of f (which splits completely over ext), deterministically."""
    f = _monic(ext, f)
    while len(f) - 1 > 1:
        for s in _seed_polys(ext, len(f) - 1):
            if ext.p == 2:
                t = []
                w = _divmod(ext, s, f)[1]
                for _ in range(ext.k):
                    t = _add(ext, t, w)
                    w = _divmod(ext, _mul(ext, w, w), f)[1]
            else:
                t = _powmod(ext, s, (ext.order - 1) // 2, f)
                t = _sub(ext, t, [1])
            h = _gcd(ext, t, f) if t else []
            if h and 0 < len(h) - 1 < len(f) - 1:
                g = _divmod(ext, f, h)[0]
                f = h if len(h) <= len(g) else g
                break
    return ext.mul(ext.neg(f[0]), ext.inv(f[1]))


def quadratic_root_count(a: Fq, b: Fq, c: Fq) -> int:
    """Distinct roots of a*w^2 + b*w + c in the coefficient field."""
    F = a.desc
    if not a.code:
        raise ValueError("not quadratic")
    if F.p == 2:
        if not b.code:
            return 1  # w -> w^2 is a bijection
        # roots exist iff the absolute trace of a*c/b^2 vanishes
        t = F.mul(F.mul(a.code, c.code), F.inv(F.mul(b.code, b.code)))
        tr = 0
        w = t
        for _ in range(F.k):
            tr ^= w
            w = F.mul(w, w)
        return 2 if tr == 0 else 0
    disc = F.sub(F.mul(b.code, b.code), F.mul(4 % F.p, F.mul(a.code, c.code)))
    if not disc:
        return 1
    return 2 if F.pow(disc, (F.order - 1) // 2) == 1 else 0


def binform_sqrt(B: BinForm) -> BinForm | None:
    """A form t with t*t = B, if B is a perfect square; None otherwise."""
    if B.degree % 2:
        raise ValueError("no square root possible")
    F = B.field
    m = B.degree // 2
    if B.is_zero():
        return BinForm(F, m, [0] * (m + 1))
    if F.p == 2:
        if any(B.coeffs[i] for i in range(1, B.degree + 1, 2)):
            return None
        return BinForm(
            F, m, [F.frob_p(B.coeffs[2 * j], F.k - 1) for j in range(m + 1)]
        )
    g = _trim(list(reversed(B.coeffs)))
    drop = B.degree - (len(g) - 1)
    if drop % 2:
        return None
    lead = g[-1]
    if F.pow(lead, (F.order - 1) // 2) != 1:
        return None
    root = _sqrt_code(F, lead)
    acc = [root]
    for irr, mult in factor(UniPoly(F, g)):
        if mult % 2:
            return None
        piece = [1]
        for _ in range(mult // 2):
            piece = _mul(F, piece, irr.coeffs)
        acc = _mul(F, acc, piece)
    # rehomogenize: t = y^(drop/2) * (acc homogenized), so x^i lands at index m-i
    coeffs = [0] * (m + 1)
    for i, c in enumerate(acc):
        coeffs[m - i] = c
    return BinForm(F, m, coeffs)


def _sqrt_code(F: FieldDesc, a: int) -> int:
    """Least-code square root of a (a must be a square)."""
    if not a:
        return 0
    if F.p == 2:
        return F.frob_p(a, F.k - 1)
    if F._exp is None and F.order <= 1 << 20:
        F._build_tables()
    if F._exp is not None:
        l = F._log[a]
        r = F._exp[l // 2] if l % 2 == 0 else None
        if r is None:
            raise ValueError("not a square")
        return min(r, F.neg(r))
    # Tonelli-Shanks on codes
    q = F.order
    if q % 4 == 3:
        r = F.pow(a, (q + 1) // 4)
        return min(r, F.neg(r))
    # general case: factor out the 2-part of q-1
    s, t = 0, q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    z = 2
    while F.pow(z, (q - 1) // 2) == 1:
        z += 1
    mcur = s
    ccur = F.pow(z, t)
    tcur = F.pow(a, t)
    r = F.pow(a, (t + 1) // 2)
    while tcur != 1:
        i, tmp = 0, tcur
        while tmp != 1:
            tmp = F.mul(tmp, tmp)
            i += 1
        b = F.pow(ccur, 1 << (mcur - i - 1))
        mcur = i
        ccur = F.mul(b, b)
        tcur = F.mul(tcur, ccur)
        r = F.mul(r, b)
    return min(r, F.neg(r))
