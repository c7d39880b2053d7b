"""Finite-field towers F_{p^k} with fixed moduli.

Every field used anywhere in the package comes from one shipped modulus
table (``data/conway.dat``), built so that canonical generators are
norm-compatible along tower paths: for m | n the generator of F_{p^m} is
the ((p^n-1)/(p^m-1))-th power of the generator of F_{p^n}.  That single
property makes embeddings canonical and composable and lets Frobenius
orbits, subfield membership, and element degrees work on plain integers.

An element is its canonical integer code sum(c_i * p^i) for the coefficient
vector (c_0, ..., c_{k-1}) over the generator-power basis.  Fields with at
most 2^20 elements build discrete-log tables on first multiplicative use,
after which mul/inv/pow/Frobenius are O(1) array lookups; larger fields
fall back to digit-vector polynomial arithmetic.  All per-field state is
immutable once built, so descriptors are safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _data

DLOG_LIMIT = 1 << 20

_FIELDS: dict[tuple[int, int], "FieldDesc"] = {}
_MODULI: dict[tuple[int, int], tuple[int, ...]] | None = None
_EMBED_CACHE: dict[tuple[int, int, int], list[int]] = {}


def _moduli() -> dict[tuple[int, int], tuple[int, ...]]:
    global _MODULI
    if _MODULI is None:
        table = {}
        for line in _data.text("conway.dat").splitlines():
            parts = line.split()
            if parts:
                table[(int(parts[0]), int(parts[1]))] = tuple(int(c) for c in parts[2:])
        _MODULI = table
    return _MODULI


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldDesc:
    """One field F_{p^k}: modulus, arithmetic on integer codes, cached tables."""

    __slots__ = ("p", "k", "modulus", "order", "_exp", "_log", "_frob", "_red")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus  # constant term first, monic, length k+1
        self.order = p**k
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._frob: dict[int, list[int]] = {}
        self._red: list[list[int]] | None = None

    def __repr__(self) -> str:
        return f"FieldDesc({self.p}^{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldDesc) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __reduce__(self):
        # pickle as a lookup so workers share the memoized descriptor
        return (make_field, (self.p, self.k))

    @property
    def generator_code(self) -> int:
        """Code of the canonical generator (the modulus root; k=1: the primitive root)."""
        if self.k == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    # -- digit helpers ---------------------------------------------------

    def digits(self, code: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            code, d = divmod(code, p)
            out.append(d)
        return out

    def undigits(self, ds) -> int:
        code = 0
        for d in reversed(ds):
            code = code * self.p + d
        return code

    def element(self, code: int) -> "Fq":
        return Fq(self, code % self.order)

    # -- code arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out = 0
        mult = 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += (da + db) % p * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out = 0
        mult = 1
        while a:
            a, da = divmod(a, p)
            out += (-da) % p * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        exp = self._exp
        if exp is None and self.order <= DLOG_LIMIT:
            self._build_tables()
            exp = self._exp
        if exp is not None:
            return exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self._exp is None and self.order <= DLOG_LIMIT:
            self._build_tables()
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self._inv_poly(a)

    def pow(self, a: int, e: int) -> int:
        n = self.order - 1
        if not a:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        if self._exp is None and self.order <= DLOG_LIMIT:
            self._build_tables()
        if self._exp is not None:
            return self._exp[self._log[a] * (e % n) % n]
        if e < 0:
            return self._pow_poly(self._inv_poly(a), -e)
        return self._pow_poly(a, e % n if e >= n else e)

    def frob_p(self, a: int, j: int) -> int:
        """a^(p^j), with j taken mod k."""
        j %= self.k
        if j == 0 or a == 0 or self.k == 1:
            return a
        if self._exp is None and self.order <= DLOG_LIMIT:
            self._build_tables()
        if self._exp is not None:
            n = self.order - 1
            return self._exp[self._log[a] * pow(self.p, j, n) % n]
        images = self._frob.get(j)
        if images is None:
            base = self._pow_poly(self.p, self.p**j)
            images = [self._pow_poly(base, i) for i in range(self.k)]
            self._frob[j] = images
        return self._linear_apply(a, images)

    # -- internals -------------------------------------------------------

    def _build_tables(self) -> None:
        if self._exp is not None:
            return
        p, k, n = self.p, self.k, self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        if p == 2:
            mask = self.undigits(self.modulus[:k]) | (1 << k)
            c = 1
            for i in range(n):
                exp[i] = c
                log[c] = i
                c <<= 1
                if c >> k & 1:
                    c ^= mask
        elif k == 1:
            g = self.generator_code
            c = 1
            for i in range(n):
                exp[i] = c
                log[c] = i
                c = c * g % p
        else:
            sub_rows = [[(-t * m) % p for m in self.modulus[:k]] for t in range(p)]
            cur = [0] * k
            cur[0] = 1
            for i in range(n):
                code = self.undigits(cur)
                exp[i] = code
                log[code] = i
                top = cur[-1]
                cur[1:] = cur[:-1]
                cur[0] = 0
                if top:
                    row = sub_rows[top]
                    for t in range(k):
                        cur[t] = (cur[t] + row[t]) % p
        exp[n : 2 * n] = exp[:n]
        self._log = log
        self._exp = exp

    def _red_rows(self) -> list[list[int]]:
        # digit vectors of x^(k+j) reduced mod the modulus, j = 0..k-2
        if self._red is None:
            p, k = self.p, self.k
            rows = []
            cur = [(-c) % p for c in self.modulus[:k]]  # x^k
            for _ in range(k - 1):
                rows.append(list(cur))
                top = cur[-1]
                cur[1:] = cur[:-1]
                cur[0] = 0
                if top:
                    for t in range(k):
                        cur[t] = (cur[t] - top * self.modulus[t]) % p
            rows.append(list(cur))
            self._red = rows
        return self._red

    def _mul_poly(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.digits(a), self.digits(b)
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] += x * y
        red = self._red_rows()
        for j in range(2 * k - 2, k - 1, -1):
            c = conv[j] % p
            if c:
                row = red[j - k]
                for t in range(k):
                    conv[t] += c * row[t]
        return self.undigits([conv[t] % p for t in range(k)])

    def _pow_poly(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_poly(r, a) if r != 1 else a
            e >>= 1
            if e:
                a = self._mul_poly(a, a)
        return r

    def _inv_poly(self, a: int) -> int:
        # extended Euclid in F_p[x]
        p = self.p
        r0 = list(self.modulus)
        r1 = self.digits(a)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [1]
        while r1:
            linv = pow(r1[-1], p - 2, p)
            q = [0] * (len(r0) - len(r1) + 1) if len(r0) >= len(r1) else []
            r = list(r0)
            while r and len(r) >= len(r1):
                c = r[-1] * linv % p
                d = len(r) - len(r1)
                q[d] = c
                for i in range(len(r1)):
                    r[d + i] = (r[d + i] - c * r1[i]) % p
                while r and not r[-1]:
                    r.pop()
            new_s = list(s0)
            prod_len = len(q) + len(s1) - 1 if q and s1 else 0
            if prod_len > len(new_s):
                new_s += [0] * (prod_len - len(new_s))
            for i, qc in enumerate(q):
                if qc:
                    for j, sc in enumerate(s1):
                        new_s[i + j] = (new_s[i + j] - qc * sc) % p
            r0, r1 = r1, r
            s0, s1 = s1, new_s
        cinv = pow(r0[-1], p - 2, p)
        s0 = [c * cinv % p for c in s0]
        if len(s0) < self.k:
            s0 += [0] * (self.k - len(s0))
        return self.undigits(s0[: self.k])

    def _linear_apply(self, a: int, images: list[int]) -> int:
        p, k = self.p, self.k
        if p == 2:
            out = 0
            i = 0
            while a:
                if a & 1:
                    out ^= images[i]
                a >>= 1
                i += 1
            return out
        vec = [0] * k
        i = 0
        while a:
            a, c = divmod(a, p)
            if c:
                img = self.digits(images[i])
                for t in range(k):
                    vec[t] += c * img[t]
            i += 1
        return self.undigits([v % p for v in vec])


class Fq:
    """A field element: a descriptor plus its canonical integer code."""

    __slots__ = ("desc", "code")

    def __init__(self, desc: FieldDesc, code: int):
        self.desc = desc
        self.code = code

    @property
    def coeffs(self) -> list[int]:
        return self.desc.digits(self.code)

    def _coerce(self, other) -> int:
        if isinstance(other, Fq):
            if other.desc is not self.desc and other.desc != self.desc:
                raise ValueError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.desc.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.mul(self.code, self.desc.inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return Fq(self.desc, self.desc.mul(b, self.desc.inv(self.code)))

    def __neg__(self):
        return Fq(self.desc, self.desc.neg(self.code))

    def __pow__(self, e: int):
        return Fq(self.desc, self.desc.pow(self.code, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, Fq):
            return self.desc == other.desc and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.desc.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.desc.p, self.desc.k, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __repr__(self) -> str:
        return f"Fq({self.desc.p}^{self.desc.k}:{self.code})"


@dataclass(frozen=True)
class OrbitSpec:
    """Requested closed-point counts: counts[j-1] points of degree j, total degree <= 8."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(n) for n in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) < 1 or any(n < 0 for n in counts):
            raise ValueError("invalid orbit specification")
        if sum((j + 1) * n for j, n in enumerate(counts)) > 8:
            raise ValueError("invalid orbit specification")

    @property
    def total_degree(self) -> int:
        return sum((j + 1) * n for j, n in enumerate(self.counts))


def make_field(p: int, k: int) -> FieldDesc:
    """The unique descriptor for F_{p^k} (shipped-modulus presentation)."""
    key = (p, k)
    desc = _FIELDS.get(key)
    if desc is not None:
        return desc
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError("invalid characteristic")
    modulus = _moduli().get(key)
    if modulus is None or not 1 <= k <= 24:
        raise ValueError("field out of range")
    desc = FieldDesc(p, k, modulus)
    _FIELDS[key] = desc
    return desc


def frobenius(x: Fq, t: int, base_degree: int = 1) -> Fq:
    """x^(q^t) for q = p^base_degree."""
    k = x.desc.k
    if base_degree < 1 or k % base_degree:
        raise ValueError("incoherent tower")
    return Fq(x.desc, x.desc.frob_p(x.code, (t * base_degree) % k))


def embed(x: Fq, target: FieldDesc) -> Fq:
    """The canonical injection F_{p^m} -> F_{p^n} for m | n."""
    src = x.desc
    m, n = src.k, target.k
    if src.p != target.p or n % m:
        raise ValueError("no canonical embedding")
    if m == n:
        return Fq(target, x.code)
    key = (src.p, m, n)
    images = _EMBED_CACHE.get(key)
    if images is None:
        # generator goes to generator^((p^n-1)/(p^m-1)); norm-compatible
        # moduli make that a root of the source modulus, so powers of it
        # give a ring homomorphism on the whole basis.
        g = target.pow(target.generator_code, (target.order - 1) // (src.order - 1))
        images = [target.pow(g, i) for i in range(m)]
        _EMBED_CACHE[key] = images
    if src.p == 2:
        out = 0
        a, i = x.code, 0
        while a:
            if a & 1:
                out ^= images[i]
            a >>= 1
            i += 1
        return Fq(target, out)
    vec = [0] * n
    a, i = x.code, 0
    while a:
        a, c = divmod(a, src.p)
        if c:
            img = target.digits(images[i])
            for t in range(n):
                vec[t] += c * img[t]
        i += 1
    return Fq(target, target.undigits([v % src.p for v in vec]))


def element_degree(x: Fq, base_degree: int = 1) -> int:
    """Least m >= 1 with x^(q^m) = x, q = p^base_degree."""
    k = x.desc.k
    if base_degree < 1 or k % base_degree:
        raise ValueError("incoherent tower")
    rel = k // base_degree
    for m in range(1, rel + 1):
        if rel % m == 0 and x.desc.frob_p(x.code, m * base_degree % k) == x.code:
            return m
    raise AssertionError("unreachable: x is fixed by the full Frobenius")


def normal_basis(q_desc: FieldDesc, r: int) -> list[Fq]:
    """Conjugates a, a^q, ..., a^(q^(r-1)) forming an F_q-basis of F_{q^r}.

    a is the element of least canonical code whose conjugates are linearly
    independent over F_q (existence is the normal basis theorem).
    """
    if r < 1:
        raise ValueError("normal basis needs r >= 1")
    p, m = q_desc.p, q_desc.k
    ext = make_field(p, m * r)
    dim = m * r
    minv = _coords_matrix(q_desc, ext, r)
    for code in range(1, ext.order):
        conj = [code]
        for _ in range(r - 1):
            conj.append(ext.frob_p(conj[-1], m))
        if len(set(conj)) != r:
            continue
        rows = []
        for c in conj:
            vec = ext.digits(c)
            coords = [
                sum(minv[i][t] * vec[t] for t in range(dim)) % p for i in range(dim)
            ]
            # coordinate i = (j, s): coefficient of gamma^j, digit s in F_q
            rows.append(
                [q_desc.undigits(coords[j * m : (j + 1) * m]) for j in range(r)]
            )
        if _rank(rows, q_desc) == r:
            return [Fq(ext, c) for c in conj]
    raise AssertionError("unreachable: normal basis exists")


def _coords_matrix(q_desc: FieldDesc, ext: FieldDesc, r: int) -> list[list[int]]:
    """Inverse of the F_p-matrix sending F_q-coordinates over (gamma^j) to digits."""
    p, m = q_desc.p, q_desc.k
    dim = m * r
    gam_pow = [ext.pow(ext.generator_code, j) for j in range(r)]
    cols = []
    for j in range(r):
        for s in range(m):
            basis = embed(Fq(q_desc, p**s), ext)
            cols.append(ext.digits(ext.mul(basis.code, gam_pow[j])))
    mat = [[cols[c][i] for c in range(dim)] for i in range(dim)]
    return _invert_mod_p(mat, p)


def _invert_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] % p:
                f = aug[i][col] % p
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _rank(rows: list[list[int]], desc: FieldDesc) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = desc.inv(rows[rank][col])
        rows[rank] = [desc.mul(v, inv) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [desc.sub(a, desc.mul(f, b)) for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def prime_power(q: int) -> tuple[int, int]:
    """(p, k) with q = p^k, or raise for non-prime-powers."""
    if q < 2:
        raise ValueError("field out of range")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ValueError("invalid characteristic")
    return p, k


def parse_field(text: str) -> FieldDesc:
    """Parse 'p^k' or a plain prime-power integer into a descriptor."""
    s = text.strip()
    if "^" in s:
        a, b = s.split("^", 1)
        return make_field(int(a), int(b))
    p, k = prime_power(int(s))
    return make_field(p, k)


def field_name(desc: FieldDesc) -> str:
    return f"{desc.p}^{desc.k}"
