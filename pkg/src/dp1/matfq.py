"""Small dense matrices over finite fields: determinants and kernel dimensions.

Everything the package needs is at most 11x10, so there is one algorithm:
fraction-free (Bareiss) elimination for determinants, plain row reduction
for rank.  Entries are canonical integer codes.
"""

from __future__ import annotations

from .gfield import FieldDesc, Fq

MAX_DIM = 16


class MatFq:
    """Row-major matrix of element codes over one field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: FieldDesc, rows: int, cols: int, entries):
        codes = []
        for e in entries:
            if isinstance(e, Fq):
                if e.desc is not field:
                    raise ValueError("entry from a different field")
                codes.append(e.code)
            else:
                codes.append(int(e) % field.p)
        entries = codes
        if rows * cols != len(entries):
            raise ValueError("entry count does not match dimensions")
        if rows > MAX_DIM or cols > MAX_DIM:
            raise ValueError("matrix too large")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    def row(self, i: int) -> list[int]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __repr__(self) -> str:
        return f"MatFq({self.field.p}^{self.field.k}, {self.rows}x{self.cols})"


def det(M: MatFq) -> Fq:
    """Exact determinant by fraction-free Gaussian elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant undefined")
    F = M.field
    n = M.rows
    a = [M.row(i) for i in range(n)]
    sign = 1
    prev = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return Fq(F, 0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pivot = a[col][col]
        inv_prev = F.inv(prev)
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                num = F.sub(F.mul(a[i][j], pivot), F.mul(a[i][col], a[col][j]))
                a[i][j] = F.mul(num, inv_prev)
            a[i][col] = 0
        prev = pivot
    d = a[n - 1][n - 1]
    return Fq(F, d if sign > 0 else F.neg(d))


def kernel_dim(M: MatFq) -> int:
    """Dimension of the right null space: cols - rank."""
    return M.cols - rank(M)


def rank(M: MatFq) -> int:
    F = M.field
    rows = [M.row(i) for i in range(M.rows)]
    r = 0
    for col in range(M.cols):
        piv = next((i for i in range(r, M.rows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(v, inv) for v in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == M.rows:
            break
    return r
