"""Dense linear algebra over an exact field object (see ``fields``).

Matrices are lists of rows.  Nothing here is clever; sizes stay at desk
scale (a few dozen rows).
"""

from __future__ import annotations

from collections.abc import Sequence

Matrix = list[list]


def zeros(F, rows: int, cols: int) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def identity(F, n: int) -> Matrix:
    M = zeros(F, n, n)
    for i in range(n):
        M[i][i] = F.one
    return M


def copy(M: Matrix) -> Matrix:
    return [list(r) for r in M]


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def matmul(F, A: Matrix, B: Matrix) -> Matrix:
    n, k = shape(A)
    m = shape(B)[1]
    out = zeros(F, n, m)
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for l in range(k):
            a = Ai[l]
            if F.is_zero(a):
                continue
            Bl = B[l]
            for j in range(m):
                row[j] = F.add(row[j], F.mul(a, Bl[j]))
    return out


def matvec(F, A: Matrix, v: Sequence) -> list:
    return [_dot(F, row, v) for row in A]


def _dot(F, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def add(F, A: Matrix, B: Matrix) -> Matrix:
    return [[F.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(F, A: Matrix, B: Matrix) -> Matrix:
    return [[F.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(F, c, A: Matrix) -> Matrix:
    return [[F.mul(c, x) for x in r] for r in A]


def equal(F, A: Matrix, B: Matrix) -> bool:
    if shape(A) != shape(B):
        return False
    return all(F.eq(x, y) for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def is_zero(F, A: Matrix) -> bool:
    return all(F.is_zero(x) for r in A for x in r)


def transpose(M: Matrix) -> Matrix:
    return [list(c) for c in zip(*M)] if M else []


def poly_eval(F, coeffs: Sequence, A: Matrix) -> Matrix:
    """Evaluate sum coeffs[i] * A^i (Horner)."""
    n = len(A)
    acc = zeros(F, n, n)
    I = identity(F, n)
    for c in reversed(list(coeffs)):
        acc = add(F, matmul(F, acc, A), scale(F, F(c) if not isinstance(c, type(F.zero)) else c, I))
    return acc


def matpow(F, A: Matrix, e: int) -> Matrix:
    result = identity(F, len(A))
    base = A
    while e:
        if e & 1:
            result = matmul(F, result, base)
        e >>= 1
        if e:
            base = matmul(F, base, base)
    return result


def rref(F, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = copy(M)
    rows, cols = shape(R)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not F.is_zero(R[i][c])), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and not F.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F, M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(F, M)[1])


def nullspace(F, M: Matrix) -> list[list]:
    """Basis of {x : M x = 0}, as a list of column vectors."""
    rows, cols = shape(M)
    if rows == 0:
        return [[F.one if i == j else F.zero for i in range(cols)] for j in range(cols)]
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * cols
        v[fc] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R[i][fc])
        basis.append(v)
    return basis


def solve(F, M: Matrix, b: Sequence) -> list | None:
    """One solution of M x = b, or None if inconsistent."""
    rows, cols = shape(M)
    aug = [list(M[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(F, aug)
    if cols in pivots:
        return None
    x = [F.zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = R[i][cols]
    return x


def inverse(F, M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(M[i]) + [F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def is_invertible(F, M: Matrix) -> bool:
    return rank(F, M) == len(M)


def charpoly(F, A: Matrix) -> list:
    """Characteristic polynomial det(x I - A), coefficients constant-first.

    Reduces to upper Hessenberg form by similarity, then runs the usual
    three-term recurrence on leading principal minors.
    """
    n = len(A)
    Hm = copy(A)
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if not F.is_zero(Hm[r][m - 1])), None)
        if i is None:
            continue
        if i != m:
            Hm[i], Hm[m] = Hm[m], Hm[i]
            for row in Hm:
                row[i], row[m] = row[m], row[i]
        t = Hm[m][m - 1]
        tinv = F.inv(t)
        for r in range(m + 1, n):
            u = F.mul(Hm[r][m - 1], tinv)
            if F.is_zero(u):
                continue
            Hm[r] = [F.sub(x, F.mul(u, y)) for x, y in zip(Hm[r], Hm[m])]
            for row in Hm:
                row[m] = F.add(row[m], F.mul(u, row[r]))
    # p[k] = charpoly of leading k x k block, coefficient lists
    polys = [[F.one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [F.zero] + list(prev)  # x * p_{k-1}
        a = Hm[k - 1][k - 1]
        for d, c in enumerate(prev):
            cur[d] = F.sub(cur[d], F.mul(a, c))
        prod = F.one
        for i in range(k - 1, 0, -1):
            prod = F.mul(prod, Hm[i][i - 1])
            coef = F.mul(Hm[i - 1][k - 1], prod)
            if F.is_zero(coef):
                continue
            for d, c in enumerate(polys[i - 1]):
                cur[d] = F.sub(cur[d], F.mul(coef, c))
        polys.append(cur)
    return polys[n]


def det(F, M: Matrix):
    n = len(M)
    c = charpoly(F, M)
    return c[0] if n % 2 == 0 else F.neg(c[0])


class Echelon:
    """Incrementally maintained basis of a subspace, used by spin closures."""

    def __init__(self, F, dim: int):
        self.F = F
        self.dim = dim
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        F = self.F
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> list | None:
        """Insert v; return the normalized new basis row, or None if dependent."""
        F = self.F
        v = self.reduce(v)
        pc = next((i for i, x in enumerate(v) if not F.is_zero(x)), None)
        if pc is None:
            return None
        inv = F.inv(v[pc])
        v = [F.mul(inv, x) for x in v]
        for k, row in enumerate(self.rows):
            c = row[pc]
            if not F.is_zero(c):
                self.rows[k] = [F.sub(x, F.mul(c, y)) for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pc)
        return v

    def contains(self, v: Sequence) -> bool:
        return all(self.F.is_zero(x) for x in self.reduce(v))
