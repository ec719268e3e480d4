"""Dense exact linear algebra over a :class:`~ccrgraph.fields.Field`.

Matrices are lists of rows; vectors are lists.  A matrix acts on column
vectors from the left.
"""

from __future__ import annotations

from typing import Sequence

from .fields import Field

Matrix = list[list]
Vector = list


def zeros(F: Field, n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[F.zero] * m for _ in range(n)]


def identity(F: Field, n: int) -> Matrix:
    out = zeros(F, n)
    for i in range(n):
        out[i][i] = F.one
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def matmul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    Bt = transpose(B) if B else []
    if not Bt:
        return [[] for _ in A]
    add, mul, zero = F.add, F.mul, F.zero
    out = []
    for row in A:
        nz = [(k, a) for k, a in enumerate(row) if a != zero]
        new = []
        for col in Bt:
            s = zero
            for k, a in nz:
                b = col[k]
                if b != zero:
                    s = add(s, mul(a, b))
            new.append(s)
        out.append(new)
    return out


def matvec(F: Field, A: Matrix, v: Vector) -> Vector:
    add, mul, zero = F.add, F.mul, F.zero
    nz = [(k, b) for k, b in enumerate(v) if b != zero]
    out = []
    for row in A:
        s = zero
        for k, b in nz:
            a = row[k]
            if a != zero:
                s = add(s, mul(a, b))
        out.append(s)
    return out


def mat_add(F: Field, A: Matrix, B: Matrix) -> Matrix:
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(F: Field, A: Matrix, B: Matrix) -> Matrix:
    return [[F.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(F: Field, c, A: Matrix) -> Matrix:
    return [[F.mul(c, a) for a in row] for row in A]


def vec_axpy(F: Field, c, x: Vector, y: Vector) -> Vector:
    """``c*x + y``."""
    return [F.add(F.mul(c, a), b) for a, b in zip(x, y)]


def is_zero_vector(F: Field, v: Vector) -> bool:
    return all(a == F.zero for a in v)


def rref(F: Field, rows: Sequence[Vector]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != F.zero), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, a) for a in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != F.zero:
                f = F.neg(R[i][c])
                R[i] = vec_axpy(F, f, R[r], R[i])
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(F: Field, A: Matrix) -> int:
    return len(rref(F, A)[1])


def nullspace(F: Field, A: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : A x = 0}``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, pivots = rref(F, A) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for row, p in zip(R, pivots):
            x[p] = F.neg(row[f])
        basis.append(x)
    return basis


def solve(F: Field, A: Matrix, b: Vector) -> Vector | None:
    """Some ``x`` with ``A x = b``, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [F.zero] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(F: Field, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(F, n))]
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of ``F^n``."""

    def __init__(self, F: Field, n: int):
        self.F = F
        self.n = n
        self.rows: list[Vector] = []   # normalised, pivot entry 1
        self.pivots: list[int] = []
        self.originals: list[Vector] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> Vector:
        F = self.F
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != F.zero:
                v = vec_axpy(F, F.neg(c), row, v)
        return v

    def add(self, v: Vector) -> bool:
        r = self.reduce(v)
        F = self.F
        p = next((i for i, a in enumerate(r) if a != F.zero), None)
        if p is None:
            return False
        inv = F.inv(r[p])
        self.rows.append([F.mul(inv, a) for a in r])
        self.pivots.append(p)
        self.originals.append(list(v))
        return True

    def contains(self, v: Vector) -> bool:
        return is_zero_vector(self.F, self.reduce(v))


def spin(F: Field, gens: Sequence[Matrix], seeds: Sequence[Vector]) -> list[Vector]:
    """Basis (the original images, in discovery order) of the smallest
    subspace containing ``seeds`` and stable under ``gens``."""
    n = len(seeds[0]) if seeds else 0
    eb = EchelonBasis(F, n)
    queue = []
    for s in seeds:
        if eb.add(s):
            queue.append(s)
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for g in gens:
            w = matvec(F, g, v)
            if eb.add(w):
                queue.append(w)
        if len(eb) == n:
            break
    return eb.originals


def charpoly(F: Field, A: Matrix) -> list:
    """Characteristic polynomial ``det(xI - A)``, coefficients low to high,
    via reduction to upper Hessenberg form."""
    n = len(A)
    H = [list(r) for r in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != F.zero), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            f = F.mul(H[i][m - 1], inv)
            if f != F.zero:
                H[i] = vec_axpy(F, F.neg(f), H[m], H[i])
                for row in H:
                    row[m] = F.add(row[m], F.mul(f, row[i]))
    # p_k = charpoly of leading k x k block
    polys: list[list] = [[F.one]]
    for k in range(1, n + 1):
        hk = H[k - 1][k - 1]
        p = [F.zero] + polys[k - 1]                      # x * p_{k-1}
        p = [F.sub(a, F.mul(hk, b)) for a, b in zip(p, polys[k - 1] + [F.zero])]
        prod = F.one
        for i in range(k - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            c = F.mul(prod, H[i - 1][k - 1])
            prev = polys[i - 1] + [F.zero] * (k + 1 - len(polys[i - 1]))
            p = [F.sub(a, F.mul(c, b)) for a, b in zip(p, prev)]
        polys.append(p)
    return polys[n]


def flatten(A: Matrix) -> Vector:
    return [a for row in A for a in row]
