"""Exact linear algebra over F_q (matrices are lists of rows of F_q codes)."""

from __future__ import annotations

import random

from .errors import ParameterError
from .fields import FieldCtx, FieldElem


def rref(M, F: FieldCtx):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = [list(row) for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(Ri, Rr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M, F: FieldCtx) -> int:
    return len(rref(M, F)[1])


def kernel_basis(M, F: FieldCtx, cols: int | None = None) -> list[list[int]]:
    """Null-space basis, one vector per free column (1 there, 0 on the other free columns)."""
    if cols is None:
        cols = len(M[0]) if M else 0
    if not M:
        R, pivots = [], []
    else:
        R, pivots = rref(M, F)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            if R[i][fc]:
                v[pc] = F.neg(R[i][fc])
        basis.append(v)
    return basis


def free_columns(M, F: FieldCtx, cols: int) -> list[int]:
    pivots = rref(M, F)[1] if M else []
    return [c for c in range(cols) if c not in pivots]


def mat_vec(M, v, F: FieldCtx) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out


def mat_mul(A, B, F: FieldCtx):
    cols = list(zip(*B))
    return [[_dot(row, col, F) for col in cols] for row in A]


def _dot(u, v, F):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def vec_add(u, v, F):
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_scale(c, v, F):
    return [F.mul(c, a) for a in v]


def linear_map_matrix(f, ctx: FieldCtx, samples: int = 8):
    """Matrix over F_q of an F_q-linear map on ctx, in the basis of codes q**j.

    Column j holds the coordinates of f(basis_j), so ``mat_vec(M, coords(x))``
    equals ``coords(f(x))``.  Linearity is spot-checked on seeded samples.
    """
    n = ctx.degree_over_fq
    q = ctx.q
    images = [ctx.fq_vector(f(FieldElem(ctx, q**j)).code) for j in range(n)]
    M = [[images[j][i] for j in range(n)] for i in range(n)]
    rng = random.Random(0x5EED)
    for _ in range(samples):
        x = FieldElem(ctx, rng.randrange(ctx.size))
        y = FieldElem(ctx, rng.randrange(ctx.size))
        c = FieldElem(ctx, rng.randrange(q))
        if f(x + y) != f(x) + f(y) or f(c * x) != c * f(x):
            raise ParameterError("map failed the sampled F_q-linearity check")
    return M
