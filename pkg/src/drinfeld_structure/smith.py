"""Matrices over A = F_q[T] and their Smith normal form."""

from __future__ import annotations

from .apoly import APoly
from .errors import ParameterError
from .fields import FieldCtx


class AMatrix:
    """Dense rectangular matrix of APoly entries."""

    def __init__(self, entries, field: FieldCtx):
        rows = [list(r) for r in entries]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ParameterError("matrix rows have different lengths")
        self.field = field
        self.entries = [[_as_apoly(x, field) for x in r] for r in rows]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n, field):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def char_matrix(cls, M, field):
        """T*I - M for a square matrix M of F_q codes."""
        n = len(M)
        T = APoly.T(field)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                c = APoly.constant(field, M[i][j])
                row.append(T - c if i == j else -c)
            out.append(row)
        return cls(out, field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, AMatrix) and self.entries == other.entries

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ParameterError("matrix shapes do not match")
        zero = APoly((), self.field)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return AMatrix(out, self.field)

    def copy(self):
        return AMatrix(self.entries, self.field)

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j].is_zero()
                   for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> list[APoly]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def det(self) -> APoly:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ParameterError("determinant of a non-square matrix")
        n = self.rows
        F = self.field
        if n == 0:
            return APoly((1,), F)
        M = [list(r) for r in self.entries]
        sign = 1
        prev = APoly((1,), F)
        for k in range(n - 1):
            if M[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
                if swap is None:
                    return APoly((), F)
                M[k], M[swap] = M[swap], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                    M[i][j] = num // prev
            prev = M[k][k]
        d = M[n - 1][n - 1]
        return -d if sign < 0 else d

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"AMatrix([{body}])"


def _as_apoly(x, field):
    if isinstance(x, APoly):
        return x
    return APoly.constant(field, field.from_int(x) if isinstance(x, int) else x)


def smith_normal_form(M: AMatrix):
    """Return (D, U, V) with D = U @ M @ V diagonal, monic-or-zero, d1 | d2 | ...

    Pivot: the nonzero entry of least degree in the remaining block, ties broken
    by row-major position.  U and V are products of elementary operations and so
    have determinant in F_q*.
    """
    F = M.field
    D = [list(r) for r in M.entries]
    rows, cols = M.rows, M.cols
    U = AMatrix.identity(rows, F).entries
    V = AMatrix.identity(cols, F).entries

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        D[dst] = [a + f * b if b else a for a, b in zip(D[dst], D[src])]
        U[dst] = [a + f * b if b else a for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in D:
            if r[src]:
                r[dst] = r[dst] + r[src] * f
        for r in V:
            if r[src]:
                r[dst] = r[dst] + r[src] * f

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    e = D[i][j]
                    if e and (best is None or e.degree < best[0]):
                        best = (e.degree, i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            pivot = D[t][t]
            clean = True
            for i in range(t + 1, rows):
                if D[i][t]:
                    qt, r = divmod(D[i][t], pivot)
                    add_row(i, t, -qt)
                    if r:
                        clean = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    qt, r = divmod(D[t][j], pivot)
                    add_col(j, t, -qt)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if D[i][j] and not pivot.divides(D[i][j])), None)
            if bad is None:
                break
            add_row(t, bad[0], APoly((1,), F))
        if D[t][t] and D[t][t].lc != 1:
            inv = F.inv(D[t][t].lc)
            D[t] = [a.scale(inv) for a in D[t]]
            U[t] = [a.scale(inv) for a in U[t]]
        if not D[t][t]:
            break
    return AMatrix(D, F), AMatrix(U, F), AMatrix(V, F)


def invariant_factors(M: AMatrix) -> list[APoly]:
    """Nontrivial invariant factors of a nonsingular square matrix, ascending."""
    if M.rows != M.cols:
        raise ParameterError("invariant_factors needs a square matrix")
    D, _, _ = smith_normal_form(M)
    diag = D.diagonal()
    if any(d.is_zero() for d in diag):
        raise ParameterError("matrix is singular")
    return [d for d in diag if d.degree > 0]


def module_invariants(action, field: FieldCtx) -> list[APoly]:
    """Invariant factors of the A-module F_q^k on which T acts by ``action``."""
    if not action:
        return []
    return invariant_factors(AMatrix.char_matrix(action, field))
