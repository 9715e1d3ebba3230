"""Exact Gaussian elimination over any field whose elements support + - * /.

Matrices are lists of rows.  A ``zero`` element must be supplied where the
matrix might be empty, since the field cannot be inferred from nothing.
"""
from __future__ import annotations

from fractions import Fraction


def _is_zero(x) -> bool:
    return not x


def rref(rows, zero=Fraction(0)):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows, zero=Fraction(0)) -> int:
    return len(rref(rows, zero)[1])


def nullspace(rows, ncols: int, zero=Fraction(0), one=Fraction(1)):
    """Basis of {x : A x = 0} as a list of column vectors."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, zero)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs, zero=Fraction(0)):
    """One solution of A x = b, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [zero] * ncols
    R, piv = rref(aug, zero)
    if ncols in piv:
        return None
    x = [zero] * ncols
    for i, p in enumerate(piv):
        x[p] = R[i][ncols]
    return x


def inverse(rows, zero=Fraction(0), one=Fraction(1)):
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, zero)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def matmul(A, B, zero=Fraction(0)):
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(ncols):
            s = zero
            for k in range(inner):
                if not _is_zero(row[k]) and not _is_zero(B[k][j]):
                    s = s + row[k] * B[k][j]
            new.append(s)
        out.append(new)
    return out


def matvec(A, v, zero=Fraction(0)):
    out = []
    for row in A:
        s = zero
        for a, x in zip(row, v):
            if not _is_zero(a) and not _is_zero(x):
                s = s + a * x
        out.append(s)
    return out


def transpose(A):
    return [list(c) for c in zip(*A)] if A else []


def column_space_basis(vectors, zero=Fraction(0)):
    """Indices of a maximal independent subset, chosen greedily in order."""
    chosen = []
    rows = []
    for i, v in enumerate(vectors):
        trial = rows + [list(v)]
        if rank(trial, zero) > len(rows):
            rows = trial
            chosen.append(i)
    return chosen


def extend_to_basis(vectors, dim: int, zero=Fraction(0), one=Fraction(1)):
    """Standard basis vectors completing an independent list to a basis."""
    rows = [list(v) for v in vectors]
    extra = []
    for j in range(dim):
        e = [one if i == j else zero for i in range(dim)]
        if rank(rows + [e], zero) > len(rows):
            rows.append(e)
            extra.append(e)
    return extra
