"""Independent reference computations used by the tests.

None of these reuse the enumeration or series code under test.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np


# ---------------------------------------------------------------------------
# associahedron faces


def kirkman_cayley_total(k: int) -> int:
    """Number of dissections of a (k+1)-gon, summed over the number of diagonals."""
    n = k + 1  # polygon with n vertices has n-3 max diagonals
    total = 0
    for j in range(0, n - 2):
        total += comb(n - 3, j) * comb(n + j - 1, j) // (j + 1)
    return total


def kirkman_cayley_by_codim(k: int) -> dict:
    n = k + 1
    return {j: comb(n - 3, j) * comb(n + j - 1, j) // (j + 1) for j in range(0, n - 2)}


def _crosses(d1, d2) -> bool:
    a, b = d1
    c, d = d2
    return (a < c < b < d) or (c < a < d < b)


def polygon_dissections(k: int) -> dict:
    """Brute force over all diagonal subsets of a (k+1)-gon, counted by size."""
    n = k + 1
    diags = [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]
    cross = {(x, y) for x in diags for y in diags if _crosses(x, y)}
    out: dict[int, int] = {}
    for r in range(len(diags) + 1):
        for S in itertools.combinations(diags, r):
            if all((x, y) not in cross for x, y in itertools.combinations(S, 2)):
                out[r] = out.get(r, 0) + 1
    return out


# ---------------------------------------------------------------------------
# plain/round trees by closure under vertex splitting
#
# nodes: ("P", plain_children, round_children) / ("R", (), round_children)
# leaves: ("p", i) / ("r", i); round children kept sorted by their string.


def _s(x) -> str:
    if x[0] == "p":
        return str(x[1])
    if x[0] == "r":
        return f"r{x[1]}"
    rd = ",".join(_s(c) for c in x[2])
    if x[0] == "R":
        return f"R({rd})"
    return "P(" + ",".join(_s(c) for c in x[1]) + ";" + rd + ")"


def _node(kind, plain, rnd):
    return (kind, tuple(plain), tuple(sorted(rnd, key=_s)))


def _stable(x, semi=False) -> bool:
    if x[0] in ("p", "r"):
        return True
    if x[0] == "R":
        ok = 1 + len(x[2]) >= 3
    else:
        ok = 1 + len(x[1]) + 2 * len(x[2]) >= (2 if semi else 3)
    return ok and all(_stable(c, semi) for c in x[1] + x[2])


def _splits(x):
    """All trees obtained by inserting one new internal edge below or at x."""
    if x[0] in ("p", "r"):
        return
    kind, pl, rd = x
    rd = list(rd)
    subsets = [S for r in range(len(rd) + 1) for S in itertools.combinations(range(len(rd)), r)]
    if kind == "P":
        for i in range(len(pl) + 1):
            for j in range(i, len(pl) + 1):
                for S in subsets:
                    child = _node("P", pl[i:j], [rd[s] for s in S])
                    rest = [rd[s] for s in range(len(rd)) if s not in S]
                    yield _node("P", pl[:i] + (child,) + pl[j:], rest)
    for S in subsets:
        child = _node("R", (), [rd[s] for s in S])
        rest = [rd[s] for s in range(len(rd)) if s not in S]
        yield _node(kind, pl, rest + [child])
    for idx, c in enumerate(pl):
        for c2 in _splits(c):
            yield _node(kind, pl[:idx] + (c2,) + pl[idx + 1:], rd)
    for idx, c in enumerate(rd):
        for c2 in _splits(c):
            yield _node(kind, pl, rd[:idx] + [c2] + rd[idx + 1:])


def closure_trees(k: int, q: int) -> set:
    """Canonical strings of all stable trees, by breadth-first splitting of the corolla."""
    root = _node("P", [("p", i) for i in range(1, k + 1)], [("r", j) for j in range(1, q + 1)])
    seen = {_s(root): root}
    frontier = [root]
    while frontier:
        nxt = []
        for T in frontier:
            for U in _splits(T):
                if _stable(U):
                    key = _s(U)
                    if key not in seen:
                        seen[key] = U
                        nxt.append(U)
        frontier = nxt
    return set(seen)


# ---------------------------------------------------------------------------
# F-series via the differential equation hbar d/dhbar F = F Phi, Phi = sum hbar^i F_i
#
# Dividing a word by its partial sums means the last letter of a weight-q word
# carries 1/q, which is exactly the recursion below.


def fseries_by_ode(F: dict, n: int, N: int) -> list:
    """Coefficients A_q of F with q A_q = sum_i A_{q-i} F_i, A_0 = I."""
    A = [np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)]
    for q in range(1, N + 1):
        acc = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
        for i in range(1, q + 1):
            if i in F:
                acc = acc + A[q - i].dot(np.array(F[i], dtype=object))
        A.append(acc * Fraction(1, q))
    return A


def series_inverse(A: list) -> list:
    """Right inverse B of a unipotent series: sum_j A_j B_{q-j} = 0 for q >= 1."""
    n = A[0].shape[0]
    B = [A[0].copy()]
    for q in range(1, len(A)):
        acc = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
        for j in range(1, q + 1):
            acc = acc + A[j].dot(B[q - j])
        B.append(-acc)
    return B
