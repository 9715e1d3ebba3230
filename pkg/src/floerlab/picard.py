"""Picard-Lefschetz reflections on integral intersection lattices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import BadSphereClass


@dataclass
class IntersectionLattice:
    """A free Z-module with an integral pairing <x, y> = x^T G y.

    ``parity`` is "even" (symmetric pairing, n even) or "odd"
    (antisymmetric, n odd).  ``sign`` is the twist sign used in the odd case;
    in the even case it is fixed by tau_S(S) = -S.
    """

    pairing: list
    labels: list = field(default_factory=list)
    parity: str = "even"
    sign: int = 1

    def __post_init__(self):
        self.pairing = [[int(v) for v in row] for row in self.pairing]
        r = len(self.pairing)
        if any(len(row) != r for row in self.pairing):
            raise ValueError("pairing matrix must be square")
        if not self.labels:
            self.labels = [f"e{i}" for i in range(r)]
        if len(self.labels) != r:
            raise ValueError("one label per basis vector")
        if self.parity not in ("even", "odd"):
            raise ValueError("parity is 'even' or 'odd'")
        s = 1 if self.parity == "even" else -1
        G = self.pairing
        if any(G[i][j] != s * G[j][i] for i in range(r) for j in range(r)):
            kind = "symmetric" if s == 1 else "antisymmetric"
            raise ValueError(f"{self.parity} parity needs a {kind} pairing")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def rank(self) -> int:
        return len(self.pairing)

    def vector(self, x) -> list:
        """Coordinates from a label, a {label: coeff} dict or a list."""
        if isinstance(x, str):
            v = [0] * self.rank
            v[self.labels.index(x)] = 1
            return v
        if isinstance(x, dict):
            v = [0] * self.rank
            for k, c in x.items():
                v[self.labels.index(k)] += int(c)
            return v
        v = [int(c) for c in x]
        if len(v) != self.rank:
            raise ValueError("wrong vector length")
        return v

    def pair(self, x, y) -> int:
        x, y = self.vector(x), self.vector(y)
        G = self.pairing
        return sum(x[i] * G[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def to_json(self) -> dict:
        return {"labels": self.labels, "pairing": self.pairing, "parity": self.parity,
                "sign": self.sign}

    @classmethod
    def from_json(cls, data) -> "IntersectionLattice":
        return cls(data["pairing"], list(data.get("labels", [])), data.get("parity", "even"),
                   int(data.get("sign", 1)))


def load_lattice(path) -> IntersectionLattice:
    with open(path) as fh:
        return IntersectionLattice.from_json(json.load(fh))


def a2_lattice() -> IntersectionLattice:
    """Two spheres meeting once, n even: <L,L> = <S,S> = -2, <L,S> = 1."""
    return IntersectionLattice([[-2, 1], [1, -2]], ["L", "S"], "even")


def twist_coefficient(lattice: IntersectionLattice, S) -> int:
    """eps_PL with tau_S(x) = x + eps_PL <x,S> S."""
    ss = lattice.pair(S, S)
    if lattice.parity == "even":
        if ss not in (2, -2):
            raise BadSphereClass(f"<S,S> = {ss}; a vanishing sphere in even dimension has +-2")
        return -2 // ss
    if ss != 0:
        raise BadSphereClass(f"<S,S> = {ss}; must vanish in odd dimension")
    return lattice.sign


def dehn_twist_action(lattice: IntersectionLattice, S, x) -> list:
    eps = twist_coefficient(lattice, S)
    s, v = lattice.vector(S), lattice.vector(x)
    c = eps * lattice.pair(v, s)
    return [vi + c * si for vi, si in zip(v, s)]


def twist_matrix(lattice: IntersectionLattice, S) -> list:
    """Integer matrix whose column i is tau_S(e_i)."""
    cols = [dehn_twist_action(lattice, S, [int(i == j) for j in range(lattice.rank)])
            for i in range(lattice.rank)]
    return [[cols[j][i] for j in range(lattice.rank)] for i in range(lattice.rank)]


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matrix_power(M, k: int):
    if k < 0:
        raise ValueError("negative powers are not supported")
    out = identity(len(M))
    base = M
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def twist_power(lattice: IntersectionLattice, S, x, k: int) -> list:
    v = lattice.vector(x)
    for _ in range(k):
        v = dehn_twist_action(lattice, S, v)
    return v


def preserves_pairing(lattice: IntersectionLattice, T) -> bool:
    """T^t G T == G."""
    Tt = [list(r) for r in zip(*T)]
    return matmul(matmul(Tt, lattice.pairing), T) == lattice.pairing


# ---------------------------------------------------------------------------
# random lattices


def _random_unimodular(rng, n, steps=None):
    U = identity(n)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-1, 1])
        for r in range(n):
            U[r][i] += c * U[r][j]
    return U


def _congruent(G, U):
    Ut = [list(r) for r in zip(*U)]
    return matmul(matmul(Ut, G), U)


def random_even_lattice(rng, rank: int, entry_range: int = 3):
    """Symmetric lattice and a class S with <S,S> = +-2, expressed in a scrambled basis."""
    G = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i, rank):
            G[i][j] = G[j][i] = rng.randint(-entry_range, entry_range)
    G[0][0] = rng.choice([2, -2])
    U = _random_unimodular(rng, rank)
    # S = e_0 in the old basis; new coordinates are U^{-1} e_0, so change via G' = U^t G U
    # and pick S' with U S' = e_0 by solving with the inverse elementary steps.
    G2 = _congruent(G, U)
    S = _solve_unimodular(U, [int(i == 0) for i in range(rank)])
    return IntersectionLattice(G2, parity="even"), S


def random_odd_lattice(rng, rank: int, entry_range: int = 3):
    """Antisymmetric lattice, a class S and a class L with <L,S> != 0."""
    rank = max(rank, 2)
    while True:
        G = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i + 1, rank):
                v = rng.randint(-entry_range, entry_range)
                G[i][j], G[j][i] = v, -v
        lat = IntersectionLattice(G, parity="odd", sign=rng.choice([1, -1]))
        S = [rng.randint(-2, 2) for _ in range(rank)]
        L = [rng.randint(-2, 2) for _ in range(rank)]
        if any(S) and lat.pair(L, S) != 0:
            return lat, S, L


def _solve_unimodular(U, b):
    from fractions import Fraction
    from . import linalg
    sol = linalg.solve([[Fraction(v) for v in row] for row in U], [Fraction(v) for v in b])
    if sol is None or any(x.denominator != 1 for x in sol):
        raise ValueError("matrix is not unimodular")
    return [int(x) for x in sol]
