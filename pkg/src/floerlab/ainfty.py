"""Finite A-infinity categories as explicit sparse structure tensors.

Conventions
-----------
Inputs of ``mu^k`` are written in composition order ``(x_k, ..., x_1)``:
``x_1`` is the first morphism, from ``X_0`` to ``X_1``.  The output lies in
``hom(X_0, X_k)`` and has degree ``sum |x_i| + 2 - k``.

The structure equations are

    sum_{b, c} (-1)^{maltese_b} mu^{k-c+1}(x_k, ..., mu^c(x_{b+c}, ..., x_{b+1}), x_b, ..., x_1) = 0

with ``maltese_b = sum_{j <= b} (|x_j| - 1)``.  A graded associative algebra
with differential ``d`` gives an A-infinity category via
``mu^1(a) = (-1)^{|a|} da`` and ``mu^2(a2, a1) = (-1)^{|a1|} a2 a1``, and the
cohomology category composes by ``[x'].[x] = (-1)^{|x|} [mu^2(x', x)]``.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .coeff import GradedLaurent, LaurentRing, Rationals, Ring, parse_ring
from .errors import (BadUnit, DegreeError, NonFieldCoefficients,
                     NonHomogeneous, NonHomogeneousEntries, NotUnital)
from .trees import boundary_facets

FORMAT_TAG = "floer-lab/1"


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    source: str
    target: str


class AInftyData:
    """Objects, graded generators of hom spaces and sparse mu tensors.

    ``mu`` maps an input tuple (written order x_k, ..., x_1) to a dict
    ``{output generator: coefficient}``.
    """

    def __init__(self, objects, generators, mu, ring: Ring | None = None,
                 max_arity: int = 6, name: str = ""):
        self.ring = ring or Rationals()
        self.objects = tuple(objects)
        self.max_arity = max_arity
        self.name = name
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g) if isinstance(g, (tuple, list)) else Generator(**g)
            gens.append(g)
        self.generators = tuple(gens)
        self.gen = {g.name: g for g in gens}
        if len(self.gen) != len(gens):
            raise ValueError("duplicate generator names")
        for g in gens:
            if g.source not in self.objects or g.target not in self.objects:
                raise ValueError(f"generator {g.name} has unknown endpoints")
        self.mu = {}
        for inputs, outs in mu.items():
            inputs = tuple(inputs)
            clean = {}
            for y, c in outs.items():
                c = self.ring.coerce(c) if not _is_fraction_like(c) else c
                if c:
                    clean[y] = c
            if clean:
                self._validate_entry(inputs, clean)
                self.mu[inputs] = clean
        self._cohomology = None

    def _validate_entry(self, inputs, outs):
        k = len(inputs)
        if k < 1:
            raise ValueError("curved entries (mu^0) are not supported")
        for x in inputs:
            if x not in self.gen:
                raise ValueError(f"unknown generator {x}")
        chain = [self.gen[x] for x in reversed(inputs)]  # x_1 first
        for a, b in zip(chain, chain[1:]):
            if a.target != b.source:
                raise ValueError(f"inputs {inputs} are not composable")
        src, tgt = chain[0].source, chain[-1].target
        expected = sum(g.degree for g in chain) + 2 - k
        for y, c in outs.items():
            if y not in self.gen:
                raise ValueError(f"unknown output generator {y}")
            g = self.gen[y]
            if (g.source, g.target) != (src, tgt):
                raise ValueError(f"output {y} of {inputs} lies in the wrong hom space")
            try:
                cdeg = self.ring.degree(c) if not _is_fraction_like(c) else 0
            except NonHomogeneous as exc:
                raise DegreeError(f"coefficient {c} of {inputs}->{y} is not homogeneous") from exc
            if g.degree + cdeg != expected:
                raise DegreeError(
                    f"mu^{k}{inputs} -> {y}: degree {g.degree}+{cdeg} != {expected}")

    # basic queries
    def hom(self, X, Y) -> list:
        return [g.name for g in self.generators if g.source == X and g.target == Y]

    def degree(self, name) -> int:
        return self.gen[name].degree

    def arity_max(self) -> int:
        return max((len(k) for k in self.mu), default=0)

    def entries(self):
        """(inputs, output, coefficient) triples in a deterministic order."""
        for inputs in sorted(self.mu):
            for y in sorted(self.mu[inputs]):
                yield inputs, y, self.mu[inputs][y]

    def with_entry(self, inputs, output, coeff) -> "AInftyData":
        mu = {k: dict(v) for k, v in self.mu.items()}
        mu.setdefault(tuple(inputs), {})[output] = coeff
        return AInftyData(self.objects, self.generators, mu, self.ring, self.max_arity, self.name)

    def apply(self, vectors) -> dict:
        """Multilinear mu on chain vectors given in written order."""
        out: dict = {}
        supports = [list(v.items()) for v in vectors]
        for combo in itertools.product(*supports):
            entry = self.mu.get(tuple(g for g, _ in combo))
            if not entry:
                continue
            scale = 1
            for _, c in combo:
                scale = scale * c
            for y, c in entry.items():
                out[y] = out.get(y, 0) + scale * c
        return {y: c for y, c in out.items() if c}

    def cohomology(self) -> "CohomologyCategory":
        if self._cohomology is None:
            self._cohomology = cohomology(self)
        return self._cohomology

    def __repr__(self):
        return (f"AInftyData({self.name or 'unnamed'}: {len(self.objects)} objects, "
                f"{len(self.generators)} generators, {len(self.mu)} entries, ring {self.ring.name})")


def _is_fraction_like(c) -> bool:
    # fractions of twisted scalars are kept as they are
    from .coeff import TwistedFraction
    return isinstance(c, TwistedFraction)


def from_algebra(objects, generators, differential=None, products=None,
                 ring: Ring | None = None, name="") -> AInftyData:
    """Translate a dg category (d, composition) into mu^1, mu^2 entries.

    ``differential`` maps a to {b: c} meaning d(a) = sum c b; ``products``
    maps (a2, a1) to the composite a2 . a1 (a1 first).
    """
    C0 = AInftyData(objects, generators, {}, ring, name=name)
    mu = {}
    for a, outs in (differential or {}).items():
        s = -1 if C0.degree(a) % 2 else 1
        mu[(a,)] = {y: s * c for y, c in outs.items()}
    for (a2, a1), outs in (products or {}).items():
        s = -1 if C0.degree(a1) % 2 else 1
        mu[(a2, a1)] = {y: s * c for y, c in outs.items()}
    return AInftyData(objects, C0.generators, mu, C0.ring, name=name)


# ---------------------------------------------------------------------------
# structure equations


@dataclass
class EquationFailure:
    arity: int
    inputs: tuple
    output: str
    residue: object

    def to_dict(self):
        return {"arity": self.arity, "inputs": list(self.inputs), "output": self.output,
                "residue": str(self.residue)}


@dataclass
class AInftyReport:
    passed: bool
    equations_checked: int
    terms: int
    failure: EquationFailure | None = None
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {
            "passed": self.passed,
            "equations_checked": self.equations_checked,
            "terms": self.terms,
            "first_failure": self.failure.to_dict() if self.failure else None,
            "n_failures": len(self.failures),
        }


_FACET_CACHE: dict[int, set] = {}


def _allowed_bc(k: int) -> set:
    if k not in _FACET_CACHE:
        _FACET_CACHE[k] = {(f.b, f.c) for f in boundary_facets(k, 0)}
    return _FACET_CACHE[k]


def structure_residues(C: AInftyData) -> tuple[dict, int]:
    """All nonzero terms of the structure equations, summed per (inputs, output).

    Terms are produced by substituting an inner entry into one slot of an
    outer entry, so only tuples with at least one nonzero term are visited.
    """
    by_output: dict[str, list] = {}
    for inputs, outs in C.mu.items():
        for y, c in outs.items():
            by_output.setdefault(y, []).append((inputs, c))
    residues: dict[tuple, dict] = {}
    nterms = 0
    for outer, outs in C.mu.items():
        m = len(outer)
        for pos, w in enumerate(outer):
            for inner, alpha in by_output.get(w, ()):
                c = len(inner)
                k = m + c - 1
                if k > C.max_arity:
                    continue
                full = outer[:pos] + inner + outer[pos + 1:]
                b = m - 1 - pos  # inputs to the right of the slot
                if (b, c) not in _allowed_bc(k):
                    raise AssertionError(f"term (b={b}, c={c}) is not a boundary facet for k={k}")
                sign = sum(C.degree(x) - 1 for x in full[k - b:]) % 2
                for z, beta in outs.items():
                    term = alpha * beta
                    if sign:
                        term = -term
                    slot = residues.setdefault(full, {})
                    slot[z] = slot.get(z, 0) + term
                    nterms += 1
    return residues, nterms


def check_ainfty(C: AInftyData) -> AInftyReport:
    """Verify the structure equations up to ``C.max_arity``."""
    residues, nterms = structure_residues(C)
    failures = []
    count = 0
    for full in residues:
        for z, r in residues[full].items():
            count += 1
            if r:
                failures.append(EquationFailure(len(full), full, z, r))
    failures.sort(key=lambda f: (f.arity, f.inputs, f.output))
    return AInftyReport(not failures, count, nterms, failures[0] if failures else None, failures)


def change_basis(C: AInftyData, new_basis: dict) -> AInftyData:
    """Rewrite the tensors in a new basis of each hom space.

    ``new_basis`` maps a generator name to its replacement, a dict of old
    generators (same hom space and degree) with coefficients.  Generators not
    mentioned are kept.  Needs a field ring.
    """
    ring = C.ring
    if not ring.is_field:
        raise NonFieldCoefficients("basis change needs field coefficients")
    zero, one = ring.to_field(0), ring.to_field(1)
    P = {g.name: {g.name: one} for g in C.generators}
    for name, combo in new_basis.items():
        P[name] = {x: ring.to_field(c) for x, c in combo.items()}
    # invert P blockwise on (source, target, degree)
    blocks: dict[tuple, list] = {}
    for g in C.generators:
        blocks.setdefault((g.source, g.target, g.degree), []).append(g.name)
    Pinv = {}
    for names in blocks.values():
        M = [[P[new].get(old, zero) for new in names] for old in names]
        inv = linalg.inverse(M, zero, one)
        for i, old in enumerate(names):
            Pinv[old] = {new: inv[j][i] for j, new in enumerate(names) if inv[j][i]}
    mu = {}
    for inputs in _all_composable(C):
        out = C.apply([P[x] for x in inputs])
        res: dict = {}
        for y, c in out.items():
            for new, d in Pinv[y].items():
                res[new] = res.get(new, zero) + c * d
        res = {y: ring.coerce(c) if hasattr(ring, "coerce") else c for y, c in res.items() if c}
        if res:
            mu[inputs] = res
    return AInftyData(C.objects, C.generators, mu, ring, C.max_arity, C.name)


def sign_flip_is_gauge(C: AInftyData, flips) -> bool:
    """Whether negating the entries ``flips`` ((inputs, output) keys) is undone
    by some rescaling gamma -> +-gamma of the generators.

    Solved over F_2: s(output) + sum s(inputs) = [entry flipped] for every
    nonzero entry.
    """
    from .coeff import ModP
    flips = {(tuple(i), y) for i, y in flips}
    names = [g.name for g in C.generators]
    col = {n: j for j, n in enumerate(names)}
    rows, rhs = [], []
    for inputs, y, _ in C.entries():
        row = [0] * len(names)
        for x in inputs:
            row[col[x]] += 1
        row[col[y]] += 1
        rows.append([ModP(v, 2) for v in row])
        rhs.append(ModP(int((inputs, y) in flips), 2))
    return linalg.solve(rows, rhs, ModP(0, 2)) is not None


def _all_composable(C: AInftyData, max_k: int | None = None):
    """All composable tuples (written order) up to the largest stored arity."""
    max_k = max_k or C.arity_max()
    starts: dict[str, list] = {}
    for g in C.generators:
        starts.setdefault(g.source, []).append(g.name)
    level = [(g.name,) for g in C.generators]
    out = list(level)
    for _ in range(1, max_k):
        nxt = []
        for tup in level:
            tail = C.gen[tup[0]].target
            for g in starts.get(tail, ()):
                nxt.append((g,) + tup)
        out.extend(nxt)
        level = nxt
    return out


# ---------------------------------------------------------------------------
# graded splitting of a complex into image, harmonic part and complement


@dataclass
class GradedSplit:
    """Splitting V_g = Im_g + H_g + I_g of a graded complex over a field."""

    grades: list
    dims: dict
    im: dict
    H: dict
    I: dict
    coord: dict      # grade -> inverse of [Im | H | I]
    homotopy: dict   # grade g -> matrix V_g -> V_prev(g)
    prev: dict

    def h_coords(self, g, v):
        """Coordinates of v in V_g along H_g (Im and I parts dropped)."""
        if not self.dims.get(g):
            return []
        cv = linalg.matvec(self.coord[g], v, _zero_of(v))
        start = len(self.im[g])
        return cv[start:start + len(self.H[g])]


def _zero_of(v):
    return v[0] * 0 if v else Fraction(0)


def split_graded(dims: dict, dmaps: dict, nxt: dict, zero, one) -> GradedSplit:
    """dmaps[g] is the matrix of d: V_g -> V_nxt[g] (rows index the target)."""
    grades = sorted(dims)
    Z, I = {}, {}
    for g in grades:
        n = dims[g]
        D = dmaps.get(g)
        if D and nxt.get(g) is not None and dims.get(nxt[g]):
            Z[g] = linalg.nullspace(D, n, zero, one)
        else:
            Z[g] = [[one if i == j else zero for i in range(n)] for j in range(n)]
        I[g] = linalg.extend_to_basis(Z[g], n, zero, one)
    im = {g: [] for g in grades}
    homotopy_pairs = {g: [] for g in grades}
    prev = {}
    for g in grades:
        if I[g]:
            h = nxt[g]
            prev[h] = g
            for v in I[g]:
                w = linalg.matvec(dmaps[g], v, zero)
                im[h].append(w)
                homotopy_pairs[h].append(v)
    H = {}
    for g in grades:
        rows = [list(v) for v in im[g]]
        H[g] = []
        for z in Z[g]:
            if linalg.rank(rows + [z], zero) > len(rows):
                rows.append(z)
                H[g].append(z)
    coord, homotopy = {}, {}
    for g in grades:
        n = dims[g]
        cols = im[g] + H[g] + I[g]
        if n:
            B = linalg.transpose(cols)
            coord[g] = linalg.inverse(B, zero, one)
        else:
            coord[g] = []
        p = prev.get(g)
        if p is not None:
            # h sends im vector j back to its I preimage, everything else to 0
            preim = homotopy_pairs[g]
            m = dims[p]
            hm = [[zero] * n for _ in range(m)]
            for j, src in enumerate(preim):
                for r in range(m):
                    if src[r]:
                        for c in range(n):
                            if coord[g][j][c]:
                                hm[r][c] = hm[r][c] + src[r] * coord[g][j][c]
            homotopy[g] = hm
    return GradedSplit(grades, dict(dims), im, H, I, coord, homotopy, prev)


# ---------------------------------------------------------------------------
# cohomology


class HomCohomology:
    """Cohomology of one hom complex, with lifts and coordinates.

    Over a field the grading is the degree.  Over L the complex reduces to a
    Z/(l-2)-graded complex over Q because the hbar exponent of every entry is
    fixed by the degrees; classes are lifted back with the right hbar powers.
    """

    def __init__(self, C: AInftyData, X, Y):
        self.C, self.X, self.Y = C, X, Y
        self.gens = C.hom(X, Y)
        ring = C.ring
        self.laurent = isinstance(ring, LaurentRing)
        if self.laurent:
            self.period = ring.l - 2
            self.zero, self.one = Fraction(0), Fraction(1)
        elif ring.is_field:
            self.period = None
            self.zero, self.one = ring.to_field(0), ring.to_field(1)
        else:
            raise NonFieldCoefficients(f"cohomology over {ring.name} is not supported")
        self.deg = {x: C.degree(x) for x in self.gens}
        pieces: dict = {}
        for x in self.gens:
            pieces.setdefault(self.grade(self.deg[x]), []).append(x)
        self.pieces = pieces
        self.index = {x: (g, i) for g, xs in pieces.items() for i, x in enumerate(xs)}
        nxt = {g: self._next(g) for g in pieces}
        dmaps = {}
        for g, xs in pieces.items():
            h = nxt[g]
            if h not in pieces:
                continue
            M = [[self.zero] * len(xs) for _ in pieces[h]]
            for j, x in enumerate(xs):
                for y, c in C.mu.get((x,), {}).items():
                    M[self.index[y][1]][j] = M[self.index[y][1]][j] + self._flat(c)
            dmaps[g] = M
        self.split = split_graded({g: len(v) for g, v in pieces.items()}, dmaps, nxt,
                                  self.zero, self.one)
        # basis: (grade, vector over pieces[grade], representative degree)
        self.basis = []
        for g in self.split.grades:
            for v in self.split.H[g]:
                self.basis.append((g, v, self._rep_degree(g, v)))

    def grade(self, degree: int):
        return degree % self.period if self.laurent else degree

    def _next(self, g):
        return (g + 1) % self.period if self.laurent else g + 1

    def _flat(self, c):
        if self.laurent:
            return c.coefficient()
        return self.C.ring.to_field(c)

    def _rep_degree(self, g, v):
        if not self.laurent:
            return g
        xs = self.pieces[g]
        i = next(i for i, a in enumerate(v) if a)
        return self.deg[xs[i]]

    def lift(self, g, v, degree=None) -> dict:
        """Chain vector for a grade-g vector, homogeneous of the given degree."""
        xs = self.pieces[g]
        if not self.laurent:
            return {x: a for x, a in zip(xs, v) if a}
        if degree is None:
            degree = self._rep_degree(g, v)
        l = self.C.ring.l
        out = {}
        for x, a in zip(xs, v):
            if a:
                q, r = divmod(self.deg[x] - degree, self.period)
                assert r == 0
                out[x] = GradedLaurent({q: a}, l)
        return out

    def vector_degree(self, v: dict) -> int:
        degs = set()
        for x, c in v.items():
            d = self.deg[x]
            if self.laurent:
                d += c.degree()
            degs.add(d)
        if len(degs) != 1:
            raise ValueError("chain vector is not homogeneous")
        return degs.pop()

    def flatten(self, v: dict, degree: int):
        g = self.grade(degree)
        xs = self.pieces.get(g, [])
        out = [self.zero] * len(xs)
        for x, c in v.items():
            gx, i = self.index[x]
            if gx != g:
                raise ValueError("chain vector has mixed grades")
            if self.laurent:
                q = c.hbar_degree()
                if self.deg[x] + q * (2 - self.C.ring.l) != degree:
                    raise ValueError("chain vector is not homogeneous")
            out[i] = out[i] + self._flat(c)
        return g, out

    def is_cocycle(self, v: dict) -> bool:
        return not self.C.apply([v]) if v else True

    def class_coords(self, v: dict, degree: int | None = None) -> dict:
        """Coordinates of the class of a cocycle, keyed by basis index.

        Values are field elements (over L: the rational coefficient of the
        appropriate hbar power of the basis element)."""
        if not v:
            return {}
        if degree is None:
            degree = self.vector_degree(v)
        g, flat = self.flatten(v, degree)
        hc = self.split.h_coords(g, flat)
        out = {}
        j = 0
        for idx, (bg, _, _) in enumerate(self.basis):
            if bg == g:
                if hc[j]:
                    out[idx] = hc[j]
                j += 1
        if not self.laurent:
            out = {i: c for i, c in out.items() if self.basis[i][2] == degree}
        return out

    def degree_basis(self, degree: int) -> list:
        """Indices of basis classes that have a representative in this degree."""
        g = self.grade(degree)
        if self.laurent:
            return [i for i, (bg, _, _) in enumerate(self.basis) if bg == g]
        return [i for i, (bg, _, d) in enumerate(self.basis) if d == degree]

    def representative(self, idx: int, degree: int | None = None) -> dict:
        g, v, d = self.basis[idx]
        return self.lift(g, v, d if degree is None else degree)

    def h0(self) -> list:
        return self.degree_basis(0)

    def rank_by_grade(self) -> dict:
        return {g: len(self.split.H[g]) for g in self.split.grades if self.split.H[g]}

    def dims(self) -> dict:
        return {d: len(self.degree_basis(d)) for d in sorted({b[2] for b in self.basis})}


class CohomologyCategory:
    def __init__(self, C: AInftyData):
        self.C = C
        self.homs = {(X, Y): HomCohomology(C, X, Y) for X in C.objects for Y in C.objects}
        self.zero = self.homs[(C.objects[0], C.objects[0])].zero if C.objects else Fraction(0)
        self.units = {X: self._find_unit(X) for X in C.objects}

    def compose(self, xp: dict, x: dict) -> dict:
        """Chain-level representative of [x'].[x] = (-1)^{|x|} [mu^2(x', x)]."""
        if not xp or not x:
            return {}
        X = self.C.gen[next(iter(x))].source
        Y = self.C.gen[next(iter(x))].target
        dx = self.homs[(X, Y)].vector_degree(x)
        out = self.C.apply([xp, x])
        if dx % 2:
            out = {y: -c for y, c in out.items()}
        return out

    def h0_coords(self, X, Y, v: dict) -> list:
        H = self.homs[(X, Y)]
        idx = H.h0()
        cc = H.class_coords(v, 0) if v else {}
        return [cc.get(i, H.zero) for i in idx]

    def h0_vector(self, X, Y, coeffs) -> dict:
        H = self.homs[(X, Y)]
        out: dict = {}
        for i, a in zip(H.h0(), coeffs):
            if not a:
                continue
            for x, c in H.representative(i, 0).items():
                out[x] = out.get(x, 0) + a * c
        return {x: c for x, c in out.items() if c}

    def _find_unit(self, X):
        HXX = self.homs[(X, X)]
        idx = HXX.h0()
        zero = HXX.zero
        rows, rhs = [], []
        for Y in self.C.objects:
            # right unit on hom(X, Y), left unit on hom(Y, X)
            for (A, B), right in (((X, Y), True), ((Y, X), False)):
                H = self.homs[(A, B)]
                for j, (_, _, d) in enumerate(H.basis):
                    xv = H.representative(j, d)
                    cols = []
                    for i in idx:
                        e = HXX.representative(i, 0)
                        prod = self.compose(xv, e) if right else self.compose(e, xv)
                        cols.append(H.class_coords(prod, d) if prod else {})
                    for t_ in range(len(H.basis)):
                        rows.append([c.get(t_, zero) for c in cols])
                        rhs.append(H.zero + (1 if t_ == j else 0))
        if not idx:
            return {} if not any(h.basis for (A, B), h in self.homs.items() if X in (A, B)) else None
        sol = linalg.solve(rows, rhs, zero) if rows else [zero] * len(idx)
        if sol is None:
            return None
        return self.h0_vector(X, X, sol)

    def unit(self, X):
        return self.units[X]

    def is_unital(self, X=None) -> bool:
        objs = [X] if X is not None else self.C.objects
        return all(self.units[o] is not None for o in objs)

    def same_class(self, X, Y, u: dict, v: dict, degree=0) -> bool:
        H = self.homs[(X, Y)]
        diff = dict(u)
        for x, c in v.items():
            diff[x] = diff.get(x, 0) - c
        diff = {x: c for x, c in diff.items() if c}
        return not H.class_coords(diff, degree) if diff else True

    def table(self) -> dict:
        return {f"{X}->{Y}": H.dims() for (X, Y), H in self.homs.items()}


def cohomology(C: AInftyData) -> CohomologyCategory:
    ring = C.ring
    if not ring.is_field and not isinstance(ring, LaurentRing):
        raise NonFieldCoefficients(f"cohomology needs a field or L, got {ring.name}")
    return CohomologyCategory(C)


# ---------------------------------------------------------------------------
# quasi-isomorphism search


@dataclass
class QuasiIsoVerdict:
    status: str  # "isomorphic", "not_isomorphic", "not_found"
    f: dict | None = None
    g: dict | None = None
    note: str = ""
    budget: int = 0

    @property
    def isomorphic(self):
        return self.status == "isomorphic"

    def to_dict(self):
        return {
            "status": self.status,
            "f": {k: str(v) for k, v in (self.f or {}).items()},
            "g": {k: str(v) for k, v in (self.g or {}).items()},
            "note": self.note,
            "budget": self.budget,
        }


def _h0_products(HC: CohomologyCategory, X, Y):
    """coords in H0(X,X) of g_j . f_i, and in H0(Y,Y) of f_i . g_j."""
    fi = [HC.homs[(X, Y)].representative(i, 0) for i in HC.homs[(X, Y)].h0()]
    gj = [HC.homs[(Y, X)].representative(j, 0) for j in HC.homs[(Y, X)].h0()]
    P = [[HC.h0_coords(X, X, HC.compose(g, f)) for f in fi] for g in gj]
    Q = [[HC.h0_coords(Y, Y, HC.compose(f, g)) for g in gj] for f in fi]
    return fi, gj, P, Q


def verify_witness(HC: CohomologyCategory, X, Y, f: dict, g: dict) -> bool:
    if not HC.homs[(X, Y)].is_cocycle(f) or not HC.homs[(Y, X)].is_cocycle(g):
        return False
    gf = HC.compose(g, f)
    fg = HC.compose(f, g)
    return (HC.h0_coords(X, X, gf) == HC.h0_coords(X, X, HC.units[X])
            and HC.h0_coords(Y, Y, fg) == HC.h0_coords(Y, Y, HC.units[Y]))


def is_quasi_isomorphic(C, X, Y, coeff_range: int = 2, random_trials: int = 200,
                        seed: int = 0) -> QuasiIsoVerdict:
    """Search for degree-0 classes f: X -> Y, g: Y -> X inverse to each other.

    Candidates f run over small integer combinations of an H^0 basis; for
    each, g is found by solving the (linear) equations g.f = e_X, f.g = e_Y.
    A refutation is certified when e_X is not in the span of all products
    g_j . f_i, or when H^0(X, Y) is a line (then scaling f is harmless and
    one linear solve is exhaustive).
    """
    HC = C if isinstance(C, CohomologyCategory) else C.cohomology()
    for Z in (X, Y):
        if HC.units[Z] is None:
            raise NotUnital(f"object {Z} has no cohomological unit")
    eX = HC.h0_coords(X, X, HC.units[X])
    eY = HC.h0_coords(Y, Y, HC.units[Y])
    zero = HC.homs[(X, X)].zero
    if X == Y:
        return QuasiIsoVerdict("isomorphic", HC.units[X], HC.units[X], "identity witness", 0)
    if not any(eX) and not any(eY):
        return QuasiIsoVerdict("isomorphic", {}, {}, "both objects are zero in cohomology", 0)
    fi, gj, P, Q = _h0_products(HC, X, Y)
    if not fi or not gj:
        side = "H^0(X,Y)" if not fi else "H^0(Y,X)"
        return QuasiIsoVerdict("not_isomorphic", note=f"{side} = 0, no candidate morphisms")
    if any(eX):
        span = [list(P[j][i]) for j in range(len(gj)) for i in range(len(fi))]
        if linalg.rank(span + [eX], zero) > linalg.rank(span, zero):
            return QuasiIsoVerdict(
                "not_isomorphic",
                note="e_X is not in the span of the products g_j.f_i "
                     f"(product pairing rank {linalg.rank(span, zero)})")
    if any(eY):
        span = [list(Q[i][j]) for j in range(len(gj)) for i in range(len(fi))]
        if linalg.rank(span + [eY], zero) > linalg.rank(span, zero):
            return QuasiIsoVerdict(
                "not_isomorphic",
                note="e_Y is not in the span of the products f_i.g_j "
                     f"(product pairing rank {linalg.rank(span, zero)})")

    def attempt(x):
        rows, rhs = [], []
        for t_ in range(len(eX)):
            rows.append([sum((x[i] * P[j][i][t_] for i in range(len(fi))), zero)
                         for j in range(len(gj))])
            rhs.append(eX[t_])
        for t_ in range(len(eY)):
            rows.append([sum((x[i] * Q[i][j][t_] for i in range(len(fi))), zero)
                         for j in range(len(gj))])
            rhs.append(eY[t_])
        y = linalg.solve(rows, rhs, zero)
        if y is None:
            return None
        f = HC.h0_vector(X, Y, x)
        g = HC.h0_vector(Y, X, y)
        if verify_witness(HC, X, Y, f, g):
            return f, g
        return None

    tried = 0
    vals = range(-coeff_range, coeff_range + 1)
    for x in sorted(itertools.product(vals, repeat=len(fi)),
                    key=lambda v: (sum(map(abs, v)), [-c for c in v])):
        if not any(x):
            continue
        tried += 1
        hit = attempt([zero + a for a in x])
        if hit:
            return QuasiIsoVerdict("isomorphic", hit[0], hit[1],
                                   "witness from exhaustive small-coefficient search", tried)
        if len(fi) == 1:
            return QuasiIsoVerdict(
                "not_isomorphic", budget=tried,
                note="H^0(X,Y) is one-dimensional and the linear system for g is inconsistent")
    rng = random.Random(seed)
    for _ in range(random_trials):
        x = [zero + rng.randint(-10, 10) for _ in fi]
        if not any(x):
            continue
        tried += 1
        hit = attempt(x)
        if hit:
            return QuasiIsoVerdict("isomorphic", hit[0], hit[1], "witness from random search", tried)
    return QuasiIsoVerdict("not_found", budget=tried,
                           note=f"no witness among {tried} candidates")


def transported_category_check(C, pairs, witnesses) -> bool:
    """Check that conjugation by witnesses identifies cohomology categories.

    ``pairs`` lists (A_i, B_i); ``witnesses[i] = (f_i, g_i)`` with
    f_i: A_i -> B_i.  The map phi |-> f_j . phi . g_i must be bijective on
    every H(A_i, A_j) -> H(B_i, B_j), preserve composition and send units to
    units.
    """
    HC = C if isinstance(C, CohomologyCategory) else C.cohomology()

    def conj(i, j, phi):
        fj, _ = witnesses[j]
        _, gi = witnesses[i]
        return HC.compose(fj, HC.compose(phi, gi))

    n = len(pairs)
    for i in range(n):
        for j in range(n):
            A_i, B_i = pairs[i]
            A_j, B_j = pairs[j]
            HA, HB = HC.homs[(A_i, A_j)], HC.homs[(B_i, B_j)]
            if HA.dims() != HB.dims():
                return False
            for d, dim in HA.dims().items():
                cols = []
                for idx in HA.degree_basis(d):
                    img = conj(i, j, HA.representative(idx, d))
                    cc = HB.class_coords(img, d) if img else {}
                    cols.append([cc.get(t_, HB.zero) for t_ in HB.degree_basis(d)])
                if linalg.rank(cols, HB.zero) != dim:
                    return False
    for i in range(n):
        A, B = pairs[i]
        img = conj(i, i, HC.units[A])
        if not HC.same_class(B, B, img, HC.units[B]):
            return False
    for i, j, m in itertools.product(range(n), repeat=3):
        A_i, A_j, A_m = pairs[i][0], pairs[j][0], pairs[m][0]
        H1, H2 = HC.homs[(A_i, A_j)], HC.homs[(A_j, A_m)]
        for a in range(len(H1.basis)):
            for b in range(len(H2.basis)):
                phi, psi = H1.representative(a), H2.representative(b)
                lhs = conj(i, m, HC.compose(psi, phi))
                rhs = HC.compose(conj(j, m, psi), conj(i, j, phi))
                Bi, Bm = pairs[i][1], pairs[m][1]
                diff = dict(lhs)
                for x, c in rhs.items():
                    diff[x] = diff.get(x, 0) - c
                diff = {x: c for x, c in diff.items() if c}
                if diff and HC.homs[(Bi, Bm)].class_coords(diff):
                    return False
    return True


# ---------------------------------------------------------------------------
# directed subcategory


def directed_subcategory(B: AInftyData, order, units: dict) -> AInftyData:
    """Keep hom(V_i, V_j) for i < j, a unit line for i = j, zero for i > j.

    ``units[V]`` is a degree-0 cocycle representing the cohomological unit of
    V.  Structure maps with unit inputs are evaluated by substituting the
    chosen cocycle; an output landing in an endomorphism space must be a
    multiple of that cocycle.
    """
    order = list(order)
    HC = B.cohomology()
    pos = {V: i for i, V in enumerate(order)}
    unit_name = {}
    gens = []
    for V in order:
        u = units[V]
        H = HC.homs[(V, V)]
        if any(x not in B.gen or B.gen[x].source != V or B.gen[x].target != V for x in u):
            raise BadUnit(f"chosen unit of {V} is not an endomorphism of {V}")
        if any(B.degree(x) != 0 for x in u) and not H.laurent:
            raise BadUnit(f"chosen unit of {V} is not of degree 0")
        if B.apply([u]):
            raise BadUnit(f"chosen unit of {V} is not closed")
        try:
            same = HC.units[V] is not None and HC.same_class(V, V, u, HC.units[V])
        except ValueError:
            same = False
        if not same:
            raise BadUnit(f"chosen cocycle for {V} is not the cohomological unit")
        name = f"e_{V}"
        while name in B.gen:
            name = "_" + name
        unit_name[V] = name
        gens.append(Generator(name, 0, V, V))
    for g in B.generators:
        if g.source in pos and g.target in pos and pos[g.source] < pos[g.target]:
            gens.append(g)
    kept = {g.name for g in gens}
    expand = {}
    for V in order:
        expand[unit_name[V]] = units[V]
    for g in gens:
        if g.name not in expand:
            expand[g.name] = {g.name: B.ring.one()}

    def unit_multiple(V, vec):
        u = units[V]
        pivot = next(iter(u))
        lam = vec.get(pivot, 0) / u[pivot]
        for x in set(u) | set(vec):
            if vec.get(x, 0) != lam * u.get(x, 0):
                raise BadUnit(f"an output in hom({V},{V}) leaves the unit line")
        return lam

    probe = AInftyData(B.objects + tuple(o for o in order if o not in B.objects),
                       gens, {}, B.ring, B.max_arity)
    mu = {}
    for inputs in _all_composable(probe, B.arity_max() or 1):
        out = B.apply([expand[x] for x in inputs])
        if not out:
            continue
        src = probe.gen[inputs[-1]].source
        tgt = probe.gen[inputs[0]].target
        if src == tgt:
            lam = unit_multiple(src, out)
            if lam:
                mu[inputs] = {unit_name[src]: lam}
        else:
            stray = [y for y in out if y not in kept]
            if stray:
                raise BadUnit(f"outputs {stray} fall outside the directed category")
            mu[inputs] = out
    D = AInftyData(order, gens, mu, B.ring, B.max_arity, name=f"directed({B.name})")
    rep = check_ainfty(D)
    if not rep.passed:
        raise BadUnit(f"truncated category fails the structure equations at {rep.failure}")
    return D


# ---------------------------------------------------------------------------
# homogeneous splitting over L


@dataclass
class HomogeneousSplitting:
    degrees: list
    l: int
    d: list          # L-matrix, d[i][j] = coefficient of g_i in d(g_j)
    im: list         # L-vectors
    H: list
    I: list
    homotopy: list   # L-matrix
    proj_H: list     # L-matrix

    def verify(self) -> bool:
        n = len(self.degrees)
        Z = GradedLaurent({}, self.l)
        one = GradedLaurent.constant(1, self.l)

        def mm(A, B):
            return [[sum((A[i][k] * B[k][j] for k in range(n)), Z) for j in range(n)]
                    for i in range(n)]

        lhs = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(mm(self.d, self.homotopy),
                                                               mm(self.homotopy, self.d))]
        rhs = [[(one if i == j else Z) - self.proj_H[i][j] for j in range(n)] for i in range(n)]
        if lhs != rhs:
            return False
        for v in self.H:
            if any(sum((self.d[i][j] * v[j] for j in range(n)), Z) for i in range(n)):
                return False
        return True

    def to_dict(self):
        fmt = lambda vs: [[str(a) for a in v] for v in vs]
        return {"im": fmt(self.im), "H": fmt(self.H), "I": fmt(self.I),
                "homotopy": fmt(self.homotopy)}


def homogeneous_splitting(degrees, d, l: int) -> HomogeneousSplitting:
    """Split a complex of free L-modules with homogeneous basis.

    ``d[i][j]`` is the coefficient of generator i in d(generator j); every
    nonzero entry must be a single hbar power compatible with the degrees.
    """
    n = len(degrees)
    p = l - 2
    Z = GradedLaurent({}, l)
    dm = [[GradedLaurent.constant(a, l) if not isinstance(a, GradedLaurent) else a for a in row]
          for row in d]
    for i in range(n):
        for j in range(n):
            a = dm[i][j]
            if not a:
                continue
            if not a.is_homogeneous():
                raise NonHomogeneousEntries(f"entry ({i},{j}) = {a} mixes hbar powers")
            if degrees[i] + a.degree() != degrees[j] + 1:
                raise NonHomogeneousEntries(f"entry ({i},{j}) = {a} has the wrong degree")
    for i in range(n):
        for j in range(n):
            if sum((dm[i][k] * dm[k][j] for k in range(n)), Z):
                raise ValueError("the differential does not square to zero")
    pieces: dict[int, list] = {}
    for i, dg in enumerate(degrees):
        pieces.setdefault(dg % p, []).append(i)
    local = {i: (g, r) for g, xs in pieces.items() for r, i in enumerate(xs)}
    nxt = {g: (g + 1) % p for g in pieces}
    dmaps = {}
    for g, xs in pieces.items():
        h = nxt[g]
        if h not in pieces:
            continue
        M = [[Fraction(0)] * len(xs) for _ in pieces[h]]
        for c, j in enumerate(xs):
            for r, i in enumerate(pieces[h]):
                if dm[i][j]:
                    M[r][c] = dm[i][j].coefficient()
        dmaps[g] = M
    sp = split_graded({g: len(v) for g, v in pieces.items()}, dmaps, nxt, Fraction(0), Fraction(1))

    def lift(g, v):
        xs = pieces[g]
        D = next(degrees[x] for x, a in zip(xs, v) if a)
        out = [Z] * n
        for x, a in zip(xs, v):
            if a:
                out[x] = GradedLaurent({(degrees[x] - D) // p: a}, l)
        return out

    def lmat(blocks, shift):
        M = [[Z] * n for _ in range(n)]
        for g, (tgt, mat) in blocks.items():
            for r, i in enumerate(pieces[tgt]):
                for c, j in enumerate(pieces[g]):
                    a = mat[r][c]
                    if a:
                        q, rem = divmod(degrees[i] - degrees[j] - shift, p)
                        assert rem == 0
                        M[i][j] = GradedLaurent({q: a}, l)
        return M

    hblocks = {g: (sp.prev[g], sp.homotopy[g]) for g in sp.homotopy}
    hom = lmat(hblocks, -1)
    pblocks = {}
    for g in sp.grades:
        nH = len(sp.H[g])
        start = len(sp.im[g])
        if not nH:
            continue
        cols = sp.H[g]
        rows = sp.coord[g][start:start + nH]
        P = linalg.matmul(linalg.transpose(cols), rows, Fraction(0))
        pblocks[g] = (g, P)
    proj = lmat(pblocks, 0)
    return HomogeneousSplitting(
        list(degrees), l, dm,
        [lift(g, v) for g in sp.grades for v in sp.im[g]],
        [lift(g, v) for g in sp.grades for v in sp.H[g]],
        [lift(g, v) for g in sp.grades for v in sp.I[g]],
        hom, proj)


# ---------------------------------------------------------------------------
# JSON interchange


def to_json(C: AInftyData) -> dict:
    return {
        "format": FORMAT_TAG,
        "name": C.name,
        "ring": C.ring.name,
        "max_arity": C.max_arity,
        "objects": list(C.objects),
        "generators": [{"name": g.name, "degree": g.degree, "source": g.source, "target": g.target}
                       for g in C.generators],
        "mu": [{"arity": len(i), "inputs": list(i), "output": y, "coefficient": C.ring.format(c)
                if not _is_fraction_like(c) else str(c)}
               for i, y, c in C.entries()],
    }


def from_json(data) -> AInftyData:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise ValueError(f"unsupported format {data.get('format')!r}")
    ring = parse_ring(data.get("ring", "Q"))
    mu: dict = {}
    for e in data.get("mu", []):
        inputs = tuple(e["inputs"])
        if "arity" in e and e["arity"] != len(inputs):
            raise ValueError(f"arity {e['arity']} does not match inputs {inputs}")
        c = ring.parse(str(e.get("coefficient", "1")))
        slot = mu.setdefault(inputs, {})
        slot[e["output"]] = slot.get(e["output"], 0) + c
    return AInftyData(data["objects"], data["generators"], mu, ring,
                      data.get("max_arity", 6), data.get("name", ""))


def load(path) -> AInftyData:
    with open(path) as fh:
        return from_json(json.load(fh))


def dump(C: AInftyData, path):
    with open(path, "w") as fh:
        json.dump(to_json(C), fh, indent=2)
