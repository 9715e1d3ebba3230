"""Twisted and bulk deformations of finite A-infinity data.

* ``WeightedTensor``: structure constants split into curve contributions
  ``(coefficient, weight)``; twisting replaces each by ``coefficient * t^weight``.
* Gauge changes ``gamma -> t^{-alpha(gamma)} gamma`` shift weights by
  ``alpha(output) - sum alpha(inputs)``.
* ``BulkFamily``: raw counts per number q of interior constraints, assembled
  into ``mu = sum_q hbar^q raw_q / q!`` over the graded Laurent ring.
* F-series: ``F = sum hbar^{|I|} F_{i1} ... F_{in} / (i1 (i1+i2) ... )`` and
  its inverse ``sum (-1)^n hbar^{|I|} F_{in} ... F_{i1} / (i1 (i1+i2) ...)``.
"""
from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from . import linalg
from .ainfty import AInftyData, Generator, check_ainfty, homogeneous_splitting
from .coeff import GradedLaurent, LaurentRing, Rationals, TwistedRing, TwistedScalar, to_fraction
from .errors import (DegreeLedgerViolation, NotExactDiscrepancy, StructureEquationFailure,
                     TruncationTooSmall, WeightInconsistency)

# ---------------------------------------------------------------------------
# weighted tensors


class WeightedTensor:
    """Structure constants resolved into weighted curve contributions.

    ``entries[(inputs, output)]`` is a tuple of ``(coefficient, weight)``
    pairs, one per counted curve.  Inputs use the written order of
    ``AInftyData``.
    """

    def __init__(self, objects, generators, entries, max_arity: int = 6, name: str = ""):
        self.objects = tuple(objects)
        self.generators = tuple(g if isinstance(g, Generator) else
                                Generator(*g) if isinstance(g, (tuple, list)) else Generator(**g)
                                for g in generators)
        self.max_arity = max_arity
        self.name = name
        self.entries = {}
        for (inputs, out), curves in entries.items():
            cs = tuple((to_fraction(c), to_fraction(w)) for c, w in curves)
            if cs:
                self.entries[(tuple(inputs), out)] = cs

    @classmethod
    def from_category(cls, C: AInftyData, weights: dict | None = None) -> "WeightedTensor":
        """One curve per entry; ``weights[(inputs, output)]`` defaults to 0."""
        weights = weights or {}
        entries = {}
        for inputs, y, c in C.entries():
            entries[(inputs, y)] = ((c, weights.get((inputs, y), 0)),)
        return cls(C.objects, C.generators, entries, C.max_arity, C.name)

    def specialize(self) -> AInftyData:
        """Set every weight to 0 (t = 1): the undeformed category over Q."""
        mu: dict = {}
        for (inputs, y), curves in self.entries.items():
            c = sum((a for a, _ in curves), Fraction(0))
            if c:
                mu.setdefault(inputs, {})[y] = c
        return AInftyData(self.objects, self.generators, mu, Rationals(), self.max_arity, self.name)

    def twisted(self) -> AInftyData:
        mu: dict = {}
        for (inputs, y), curves in self.entries.items():
            c = TwistedScalar({})
            for a, w in curves:
                c = c + TwistedScalar.monomial(w, a)
            if c:
                mu.setdefault(inputs, {})[y] = c
        return AInftyData(self.objects, self.generators, mu, TwistedRing(), self.max_arity,
                          f"twisted({self.name})" if self.name else "twisted")

    def map_weights(self, fn) -> "WeightedTensor":
        entries = {key: tuple((c, fn(key, w)) for c, w in curves)
                   for key, curves in self.entries.items()}
        return WeightedTensor(self.objects, self.generators, entries, self.max_arity, self.name)

    def scale_weights(self, s) -> "WeightedTensor":
        s = to_fraction(s)
        return self.map_weights(lambda key, w: w * s)

    def weights(self) -> dict:
        return {key: tuple(w for _, w in curves) for key, curves in self.entries.items()}

    def to_json(self) -> dict:
        return {
            "format": "floer-lab/1",
            "objects": list(self.objects),
            "generators": [{"name": g.name, "degree": g.degree, "source": g.source,
                            "target": g.target} for g in self.generators],
            "entries": [{"inputs": list(i), "output": y,
                         "curves": [{"coefficient": str(c), "weight": str(w)} for c, w in cs]}
                        for (i, y), cs in sorted(self.entries.items())],
        }


def twist(C: AInftyData, W: WeightedTensor) -> AInftyData:
    """Decorate the structure constants of C by t^weight.

    W must specialize to C.  The twisted tensors must satisfy the structure
    equations separately in every t-weight; otherwise the weights break the
    Stokes constraint and WeightInconsistency is raised.
    """
    base = W.specialize()
    if base.mu != {k: v for k, v in C.mu.items()}:
        raise ValueError("weighted tensor does not specialize to the given category")
    T = W.twisted()
    rep = check_ainfty(T)
    if not rep.passed:
        f = rep.failure
        classes = {str(r): str(c) for r, c in f.residue.items()} if hasattr(f.residue, "items") else {}
        raise WeightInconsistency(
            f"terms of the structure equation at {f.inputs} -> {f.output} do not cancel "
            f"weight by weight (residue {f.residue})",
            {"inputs": list(f.inputs), "output": f.output, "residue_by_weight": classes})
    return T


# ---------------------------------------------------------------------------
# gauge changes


def gauge_shift(W: WeightedTensor, alpha: dict) -> WeightedTensor:
    """Weights after the change of basis gamma -> t^{-alpha(gamma)} gamma."""
    a = {g: to_fraction(v) for g, v in alpha.items()}

    def shift(key, w):
        inputs, y = key
        return w + a.get(y, 0) - sum((a.get(x, 0) for x in inputs), Fraction(0))

    return W.map_weights(shift)


@dataclass
class ExactTwistRemoval:
    alpha: dict
    basis_map: dict        # generator -> t^{-alpha}
    conjugated: WeightedTensor
    verified: bool

    def to_dict(self):
        return {"alpha": {g: str(v) for g, v in self.alpha.items()},
                "basis_map": {g: str(v) for g, v in self.basis_map.items()},
                "verified": self.verified}


def _curve_rows(D: WeightedTensor, base: WeightedTensor | None):
    """Linear equations sum alpha(inputs) - alpha(out) = w - w0, one per curve."""
    names = [g.name for g in D.generators]
    col = {n: i for i, n in enumerate(names)}
    rows, rhs, labels = [], [], []
    for key, curves in sorted(D.entries.items()):
        inputs, y = key
        base_curves = base.entries.get(key) if base is not None else None
        if base_curves is not None and len(base_curves) != len(curves):
            raise ValueError(f"base tensor has a different curve list at {key}")
        for idx, (c, w) in enumerate(curves):
            w0 = base_curves[idx][1] if base_curves is not None else Fraction(0)
            row = [Fraction(0)] * len(names)
            for x in inputs:
                row[col[x]] += 1
            row[col[y]] -= 1
            rows.append(row)
            rhs.append(w - w0)
            labels.append((inputs, y, idx))
    return names, rows, rhs, labels


def remove_exact_twist(D: WeightedTensor, alpha: dict | None = None,
                       base: WeightedTensor | None = None) -> ExactTwistRemoval:
    """Undo a twist whose weights differ from the base ones by a coboundary.

    If ``alpha`` is omitted it is solved for.  When no potential exists a
    certificate is attached: multipliers y on the curve equations with
    y . A = 0 but y . (w - w0) != 0.
    """
    names, rows, rhs, labels = _curve_rows(D, base)
    if alpha is None:
        sol = linalg.solve(rows, rhs) if rows else [Fraction(0)] * len(names)
        if sol is None:
            cert = _infeasibility_certificate(rows, rhs, labels)
            raise NotExactDiscrepancy("weights are not a base weight plus a coboundary", cert)
        alpha = dict(zip(names, sol))
    else:
        alpha = {n: to_fraction(alpha.get(n, 0)) for n in names}
        for row, b, lab in zip(rows, rhs, labels):
            got = sum((r * alpha[n] for r, n in zip(row, names)), Fraction(0))
            if got != b:
                raise NotExactDiscrepancy(
                    f"alpha does not account for the weight of curve {lab}",
                    {"curve": lab, "expected": str(b), "from_alpha": str(got)})
    conj = gauge_shift(D, alpha)
    basis_map = {n: TwistedScalar.monomial(-alpha[n]) for n in names}
    verified = _verify_conjugation(D, conj, alpha)
    if base is not None:
        verified = verified and conj.weights() == base.weights()
    else:
        verified = verified and all(w == 0 for ws in conj.weights().values() for w in ws)
    return ExactTwistRemoval(alpha, basis_map, conj, verified)


def _infeasibility_certificate(rows, rhs, labels):
    At = linalg.transpose(rows)
    left = linalg.nullspace(At, len(rows))
    for y in left:
        s = sum((a * b for a, b in zip(y, rhs)), Fraction(0))
        if s:
            support = [(labels[i], str(y[i])) for i in range(len(y)) if y[i]]
            return {"multipliers": support, "pairing": str(s)}
    return None


def _verify_conjugation(D: WeightedTensor, conj: WeightedTensor, alpha: dict) -> bool:
    """Check mu'(x'_k..x'_1) = P^{-1} mu(P x'_k, .., P x'_1) with P x = t^{-alpha(x)} x."""
    T, Tc = D.twisted(), conj.twisted()
    P = {n: TwistedScalar.monomial(-a) for n, a in alpha.items()}
    keys = set(T.mu) | set(Tc.mu)
    for inputs in keys:
        vecs = [{x: P[x]} for x in inputs]
        image = T.apply(vecs)
        back = {y: c * P[y].inverse() for y, c in image.items()}
        if back != Tc.mu.get(inputs, {}):
            return False
    return True


# ---------------------------------------------------------------------------
# bulk deformation


@dataclass
class BulkFamily:
    """Raw counts ``components[q][inputs] = {output: count}`` for q interior points."""

    objects: tuple
    generators: tuple
    components: dict
    l: int
    max_arity: int = 6
    name: str = ""


def _gen_degrees(generators) -> dict:
    out = {}
    for g in generators:
        if hasattr(g, "name"):
            out[g.name] = g.degree
        elif isinstance(g, dict):
            out[g["name"]] = g["degree"]
        else:
            out[g[0]] = g[1]
    return out


def predicted_q(degrees: dict, inputs, output, l: int):
    """The only q allowed for an entry by the degree count, or None."""
    k = len(inputs)
    shift = degrees[output] - sum(degrees[x] for x in inputs) - 2 + k
    q, r = divmod(shift, l - 2)
    if r or q < 0:
        return None
    return q


def assemble_bulk(F: BulkFamily) -> AInftyData:
    """mu^k = sum_q hbar^q raw_q / q!, after checking the degree ledger."""
    degs = _gen_degrees(F.generators)
    mu: dict = {}
    for q, comp in sorted(F.components.items()):
        for inputs, outs in comp.items():
            inputs = tuple(inputs)
            for y, c in outs.items():
                c = to_fraction(c)
                if not c:
                    continue
                if predicted_q(degs, inputs, y, F.l) != q:
                    k = len(inputs)
                    raise DegreeLedgerViolation(
                        f"(k={k}, q={q}, inputs={inputs}, output={y}): degree "
                        f"{degs[y]} != {sum(degs[x] for x in inputs)} + {2 - k} + {q}*{F.l - 2}")
                slot = mu.setdefault(inputs, {})
                term = GradedLaurent({q: c / factorial(q)}, F.l)
                slot[y] = slot.get(y, GradedLaurent({}, F.l)) + term
    return AInftyData(F.objects, F.generators, mu, LaurentRing(F.l), F.max_arity,
                      f"bulk({F.name})" if F.name else "bulk")


def ledger_cutoff(F: BulkFamily, k: int) -> dict:
    """For each composable arity-k input tuple and output, the admissible q.

    Every pair admits at most one q, so the assembled sum is finite; the
    maximum over pairs is the cutoff."""
    degs = _gen_degrees(F.generators)
    C0 = AInftyData(F.objects, F.generators, {}, Rationals())
    from .ainfty import _all_composable
    out = {}
    for inputs in _all_composable(C0, k):
        if len(inputs) != k:
            continue
        src = C0.gen[inputs[-1]].source
        tgt = C0.gen[inputs[0]].target
        for y in C0.hom(src, tgt):
            q = predicted_q(degs, inputs, y, F.l)
            if q is not None:
                out[(inputs, y)] = q
    return out


# ---------------------------------------------------------------------------
# F-series


def _frac_array(M) -> np.ndarray:
    A = np.array(M, dtype=object)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("operators must be square matrices")
    return np.vectorize(to_fraction, otypes=[object])(A)


def _zeros(n):
    return np.full((n, n), Fraction(0), dtype=object)


def _eye(n):
    A = _zeros(n)
    for i in range(n):
        A[i, i] = Fraction(1)
    return A


def _is_zero(A) -> bool:
    return not any(x for x in A.flat)


@dataclass
class FSeriesData:
    """Operators F_q (q >= 1) and differential components delta_q (q >= 0).

    The structure equation
        q delta_q = sum_{1 <= i <= q} (delta_{q-i} F_i - F_i delta_{q-i})
    is checked for every provided q on construction.  Optional ``degrees``
    and ``l`` enable degree checks: F_q has degree q(l-2) and delta_q has
    degree 1 + q(l-2).
    """

    F: dict
    delta: dict
    degrees: list | None = None
    l: int | None = None
    rank: int = field(init=False)

    def __post_init__(self):
        self.F = {int(q): _frac_array(M) for q, M in self.F.items()}
        self.delta = {int(q): _frac_array(M) for q, M in self.delta.items()}
        if 0 not in self.delta:
            raise ValueError("delta_0 is required")
        self.rank = self.delta[0].shape[0]
        if any(q < 1 for q in self.F):
            raise ValueError("F_q is indexed by q >= 1")
        for q in sorted(self.delta):
            if q >= 1:
                res = structure_residual(self, q)
                if not _is_zero(res):
                    raise StructureEquationFailure(f"structure equation fails at q={q}")
        if self.degrees is not None:
            self._check_degrees()

    def _check_degrees(self):
        if self.l is None:
            raise ValueError("degrees need the ambient l")
        p = self.l - 2
        n = self.rank
        for name, ops, base in (("F", self.F, 0), ("delta", self.delta, 1)):
            for q, M in ops.items():
                for i in range(n):
                    for j in range(n):
                        if M[i, j] and self.degrees[i] - self.degrees[j] != base + q * p:
                            raise ValueError(f"{name}_{q}[{i},{j}] has the wrong degree")

    @property
    def max_q(self) -> int:
        return max((q for q, M in self.F.items() if not _is_zero(M)), default=0)

    def F_op(self, q):
        return self.F.get(q, _zeros(self.rank))

    def delta_op(self, q):
        return self.delta.get(q, _zeros(self.rank))

    @classmethod
    def from_generators(cls, delta0, F: dict, top: int, degrees=None, l=None) -> "FSeriesData":
        """Derive delta_1..delta_top from delta_0 and the F_q."""
        d0 = _frac_array(delta0)
        Fs = {int(q): _frac_array(M) for q, M in F.items()}
        n = d0.shape[0]
        delta = {0: d0}
        for q in range(1, top + 1):
            acc = _zeros(n)
            for i in range(1, q + 1):
                if i in Fs:
                    acc = acc + delta[q - i].dot(Fs[i]) - Fs[i].dot(delta[q - i])
            delta[q] = acc * Fraction(1, q)
        return cls(Fs, delta, degrees, l)

    def extend(self, top: int) -> "FSeriesData":
        return FSeriesData.from_generators(self.delta[0], self.F, top, self.degrees, self.l)

    def to_json(self) -> dict:
        fmt = lambda M: [[str(x) for x in row] for row in M]
        return {"format": "floer-lab/1",
                "F": {str(q): fmt(M) for q, M in self.F.items()},
                "delta": {str(q): fmt(M) for q, M in self.delta.items()},
                "degrees": self.degrees, "l": self.l}


def structure_residual(FS: FSeriesData, q: int) -> np.ndarray:
    acc = FS.delta_op(q) * q
    for i in range(1, q + 1):
        acc = acc - (FS.delta_op(q - i).dot(FS.F_op(i)) - FS.F_op(i).dot(FS.delta_op(q - i)))
    return acc


def compositions(q: int):
    """Ordered tuples of positive integers summing to q."""
    if q == 0:
        yield ()
        return
    for first in range(1, q + 1):
        for rest in compositions(q - first):
            yield (first,) + rest


def word_weight(word) -> Fraction:
    """1 / (i1 (i1+i2) ... (i1+...+in))."""
    den, s = 1, 0
    for i in word:
        s += i
        den *= s
    return Fraction(1, den)


def _word_series(FS: FSeriesData, N: int, sign: int, reverse: bool) -> list:
    n = FS.rank
    out = []
    for q in range(N + 1):
        acc = _zeros(n)
        for word in compositions(q):
            if any(_is_zero(FS.F_op(i)) for i in word):
                continue
            letters = list(reversed(word)) if reverse else list(word)
            M = _eye(n)
            for i in letters:
                M = M.dot(FS.F_op(i))
            coeff = word_weight(word) * (sign ** len(word))
            acc = acc + M * coeff
        out.append(acc)
    return out


def f_series(FS: FSeriesData, N: int):
    """Coefficients of F and of its inverse through hbar^N.

    The inverse is the alternating series with each word read backwards,
    which solves hbar d/dhbar G = -Phi G; reading words in the same order
    only inverts F when the F_q commute.
    """
    if N < 1:
        raise ValueError("truncation must be at least 1")
    if N < FS.max_q:
        warnings.warn(f"truncation {N} is below the largest nonzero F_q (q={FS.max_q})",
                      TruncationTooSmall, stacklevel=2)
    return _word_series(FS, N, 1, False), _word_series(FS, N, -1, True)


def same_order_alternating_series(FS: FSeriesData, N: int) -> list:
    """Alternating series with words in the original order (inverse only if the F_q commute)."""
    return _word_series(FS, N, -1, False)


def series_mul(A: list, B: list, N: int) -> list:
    n = A[0].shape[0]
    out = []
    for q in range(N + 1):
        acc = _zeros(n)
        for i in range(q + 1):
            if i < len(A) and q - i < len(B):
                acc = acc + A[i].dot(B[q - i])
        out.append(acc)
    return out


def is_identity_series(S: list) -> bool:
    n = S[0].shape[0]
    return all(x == y for x, y in zip(S[0].flat, _eye(n).flat)) and all(_is_zero(M) for M in S[1:])


def conjugation_residual(FS: FSeriesData, N: int) -> list:
    """Coefficients of F^{-1} delta_0 F - delta through hbar^N (all zero when it holds)."""
    FS = FS.extend(N) if max(FS.delta) < N else FS
    F, G = f_series(FS, N)
    lhs = series_mul(series_mul(G, [FS.delta[0]], N), F, N)
    return [lhs[q] - FS.delta_op(q) for q in range(N + 1)]


def delta_as_laurent(FS: FSeriesData, top: int):
    """delta = sum hbar^q delta_q as a matrix over L (graded data only)."""
    if FS.degrees is None:
        raise ValueError("needs graded data")
    FS = FS.extend(top) if max(FS.delta) < top else FS
    n = FS.rank
    M = [[GradedLaurent({}, FS.l) for _ in range(n)] for _ in range(n)]
    for q in range(top + 1):
        D = FS.delta_op(q)
        for i in range(n):
            for j in range(n):
                if D[i, j]:
                    M[i][j] = M[i][j] + GradedLaurent({q: D[i, j]}, FS.l)
    return M


def cohomology_ranks(degrees, M, l) -> dict:
    """Ranks of H of an L-complex, per degree residue mod l-2."""
    sp = homogeneous_splitting(degrees, M, l)
    out: dict[int, int] = {}
    for v in sp.H:
        i = next(i for i, a in enumerate(v) if a)
        r = (degrees[i] + v[i].degree()) % (l - 2)
        out[r] = out.get(r, 0) + 1
    return out


# ---------------------------------------------------------------------------
# random instances


def random_square_zero(rng, degrees=None, n=None, entry_range=3):
    """A random differential of degree +1 (or ungraded) with d^2 = 0.

    Built as a conjugate of a standard form made of pairs x -> y."""
    if degrees is None:
        degrees = [0] * n
    n = len(degrees)
    by_deg: dict[int, list] = {}
    for i, d in enumerate(degrees):
        by_deg.setdefault(d, []).append(i)
    N = _zeros(n)
    graded = len(set(degrees)) > 1
    used = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in order:
        if i in used:
            continue
        if graded:
            targets = [j for j in by_deg.get(degrees[i] + 1, []) if j not in used]
        else:
            targets = [j for j in range(n) if j != i and j not in used]
        if targets and rng.random() < 0.7:
            j = rng.choice(targets)
            N[j, i] = Fraction(1)
            used.update((i, j))
    # degree-preserving change of basis
    P = _eye(n)
    for d, idx in by_deg.items() if graded else [(0, list(range(n)))]:
        for a in idx:
            for b in idx:
                if a != b and rng.random() < 0.5:
                    P[a, b] = Fraction(rng.randint(-entry_range, entry_range))
    # make P unipotent-ish and invertible: lower-triangular in the block order
    for d, idx in by_deg.items() if graded else [(0, list(range(n)))]:
        for x, a in enumerate(idx):
            for b in idx[x:]:
                if a != b:
                    P[a, b] = Fraction(0)
    Pinv = np.array(linalg.inverse(P.tolist()), dtype=object)
    return Pinv.dot(N).dot(P)


def random_operator(rng, degrees=None, n=None, shift=0, density=0.6, entry_range=3):
    if degrees is None:
        degrees = [0] * n
    n = len(degrees)
    M = _zeros(n)
    for i in range(n):
        for j in range(n):
            if degrees[i] - degrees[j] == shift and rng.random() < density:
                M[i, j] = Fraction(rng.randint(-entry_range, entry_range))
    return M


def random_fseries_instance(rng, rank: int = 4, top: int = 6, graded: bool = False,
                            l: int = 4, require_noncommuting: bool = True) -> FSeriesData:
    """delta_0 with delta_0^2 = 0, nonzero F_1, F_2, and derived delta_q.

    Graded instances need rank >= 3 so that degree gaps p and 2p (p = l - 2)
    both occur; the degrees 0, p, 2p are always present."""
    if graded and rank < 3:
        raise ValueError("graded instances with F_1, F_2 != 0 need rank >= 3")
    for _ in range(100):
        if graded:
            p = l - 2
            degrees = sorted([0, p, 2 * p] + [rng.randint(0, 3 * p) for _ in range(rank - 3)])
        else:
            degrees = None
        d0 = random_square_zero(rng, degrees, rank)
        F1 = random_operator(rng, degrees, rank, shift=(l - 2) if graded else 0)
        F2 = random_operator(rng, degrees, rank, shift=2 * (l - 2) if graded else 0)
        if _is_zero(F1) or _is_zero(F2):
            continue
        if require_noncommuting and not graded and _is_zero(F1.dot(F2) - F2.dot(F1)):
            continue
        FS = FSeriesData.from_generators(d0, {1: F1, 2: F2}, top, degrees, l if graded else None)
        if graded and all(_is_zero(FS.delta_op(q)) for q in range(1, top + 1)):
            continue
        return FS
    raise RuntimeError("could not generate an instance")


# ---------------------------------------------------------------------------
# JSON sidecars


def load_weights(path_or_data, C: AInftyData | None = None) -> WeightedTensor:
    data = path_or_data
    if isinstance(path_or_data, str):
        with open(path_or_data) as fh:
            data = json.load(fh)
    entries = {}
    for e in data["entries"]:
        key = (tuple(e["inputs"]), e["output"])
        entries[key] = [(c["coefficient"], c["weight"]) for c in e["curves"]]
    objects = data.get("objects") or (C.objects if C else None)
    gens = data.get("generators") or (C.generators if C else None)
    if objects is None or gens is None:
        raise ValueError("weights file needs objects and generators, or a base category")
    C0 = AInftyData(objects, gens, {}, Rationals())
    return WeightedTensor(C0.objects, C0.generators, entries, data.get("max_arity", 6))


def load_fseries(path_or_data) -> FSeriesData:
    data = path_or_data
    if isinstance(path_or_data, str):
        with open(path_or_data) as fh:
            data = json.load(fh)
    F = {int(q): [[Fraction(x) for x in row] for row in M] for q, M in data["F"].items()}
    degrees = data.get("degrees")
    l = data.get("l")
    if "delta" in data and len(data["delta"]) > 1:
        delta = {int(q): [[Fraction(x) for x in row] for row in M] for q, M in data["delta"].items()}
        return FSeriesData(F, delta, degrees, l)
    d0 = data["delta"]["0"] if "delta" in data else data["delta0"]
    d0 = [[Fraction(x) for x in row] for row in d0]
    return FSeriesData.from_generators(d0, F, int(data.get("top", 8)), degrees, l)
