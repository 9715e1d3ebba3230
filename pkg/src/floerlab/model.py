"""Sections of the model Lefschetz fibration pi(w) = sum w_j^2 on C^n.

The sections with the standard boundary condition are u_a(z) = z a + conj(a)
with pi(a) = 0 and |a|^2 = 1/2.  For n = 2m the perturbed thimble is

    T_eps = { r (eps_c s_1 - i eps t_1, eps_c t_1 + i eps s_1, ...) :
              sum(s_i^2 + t_i^2) = 1, 0 <= r <= 1 },   eps_c = sqrt(1 + eps^2),

and there is exactly one section with u_a(1) = e_1 meeting T_eps:
a = (1/2, -i/2, 0, ..., 0), z = R = (eps_c - eps)/(eps_c + eps).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from .coeff import TwistedScalar, to_fraction
from .errors import EpsOutOfRange, NewtonDivergence, OddDimension, SingularSolution

RESIDUAL_TOL = 1e-10
SIGMA_TOL = 1e-6


def eps_c(eps: float) -> float:
    return math.sqrt(1.0 + eps * eps)


def closed_form_R(eps: float) -> float:
    ec = eps_c(eps)
    return (ec - eps) / (ec + eps)


def pi_std(w) -> complex:
    w = np.asarray(w, dtype=complex)
    return complex(np.sum(w * w))


def section_value(a, z) -> np.ndarray:
    """u_a(z) = z a + conj(a)."""
    a = np.asarray(a, dtype=complex)
    return z * a + np.conj(a)


def _check_eps(eps):
    if not (0 < eps <= 0.5):
        raise EpsOutOfRange(f"eps must lie in (0, 0.5], got {eps}")


def _check_n(n):
    if n < 2 or n % 2:
        raise OddDimension(f"n must be even and >= 2, got {n}")


def thimble_point(eps, s, t, r) -> np.ndarray:
    """The point of T_eps with parameters (s, t, r)."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    ec = eps_c(eps)
    out = np.empty(2 * len(s), dtype=complex)
    out[0::2] = ec * s - 1j * eps * t
    out[1::2] = ec * t + 1j * eps * s
    return r * out


# ---------------------------------------------------------------------------
# the moduli space of sections


@dataclass
class SectionModuli:
    """Solutions a of pi(a) = 0, |a|^2 = 1/2, i.e. a = (u + i v)/2 with u, v orthonormal."""

    n: int

    @property
    def dimension(self) -> int:
        return 2 * self.n - 3

    def circle(self, which: int, theta):
        """n = 2 only: C_0 = {(e/2, i e/2)}, C_1 = {(e/2, -i e/2)}, e = exp(i theta)."""
        if self.n != 2:
            raise ValueError("explicit circles exist for n = 2 only")
        e = np.exp(1j * np.asarray(theta, dtype=float)) / 2
        sign = 1j if which == 0 else -1j
        return np.stack([e, sign * e], axis=-1)

    def sample(self, count: int, rng) -> np.ndarray:
        """Random points of the moduli space (Gram-Schmidt on Gaussian pairs)."""
        A = rng.standard_normal((count, self.n, 2))
        Q, R = np.linalg.qr(A)
        Q = Q * np.sign(np.diagonal(R, axis1=1, axis2=2))[:, None, :]
        return (Q[:, :, 0] + 1j * Q[:, :, 1]) / 2

    def constraint_jacobian(self, a) -> np.ndarray:
        """d(Re pi, Im pi, |a|^2) with respect to (Re a, Im a)."""
        x, y = np.real(a), np.imag(a)
        return np.array([
            np.concatenate([2 * x, -2 * y]),
            np.concatenate([2 * y, 2 * x]),
            np.concatenate([2 * x, 2 * y]),
        ])

    def tangent_dimension(self, a, tol=1e-9) -> int:
        J = self.constraint_jacobian(a)
        sv = np.linalg.svd(J, compute_uv=False)
        return 2 * self.n - int(np.sum(sv > tol))

    def component(self, a) -> int:
        """Orientation class of the frame (u, v): 1 when det-like sign is negative (n = 2)."""
        if self.n != 2:
            raise ValueError("components are labelled for n = 2 only")
        u, v = 2 * np.real(a), 2 * np.imag(a)
        return 0 if u[0] * v[1] - u[1] * v[0] > 0 else 1


def section_circles(n: int) -> SectionModuli:
    _check_n(n)
    return SectionModuli(n)


def evaluation_at_one(a) -> np.ndarray:
    """ev_1(u_a) = u_a(1) = 2 Re(a), a point of the real unit sphere."""
    return np.real(section_value(a, 1.0))


# ---------------------------------------------------------------------------
# the constrained system


class ConstraintSystem:
    """Residuals and Jacobian of conditions (1)-(4) in real unknowns.

    Unknown vector: [Re a (n), Im a (n), Re z, Im z, s (m), t (m), r].
    Equations: Re pi(a), Im pi(a), |a|^2 - 1/2, u_a(1) - e_1 (n rows),
    Re/Im of u_a(z) - r T(s, t) (2n rows), sum(s^2 + t^2) - 1.
    """

    def __init__(self, eps: float, n: int, row_map=None):
        _check_n(n)
        self.eps = float(eps)
        self.n = n
        self.m = n // 2
        self.ec = eps_c(self.eps)
        self.nvar = 3 * n + 3
        self.neq = 3 * n + 4
        self.row_map = row_map  # optional: rows[dst] := rows[src]

    def with_duplicated_row(self, src: int, dst: int) -> "ConstraintSystem":
        rm = dict(self.row_map or {})
        rm[dst] = src
        return ConstraintSystem(self.eps, self.n, rm)

    def split(self, X):
        n, m = self.n, self.m
        x = X[..., 0:n]
        y = X[..., n:2 * n]
        u = X[..., 2 * n]
        v = X[..., 2 * n + 1]
        s = X[..., 2 * n + 2:2 * n + 2 + m]
        t = X[..., 2 * n + 2 + m:2 * n + 2 + 2 * m]
        r = X[..., 3 * n + 2]
        return x, y, u, v, s, t, r

    def pack(self, a, z, s, t, r) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        return np.concatenate([a.real, a.imag, [np.real(z), np.imag(z)], s, t, [r]])

    def evaluate(self, X):
        """Residuals (B, neq) and Jacobians (B, neq, nvar) for a batch."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        B = X.shape[0]
        n, m, eps, ec = self.n, self.m, self.eps, self.ec
        x, y, u, v, s, t, r = self.split(X)
        F = np.zeros((B, self.neq))
        J = np.zeros((B, self.neq, self.nvar))
        ix = np.arange(n)
        iy = n + np.arange(n)
        iu, iv, ir = 2 * n, 2 * n + 1, 3 * n + 2
        i_s = 2 * n + 2 + np.arange(m)
        i_t = 2 * n + 2 + m + np.arange(m)

        F[:, 0] = np.sum(x * x - y * y, axis=1)
        J[:, 0, ix] = 2 * x
        J[:, 0, iy] = -2 * y
        F[:, 1] = 2 * np.sum(x * y, axis=1)
        J[:, 1, ix] = 2 * y
        J[:, 1, iy] = 2 * x
        F[:, 2] = np.sum(x * x + y * y, axis=1) - 0.5
        J[:, 2, ix] = 2 * x
        J[:, 2, iy] = 2 * y
        e1 = np.zeros(n)
        e1[0] = 1.0
        F[:, 3:3 + n] = 2 * x - e1
        J[:, 3 + ix, ix] = 2.0

        # thimble components: even index 2i -> (ec s_i, -eps t_i), odd 2i+1 -> (ec t_i, eps s_i)
        Tre = np.zeros((B, n))
        Tim = np.zeros((B, n))
        Tre[:, 0::2] = ec * s
        Tim[:, 0::2] = -eps * t
        Tre[:, 1::2] = ec * t
        Tim[:, 1::2] = eps * s
        base = 3 + n
        rows_re = base + 2 * ix
        rows_im = base + 2 * ix + 1
        uu, vv, rr = u[:, None], v[:, None], r[:, None]
        F[:, rows_re] = uu * x - vv * y + x - rr * Tre
        F[:, rows_im] = uu * y + vv * x - y - rr * Tim
        J[:, rows_re, ix] = uu + 1
        J[:, rows_re, iy] = -vv
        J[:, rows_re, iu] = x
        J[:, rows_re, iv] = -y
        J[:, rows_re, ir] = -Tre
        J[:, rows_im, ix] = vv
        J[:, rows_im, iy] = uu - 1
        J[:, rows_im, iu] = y
        J[:, rows_im, iv] = x
        J[:, rows_im, ir] = -Tim
        for i in range(m):
            re_a, im_a = rows_re[2 * i], rows_im[2 * i]
            re_b, im_b = rows_re[2 * i + 1], rows_im[2 * i + 1]
            J[:, re_a, i_s[i]] = -r * ec
            J[:, im_a, i_t[i]] = r * eps
            J[:, re_b, i_t[i]] = -r * ec
            J[:, im_b, i_s[i]] = -r * eps
        F[:, -1] = np.sum(s * s, axis=1) + np.sum(t * t, axis=1) - 1
        J[:, -1, i_s] = 2 * s
        J[:, -1, i_t] = 2 * t
        if self.row_map:
            for dst, src in self.row_map.items():
                F[:, dst] = F[:, src]
                J[:, dst, :] = J[:, src, :]
        return F, J


def _levenberg_marquardt(system: ConstraintSystem, X0, iters=200, tol=1e-14):
    X = X0.copy()
    B, N = X.shape
    lam = np.full(B, 1e-3)
    F, J = system.evaluate(X)
    cost = np.sum(F * F, axis=1)
    eye = np.eye(N)
    active = np.ones(B, dtype=bool)
    for _ in range(iters):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        Ja, Fa = J[idx], F[idx]
        JtJ = np.einsum("bij,bik->bjk", Ja, Ja)
        g = np.einsum("bij,bi->bj", Ja, Fa)
        diag = np.einsum("bii->bi", JtJ)
        A = JtJ + lam[idx, None, None] * (diag[:, :, None] * eye + 1e-12 * eye)
        try:
            step = np.linalg.solve(A, -g[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.zeros_like(g)
            for k, b in enumerate(idx):
                step[k] = np.linalg.lstsq(A[k], -g[k], rcond=None)[0]
        Xn = X[idx] + step
        Fn, Jn = system.evaluate(Xn)
        cn = np.sum(Fn * Fn, axis=1)
        better = cn < cost[idx]
        good = idx[better]
        X[good], F[good], J[good], cost[good] = Xn[better], Fn[better], Jn[better], cn[better]
        lam[good] = np.maximum(lam[good] / 3, 1e-15)
        lam[idx[~better]] *= 4
        done = (cost < tol ** 2) | (lam > 1e12) | ~np.isfinite(cost)
        active &= ~done
    return X, F, cost


@dataclass
class SectionSolution:
    eps: float
    n: int
    a: np.ndarray
    z: complex
    s: np.ndarray
    t: np.ndarray
    r: float
    residuals: np.ndarray
    jacobian_sigma_min: float
    newton: dict = field(default_factory=dict)

    @property
    def R(self) -> float:
        return float(np.real(self.z))

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "n": self.n,
            "a": [[float(c.real), float(c.imag)] for c in self.a],
            "z": [float(np.real(self.z)), float(np.imag(self.z))],
            "R": self.R,
            "s": [float(v) for v in self.s],
            "t": [float(v) for v in self.t],
            "r": float(self.r),
            "max_residual": float(np.max(np.abs(self.residuals))),
            "jacobian_sigma_min": float(self.jacobian_sigma_min),
            "newton": self.newton,
        }


def closed_form_solution(eps: float, n: int = 2):
    """(a, z, s, t, r) from the elimination: c_2 = -1/2, s_1 = 1, r = sqrt(R)."""
    _check_n(n)
    R = closed_form_R(eps)
    a = np.zeros(n, dtype=complex)
    a[0] = 0.5
    a[1] = -0.5j
    m = n // 2
    s = np.zeros(m)
    s[0] = 1.0
    return a, complex(R, 0.0), s, np.zeros(m), math.sqrt(R)


def _orbit_key(X, system):
    x, y, u, v, s, t, r = system.split(X)
    if r < 0:
        s, t, r = -s, -t, -r
    return np.concatenate([x, y, [u, v], s, t, [r]])


def solve_through_point(eps: float, n: int = 2, seeds: int = 200, rng_seed: int = 0,
                        tol: float = RESIDUAL_TOL) -> SectionSolution:
    """The unique (a, z) with u_a(1) = e_1 and u_a(z) in T_eps.

    The closed form is cross-checked against damped Gauss-Newton runs from
    random seeds; every converged in-domain run must land on the same orbit
    (points related by (s, t, r) -> (-s, -t, -r) are identified).
    """
    _check_eps(eps)
    _check_n(n)
    system = ConstraintSystem(eps, n)
    rng = np.random.default_rng(rng_seed)
    m = n // 2
    X0 = np.concatenate([
        rng.normal(0, 0.6, (seeds, 2 * n)),
        rng.uniform(-1, 1, (seeds, 2)),
        rng.normal(0, 1, (seeds, 2 * m)),
        rng.uniform(-1, 1, (seeds, 1)),
    ], axis=1)
    X, F, cost = _levenberg_marquardt(system, X0)
    maxres = np.max(np.abs(F), axis=1)
    conv = maxres < tol
    orbits = []
    in_domain = 0
    for k in np.nonzero(conv)[0]:
        key = _orbit_key(X[k], system)
        x, y, u, v, s, t, r = system.split(key)
        if abs(complex(u, v)) > 1 + 1e-9 or r > 1 + 1e-9:
            continue
        in_domain += 1
        if not any(np.max(np.abs(key - o)) < 1e-7 for o in orbits):
            orbits.append(key)
    if not orbits:
        raise NewtonDivergence(f"no seed converged to an admissible solution (eps={eps}, n={n})",
                               seed=rng_seed)
    a, z, s, t, r = closed_form_solution(eps, n)
    Xc = system.pack(a, z, s, t, r)
    Fc, Jc = system.evaluate(Xc)
    nearest = min(orbits, key=lambda o: float(np.max(np.abs(o - Xc))))
    deviation = float(np.max(np.abs(nearest - Xc)))
    R_newton = float(system.split(nearest)[2])
    sigma = float(np.linalg.svd(Jc[0], compute_uv=False)[-1])
    newton = {
        "seeds": seeds,
        "rng_seed": rng_seed,
        "converged": int(conv.sum()),
        "admissible": in_domain,
        "orbits": len(orbits),
        "R": R_newton,
        "max_deviation_from_closed_form": deviation,
    }
    return SectionSolution(eps, n, a, z, s, t, r, Fc[0], sigma, newton)


def verify_regularity(sol: SectionSolution, system: ConstraintSystem | None = None,
                      threshold: float = SIGMA_TOL) -> float:
    """Smallest singular value of the constraint Jacobian at the solution."""
    system = system or ConstraintSystem(sol.eps, sol.n)
    X = system.pack(sol.a, sol.z, sol.s, sol.t, sol.r)
    F, J = system.evaluate(X)
    if np.max(np.abs(F)) > RESIDUAL_TOL:
        raise ValueError("residuals exceed tolerance; not a solution of this system")
    sigma = float(np.linalg.svd(J[0], compute_uv=False)[-1])
    if sigma <= threshold:
        raise SingularSolution(f"sigma_min = {sigma:.3e} <= {threshold:g}")
    return sigma


def consistency_defect(eps: float, R: float) -> float:
    """-R/2 + 1/2 - sqrt(R) eps, zero at the solution."""
    return -R / 2 + 0.5 - math.sqrt(R) * eps


# ---------------------------------------------------------------------------
# exact instances


def rational_eps(k) -> Fraction:
    """eps = (k^2 - 1)/(2k) makes eps_c = (k^2 + 1)/(2k) and sqrt(R) = 1/k rational."""
    k = to_fraction(k)
    return (k * k - 1) / (2 * k)


def _rational_sqrt(q: Fraction):
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def exact_solution(eps) -> dict:
    """Exact rational solution when sqrt(1 + eps^2) is rational.

    Returns eps_c, R, sqrt(R) and a = (1/2, -i/2) as (real, imag) pairs, after
    checking every equation of the reduced system exactly.
    """
    eps = to_fraction(eps)
    ec = _rational_sqrt(1 + eps * eps)
    if ec is None:
        raise ValueError(f"sqrt(1 + eps^2) is irrational for eps = {eps}")
    R = (ec - eps) / (ec + eps)
    rt = _rational_sqrt(R)
    if rt is None:
        raise ValueError("sqrt(R) is irrational")
    c2 = Fraction(-1, 2)
    s1 = Fraction(1)
    checks = {
        "c2^2 = 1/4": c2 * c2 == Fraction(1, 4),
        "R/2 + 1/2 = sqrt(R) eps_c s1": R / 2 + Fraction(1, 2) == rt * ec * s1,
        "c2 R - c2 = sqrt(R) eps s1": c2 * R - c2 == rt * eps * s1,
        "-R/2 + 1/2 = sqrt(R) eps": -R / 2 + Fraction(1, 2) == rt * eps,
        "0 <= R < 1": 0 <= R < 1,
    }
    # full complex check of u_a(R) = sqrt(R) T with a = (1/2, -i/2): pairs (re, im)
    a = [(Fraction(1, 2), Fraction(0)), (Fraction(0), c2)]
    u = [(R * re + re, R * im - im) for re, im in a]
    T = [(rt * ec * s1, Fraction(0)), (Fraction(0), rt * eps * s1)]
    checks["u_a(R) = sqrt(R) T"] = u == T
    checks["pi(a) = 0"] = sum(re * re - im * im for re, im in a) == 0 and sum(re * im for re, im in a) == 0
    checks["|a|^2 = 1/2"] = sum(re * re + im * im for re, im in a) == Fraction(1, 2)
    return {"eps": eps, "eps_c": ec, "R": R, "sqrt_R": rt, "a": a, "checks": checks,
            "ok": all(checks.values())}


# ---------------------------------------------------------------------------
# intersections of the two sections through e_1 with T_eps


def _section_thimble_system(eps, a):
    """Square system for u_a(z) = r T(s, t), sum s^2 + t^2 = 1 with a fixed."""
    n = len(a)
    m = n // 2
    ec = eps_c(eps)
    x, y = np.real(a), np.imag(a)

    def evaluate(Y):
        Y = np.atleast_2d(Y)
        B = Y.shape[0]
        u, v = Y[:, 0], Y[:, 1]
        s, t, r = Y[:, 2:2 + m], Y[:, 2 + m:2 + 2 * m], Y[:, 2 + 2 * m]
        Tre = np.zeros((B, n))
        Tim = np.zeros((B, n))
        Tre[:, 0::2] = ec * s
        Tim[:, 0::2] = -eps * t
        Tre[:, 1::2] = ec * t
        Tim[:, 1::2] = eps * s
        F = np.zeros((B, 2 * n + 1))
        J = np.zeros((B, 2 * n + 1, 3 + 2 * m))
        uu, vv, rr = u[:, None], v[:, None], r[:, None]
        F[:, 0:2 * n:2] = uu * x - vv * y + x - rr * Tre
        F[:, 1:2 * n:2] = uu * y + vv * x - y - rr * Tim
        F[:, -1] = np.sum(s * s, 1) + np.sum(t * t, 1) - 1
        for j in range(n):
            J[:, 2 * j, 0] = x[j]
            J[:, 2 * j, 1] = -y[j]
            J[:, 2 * j + 1, 0] = y[j]
            J[:, 2 * j + 1, 1] = x[j]
            J[:, 2 * j, 2 + 2 * m] = -Tre[:, j]
            J[:, 2 * j + 1, 2 + 2 * m] = -Tim[:, j]
        for i in range(m):
            J[:, 4 * i, 2 + i] = -r * ec
            J[:, 4 * i + 1, 2 + m + i] = r * eps
            J[:, 4 * i + 2, 2 + m + i] = -r * ec
            J[:, 4 * i + 3, 2 + i] = -r * eps
        J[:, -1, 2:2 + m] = 2 * s
        J[:, -1, 2 + m:2 + 2 * m] = 2 * t
        return F, J

    return evaluate


class _Wrapped:
    def __init__(self, fn):
        self.evaluate = fn


def count_thimble_hits(eps: float, a, seeds: int = 200, rng_seed: int = 0):
    """Distinct points z in the closed disk with u_a(z) in T_eps."""
    a = np.asarray(a, dtype=complex)
    n = len(a)
    m = n // 2
    fn = _section_thimble_system(eps, a)
    rng = np.random.default_rng(rng_seed)
    Y0 = np.concatenate([rng.uniform(-1, 1, (seeds, 2)), rng.normal(0, 1, (seeds, 2 * m)),
                         rng.uniform(-1, 1, (seeds, 1))], axis=1)
    Y, F, _ = _levenberg_marquardt(_Wrapped(fn), Y0)
    hits, outside = [], []
    for k in np.nonzero(np.max(np.abs(F), axis=1) < RESIDUAL_TOL)[0]:
        z = complex(Y[k, 0], Y[k, 1])
        bucket = hits if abs(z) <= 1 + 1e-9 and abs(Y[k, -1]) <= 1 + 1e-9 else outside
        if not any(abs(z - w) < 1e-7 for w in bucket):
            bucket.append(z)
    return hits, outside


@dataclass
class WeightDichotomy:
    eps: float
    counts: tuple
    signs: tuple
    weights: tuple
    hits: tuple

    @property
    def unweighted_sum(self) -> int:
        return sum(self.signs)

    def twisted_sum(self) -> TwistedScalar:
        return sum((TwistedScalar.monomial(w, s) for s, w in zip(self.signs, self.weights)),
                   TwistedScalar())

    def to_dict(self):
        return {"eps": self.eps, "counts": list(self.counts), "signs": list(self.signs),
                "weights": [str(w) for w in self.weights],
                "hits": [[[z.real, z.imag] for z in h] for h in self.hits],
                "unweighted_sum": self.unweighted_sum, "twisted_sum": str(self.twisted_sum())}


def weight_dichotomy(eps: float, n: int = 2, normalization=1, seeds: int = 200,
                     rng_seed: int = 0) -> WeightDichotomy:
    """Intersections with T_eps of the two sections through e_1.

    u_0 = u_{(1/2, i/2, 0..)} lies on C_0 and misses T_eps; u_1 = u_{(1/2, -i/2, 0..)}
    lies on C_1 and meets it once.  Signs are +1 for u_0 and -1 for u_1 (the
    unweighted count must vanish); weights are intersection number times
    ``normalization``.
    """
    _check_eps(eps)
    _check_n(n)
    sections = []
    for sign in (1j, -1j):
        a = np.zeros(n, dtype=complex)
        a[0], a[1] = 0.5, sign * 0.5
        sections.append(a)
    hits = tuple(tuple(count_thimble_hits(eps, a, seeds, rng_seed)[0]) for a in sections)
    counts = tuple(len(h) for h in hits)
    c = to_fraction(normalization)
    weights = tuple(cnt * c for cnt in counts)
    return WeightDichotomy(eps, counts, (1, -1), weights, hits)


# ---------------------------------------------------------------------------
# sampled geometry: thimble versus boundary condition


def sample_thimble(eps: float, n: int, count: int, rng, r_range=(0.0, 1.0)) -> np.ndarray:
    m = n // 2
    st = rng.standard_normal((count, 2 * m))
    st /= np.linalg.norm(st, axis=1, keepdims=True)
    r = rng.uniform(*r_range, size=count)
    s, t = st[:, :m], st[:, m:]
    ec = eps_c(eps)
    P = np.empty((count, n), dtype=complex)
    P[:, 0::2] = ec * s - 1j * eps * t
    P[:, 1::2] = ec * t + 1j * eps * s
    return r[:, None] * P


def sample_boundary_condition(n: int, count: int, rng) -> np.ndarray:
    """Points of Q_std: sqrt(z) x with |z| = 1 and x a real unit vector."""
    x = rng.standard_normal((count, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    theta = rng.uniform(0, 2 * np.pi, count)
    return np.exp(0.5j * theta)[:, None] * x


def sample_sphere_one(n: int, count: int, rng) -> np.ndarray:
    x = rng.standard_normal((count, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x.astype(complex)


def _realify(P):
    return np.concatenate([P.real, P.imag], axis=1)


def min_distance(P, Q) -> float:
    tree = cKDTree(_realify(Q))
    d, _ = tree.query(_realify(P))
    return float(np.min(d))


def distances(P, Q) -> np.ndarray:
    tree = cKDTree(_realify(Q))
    d, _ = tree.query(_realify(P))
    return d


def thimble_boundary_gap(eps: float, n: int = 2, count: int = 20000, seed: int = 0) -> float:
    """Sampled lower estimate of dist(T_eps, Q_std) (sampling can only overestimate)."""
    rng = np.random.default_rng(seed)
    return min_distance(sample_thimble(eps, n, count, rng), sample_boundary_condition(n, count, rng))
