import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floerlab import model
from floerlab.coeff import TwistedScalar
from floerlab.errors import EpsOutOfRange, OddDimension, SingularSolution
from floerlab.model import (ConstraintSystem, closed_form_R, consistency_defect, eps_c, exact_solution,
                            pi_std, rational_eps, section_circles, section_value, solve_through_point,
                            verify_regularity, weight_dichotomy)


def in_boundary_condition(w, tol=1e-9):
    """w lies on Q_std iff |w| = 1 and |pi(w)| = 1 (w is a unit real vector times a phase)."""
    return abs(np.linalg.norm(w) - 1) < tol and abs(abs(pi_std(w)) - 1) < tol


# sections

def test_section_value_example():
    a = np.array([0.5, 0.5j])
    w = section_value(a, 1j)
    # i a = (i/2, -1/2) and conj(a) = (1/2, -i/2)
    assert np.allclose(w, [0.5 + 0.5j, -0.5 - 0.5j])
    assert abs(pi_std(w) - 1j) < 1e-15


def test_section_value_at_plus_and_minus_one():
    a = section_circles(2).circle(0, 0.7)
    assert np.allclose(section_value(a, 1), 2 * a.real)
    assert np.allclose(section_value(a, -1), -2j * a.imag)


def test_projection_recovers_base_point():
    zs = [r * np.exp(1j * th) for r in np.linspace(0, 1, 6) for th in np.linspace(0, 2 * np.pi, 12)]
    rng = np.random.default_rng(0)
    for n in (2, 4, 6):
        M = section_circles(n)
        pts = [M.circle(w, th) for w in (0, 1) for th in np.linspace(0, 6, 5)] if n == 2 else M.sample(10, rng)
        for a in pts:
            for z in zs:
                assert abs(pi_std(section_value(a, z)) - z) < 1e-10


def test_circles_satisfy_constraints():
    M = section_circles(2)
    for which in (0, 1):
        for th in np.linspace(0, 2 * np.pi, 17):
            a = M.circle(which, th)
            assert abs(pi_std(a)) < 1e-15 and abs(np.vdot(a, a).real - 0.5) < 1e-15
            assert M.component(a) == which
    assert np.array_equal(M.circle(1, 0.0), np.array([0.5, -0.5j]))


def test_evaluation_is_a_double_cover():
    M = section_circles(2)
    th = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    for which in (0, 1):
        pts = model.evaluation_at_one(M.circle(which, th))
        assert np.allclose(np.linalg.norm(pts, axis=1), 1)
        ang = np.unwrap(np.arctan2(pts[:, 1], pts[:, 0]))
        # winds once, monotonically: a bijection onto the circle
        assert abs(abs(ang[-1] - ang[0] + (ang[1] - ang[0])) - 2 * np.pi) < 1e-9
        assert np.all(np.diff(ang) * np.sign(ang[1] - ang[0]) > 0)
    # each point of S^1 has one preimage on each circle
    # C_w evaluates to (cos th, -+ sin th), so the preimage of angle phi is th = +-phi
    for phi in np.linspace(0, 2 * np.pi, 13):
        target = np.array([math.cos(phi), math.sin(phi)])
        a0, a1 = M.circle(0, -phi), M.circle(1, phi)
        assert np.allclose(model.evaluation_at_one(a0), target)
        assert np.allclose(model.evaluation_at_one(a1), target)
        assert M.component(a0) != M.component(a1)


def test_higher_dimensional_sampler():
    rng = np.random.default_rng(1)
    M = section_circles(4)
    for a in M.sample(50, rng):
        assert abs(pi_std(a)) < 1e-12 and abs(np.vdot(a, a).real - 0.5) < 1e-12
        assert M.tangent_dimension(a) == M.dimension == 5


def test_odd_dimension_rejected():
    with pytest.raises(OddDimension):
        section_circles(3)
    with pytest.raises(OddDimension):
        solve_through_point(0.1, n=5)


# the constrained solution

def test_closed_form_value():
    assert abs(closed_form_R(0.1) - 0.8190024875775821) < 1e-15
    assert abs(eps_c(0.1) - math.sqrt(1.01)) < 1e-15
    assert closed_form_R(1e-9) > 1 - 1e-8


def test_solution_at_eps_point_one():
    sol = solve_through_point(0.1, seeds=200, rng_seed=0)
    assert abs(sol.R - 0.8190024875775821) < 1e-10
    assert np.allclose(sol.a, [0.5, -0.5j], atol=1e-10)
    assert abs(sol.r - math.sqrt(sol.R)) < 1e-10
    assert sol.newton["orbits"] == 1
    assert abs(sol.newton["R"] - 0.8190024875775821) < 1e-10
    assert sol.newton["max_deviation_from_closed_form"] < 1e-10
    assert max(abs(x) for x in sol.residuals) < 1e-10
    assert abs(consistency_defect(0.1, sol.R)) < 1e-12
    assert verify_regularity(sol) > 1e-6


def test_solution_in_dimension_four():
    sol = solve_through_point(0.2, n=4, seeds=100)
    assert abs(sol.newton["R"] - closed_form_R(0.2)) < 1e-10
    assert sol.newton["max_deviation_from_closed_form"] < 1e-10
    assert np.allclose(sol.a, [0.5, -0.5j, 0, 0], atol=1e-10)


def test_eps_out_of_range():
    for eps in (0, -0.1, 0.6):
        with pytest.raises(EpsOutOfRange):
            solve_through_point(eps)


def test_duplicated_row_is_singular():
    sol = solve_through_point(0.1, seeds=20)
    sys = ConstraintSystem(0.1, 2)
    # rows 0, 2, 3 are dependent already; duplicating an essential row drops the rank
    with pytest.raises(SingularSolution):
        verify_regularity(sol, sys.with_duplicated_row(4, 5))


def test_sigma_min_stays_away_from_zero():
    sig = []
    for eps in np.linspace(0.02, 0.5, 25):
        sig.append(verify_regularity(solve_through_point(float(eps), seeds=20)))
    sig = np.array(sig)
    assert sig.min() > 0.1
    assert np.max(np.abs(np.diff(sig))) < 0.05


@settings(max_examples=30, deadline=None)
@given(st.floats(0.001, 0.5))
def test_consistency_identity(eps):
    assert abs(consistency_defect(eps, closed_form_R(eps))) < 1e-14
    assert 0 <= closed_form_R(eps) < 1


@pytest.mark.parametrize("k", [Fraction(3, 2), 2, 3, Fraction(5, 4), Fraction(7, 3)])
def test_exact_rational_instances(k):
    eps = rational_eps(k)
    res = exact_solution(eps)
    assert res["ok"], res["checks"]
    assert res["sqrt_R"] == 1 / Fraction(k)
    if 0 < eps <= Fraction(1, 2):
        assert abs(solve_through_point(float(eps), seeds=20).newton["R"] - float(res["R"])) < 1e-10


def test_exact_example_five_twelfths():
    res = exact_solution(Fraction(5, 12))
    assert res["eps_c"] == Fraction(13, 12) and res["R"] == Fraction(4, 9)


def test_irrational_eps_rejected():
    with pytest.raises(ValueError):
        exact_solution(Fraction(1, 10))


# weights

def test_weight_dichotomy():
    wd = weight_dichotomy(0.1)
    assert wd.counts == (0, 1)
    assert wd.unweighted_sum == 0
    assert wd.twisted_sum() == TwistedScalar({0: 1, 1: -1})
    assert not wd.twisted_sum().is_zero()
    # the hit is the constrained solution
    (z,), = [h for h in wd.hits if h]
    assert abs(z - closed_form_R(0.1)) < 1e-10


def test_weight_normalization_is_arbitrary():
    for c in (2, Fraction(-1, 3)):
        wd = weight_dichotomy(0.25, normalization=c, seeds=50)
        assert wd.weights == (0, c) and not wd.twisted_sum().is_zero()


# disjointness

@pytest.mark.parametrize("eps", [0.05, 0.1, 0.2, 0.3, 0.5])
def test_thimble_misses_boundary_condition(eps):
    gap = model.thimble_boundary_gap(eps, count=20000, seed=1)
    assert gap > 0.5 * eps


def test_degenerate_thimble_meets_boundary_in_the_real_sphere():
    rng = np.random.default_rng(2)
    # r = 1 points of T_0 are real unit vectors, hence on Q_std
    rim = model.sample_thimble(0.0, 4, 200, rng, r_range=(1.0, 1.0))
    assert all(in_boundary_condition(w) for w in rim)
    assert np.allclose(rim.imag, 0)
    # every point of the real unit sphere is an r = 1 point of T_0
    S = model.sample_sphere_one(4, 200, rng)
    for x in S.real:
        s, t = x[0::2], x[1::2]
        assert np.allclose(model.thimble_point(0.0, s, t, 1.0), x)
    # interior points (r < 1) stay off Q_std
    inner = model.sample_thimble(0.0, 4, 2000, rng, r_range=(0.0, 0.9))
    assert not any(in_boundary_condition(w, 1e-3) for w in inner)
