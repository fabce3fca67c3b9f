"""Spectral shrinkage solver: hand-derived instances, oracle agreement, KKT facts."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sqrtnuc.shrinkage import oracle_sqrt_shrinkage, soft_threshold, solve_sqrt_shrinkage


def objective(s, sigma, lam, c):
    return math.sqrt(((np.asarray(s) - np.asarray(sigma)) ** 2).sum() + c * c) + lam * np.sum(s)


def test_hand_instance_analytic():
    # stationarity d = lam * sqrt(d^2 + 5) at lam=0.5 gives d = sqrt(5/3)
    sol = solve_sqrt_shrinkage([3.0, 1.0], 0.5, 2.0)
    assert_allclose(sol.s, [3.0 - math.sqrt(5.0 / 3.0), 0.0], atol=1e-12)
    assert_allclose(sol.radius, math.sqrt(20.0 / 3.0), rtol=1e-12)
    assert sol.retained == 1


def test_exact_fit_small_lambda():
    sol = solve_sqrt_shrinkage([1.0], 0.1, 0.0)
    assert_allclose(sol.s, [1.0])
    assert sol.radius == 0.0
    assert sol.retained == 1


def test_zero_solution_large_lambda():
    # lam * sqrt(1.25) ~= 1.062 >= sigma_1
    sol = solve_sqrt_shrinkage([1.0, 0.5], 0.95, 0.0)
    assert_allclose(sol.s, [0.0, 0.0])
    assert sol.retained == 0


def test_boundary_tie_between_windows():
    # constructed so the k=1 threshold lands exactly on sigma_2: with lam=0.5,
    # sigma=(3,1), c=sqrt(2) both adjacent windows describe s=(2,0)
    sol = solve_sqrt_shrinkage([3.0, 1.0], 0.5, math.sqrt(2.0))
    assert_allclose(sol.s, [2.0, 0.0], atol=1e-9)
    assert sol.retained == 1
    oracle = oracle_sqrt_shrinkage([3.0, 1.0], 0.5, math.sqrt(2.0), tol=1e-10)
    assert abs(sol.objective - oracle.objective) <= 1e-8 * (1 + sol.objective)


def test_degenerate_inputs():
    empty = solve_sqrt_shrinkage([], 0.5, 1.5)
    assert empty.s.size == 0 and empty.objective == 1.5
    zeros = solve_sqrt_shrinkage([0.0, 0.0], 0.7, 1.0)
    assert_allclose(zeros.s, [0.0, 0.0])
    assert zeros.objective == 1.0


def test_input_validation():
    with pytest.raises(ValueError):
        solve_sqrt_shrinkage([1.0, 2.0], 0.5)  # unsorted
    with pytest.raises(ValueError):
        solve_sqrt_shrinkage([1.0, -0.1], 0.5)
    with pytest.raises(ValueError):
        solve_sqrt_shrinkage([1.0], 0.0)
    with pytest.raises(ValueError):
        solve_sqrt_shrinkage([1.0], 0.5, -1.0)
    with pytest.raises(ValueError):
        oracle_sqrt_shrinkage(np.arange(9.0)[::-1], 0.5)


@pytest.mark.parametrize(
    "sigma,lam,c",
    [
        ([3.0, 1.0], 0.5, 2.0),
        ([1.0], 0.1, 0.0),
        ([1.0, 0.5], 0.95, 0.0),
        ([2.0, 2.0], 0.3, 1.0),  # duplicate singular values
    ],
)
def test_oracle_agreement_on_named_instances(sigma, lam, c):
    closed = solve_sqrt_shrinkage(sigma, lam, c)
    oracle = oracle_sqrt_shrinkage(sigma, lam, c, tol=1e-10)
    assert abs(closed.objective - oracle.objective) <= 1e-8 * (1.0 + abs(closed.objective))


def test_oracle_nothing_to_shrink():
    sol = oracle_sqrt_shrinkage([0.0, 0.0], 0.4, 1.0)
    assert_allclose(sol.s, [0.0, 0.0])
    assert_allclose(sol.objective, 1.0, rtol=1e-9)


def random_instance(rng):
    p = int(rng.integers(1, 7))
    sig = np.sort(rng.uniform(0.0, 10.0, p))[::-1]
    if rng.uniform() < 0.3 and p >= 2:  # force repeats
        sig[1] = sig[0]
        sig = np.sort(sig)[::-1]
    return sig, float(rng.uniform(0.05, 0.99)), float(rng.uniform(0.0, 3.0))


def test_oracle_equivalence_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        sig, lam, c = random_instance(rng)
        closed = solve_sqrt_shrinkage(sig, lam, c)
        oracle = oracle_sqrt_shrinkage(sig, lam, c, tol=1e-10)
        assert abs(closed.objective - oracle.objective) <= 1e-8 * (1.0 + abs(closed.objective))


def test_solution_invariants_and_kkt():
    rng = np.random.default_rng(12)
    for _ in range(300):
        sig, lam, c = random_instance(rng)
        sol = solve_sqrt_shrinkage(sig, lam, c)
        assert np.all(sol.s <= sig + 1e-12)
        assert np.all(np.diff(sol.s) <= 1e-12)
        assert sol.retained * lam * lam <= 1.0 + 1e-12
        k = sol.retained
        if sol.radius > 0:
            t = lam * sol.radius
            scale = 1e-9 * (1.0 + sig[0])
            assert np.all(sol.s[:k] > 0)
            assert_allclose(sol.s[:k], sig[:k] - t, atol=scale)
            assert np.all(sig[k:] <= t + scale)
        else:
            assert_allclose(sol.s, sig)


def test_subgradient_optimality():
    rng = np.random.default_rng(13)
    for _ in range(30):
        sig, lam, c = random_instance(rng)
        sol = solve_sqrt_shrinkage(sig, lam, c)
        f0 = objective(sol.s, sig, lam, c)
        h = 1e-7 * (1.0 + sig[0])
        directions = []
        for i in range(sig.size):
            e = np.zeros(sig.size)
            e[i] = 1.0
            directions.append(e)
            if sol.s[i] > h:
                directions.append(-e)
        for _ in range(100):
            directions.append(rng.uniform(0.0, 1.0, sig.size))
        for d in directions:
            step = objective(sol.s + h * d, sig, lam, c) - f0
            assert step / h >= -1e-7 * (1.0 + np.linalg.norm(d))


def test_monotone_in_lambda():
    rng = np.random.default_rng(14)
    for _ in range(50):
        sig, lam, c = random_instance(rng)
        lam2 = lam * float(rng.uniform(1.01, 3.0))
        a = solve_sqrt_shrinkage(sig, lam, c)
        b = solve_sqrt_shrinkage(sig, lam2, c)
        assert b.retained <= a.retained
        assert b.s.sum() <= a.s.sum() + 1e-10


def test_scale_equivariance():
    rng = np.random.default_rng(15)
    for _ in range(50):
        sig, lam, c = random_instance(rng)
        t = float(rng.uniform(0.1, 20.0))
        a = solve_sqrt_shrinkage(sig, lam, c)
        b = solve_sqrt_shrinkage(t * sig, lam, t * c)
        assert_allclose(b.s, t * a.s, rtol=1e-9, atol=1e-9 * (1 + t * sig[0]))
        assert b.retained == a.retained


@pytest.mark.parametrize("tau,expected", [(0.0, [3.0, 1.0]), (2.0, [1.0, 0.0]), (5.0, [0.0, 0.0])])
def test_soft_threshold(tau, expected):
    assert_allclose(soft_threshold([3.0, 1.0], tau), expected)


def test_soft_threshold_validation():
    with pytest.raises(ValueError):
        soft_threshold([3.0, 1.0], -0.5)
    with pytest.raises(ValueError):
        soft_threshold([1.0, 3.0], 0.5)
