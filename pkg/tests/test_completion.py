"""Completion pipeline: sampling, synthesis, penalties, estimator, hypotheses."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from sqrtnuc.completion import (
    NoiseSpec,
    baseline_known_sigma,
    build_observation_matrix,
    check_hypotheses,
    completion_dataset,
    estimate,
    ground_truth,
    oracle_lambda,
    random_ground_truth,
    read_observations,
    sample_design,
    synthesize,
    theory_lambda,
    write_observations,
)
from sqrtnuc.harness import trial_rng
from sqrtnuc.linalg import schatten_norm, svd_factors
from sqrtnuc.shrinkage import solve_sqrt_shrinkage


def diag_dataset(diag_entries):
    """Dataset whose observation matrix is diag(diag_entries) on a p x p grid."""
    p = len(diag_entries)
    cells = np.array([[i, i] for i in range(p)])
    # X = (mu2/n) * y on the diagonal, so y = diag * n / mu2
    y = np.asarray(diag_entries, dtype=float) * p / (p * p)
    return completion_dataset(p, p, cells, y)


def test_noise_laws_standardized():
    rng = np.random.default_rng(0)
    draws = NoiseSpec(1.0, "gaussian").draw(rng, 100000)
    assert abs(draws.mean()) < 0.02 and abs(draws.var() - 1.0) < 0.02
    rad = NoiseSpec(1.0, "rademacher").draw(rng, 1000)
    assert set(np.unique(rad)) == {-1.0, 1.0}
    uni = NoiseSpec(1.0, "uniform").draw(rng, 100000)
    assert abs(uni.mean()) < 0.02 and abs(uni.var() - 1.0) < 0.02
    assert np.abs(uni).max() <= math.sqrt(3.0)
    with pytest.raises(ValueError):
        NoiseSpec(1.0, "cauchy")


def test_ground_truth_fields():
    truth = random_ground_truth(12, 9, 2, 1.5, np.random.default_rng(1))
    assert truth.A0.shape == (12, 9)
    assert truth.rank == 2
    assert_allclose(np.abs(truth.A0).max(), 1.5)
    assert 1.0 <= truth.spikiness <= math.sqrt(12 * 9)


def test_ground_truth_single_spike():
    A0 = np.zeros((6, 8))
    A0[2, 3] = 4.0
    truth = ground_truth(A0)
    assert truth.rank == 1
    assert_allclose(truth.spikiness, math.sqrt(48.0))
    with pytest.raises(ValueError):
        ground_truth(A0, a=3.0)  # below the actual sup-norm


def test_sample_design_contract():
    assert sample_design(5, 7, 0, 1).shape == (0, 2)
    d1 = sample_design(5, 7, 300, np.random.default_rng(42))
    d2 = sample_design(5, 7, 300, np.random.default_rng(42))
    assert np.array_equal(d1, d2)
    assert d1[:, 0].min() >= 0 and d1[:, 0].max() < 5
    assert d1[:, 1].min() >= 0 and d1[:, 1].max() < 7


def test_synthesize_noiseless():
    rng = np.random.default_rng(2)
    truth = random_ground_truth(6, 6, 1, 1.0, rng)
    design = sample_design(6, 6, 40, rng)
    ds = synthesize(truth, NoiseSpec(0.0, "gaussian"), design, rng)
    assert_allclose(ds.y, truth.A0[design[:, 0], design[:, 1]])


def test_build_observation_matrix_single_and_duplicates():
    ds = completion_dataset(2, 2, [[0, 0]], [2.0])
    assert_allclose(build_observation_matrix(ds), [[8.0, 0.0], [0.0, 0.0]])
    ds2 = completion_dataset(2, 2, [[0, 0], [0, 0]], [1.0, 3.0])
    assert build_observation_matrix(ds2)[0, 0] == 8.0


def test_build_observation_matrix_matches_naive_loop():
    rng = np.random.default_rng(3)
    design = sample_design(7, 5, 60, rng)
    y = rng.standard_normal(60)
    ds = completion_dataset(7, 5, design, y)
    naive = np.zeros((7, 5))
    for (r, c), v in zip(design, y):
        naive[r, c] += v * 35.0 / 60.0
    assert_allclose(build_observation_matrix(ds), naive, atol=1e-12)


def test_theory_lambda_worked_instance():
    # 2000 observations all at one cell; accumulation has Frobenius norm 50
    design = np.zeros((2000, 2), dtype=np.int64)
    y = np.zeros(2000)
    y[0] = 50.0
    ds = completion_dataset(100, 100, design, y)
    lam = theory_lambda(ds, a=1.0, c_star=6.5)
    hand = 13.0 * math.sqrt(math.log(200) / 100) + 4.0 * math.sqrt(
        2.0 * 2000 * math.log(200) / 100
    ) / 50.0
    assert_allclose(lam, hand, rtol=1e-12)
    assert_allclose(lam, 4.1569823025248445, rtol=1e-9)
    # doubling a exactly doubles the second term
    first_term = 13.0 * math.sqrt(math.log(200) / 100)
    assert_allclose(theory_lambda(ds, 2.0) - first_term, 2.0 * (lam - first_term), rtol=1e-12)


def test_theory_lambda_all_zero_observations():
    ds = completion_dataset(4, 4, [[0, 0], [1, 1]], [0.0, 0.0])
    with pytest.raises(ValueError, match="oracle or a manual"):
        theory_lambda(ds, 1.0)


def test_oracle_lambda_rank_one_and_identity():
    zero_truth = ground_truth(np.zeros((3, 3)))
    ds = completion_dataset(3, 3, [[0, 0]], [2.0])  # X - A0 is rank one
    assert_allclose(oracle_lambda(ds, zero_truth), 3.0, rtol=1e-12)
    ds2 = completion_dataset(2, 2, [[0, 0], [1, 1]], [1.0, 1.0])  # equal singular values
    truth2 = ground_truth(np.zeros((2, 2)))
    assert_allclose(oracle_lambda(ds2, truth2), 3.0 / math.sqrt(2.0), rtol=1e-12)


def test_oracle_lambda_pinned_seeded_instance():
    # frozen regression value for the (100, 100, n=2000, rank 1, sigma 0.5) stream
    rng = trial_rng(20240601, 0)
    truth = random_ground_truth(100, 100, 1, 1.0, rng)
    ds = synthesize(truth, NoiseSpec(0.5, "gaussian"), sample_design(100, 100, 2000, rng), rng)
    lam = oracle_lambda(ds, truth)
    assert_allclose(lam, 0.6112525799967791, rtol=1e-10)
    assert 0.0 < lam < 1.0
    assert lam * math.sqrt(2.0) < 1.0


def test_oracle_lambda_exact_recovery_errors():
    A0 = np.full((2, 2), 1.0)
    truth = ground_truth(A0)
    cells = [[0, 0], [0, 1], [1, 0], [1, 1]]
    ds = completion_dataset(2, 2, cells, [1.0] * 4)  # full noiseless grid: X == A0
    with pytest.raises(ValueError):
        oracle_lambda(ds, truth)


def test_estimate_exact_fit_branch():
    ds = diag_dataset([3.0, 1.0])
    report = estimate(ds, 0.5)
    assert_allclose(report.A_hat, np.diag([3.0, 1.0]), atol=1e-12)
    assert report.rank_hat == 2
    assert_allclose(report.objective, 2.0, rtol=1e-12)  # F(X) = lam * (3 + 1)
    # the shrunk alternative has a worse objective, about 2.366
    shrunk = solve_sqrt_shrinkage(np.array([3.0, 1.0]), 0.5, 0.0)
    assert report.objective <= shrunk.objective


def test_estimate_shrinkage_branch():
    ds = diag_dataset([3.0, 1.0])
    report = estimate(ds, 0.8)
    assert_allclose(report.A_hat, np.diag([3.0 - 0.8 / math.sqrt(0.36), 0.0]), atol=1e-10)
    assert report.rank_hat == 1
    assert report.rank_hat <= math.floor(1.0 / 0.64)


def test_estimate_zero_solution():
    ds = diag_dataset([3.0, 1.0])
    lam = 3.0 / math.sqrt(10.0) + 1e-9  # sigma_1(X) / ||X||_F
    report = estimate(ds, lam)
    assert_allclose(report.A_hat, 0.0, atol=1e-12)
    assert report.rank_hat == 0


def test_estimate_report_certificates_random():
    rng = np.random.default_rng(7)
    for _ in range(25):
        truth = random_ground_truth(8, 6, 2, 1.0, rng)
        design = sample_design(8, 6, 30, rng)
        ds = synthesize(truth, NoiseSpec(0.3, "gaussian"), design, rng)
        lam = float(rng.uniform(0.05, 1.4))
        report = estimate(ds, lam)
        X = build_observation_matrix(ds)
        assert report.rank_hat <= math.floor(1.0 / lam**2)
        assert report.objective <= schatten_norm(X, 2) * (1 + 1e-12) + 1e-12       # F(0)
        assert report.objective <= lam * schatten_norm(X, 1) * (1 + 1e-12) + 1e-12  # F(X)


def test_estimate_shares_singular_structure():
    rng = np.random.default_rng(8)
    truth = random_ground_truth(10, 10, 2, 1.0, rng)
    ds = synthesize(truth, NoiseSpec(0.5, "gaussian"), sample_design(10, 10, 60, rng), rng)
    lam = 0.45
    report = estimate(ds, lam)
    X = build_observation_matrix(ds)
    f = svd_factors(X)
    sol = solve_sqrt_shrinkage(f.singulars, lam, 0.0)
    k = sol.retained
    if k:
        resid_sv = np.linalg.svd(X - report.A_hat, compute_uv=False)
        assert_allclose(resid_sv[:k], f.singulars[:k] - sol.s[:k], atol=1e-8 * (1 + f.singulars[0]))


def test_baseline_endpoints_and_consistency():
    ds = diag_dataset([3.0, 1.0])
    # enormous noise level: threshold wipes out every singular value
    assert_allclose(baseline_known_sigma(ds, sigma=100.0, a=1.0), 0.0, atol=1e-12)
    # vanishing noise and sup bound: the threshold goes to zero, X survives
    tiny = baseline_known_sigma(ds, sigma=1e-12, a=1e-12)
    assert_allclose(tiny, np.diag([3.0, 1.0]), atol=1e-6)
    # agreement with a direct soft-threshold of the observation matrix spectrum
    sigma, a, c_star = 0.15, 0.2, 6.5
    m, n = 4, 2
    lam_kt = 3.0 * (c_star * sigma + 2 * a) * math.sqrt(2.0 * math.log(m) / (2 * n))
    tau = 4.0 * lam_kt / 2.0
    X = build_observation_matrix(ds)
    f = svd_factors(X)
    expected = (f.left * np.maximum(f.singulars - tau, 0.0)) @ f.right.T
    assert_allclose(baseline_known_sigma(ds, sigma, a, c_star), expected, atol=1e-12)


def test_check_hypotheses_desk_scale_facts():
    rng = np.random.default_rng(9)
    truth = random_ground_truth(60, 60, 2, 1.0, rng)
    ds = synthesize(truth, NoiseSpec(1.0, "gaussian"), sample_design(60, 60, 900, rng), rng)
    hyp = check_hypotheses(ds, truth, lam=0.5)
    assert hyp.density_ok and hyp.density_margin == 0  # 4 * 900 == 3600 exactly
    assert not hyp.sample_size_ok  # threshold ~ 1.1e4 exceeds n = 900
    assert hyp.sample_size_threshold > 1e4
    assert hyp.rho == pytest.approx(0.5 * math.sqrt(4.0))
    assert hyp.rho_weak == pytest.approx(0.5 * math.sqrt(2.0))


def test_check_hypotheses_spiky_truth_infeasible():
    A0 = np.zeros((30, 30))
    A0[0, 0] = 1.0
    truth = ground_truth(A0)
    ds = completion_dataset(30, 30, [[0, 0], [3, 4]], [1.0, 0.3])
    hyp = check_hypotheses(ds, truth, lam=0.5)
    assert truth.spikiness == pytest.approx(30.0)
    assert hyp.rho_min >= 1.0 and not hyp.rho_min_ok


def test_observation_file_round_trip(tmp_path):
    rng = np.random.default_rng(10)
    truth = random_ground_truth(5, 4, 1, 1.0, rng)
    ds = synthesize(truth, NoiseSpec(0.2, "gaussian"), sample_design(5, 4, 12, rng), rng)
    path = tmp_path / "obs.csv"
    write_observations(ds, path)
    back = read_observations(path, 5, 4)
    assert np.array_equal(back.design, ds.design)
    assert np.all(back.y == ds.y)


def test_dataset_validation():
    with pytest.raises(ValueError):
        completion_dataset(2, 2, [[0, 0], [2, 0]], [1.0, 1.0])  # row out of range
    with pytest.raises(ValueError):
        completion_dataset(2, 2, [[0, 0]], [1.0, 2.0])  # length mismatch
