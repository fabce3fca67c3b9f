"""Seeded Monte Carlo harness: experiment configs, trial execution, CSV
reports, and the named verification suites behind ``sqrtnuc verify``.

Reproducibility contract: the stream for trial ``i`` of an experiment is
``numpy.random.default_rng(SeedSequence([master_seed, i]))``, so trial
results do not depend on execution order or on the degree of parallelism.
Within-implementation reruns of the same config+seed produce byte-identical
CSV; bit-reproducibility across SVD backends is not promised.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .completion import (
    NoiseSpec,
    baseline_known_sigma,
    build_observation_matrix,
    check_hypotheses,
    estimate,
    oracle_lambda,
    random_ground_truth,
    sample_design,
    synthesize,
    theory_lambda,
)
from .diagnostics import (
    collision_count,
    completion_risk_bound,
    diagnostics,
    frobenius_envelope,
    operator_norm_bound,
    regression_risk_bound,
)
from .linalg import RANK_TOL, column_projector, schatten_norm
from .regression import (
    RegressionLambdaParams,
    check_rank_condition,
    estimate_regression,
    regression_dataset,
    regression_lambda,
)

__all__ = [
    "CSV_SCHEMA_TAG",
    "ExperimentConfig",
    "CompletionTrial",
    "RegressionTrial",
    "ExperimentResult",
    "SuiteReport",
    "trial_rng",
    "run_completion_trial",
    "run_regression_trial",
    "run_experiment",
    "verify_suite",
    "SUITES",
]

CSV_SCHEMA_TAG = "# sqrtnuc-v1"

SIMULATE_MODES = ("simulate-completion", "simulate-regression")
ESTIMATE_MODES = ("estimate-completion", "estimate-regression")
LAMBDA_MODES = ("theory", "oracle", "manual")

# Residual-bound comparisons concede this much relative slack to rounding.
_REL_SLACK = 1e-9


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Per-trial stream derived by the documented mixing rule."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(trial_index)]))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a simulation or estimation run depends on."""

    mode: str
    m1: int = 60
    m2: int = 60
    l: int = 60
    n: int = 900
    rank0: int = 1
    sigma: float = 1.0
    noise: str = "gaussian"
    a: float = 1.0
    lambda_mode: str = "oracle"
    lambda_value: float | None = None
    c_star: float = 6.5
    alpha: float = 0.1
    beta: float = 0.5
    rho: float | None = None
    trials: int = 1
    master_seed: int = 0
    threads: int | None = None
    out: str | None = None

    def validate(self) -> None:
        if self.mode not in SIMULATE_MODES + ESTIMATE_MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if min(self.m1, self.m2, self.l) < 1:
            raise ValueError("dimensions must be >= 1")
        if self.lambda_mode not in LAMBDA_MODES:
            raise ValueError(f"lambda_mode must be one of {LAMBDA_MODES}")
        if self.lambda_mode == "manual" and (self.lambda_value is None or self.lambda_value <= 0):
            raise ValueError("manual lambda mode needs a positive value")
        if self.lambda_mode == "oracle" and self.mode in ESTIMATE_MODES:
            raise ValueError("the oracle penalty needs the simulated truth; use theory or manual")
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be >= 1")


def _lemma2_ratio(rho_weak: float) -> float:
    root = math.sqrt(1.0 + rho_weak * rho_weak)
    return (3.0 - root) / (3.0 + root)


@dataclass(frozen=True)
class CompletionTrial:
    trial: int
    lam: float
    rank_hat: int
    per_entry_err: float
    err2: float
    residual: float
    objective: float
    cert_ok: bool
    delta: float
    delta_inf: float
    fro_M: float
    fro_acc: float
    collisions: int
    spikiness: float
    hyp_sample_size: bool
    hyp_density: bool
    rho_min: float
    hyp_rho_min: bool
    hyp_lambda: bool
    rho: float
    hyp_rho: bool
    rho_weak: float
    thm1_rhs: float
    thm1_qualifies: bool
    thm1_ok: bool
    lemma2_qualifies: bool
    lemma2_ok: bool
    baseline_per_entry_err: float | None
    wall_time_s: float  # in-memory only; excluded from the CSV for determinism


@dataclass(frozen=True)
class RegressionTrial:
    trial: int
    lam: float
    rank_va: int
    err2: float
    residual: float
    objective: float
    cert_ok: bool
    delta_prime: float
    fro_E: float
    rank_va0: int
    rho: float
    rho_weak: float
    thmr1_rhs: float
    thmr1_qualifies: bool
    thmr1_ok: bool
    lr2_qualifies: bool
    lr2_ok: bool
    scale_ratio: float
    rank_condition_ok: bool | None  # only evaluated when the config carries a rho budget
    wall_time_s: float  # in-memory only; excluded from the CSV


def run_completion_trial(cfg: ExperimentConfig, index: int) -> CompletionTrial:
    t0 = time.perf_counter()
    rng = trial_rng(cfg.master_seed, index)
    truth = random_ground_truth(cfg.m1, cfg.m2, cfg.rank0, cfg.a, rng)
    design = sample_design(cfg.m1, cfg.m2, cfg.n, rng)
    ds = synthesize(truth, NoiseSpec(cfg.sigma, cfg.noise), design, rng)

    if cfg.lambda_mode == "theory":
        lam = theory_lambda(ds, truth.a, cfg.c_star)
    elif cfg.lambda_mode == "oracle":
        lam = oracle_lambda(ds, truth)
    else:
        lam = float(cfg.lambda_value)

    report = estimate(ds, lam)
    diag = diagnostics(ds, truth)
    hyp = check_hypotheses(ds, truth, lam, cfg.c_star)

    err2 = float(((report.A_hat - truth.A0) ** 2).sum())
    mu2 = ds.mu2
    fro_x_minus_a0 = diag.fro_M * mu2

    thm1_qual = hyp.lambda_ok and hyp.rho_ok
    thm1_rhs = (
        completion_risk_bound(truth.rank, lam, mu2, diag.fro_M, hyp.rho)
        if hyp.rho_ok
        else math.nan
    )
    thm1_ok = (not thm1_qual) or err2 <= thm1_rhs * (1.0 + _REL_SLACK)

    lemma2_qual = hyp.lambda_ok and hyp.rho_weak_ok
    lemma2_ok = (not lemma2_qual) or report.residual_fro >= _lemma2_ratio(
        hyp.rho_weak
    ) * fro_x_minus_a0 * (1.0 - _REL_SLACK)

    # minimizer certificate: the objective cannot exceed F at 0, X or A0
    X = build_observation_matrix(ds)
    f_zero = schatten_norm(X, 2)
    f_data = lam * schatten_norm(X, 1)
    f_truth = fro_x_minus_a0 + lam * schatten_norm(truth.A0, 1)
    cert_ok = report.objective <= min(f_zero, f_data, f_truth) * (1.0 + _REL_SLACK) + 1e-12

    baseline_err = None
    if cfg.sigma > 0:
        base = baseline_known_sigma(ds, cfg.sigma, truth.a, cfg.c_star)
        baseline_err = float(((base - truth.A0) ** 2).sum()) / mu2

    return CompletionTrial(
        trial=index,
        lam=lam,
        rank_hat=report.rank_hat,
        per_entry_err=err2 / mu2,
        err2=err2,
        residual=report.residual_fro,
        objective=report.objective,
        cert_ok=bool(cert_ok),
        delta=diag.delta,
        delta_inf=diag.delta_inf,
        fro_M=diag.fro_M,
        fro_acc=diag.fro_acc,
        collisions=diag.collisions,
        spikiness=diag.spikiness,
        hyp_sample_size=hyp.sample_size_ok,
        hyp_density=hyp.density_ok,
        rho_min=hyp.rho_min,
        hyp_rho_min=hyp.rho_min_ok,
        hyp_lambda=hyp.lambda_ok,
        rho=hyp.rho,
        hyp_rho=hyp.rho_ok,
        rho_weak=hyp.rho_weak,
        thm1_rhs=thm1_rhs,
        thm1_qualifies=thm1_qual,
        thm1_ok=bool(thm1_ok),
        lemma2_qualifies=lemma2_qual,
        lemma2_ok=bool(lemma2_ok),
        baseline_per_entry_err=baseline_err,
        wall_time_s=time.perf_counter() - t0,
    )


def run_regression_trial(cfg: ExperimentConfig, index: int) -> RegressionTrial:
    t0 = time.perf_counter()
    rng = trial_rng(cfg.master_seed, index)
    V = rng.standard_normal((cfg.l, cfg.m1))
    A0 = rng.standard_normal((cfg.m1, cfg.rank0)) @ rng.standard_normal((cfg.rank0, cfg.m2))
    E = cfg.sigma * NoiseSpec(cfg.sigma, cfg.noise).draw(rng, (cfg.l, cfg.m2))
    U = V @ A0 + E
    ds = regression_dataset(V, U)

    proj = column_projector(V)
    fro_e = schatten_norm(E, 2)
    proj_e_op = float(np.linalg.svd(proj.apply(E), compute_uv=False)[0]) if fro_e > 0 else 0.0
    delta_prime = proj_e_op / fro_e if fro_e > 0 else 0.0

    if cfg.lambda_mode == "manual":
        lam = float(cfg.lambda_value)
    elif cfg.lambda_mode == "oracle":
        if delta_prime == 0.0:
            raise ValueError("oracle penalty undefined for noiseless regression data")
        lam = 3.0 * delta_prime
    else:
        params = RegressionLambdaParams(alpha=cfg.alpha, beta=cfg.beta)
        lam = regression_lambda(ds.l, ds.m2, max(ds.rank_V, 1), params)

    est = estimate_regression(ds, lam)

    VA0 = V @ A0
    sv = np.linalg.svd(VA0, compute_uv=False)
    rank_va0 = int((sv > RANK_TOL * sv[0]).sum()) if sv.size and sv[0] > 0 else 0
    err2 = float(((est.B_hat - VA0) ** 2).sum())

    rho = lam * math.sqrt(2.0 * rank_va0)
    rho_weak = lam * math.sqrt(rank_va0)
    # the noise-ratio hypothesis is undefined for an exactly-zero noise stack
    lam_dominates = fro_e > 0 and lam >= 3.0 * delta_prime

    thmr1_qual = lam_dominates and rho < 1.0
    thmr1_rhs = regression_risk_bound(lam, fro_e, rank_va0, rho) if rho < 1.0 else math.nan
    thmr1_ok = (not thmr1_qual) or err2 <= thmr1_rhs * (1.0 + _REL_SLACK)

    lr2_qual = lam_dominates and rho_weak < 1.0
    lr2_ok = (not lr2_qual) or est.residual >= _lemma2_ratio(rho_weak) * fro_e * (1.0 - _REL_SLACK)

    objective = est.residual + lam * schatten_norm(est.B_hat, 1) if est.rank_va else est.residual
    g_zero = schatten_norm(U, 2)
    g_truth = fro_e + lam * schatten_norm(VA0, 1)
    cert_ok = objective <= min(g_zero, g_truth) * (1.0 + _REL_SLACK) + 1e-12

    denom = cfg.sigma**2 * (cfg.m2 + ds.rank_V) * rank_va0
    scale_ratio = err2 / denom if denom > 0 else math.nan

    rank_condition_ok = None
    if cfg.rho is not None:
        rank_condition_ok = check_rank_condition(
            ds.l, ds.m2, max(ds.rank_V, 1), rank_va0, cfg.rho,
            RegressionLambdaParams(alpha=cfg.alpha, beta=cfg.beta),
        ).ok

    return RegressionTrial(
        trial=index,
        lam=lam,
        rank_va=est.rank_va,
        err2=err2,
        residual=est.residual,
        objective=objective,
        cert_ok=bool(cert_ok),
        delta_prime=delta_prime,
        fro_E=fro_e,
        rank_va0=rank_va0,
        rho=rho,
        rho_weak=rho_weak,
        thmr1_rhs=thmr1_rhs,
        thmr1_qualifies=thmr1_qual,
        thmr1_ok=bool(thmr1_ok),
        lr2_qualifies=lr2_qual,
        lr2_ok=bool(lr2_ok),
        scale_ratio=scale_ratio,
        rank_condition_ok=rank_condition_ok,
        wall_time_s=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _csv_fields(record) -> list[str]:
    return [f.name for f in fields(record) if f.name != "wall_time_s"]


def _summary_completion(records: list[CompletionTrial]) -> dict:
    errs = [r.per_entry_err for r in records]
    return {
        "trials": len(records),
        "median_err": float(np.median(errs)),
        "mean_err": float(np.mean(errs)),
        "qualifying_thm1": sum(r.thm1_qualifies for r in records),
        "violations_thm1": sum(r.thm1_qualifies and not r.thm1_ok for r in records),
        "qualifying_lemma2": sum(r.lemma2_qualifies for r in records),
        "violations_lemma2": sum(r.lemma2_qualifies and not r.lemma2_ok for r in records),
        "violations_rank": sum(r.rank_hat > math.floor(1.0 / r.lam**2) for r in records),
        "violations_cert": sum(not r.cert_ok for r in records),
    }


def _summary_regression(records: list[RegressionTrial]) -> dict:
    errs = [r.err2 for r in records]
    return {
        "trials": len(records),
        "median_err": float(np.median(errs)),
        "mean_err": float(np.mean(errs)),
        "qualifying_thmr1": sum(r.thmr1_qualifies for r in records),
        "violations_thmr1": sum(r.thmr1_qualifies and not r.thmr1_ok for r in records),
        "qualifying_lr2": sum(r.lr2_qualifies for r in records),
        "violations_lr2": sum(r.lr2_qualifies and not r.lr2_ok for r in records),
        "violations_rank": sum(r.rank_va > math.floor(1.0 / r.lam**2) for r in records),
        "violations_cert": sum(not r.cert_ok for r in records),
    }


def render_csv(records, summary: dict) -> str:
    names = _csv_fields(records[0])
    lines = [CSV_SCHEMA_TAG, ",".join(names)]
    for rec in records:
        lines.append(",".join(_format_cell(getattr(rec, name)) for name in names))
    lines.append("# summary " + " ".join(f"{k}={_format_cell(v)}" for k, v in summary.items()))
    return "\n".join(lines) + "\n"


def parse_summary_line(csv_text: str) -> dict:
    for line in csv_text.splitlines():
        if line.startswith("# summary "):
            out = {}
            for token in line[len("# summary "):].split():
                key, value = token.split("=", 1)
                out[key] = float(value) if ("." in value or "e" in value or "inf" in value) else int(value)
            return out
    raise ValueError("no summary line found")


@dataclass(frozen=True)
class ExperimentResult:
    records: list
    summary: dict
    csv_text: str


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute all trials of a simulate-mode config; optionally write the CSV.

    Trials run concurrently (each is a pure function of config, seed and
    index); rows are emitted in trial order regardless of completion order.
    """
    config.validate()
    if config.mode not in SIMULATE_MODES:
        raise ValueError("run_experiment handles simulate modes; use the estimate helpers for data")
    if config.mode == "simulate-completion":
        worker, summarize = run_completion_trial, _summary_completion
    else:
        worker, summarize = run_regression_trial, _summary_regression

    indices = range(config.trials)
    if config.threads == 1:
        records = [worker(config, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            records = list(pool.map(lambda i: worker(config, i), indices))
    records.sort(key=lambda r: r.trial)
    summary = summarize(records)
    csv_text = render_csv(records, summary)
    if config.out:
        with open(config.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(csv_text)
    return ExperimentResult(records=records, summary=summary, csv_text=csv_text)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteReport:
    name: str
    passed: bool
    lines: list[str]

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        body = "\n".join(f"  {line}" for line in self.lines)
        return f"[{status}] {self.name}\n{body}"


def _suite_shrinkage_oracle(seed: int = 0, instances: int = 1000) -> SuiteReport:
    from .shrinkage import oracle_sqrt_shrinkage, solve_sqrt_shrinkage

    rng = trial_rng(seed, 0)
    worst = 0.0
    bad = 0
    for _ in range(instances):
        p = int(rng.integers(1, 7))
        sig = np.sort(rng.uniform(0.0, 10.0, size=p))[::-1]
        lam = float(rng.uniform(0.05, 0.99))
        c = float(rng.uniform(0.0, 3.0))
        closed = solve_sqrt_shrinkage(sig, lam, c)
        oracle = oracle_sqrt_shrinkage(sig, lam, c, tol=1e-10)
        gap = abs(closed.objective - oracle.objective) / (1.0 + abs(closed.objective))
        worst = max(worst, gap)
        if gap > 1e-8:
            bad += 1
    return SuiteReport(
        name="shrinkage-oracle",
        passed=bad == 0,
        lines=[f"instances={instances}", f"max relative objective gap={worst:.3e}", f"violations={bad}"],
    )


def _suite_lemma1(seed: int = 0, trials: int = 500) -> SuiteReport:
    rng = trial_rng(seed, 1)
    violations = 0
    cert_fail = 0
    for i in range(trials):
        m1 = int(rng.integers(5, 41))
        m2 = int(rng.integers(5, 41))
        mode = ("manual", "manual", "manual", "oracle", "theory")[int(rng.integers(0, 5))]
        cfg = ExperimentConfig(
            mode="simulate-completion",
            m1=m1,
            m2=m2,
            n=int(rng.integers(5, 2 * m1 * m2)),
            rank0=int(rng.integers(1, min(m1, m2, 4) + 1)),
            sigma=float(rng.uniform(0.1, 2.0)),
            noise=("gaussian", "rademacher", "uniform")[int(rng.integers(0, 3))],
            a=1.0,
            lambda_mode=mode,
            lambda_value=float(rng.uniform(0.05, 1.5)) if mode == "manual" else None,
            master_seed=int(rng.integers(0, 2**31)),
        )
        rec = run_completion_trial(cfg, 0)
        if rec.rank_hat > math.floor(1.0 / rec.lam**2):
            violations += 1
        if not rec.cert_ok:
            cert_fail += 1
    return SuiteReport(
        name="lemma1",
        passed=violations == 0 and cert_fail == 0,
        lines=[
            f"trials={trials}",
            f"rank-bound violations={violations}",
            f"minimizer-certificate failures={cert_fail}",
        ],
    )


_THM1_CONFIG = dict(m1=100, m2=100, n=2000, rank0=1, sigma=0.5, a=1.0)


def _thm1_records(seed: int, trials: int) -> list[CompletionTrial]:
    cfg = ExperimentConfig(
        mode="simulate-completion", lambda_mode="oracle", trials=trials, master_seed=seed,
        **_THM1_CONFIG,
    )
    return run_experiment(cfg).records


def _suite_thm1(seed: int = 0, trials: int = 200) -> SuiteReport:
    records = _thm1_records(seed, trials)
    qual = sum(r.thm1_qualifies for r in records)
    bad = sum(r.thm1_qualifies and not r.thm1_ok for r in records)
    return SuiteReport(
        name="thm1",
        passed=bad == 0,
        lines=[f"trials={trials}", f"qualifying (rho<1 and lam>=3*delta)={qual}", f"violations={bad}"],
    )


def _suite_lemma2(seed: int = 0, trials: int = 200) -> SuiteReport:
    records = _thm1_records(seed, trials)
    qual = sum(r.lemma2_qualifies for r in records)
    bad = sum(r.lemma2_qualifies and not r.lemma2_ok for r in records)
    return SuiteReport(
        name="lemma2",
        passed=bad == 0,
        lines=[f"trials={trials}", f"qualifying (rho_weak<1 and lam>=3*delta)={qual}", f"violations={bad}"],
    )


def _suite_lemma3(seed: int = 0, trials: int = 200) -> SuiteReport:
    m1, m2, n, sigma, a = 50, 20000, 45000, 1.0, 1.0
    bound = operator_norm_bound(m1, m2, n, sigma, a)
    exceed = 0
    worst = 0.0
    for i in range(trials):
        rng = trial_rng(seed, i)
        truth = random_ground_truth(m1, m2, 1, a, rng)
        ds = synthesize(truth, NoiseSpec(sigma, "gaussian"), sample_design(m1, m2, n, rng), rng)
        diag = diagnostics(ds, truth)
        worst = max(worst, diag.delta_inf)
        if diag.delta_inf > bound:
            exceed += 1
    base_rate = 3.0 / (m1 + m2)
    allowance = trials * base_rate + 3.0 * math.sqrt(trials * base_rate * (1.0 - base_rate))
    return SuiteReport(
        name="lemma3",
        passed=exceed <= allowance,
        lines=[
            f"trials={trials} config=(m1={m1}, m2={m2}, n={n})",
            f"bound={bound:.6g} worst observed={worst:.6g}",
            f"exceedances={exceed} allowed<={allowance:.2f}",
        ],
    )


def _suite_lemmaL(seed: int = 0, trials: int = 1000) -> SuiteReport:
    m1 = m2 = 60
    n, sigma, a, rank0 = 900, 1.0, 1.0, 2
    fails = np.zeros(3, dtype=int)
    for i in range(trials):
        rng = trial_rng(seed, i)
        truth = random_ground_truth(m1, m2, rank0, a, rng)
        ds = synthesize(truth, NoiseSpec(sigma, "gaussian"), sample_design(m1, m2, n, rng), rng)
        env = frobenius_envelope(ds, truth, sigma)
        fails += [not env.clause_i, not env.clause_ii, not env.clause_iii]
    fracs = fails / trials
    return SuiteReport(
        name="lemmaL",
        passed=bool((fracs <= 0.01).all()),
        lines=[
            f"trials={trials}",
            f"violation fractions (i, ii, iii)=({fracs[0]:.4f}, {fracs[1]:.4f}, {fracs[2]:.4f})",
            "threshold=0.01 per clause",
        ],
    )


def _suite_lemma4(seed: int = 0, draws: int = 10000) -> SuiteReport:
    m1 = m2 = 60
    n = 900
    expectation = n * (n - 1) / (2.0 * m1 * m2)
    rng = trial_rng(seed, 4)
    counts = np.empty(draws)
    tail_events = 0
    for i in range(draws):
        design = sample_design(m1, m2, n, rng)
        c = collision_count(design)
        counts[i] = c
        if c >= n:
            tail_events += 1
    mean = counts.mean()
    se = counts.std(ddof=1) / math.sqrt(draws)
    mean_ok = abs(mean - expectation) <= 3.0 * se
    tail_ok = tail_events / draws <= 2.0 / (m1 * m2)
    return SuiteReport(
        name="lemma4",
        passed=mean_ok and tail_ok,
        lines=[
            f"draws={draws} expectation={expectation}",
            f"observed mean={mean:.4f} (3*SE={3 * se:.4f}) -> {'ok' if mean_ok else 'VIOLATION'}",
            f"P(collisions >= n) observed={tail_events / draws:.6f} allowed<={2.0 / (m1 * m2):.6f}",
        ],
    )


_COR1_CONFIG = dict(m1=300, m2=300, rank0=2, sigma=1.0, a=1.0)


def _cor1_medians(seed: int, ns, trials: int):
    medians = []
    for j, n in enumerate(ns):
        cfg = ExperimentConfig(
            mode="simulate-completion", n=n, lambda_mode="oracle", trials=trials,
            master_seed=seed + j, **_COR1_CONFIG,
        )
        result = run_experiment(cfg)
        medians.append(result.summary["median_err"])
    return medians


def _suite_cor1_scaling(seed: int = 0, ns=(4000, 8000, 16000), trials: int = 50) -> SuiteReport:
    medians = _cor1_medians(seed, ns, trials)
    slope = float(np.polyfit(np.log(np.asarray(ns, float)), np.log(medians), 1)[0])
    passed = -1.25 <= slope <= -0.75
    return SuiteReport(
        name="cor1-scaling",
        passed=passed,
        lines=[
            f"n sweep={tuple(ns)} trials per n={trials}",
            "median per-entry errors=" + ", ".join(f"{m:.6g}" for m in medians),
            f"log-log slope={slope:.4f} required in [-1.25, -0.75]",
        ],
    )


def _suite_baseline_compare(seed: int = 0, trials: int = 50) -> SuiteReport:
    cfg = ExperimentConfig(
        mode="simulate-completion", n=8000, lambda_mode="oracle", trials=trials,
        master_seed=seed, **_COR1_CONFIG,
    )
    records = run_experiment(cfg).records
    med_sqrt = float(np.median([r.per_entry_err for r in records]))
    med_base = float(np.median([r.baseline_per_entry_err for r in records]))
    passed = med_sqrt <= 3.0 * med_base
    return SuiteReport(
        name="baseline-compare",
        passed=passed,
        lines=[
            f"trials={trials} at n=8000",
            f"median per-entry error: variance-free={med_sqrt:.6g}, known-sigma baseline={med_base:.6g}",
            f"ratio={med_sqrt / med_base:.3f} required <= 3",
        ],
    )


def _suite_lr1(seed: int = 0, trials: int = 200) -> SuiteReport:
    rng = trial_rng(seed, 9)
    violations = 0
    cert_fail = 0
    for i in range(trials):
        cfg = ExperimentConfig(
            mode="simulate-regression",
            l=int(rng.integers(4, 31)),
            m1=int(rng.integers(4, 31)),
            m2=int(rng.integers(4, 31)),
            rank0=int(rng.integers(1, 4)),
            sigma=float(rng.uniform(0.1, 2.0)),
            lambda_mode="manual",
            lambda_value=float(rng.uniform(0.05, 1.5)),
            master_seed=int(rng.integers(0, 2**31)),
        )
        rec = run_regression_trial(cfg, 0)
        if rec.rank_va > math.floor(1.0 / rec.lam**2):
            violations += 1
        if not rec.cert_ok:
            cert_fail += 1
    return SuiteReport(
        name="lr1",
        passed=violations == 0 and cert_fail == 0,
        lines=[
            f"trials={trials}",
            f"rank-bound violations={violations}",
            f"minimizer-certificate failures={cert_fail}",
        ],
    )


_THMR1_CONFIG = dict(l=60, m1=60, m2=120, rank0=2, sigma=1.0, alpha=0.1, beta=0.5)


def _thmr1_records(seed: int, trials: int, m2: int | None = None) -> list[RegressionTrial]:
    params = dict(_THMR1_CONFIG)
    if m2 is not None:
        params["m2"] = m2
    cfg = ExperimentConfig(
        mode="simulate-regression", lambda_mode="theory", trials=trials, master_seed=seed,
        **params,
    )
    return run_experiment(cfg).records


def _suite_thmr1(seed: int = 0, trials: int = 200) -> SuiteReport:
    records = _thmr1_records(seed, trials)
    qual = sum(r.thmr1_qualifies for r in records)
    bad = sum(r.thmr1_qualifies and not r.thmr1_ok for r in records)
    return SuiteReport(
        name="thmr1",
        passed=bad == 0,
        lines=[f"trials={trials}", f"qualifying (rho<1 and lam>=3*delta')={qual}", f"violations={bad}"],
    )


def _suite_lr2(seed: int = 0, trials: int = 200) -> SuiteReport:
    records = _thmr1_records(seed, trials)
    qual = sum(r.lr2_qualifies for r in records)
    bad = sum(r.lr2_qualifies and not r.lr2_ok for r in records)
    return SuiteReport(
        name="lr2",
        passed=bad == 0,
        lines=[f"trials={trials}", f"qualifying (rho_weak<1 and lam>=3*delta')={qual}", f"violations={bad}"],
    )


def _suite_thmr2_scaling(seed: int = 0, m2s=(120, 240, 480), trials: int = 200) -> SuiteReport:
    medians = []
    ratios = []
    for j, m2 in enumerate(m2s):
        records = _thmr1_records(seed + j, trials, m2=m2)
        medians.append(float(np.median([r.err2 for r in records])))
        ratios.append(float(np.median([r.scale_ratio for r in records])))
    sublinear = all(
        medians[j + 1] / medians[j] < m2s[j + 1] / m2s[j] for j in range(len(m2s) - 1)
    )
    band = max(ratios) / min(ratios)
    passed = sublinear and band <= 4.0
    return SuiteReport(
        name="thmr2-scaling",
        passed=passed,
        lines=[
            f"m2 sweep={tuple(m2s)} trials per m2={trials}",
            "median prediction errors=" + ", ".join(f"{m:.6g}" for m in medians),
            "ratios to sigma^2*(m2+r)*rank=" + ", ".join(f"{r:.3f}" for r in ratios),
            f"sub-linear growth={'yes' if sublinear else 'NO'}; ratio band={band:.3f} required <= 4",
        ],
    )


SUITES = {
    "shrinkage-oracle": _suite_shrinkage_oracle,
    "lemma1": _suite_lemma1,
    "lemma2": _suite_lemma2,
    "lemma3": _suite_lemma3,
    "lemmaL": _suite_lemmaL,
    "lemma4": _suite_lemma4,
    "thm1": _suite_thm1,
    "cor1-scaling": _suite_cor1_scaling,
    "lr1": _suite_lr1,
    "lr2": _suite_lr2,
    "thmr1": _suite_thmr1,
    "thmr2-scaling": _suite_thmr2_scaling,
    "baseline-compare": _suite_baseline_compare,
}


def verify_suite(name: str, seed: int = 0, **overrides) -> SuiteReport:
    """Run one named verification suite and return its report."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed, **overrides)
