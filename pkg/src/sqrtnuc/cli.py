"""Command-line front end.

Subcommands: ``simulate completion``, ``simulate regression``,
``estimate completion``, ``estimate regression``, ``verify <suite>``.
Flags may also be supplied through ``--config FILE`` holding ``key=value``
lines (keys are the flag names without dashes); explicit flags win over the
file, which wins over the built-in defaults.
"""

from __future__ import annotations

import argparse
import sys

from .completion import estimate, read_observations, theory_lambda
from .harness import SUITES, ExperimentConfig, run_experiment, verify_suite
from .linalg import read_matrix_csv, write_matrix_csv
from .regression import (
    RegressionLambdaParams,
    estimate_regression,
    regression_dataset,
    regression_lambda,
)

_CONVERTERS = {
    "m1": int, "m2": int, "l": int, "n": int, "rank": int,
    "trials": int, "seed": int, "threads": int,
    "sigma": float, "a": float, "cstar": float, "alpha": float, "beta": float, "rho": float,
    "noise": str, "lambda": str, "out": str, "obs": str, "truth": str,
    "predictors": str, "responses": str,
}

_DEFAULTS = {
    "m1": 60, "m2": 60, "l": 60, "n": 900, "rank": 1,
    "trials": 1, "seed": 0, "threads": None,
    "sigma": 1.0, "a": None, "cstar": 6.5, "alpha": 0.1, "beta": 0.5, "rho": None,
    "noise": "gaussian", "lambda": None, "out": None, "obs": None, "truth": None,
    "predictors": None, "responses": None,
}

# simulations fall back to a unit sup-norm bound; estimation must say it explicitly
_SIMULATION_DEFAULT_A = 1.0


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; explicit flags override it")
    p.add_argument("--m1", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--sigma", type=float)
    p.add_argument("--noise", choices=("gaussian", "rademacher", "uniform"))
    p.add_argument("--a", type=float)
    p.add_argument("--lambda", dest="lambda_", metavar="MODE",
                   help="theory | oracle | manual:<x>")
    p.add_argument("--cstar", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--out")
    p.add_argument("--obs")
    p.add_argument("--truth")
    p.add_argument("--predictors")
    p.add_argument("--responses")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="sqrtnuc", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="seeded Monte Carlo experiments")
    sim_sub = sim.add_subparsers(dest="target", required=True)
    for target in ("completion", "regression"):
        _add_common_flags(sim_sub.add_parser(target))

    est = sub.add_parser("estimate", help="run the estimator on user data")
    est_sub = est.add_subparsers(dest="target", required=True)
    for target in ("completion", "regression"):
        _add_common_flags(est_sub.add_parser(target))

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=sorted(SUITES))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--trials", type=int, help="override the suite's default trial count")

    return top


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="ascii") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, raw = (part.strip() for part in line.split("=", 1))
            if key not in _CONVERTERS:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")
            values[key] = _CONVERTERS[key](raw)
    return values


def _merge_options(args: argparse.Namespace) -> dict:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for key in _CONVERTERS:
        attr = "lambda_" if key == "lambda" else key
        value = getattr(args, attr, None)
        if value is not None:
            merged[key] = value
    return merged


def _parse_lambda(raw: str | None, default_mode: str) -> tuple[str, float | None]:
    if raw is None:
        return default_mode, None
    if raw in ("theory", "oracle"):
        return raw, None
    if raw.startswith("manual:"):
        value = float(raw.split(":", 1)[1])
        if value <= 0:
            raise ValueError("manual lambda must be positive")
        return "manual", value
    raise ValueError(f"bad --lambda value {raw!r}; expected theory, oracle or manual:<x>")


def _build_experiment_config(opts: dict, mode: str) -> ExperimentConfig:
    # completion defaults to the simulation-only oracle weight, regression to
    # the dimension-only rule
    default_mode = "oracle" if mode.endswith("completion") else "theory"
    lambda_mode, lambda_value = _parse_lambda(opts["lambda"], default_mode=default_mode)
    a = opts["a"] if opts["a"] is not None else _SIMULATION_DEFAULT_A
    return ExperimentConfig(
        mode=mode,
        m1=opts["m1"], m2=opts["m2"], l=opts["l"], n=opts["n"], rank0=opts["rank"],
        sigma=opts["sigma"], noise=opts["noise"], a=a,
        lambda_mode=lambda_mode, lambda_value=lambda_value,
        c_star=opts["cstar"], alpha=opts["alpha"], beta=opts["beta"], rho=opts["rho"],
        trials=opts["trials"], master_seed=opts["seed"], threads=opts["threads"],
        out=opts["out"],
    )


def _cmd_simulate(args: argparse.Namespace) -> int:
    opts = _merge_options(args)
    cfg = _build_experiment_config(opts, f"simulate-{args.target}")
    result = run_experiment(cfg)
    for key, value in result.summary.items():
        print(f"{key}={value}")
    if cfg.out:
        print(f"wrote {cfg.trials} trial rows to {cfg.out}")
    return 0


def _cmd_estimate_completion(opts: dict) -> int:
    if not opts["obs"]:
        raise ValueError("estimate completion requires --obs with row,col,value lines")
    ds = read_observations(opts["obs"], opts["m1"], opts["m2"])
    mode, value = _parse_lambda(opts["lambda"], default_mode="theory")
    if mode == "oracle":
        raise ValueError("the oracle penalty needs the simulated truth; use theory or manual")
    if mode == "theory":
        if opts["a"] is None:
            raise ValueError("the data-driven penalty needs --a (a bound on the largest entry)")
        lam = theory_lambda(ds, opts["a"], opts["cstar"])
    else:
        lam = value
    report = estimate(ds, lam)
    print(f"lambda={report.lam}")
    print(f"rank={report.rank_hat}")
    print(f"residual_fro={report.residual_fro}")
    print(f"objective={report.objective}")
    if opts["truth"]:
        A0 = read_matrix_csv(opts["truth"])
        per_entry = float(((report.A_hat - A0) ** 2).sum()) / (opts["m1"] * opts["m2"])
        print(f"per_entry_sq_error={per_entry}")
    if opts["out"]:
        write_matrix_csv(report.A_hat, opts["out"])
        print(f"wrote estimate to {opts['out']}")
    return 0


def _cmd_estimate_regression(opts: dict) -> int:
    if not opts["predictors"] or not opts["responses"]:
        raise ValueError("estimate regression requires --predictors and --responses matrices")
    V = read_matrix_csv(opts["predictors"])
    U = read_matrix_csv(opts["responses"])
    ds = regression_dataset(V, U)
    mode, value = _parse_lambda(opts["lambda"], default_mode="theory")
    if mode == "oracle":
        raise ValueError("the oracle penalty needs the simulated noise; use theory or manual")
    if mode == "theory":
        params = RegressionLambdaParams(alpha=opts["alpha"], beta=opts["beta"])
        lam = regression_lambda(ds.l, ds.m2, max(ds.rank_V, 1), params)
    else:
        lam = value
    est = estimate_regression(ds, lam)
    print(f"lambda={est.lam}")
    print(f"rank_of_fit={est.rank_va}")
    print(f"rank_of_predictors={ds.rank_V}")
    print(f"residual_fro={est.residual}")
    if opts["truth"]:
        A0 = read_matrix_csv(opts["truth"])
        err2 = float(((V @ (est.A_hat - A0)) ** 2).sum())
        print(f"prediction_sq_error={err2}")
    if opts["out"]:
        write_matrix_csv(est.A_hat, opts["out"])
        print(f"wrote coefficient estimate to {opts['out']}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    overrides = {}
    if args.trials is not None:
        fn = SUITES[args.suite]
        # suites expose either `trials`, `instances` or `draws` as their count knob
        for knob in ("trials", "instances", "draws"):
            if knob in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                overrides[knob] = args.trials
                break
    report = verify_suite(args.suite, seed=args.seed, **overrides)
    print(report)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "estimate":
            opts = _merge_options(args)
            if args.target == "completion":
                return _cmd_estimate_completion(opts)
            return _cmd_estimate_regression(opts)
        if args.command == "verify":
            return _cmd_verify(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
