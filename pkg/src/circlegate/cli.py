"""
Command-line front end.

    circlegate verify    [--grid-size K]
    circlegate sweep     [--grid-size K] [--format csv|json] [--isometry FILE] [-o PATH]
    circlegate optimize  [--seed S] [--restarts R] [--max-iterations N]
                         [--step-size H] [--tol T] [--grid-size K] [-o PATH]
    circlegate qcm-check [--grid-size K] [-o PATH]
    circlegate not-demo

Exit status: 0 when every reported check passes, 1 when a check fails,
2 on usage or I/O errors. Settings resolve as flags > ``--config`` JSON file
> defaults; the seed additionally falls back to $CIRCLEGATE_SEED.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, gates, optimizer, statekit

SEED_ENV = "CIRCLEGATE_SEED"
COMMANDS = ("verify", "sweep", "optimize", "qcm-check", "not-demo")

DEFAULTS = {
    "grid_size": 64,
    "seed": 42,
    "restarts": optimizer.OptimizerConfig.restarts,
    "max_iterations": optimizer.OptimizerConfig.max_iterations,
    "step_size": optimizer.OptimizerConfig.step_size,
    "tol": optimizer.OptimizerConfig.convergence_tol,
    "format": None,
    "output": "-",
    "isometry": None,
}

SPREAD_TOL = 1e-10
QCM_TOL = 1e-10


class UsageError(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="circlegate", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with default settings")
    parser.add_argument("--grid-size", type=int, dest="grid_size")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--restarts", type=int)
    parser.add_argument("--max-iterations", type=int, dest="max_iterations")
    parser.add_argument("--step-size", type=float, dest="step_size")
    parser.add_argument("--tol", type=float)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--output", "-o")
    parser.add_argument("--isometry", help="optimize output to sweep instead of the optimal gate")
    return parser


def resolve_config(args, environ=None):
    """Merge flags, config file, environment seed and defaults into a dict."""
    environ = os.environ if environ is None else environ
    cfg = dict(DEFAULTS)
    if environ.get(SEED_ENV):
        try:
            cfg["seed"] = int(environ[SEED_ENV])
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer")
    if args.config:
        try:
            with open(args.config) as fh:
                from_file = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        unknown = set(from_file) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(from_file)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg["command"] = args.command
    if cfg["format"] is None:
        cfg["format"] = "csv" if args.command == "sweep" else "json"
    if cfg["grid_size"] < 8:
        raise UsageError("--grid-size must be at least 8")
    return cfg


def _emit(text, path):
    if path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    with open(path, "w", newline="") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _fmt(x):
    return f"{x:.12g}"


def verification_checks(grid_size):
    """(name, value, tolerance, passed) rows for the verify table."""
    checks = []
    angles = statekit.TWO_PI * np.arange(360) / 360

    worst = max(abs(np.vdot(statekit.make_circle_state(a),
                            gates.exact_not() @ statekit.make_circle_state(a)))
                for a in angles)
    checks.append(("exact NOT orthogonality (360 angles)", worst, 1e-12))

    v = gates.optimal_cnot_isometry()
    grid = analysis.AngleGrid(grid_size)
    checks.append(("per-target branch conditions", analysis.branch_condition_residual(v, grid), 1e-12))
    checks.append(("unitarity residual |V^H V - I|", analysis.unitarity_residual(v), 1e-12))

    report = analysis.fidelity_sweep(v, grid)
    checks.append((f"fidelity spread ({grid_size}x{grid_size})", report.spread, SPREAD_TOL))
    checks.append(("|mean F - (1/2 + sqrt(1/8))|",
                   abs(report.mean_F - gates.OPTIMAL_FIDELITY), SPREAD_TOL))

    worst = 0.0
    for theta0 in (0.0, np.pi / 3, np.pi / 2, np.pi):
        for chi0 in (0.0, 0.7, 2.5):
            p0, p1 = superposition_marginal_probs(theta0, chi0)
            worst = max(worst, abs(p0 - np.cos(theta0 / 2) ** 2), abs(p1 - np.sin(theta0 / 2) ** 2))
    checks.append(("measurement statistics", worst, 1e-12))
    return [(name, val, tol, bool(val < tol)) for name, val, tol in checks]


def superposition_marginal_probs(theta0, chi0):
    """Target-basis probabilities after the controlled exact NOT on chi(theta0) (x) chi(chi0)."""
    state = statekit.tensor(statekit.make_circle_state(theta0), statekit.make_circle_state(chi0))
    out = statekit.apply_operator(gates.controlled_exact_not(), state, unitary=True)
    return statekit.measure_in_basis(statekit.partial_trace(out, keep=[1]), chi0)


def cmd_verify(cfg):
    rows = verification_checks(cfg["grid_size"])
    width = max(len(r[0]) for r in rows)
    lines = [f"{'check':<{width}}  {'value':>20}  {'tol':>8}  result"]
    for name, val, tol, ok in rows:
        lines.append(f"{name:<{width}}  {_fmt(val):>20}  {tol:>8.0e}  {'PASS' if ok else 'FAIL'}")
    _emit("\n".join(lines), cfg["output"])
    return 0 if all(r[3] for r in rows) else 1


def _load_isometry(path):
    try:
        with open(path) as fh:
            return optimizer.OptimizationResult.from_dict(json.load(fh)).best_isometry
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read isometry from {path}: {exc}")


def cmd_sweep(cfg):
    v = _load_isometry(cfg["isometry"]) if cfg["isometry"] else gates.optimal_cnot_isometry()
    report = analysis.fidelity_sweep(v, analysis.AngleGrid(cfg["grid_size"]))
    _emit(report.to_csv() if cfg["format"] == "csv" else report.to_json(), cfg["output"])
    return 0


def cmd_optimize(cfg):
    if cfg["format"] != "json":
        raise UsageError("optimize writes JSON only")
    conf = optimizer.OptimizerConfig(
        grid_size=cfg["grid_size"],
        max_iterations=cfg["max_iterations"],
        step_size=cfg["step_size"],
        convergence_tol=cfg["tol"],
        restarts=cfg["restarts"],
        rng_seed=cfg["seed"],
    )
    result = optimizer.optimize(conf)
    _emit(result.to_json(), cfg["output"])
    if not result.converged:
        print(f"best objective {_fmt(result.best_objective)} is not within "
              f"{optimizer.CONVERGED_TOL:g} of {_fmt(gates.OPTIMAL_FIDELITY)}", file=sys.stderr)
        return 1
    return 0


def cmd_qcm_check(cfg):
    if cfg["format"] != "json":
        raise UsageError("qcm-check writes JSON only")
    res = analysis.qcm_analogy_check(gates.optimal_cnot_isometry(), analysis.AngleGrid(cfg["grid_size"]))
    ok = bool(res < QCM_TOL)
    _emit(json.dumps({"qcm_residual": res, "grid_size": cfg["grid_size"], "pass": ok}, indent=2),
          cfg["output"])
    return 0 if ok else 1


def cmd_not_demo(cfg):
    lines = ["alpha,F_NOT"]
    worst = 0.0
    for alpha in statekit.TWO_PI * np.arange(8) / 8:
        psi = statekit.make_circle_state(alpha)
        f = statekit.fidelity_pure(gates.universal_not_channel(psi), gates.orthogonal(psi))
        worst = max(worst, abs(f - 2 / 3))
        lines.append(f"{_fmt(alpha)},{_fmt(f)}")
    lines.append("")
    lines.append("copies,F_ensemble")
    for n in range(1, 6):
        lines.append(f"{n},{_fmt(gates.ensemble_unot_fidelity(n))}")
    _emit("\n".join(lines), cfg["output"])
    return 0 if worst < 1e-12 else 1


HANDLERS = {
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "qcm-check": cmd_qcm_check,
    "not-demo": cmd_not_demo,
}


def run_command(cfg):
    try:
        return HANDLERS[cfg["command"]](cfg)
    except (UsageError, ValueError) as exc:
        print(f"circlegate: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"circlegate: {exc}", file=sys.stderr)
        return 2
    except optimizer.OptimizerError as exc:
        print(f"circlegate: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = resolve_config(args)
    except UsageError as exc:
        print(f"circlegate: {exc}", file=sys.stderr)
        return 2
    return run_command(cfg)


if __name__ == "__main__":
    sys.exit(main())
