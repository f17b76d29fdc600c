"""Command-line drivers: synthesize / verify / sweep / analyze.

All commands read a JSON problem configuration and write deterministic
artifacts (CSV with 17-significant-digit floats, JSON with sorted keys) into
the output directory.  Failure paths map to distinct exit codes:

    1  configuration / usage error
    2  actuator not strategic for the target
    3  singular Gramian
    4  quadrature or special-function evaluation failure
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .actuators import eec_criterion, is_strategic
from .config import ProblemConfig, load_config
from .errors import (
    ConfigError,
    EvaluationError,
    InfeasibleError,
    NonStrategicError,
    QuadratureError,
    SingularGramianError,
    SubdiffError,
)
from .penalized import epsilon_sweep
from .rhum import control_energy, discrete_gramian, final_free_state, solve_rhum, verify_transfer

EXIT_CONFIG = 1
EXIT_NON_STRATEGIC = 2
EXIT_SINGULAR = 3
EXIT_QUADRATURE = 4


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _read_control_csv(path: Path) -> np.ndarray:
    lines = path.read_text(encoding="utf-8").strip().splitlines()
    vals = [float(line.split(",")[1]) for line in lines[1:]]
    return np.array(vals)


def _analysis_payload(config: ProblemConfig) -> dict:
    actuator = config.build_actuator()
    target = config.build_target()
    report = is_strategic(actuator, target, config.tolerances.gramian_rank)
    gram, _, _ = discrete_gramian(actuator, target, config.alpha, config.grid())
    free = final_free_state(config.alpha, config.T, config.y0_array())
    rhs = -(target.polar_basis.T @ free.coeffs)
    eec = eec_criterion(gram.matrix, rhs, config.tolerances.gramian_rank)
    return {
        "strategic": report["strategic"],
        "dead_modes": report["dead_modes"],
        "eec": eec,
        "gramian_condition": gram.condition_number(),
        "gramian_min_eigenvalue": gram.min_eigenvalue(),
        "influence": [float(v) for v in actuator.influence],
    }


def _cmd_synthesize(config: ProblemConfig, out: Path) -> int:
    sol = solve_rhum(config)
    transfer = verify_transfer(config, sol.u_star)
    grid = config.grid()
    nodes = grid.nodes
    control_path = out / "control.csv"
    traj_path = out / "trajectory.csv"
    report_path = out / "report.json"
    _write_csv(control_path, ["t", "u"], zip(nodes, sol.u_star))
    _write_csv(
        traj_path,
        ["t"] + [f"coeff_{i+1}" for i in range(config.n_modes)],
        (np.concatenate([[t], row]) for t, row in zip(nodes, transfer.trajectory)),
    )
    analysis = _analysis_payload(config)
    report = {
        "strategic": analysis["strategic"],
        "dead_modes": analysis["dead_modes"],
        "eec": analysis["eec"],
        "gramian_condition": sol.condition_number,
        "solve_residual": sol.residual,
        "control_energy": control_energy(sol.u_star, grid),
        "distance_to_G": transfer.distance_to_G,
        "within_tolerance": transfer.distance_to_G <= config.tolerances.verify_distance,
        "artifacts": {
            "control": control_path.name,
            "trajectory": traj_path.name,
            "report": report_path.name,
        },
    }
    _write_json(report_path, report)
    print(
        f"synthesized control: energy={report['control_energy']:.6e} "
        f"distance_to_G={report['distance_to_G']:.6e}"
    )
    return 0


def _cmd_verify(config: ProblemConfig, out: Path) -> int:
    control_path = out / "control.csv"
    if not control_path.exists():
        raise ConfigError("<control>", f"no control file at {control_path}; run synthesize first")
    u = _read_control_csv(control_path)
    if u.shape != (config.n_steps + 1,):
        raise ConfigError(
            "<control>",
            f"control file has {u.size} samples but the grid needs {config.n_steps + 1}",
        )
    transfer = verify_transfer(config, u)
    report = {
        "distance_to_G": transfer.distance_to_G,
        "within_tolerance": transfer.distance_to_G <= config.tolerances.verify_distance,
        "control_energy": control_energy(u, config.grid()),
        "final_coefficients": [float(v) for v in transfer.y_T.coeffs],
    }
    _write_json(out / "verify_report.json", report)
    print(f"distance_to_G={report['distance_to_G']:.6e} ok={report['within_tolerance']}")
    return 0


def _cmd_sweep(config: ProblemConfig, out: Path, eps_arg: str) -> int:
    if not eps_arg:
        raise ConfigError("--eps", "a comma-separated list of penalty values is required")
    try:
        eps_list = [float(tok) for tok in eps_arg.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError("--eps", f"could not parse {eps_arg!r}: {exc}") from exc
    if not eps_list:
        raise ConfigError("--eps", "eps list must not be empty")
    rows = epsilon_sweep(config, eps_list)
    _write_csv(
        out / "sweep.csv",
        ["epsilon", "J_eps", "rel_control_err", "residual_norm"],
        ((r.epsilon, r.J_eps, r.rel_control_err, r.residual_norm) for r in rows),
    )
    report = {
        "epsilons": [r.epsilon for r in rows],
        "J_eps": [r.J_eps for r in rows],
        "rel_control_err": [r.rel_control_err for r in rows],
        "residual_norm": [r.residual_norm for r in rows],
        "monotone_J": all(b >= a - 1e-10 for a, b in zip([r.J_eps for r in rows], [r.J_eps for r in rows][1:])),
    }
    _write_json(out / "sweep_report.json", report)
    print(f"swept {len(rows)} penalty values; final rel_control_err={rows[-1].rel_control_err:.3e}")
    return 0


def _cmd_analyze(config: ProblemConfig, out: Path) -> int:
    payload = _analysis_payload(config)
    _write_json(out / "analysis.json", payload)
    print(
        f"strategic={payload['strategic']} dead_modes={payload['dead_modes']} "
        f"eec={payload['eec']}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subdiff-control",
        description="Minimum-energy steering of sub-diffusion into a target subspace",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("synthesize", "solve for the steering control and simulate it"),
        ("verify", "re-simulate a previously written control and measure the miss"),
        ("sweep", "penalization sweep over a list of eps values"),
        ("analyze", "strategic-actuator / reachability report only"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="path to the JSON problem configuration")
        p.add_argument("--out", default=".", help="output directory (created if missing)")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")
        if name == "sweep":
            p.add_argument("--eps", required=True, help="comma-separated decreasing penalty values")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.seed is not None:
            np.random.seed(args.seed)
        if args.command == "synthesize":
            return _cmd_synthesize(config, out)
        if args.command == "verify":
            return _cmd_verify(config, out)
        if args.command == "sweep":
            return _cmd_sweep(config, out, args.eps)
        return _cmd_analyze(config, out)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonStrategicError, InfeasibleError) as exc:
        print(f"non-strategic actuator: {exc}", file=sys.stderr)
        return EXIT_NON_STRATEGIC
    except SingularGramianError as exc:
        print(f"singular Gramian: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (QuadratureError, EvaluationError) as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except SubdiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
