#!/usr/bin/env python3
"""Penalization sweep cross-checking the minimum-energy synthesis.

Solves the penalized relaxation of the steering problem along a decreasing
penalty schedule and reports how the objective and the control approach the
values from the direct synthesis route.  Writes sweep.csv and
sweep_report.json into the output directory.
"""

import argparse
import sys
from pathlib import Path

from subdiff_control.cli import main as cli_main
from subdiff_control.config import ProblemConfig, save_config


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/epsilon_sweep", help="output directory")
    parser.add_argument(
        "--eps",
        default="1e-1,1e-3,1e-5",
        help="comma-separated strictly decreasing penalty values",
    )
    args = parser.parse_args()

    config = ProblemConfig(
        alpha=0.6,
        T=1.0,
        n_modes=5,
        n_steps=48,
        y0=(1.0, 0.0, 0.0, 0.0, 0.0),
        actuator={"kind": "pointwise", "b": 1.0 / 3.0},
        target_modes=(2, 3, 4, 5),
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg_path = out / "config.json"
    save_config(config, cfg_path)
    return cli_main(
        ["sweep", "--config", str(cfg_path), "--out", str(out), "--eps", args.eps]
    )


if __name__ == "__main__":
    sys.exit(main())
