"""Command-line driver: python -m qchaos <experiment> [flags].

Each subcommand loads an optional JSON config, applies flag overrides,
runs the experiment, and prints the output paths as JSON.  Failures
exit nonzero with a JSON error object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment


class _JsonErrorParser(argparse.ArgumentParser):
    def error(self, message):
        print(
            json.dumps({"error": "ArgumentError", "message": message}),
            file=sys.stderr,
        )
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _JsonErrorParser(
        prog="qchaos",
        description="Run a spectral-analysis experiment and emit CSV/JSON artifacts.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    helps = {
        "fig1": "sparse IQP entropy sweep over gamma",
        "fig2_fig3": "noisy Fourier spectra over an error-rate sweep",
        "attack": "low-weight spectral reconstruction report",
        "xeb": "cross-entropy fidelity benchmark",
    }
    for name in EXPERIMENTS:
        sp = sub.add_parser(name, help=helps[name], parents=[], add_help=True)
        sp.add_argument("--config", help="path to a JSON experiment config")
        sp.add_argument("--out", help="output directory (overrides config)")
        sp.add_argument(
            "--threads", type=int, help="worker thread count (overrides config)"
        )
        sp.add_argument(
            "--seed", type=int, help="master seed (overrides config)"
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            cfg = ExperimentConfig.from_json(Path(args.config).read_text())
            if cfg.experiment != args.experiment:
                raise ValueError(
                    f"config is for experiment {cfg.experiment!r}, "
                    f"but {args.experiment!r} was requested"
                )
        else:
            cfg = ExperimentConfig(experiment=args.experiment)
        overrides = {}
        if args.out is not None:
            overrides["out_dir"] = args.out
        if args.threads is not None:
            overrides["threads"] = args.threads
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            cfg = replace(cfg, **overrides)
        result = run_experiment(cfg)
        print(json.dumps(result, indent=2, sort_keys=True))
        return 0
    except Exception as e:  # noqa: BLE001 - CLI boundary turns errors into JSON
        print(
            json.dumps({"error": type(e).__name__, "message": str(e)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
