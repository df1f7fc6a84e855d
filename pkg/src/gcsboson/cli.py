"""Command line driver.

    gcsboson <subcommand> --config <path> [--seed N] [--out <path>] [--threads N] [--json [PATH]]

Exit codes: 0 success, 1 configuration error, 2 validation failure,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, GCSBosonError, NumericalError, SizeGuardError
from .experiments import RUNNERS, ExperimentConfig, records_to_csv, records_to_json
from .gcs import pairs_to_complex
from .permanent import (NAIVE_MAX, permanent_glynn, permanent_naive, permanent_ryser,
                        permanent_via_gcs)
from .validate import run_validate

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_matrix(data) -> np.ndarray:
    """Matrix from a JSON value: nested ``[re, im]`` pairs or plain real rows."""
    if isinstance(data, dict):
        if "matrix" not in data:
            raise ConfigError("permanent config needs a 'matrix' key")
        data = data["matrix"]
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise ConfigError("matrix entries must be numbers or [re, im] pairs") from None
    if arr.ndim == 3:
        arr = pairs_to_complex(arr)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ConfigError(f"matrix must be square, got shape {arr.shape}")
    return arr.astype(complex)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_permanent(args) -> int:
    _, data = _read_json(args.config)
    A = load_matrix(data)
    n = A.shape[0]
    methods = [("ryser", permanent_ryser), ("glynn", permanent_glynn), ("gcs", permanent_via_gcs)]
    if n <= NAIVE_MAX:
        methods.insert(0, ("naive", permanent_naive))
    lines = ["method,re,im,time_s"]
    for name, fn in methods:
        start = time.perf_counter()
        value = fn(A)
        lines.append(f"{name},{value.real:.12g},{value.imag:.12g},{time.perf_counter() - start:.6f}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = ExperimentConfig(experiment="validate")
    if args.config:
        text, _ = _read_json(args.config)
        cfg = ExperimentConfig.from_json(text)
    seed = args.seed if args.seed is not None else cfg.seed
    report = run_validate(seed=seed, tolerances=cfg.tolerances, inject_fault=cfg.inject_fault)
    _emit(report.table() + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_VALIDATION


def _cmd_experiment(args) -> int:
    text, _ = _read_json(args.config)
    cfg = ExperimentConfig.from_json(text)
    cfg.experiment = args.command
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.validate()
    records = RUNNERS[args.command](cfg, threads=args.threads, record_timing=args.timing)
    out = args.out or cfg.output
    _emit(records_to_csv(records), out)
    if args.json is not None:
        json_path = args.json or (str(Path(out).with_suffix(".json")) if out else None)
        _emit(records_to_json(records) + "\n", json_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcsboson", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*RUNNERS, "permanent", "validate"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=name != "validate")
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--threads", type=int, default=1)
        if name in RUNNERS:
            p.add_argument("--json", nargs="?", const="", default=None,
                           help="also write a JSON mirror (default: <out>.json)")
            p.add_argument("--timing", action="store_true",
                           help="fill wall_time_s (makes output non-reproducible)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "permanent":
            return _cmd_permanent(args)
        if args.command == "validate":
            return _cmd_validate(args)
        return _cmd_experiment(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, SizeGuardError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GCSBosonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
