"""Batch front end: `run` an experiment, `sweep` parameter grids, `verify`.

Exit codes: 0 success, 1 numerical/acceptance failure, 2 usage/config error.
Data artifacts are deterministic for a given (config, seed); the manifest
written next to each data file differs only in its timing fields.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, acceptance, serialize
from .errors import SimulationError
from .experiments import EXPERIMENTS, ConfigError, resolve_params

DEFAULT_SWEEP_CAP = 10000


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _fail_numeric(exc: SimulationError) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return 1


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}")
    if not isinstance(payload, dict):
        raise ConfigError(f"config root must be an object: {path}")
    return payload


def _parse_extra_params(extras: list[str]) -> dict:
    """--key value pairs following the documented flags."""
    params = {}
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--") or len(token) == 2:
            raise ConfigError(f"unexpected argument {token!r}")
        key = token[2:].replace("-", "_")
        if i + 1 >= len(extras):
            raise ConfigError(f"flag --{key} needs a value")
        raw = extras[i + 1]
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw
        i += 2
    return params


def _merged_config(args, extras: list[str]) -> dict:
    config = _load_json(args.config) if args.config else {}
    experiment = args.experiment or config.get("experiment")
    if not experiment:
        raise ConfigError("no experiment given (positional argument or config)")
    if experiment not in EXPERIMENTS:
        raise ConfigError(
            f"unknown experiment {experiment!r}; choose from {sorted(EXPERIMENTS)}"
        )
    params = dict(config.get("parameters", {}))
    params.update(_parse_extra_params(extras))
    merged = {
        "experiment": experiment,
        "parameters": params,
        "seed": args.seed if args.seed is not None else config.get("seed"),
        "format": args.format or config.get("format", "csv"),
        "output_path": args.out or config.get("output_path"),
    }
    if "sweep" in config:
        merged["sweep"] = config["sweep"]
        merged["max_points"] = config.get("max_points", DEFAULT_SWEEP_CAP)
    if merged["format"] not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {merged['format']!r}")
    if not merged["output_path"]:
        raise ConfigError("no output path given (--out or config output_path)")
    return merged


def _write_manifest(data_path: Path, config: dict, wall_time: float) -> None:
    manifest = {
        "config": config,
        "version": __version__,
        "timing": {
            "wall_time_s": wall_time,
            "created_utc": datetime.now(timezone.utc).isoformat(),
        },
    }
    serialize.write_json(data_path.parent / "manifest.json", manifest)


def _write_artifact(config: dict, header, rows, sidecars: dict, wall_time: float) -> None:
    out = Path(config["output_path"])
    if config["format"] == "json":
        payload = {"columns": list(header), "rows": [list(r) for r in rows]}
        payload.update(sidecars)
        serialize.write_json(out, payload)
    else:
        serialize.write_csv(out, header, rows)
        for name, payload in sidecars.items():
            serialize.write_json(f"{out}.{name}.json", payload)
    _write_manifest(out, config, wall_time)


def _cmd_run(args, extras: list[str]) -> int:
    config = _merged_config(args, extras)
    exp = EXPERIMENTS[config["experiment"]]
    params = resolve_params(exp, config["parameters"])
    if exp.needs_seed and config["seed"] is None:
        raise ConfigError(f"experiment {exp.name!r} is stochastic and needs a seed")
    started = time.perf_counter()
    header, rows, sidecars = exp.run(params, config["seed"])
    _write_artifact(config, header, rows, sidecars, time.perf_counter() - started)
    print(config["output_path"])
    return 0


def _cmd_sweep(args, extras: list[str]) -> int:
    config = _merged_config(args, extras)
    exp = EXPERIMENTS[config["experiment"]]
    sweep = config.get("sweep")
    if not sweep or not isinstance(sweep, dict):
        raise ConfigError("sweep config needs a non-empty 'sweep' object of ranges")
    for key, values in sweep.items():
        if key not in exp.sweepable:
            raise ConfigError(
                f"parameter {key!r} is not sweepable for {exp.name!r} "
                f"(allowed: {list(exp.sweepable)})"
            )
        if not isinstance(values, list) or not values:
            raise ConfigError(f"sweep range for {key!r} must be a non-empty list")
    keys = sorted(sweep)
    points = list(itertools.product(*(sweep[k] for k in keys)))
    cap = config.get("max_points", DEFAULT_SWEEP_CAP)
    if len(points) > cap:
        raise ConfigError(f"sweep has {len(points)} points, cap is {cap}")
    base = dict(config["parameters"])
    known = {p.name for p in exp.params} | {a for p in exp.params for a in p.aliases}
    for key in base:
        if key not in known:
            raise ConfigError(f"unknown parameter {key!r} for experiment {exp.name!r}")
    if exp.needs_seed and config["seed"] is None:
        raise ConfigError(f"experiment {exp.name!r} is stochastic and needs a seed")
    # resolve once with the first point so config errors surface before work starts
    resolve_params(exp, {**base, **dict(zip(keys, points[0]))})
    started = time.perf_counter()

    def evaluate(values):
        params = resolve_params(exp, {**base, **dict(zip(keys, values))})
        return values, exp.point(params, config["seed"])

    if args.jobs and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(evaluate, points))
    else:
        results = [evaluate(v) for v in points]
    results.sort(key=lambda item: item[0])  # canonical order, scheduler-independent
    header = tuple(keys) + exp.point_columns
    rows = [tuple(values) + tuple(out) for values, out in results]
    _write_artifact(config, header, rows, {}, time.perf_counter() - started)
    print(config["output_path"])
    return 0


def _cmd_verify(args) -> int:
    criteria = None
    if args.criteria:
        try:
            criteria = [int(tok) for tok in args.criteria.split(",") if tok.strip()]
        except ValueError:
            raise ConfigError(f"--criteria wants comma-separated integers, got {args.criteria!r}")
    overrides = _load_json(args.config) if args.config else {}
    try:
        results = acceptance.run_acceptance(criteria=criteria, overrides=overrides)
    except ValueError as exc:
        raise ConfigError(str(exc))
    print(acceptance.render_table(results))
    total = sum(r.seconds for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed "
          f"in {total:.1f}s", file=sys.stderr)
    if args.out:
        serialize.write_csv(
            args.out,
            ("criterion", "name", "status", "detail"),
            [
                (r.index, r.name, "pass" if r.passed else "fail", r.detail)
                for r in results
            ],
        )
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermolimit",
        description="Batch experiments for the large-N classicality models.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="data file path (overrides config)")
    common.add_argument("--seed", type=int, help="RNG seed (overrides config)")
    common.add_argument("--format", choices=("csv", "json"), help="data format")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers")

    p_run = sub.add_parser("run", parents=[common], help="run one experiment")
    p_run.add_argument(
        "experiment", nargs="?", choices=sorted(EXPERIMENTS), help="experiment name"
    )

    p_sweep = sub.add_parser("sweep", parents=[common], help="run a parameter grid")
    p_sweep.add_argument(
        "experiment", nargs="?", choices=sorted(EXPERIMENTS), help="experiment name"
    )

    p_verify = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p_verify.add_argument("--criteria", help="comma-separated criterion numbers")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    if argv and argv[0] in ("run", "sweep"):
        args, extras = parser.parse_known_args(argv)
    else:
        args, extras = parser.parse_args(argv), []
    try:
        if args.command == "run":
            return _cmd_run(args, extras)
        if args.command == "sweep":
            return _cmd_sweep(args, extras)
        return _cmd_verify(args)
    except ConfigError as exc:
        return _fail_usage(str(exc))
    except SimulationError as exc:
        return _fail_numeric(exc)


if __name__ == "__main__":
    sys.exit(main())
