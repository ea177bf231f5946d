"""Config-driven experiment harness.

One run = one YAML config = one experiment; identical configs produce
byte-identical outputs.  Subcommands mirror the experiment kinds plus
``validate`` (parse and pre-flight only).  Exit codes: 0 success, 2
validation error, 3 numeric failure, 4 completed run whose certified
inequality chain failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from . import doubling as dbl
from . import grid as gridmod
from . import operators as ops
from . import reports
from . import spaces
from . import witness as wit
from .errors import NumericFailure, ValidationError
from .exprs import evaluate_expression

__all__ = ["RunConfig", "load_config", "run", "emit", "main"]

EXPERIMENT_KINDS = ("norm-lb", "kappa-lb", "doubling-scan", "tau-scan", "space-check")

#: Config-level floor on the variable exponent (protects the bisection and
#: the conjugate field from blow-up; stricter than the type's p > 1).
CONFIG_P_MIN = 1.05


@dataclass
class RunConfig:
    """A parsed and pre-flighted run: every referenced object is built and
    every precondition of the invoked operations has been checked."""

    raw: dict
    kind: str
    grid: gridmod.Grid
    space: spaces.SpaceSpec
    symbol: ops.Symbol | None
    params: dict
    out_dir: str
    formats: str
    seed: int

    @property
    def echo(self) -> str:
        return yaml.safe_dump(self.raw, sort_keys=True, default_flow_style=False)


def _schema() -> dict:
    with resources.files("whlab.schema").joinpath("runconfig.schema.json").open() as fh:
        return json.load(fh)


def load_config(path) -> dict:
    """Read the YAML config and validate it against the shipped schema."""
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ValidationError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("config must be a mapping")
    import jsonschema
    try:
        jsonschema.validate(raw, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<top level>"
        raise ValidationError(f"config schema violation at {where}: {exc.message}") from exc
    return raw


def _build_grid(block: dict) -> gridmod.Grid:
    return gridmod.make_grid(block["n"], block["half_width"], block["points"])


def _build_exponent(block: dict, grid: gridmod.Grid) -> spaces.ExponentField:
    kind = block["kind"]
    if kind == "constant":
        if "value" not in block:
            raise ValidationError("constant exponent needs 'value'")
        field = spaces.constant_exponent(grid, block["value"])
    elif kind == "piecewise":
        for key in ("left", "right"):
            if key not in block:
                raise ValidationError(f"piecewise exponent needs '{key}'")
        field = spaces.step_exponent(grid, block["left"], block["right"],
                                     block.get("edge", 0.0), block.get("width"))
    else:
        names = _coord_names(grid)
        vals = evaluate_expression(block["expr"], **names)
        field = spaces.exponent_from_values(grid, np.real(vals))
    if field.p_min < CONFIG_P_MIN:
        raise ValidationError(
            f"config exponents must satisfy p_min >= {CONFIG_P_MIN} "
            f"(got {field.p_min:g})")
    return field


def _coord_names(grid: gridmod.Grid) -> dict:
    mesh = grid.coords()
    if grid.n == 1:
        return {"x": mesh[0], "r": np.abs(mesh[0])}
    return {"x1": mesh[0], "x2": mesh[1], "r": np.hypot(mesh[0], mesh[1])}


def _freq_names(grid: gridmod.Grid) -> dict:
    mesh = grid.freq_coords()
    if grid.n == 1:
        return {"xi": mesh[0]}
    return {"xi1": mesh[0], "xi2": mesh[1]}


def _build_weight(block: dict, grid: gridmod.Grid) -> spaces.Weight:
    kind = block["kind"]
    if kind == "constant":
        return spaces.constant_weight(grid, block.get("value", 1.0))
    if kind == "power":
        if "gamma" not in block:
            raise ValidationError("power weight needs 'gamma'")
        return spaces.power_weight(grid, block["gamma"])
    vals = evaluate_expression(block["expr"], **_coord_names(grid))
    return spaces.weight_from_values(grid, np.real(np.broadcast_to(vals, grid.shape)))


def _build_domain(block: dict, grid: gridmod.Grid) -> gridmod.DomainMask:
    kind = block["kind"]
    if kind == "full":
        return gridmod.full_space(grid)
    if kind == "halfline":
        return gridmod.half_line(grid)
    for key in ("alpha1", "alpha2"):
        if key not in block:
            raise ValidationError(f"cone domain needs '{key}'")
    return gridmod.sector(grid, block["alpha1"], block["alpha2"])


def _build_symbol(block: dict, grid: gridmod.Grid) -> ops.Symbol:
    kind = block["kind"]
    if kind == "constant":
        if "value" not in block:
            raise ValidationError("constant symbol needs 'value'")
        return ops.constant_symbol(grid, block["value"])
    if kind == "gaussian":
        center = block.get("center", 0.0 if grid.n == 1 else [0.0, 0.0])
        return ops.gaussian_symbol(grid, center, block.get("sigma", 1.0),
                                   block.get("peak", 1.0))
    if kind == "smoothed-step":
        return ops.smoothed_step_symbol(grid, block.get("edge", 0.0),
                                        block.get("width"),
                                        block.get("low", 0.0),
                                        block.get("high", 1.0))
    vals = evaluate_expression(block["expr"], **_freq_names(grid))
    return ops.symbol_from_values(grid, vals)


def _require(params: dict, keys, kind: str):
    for key in keys:
        if key not in params:
            raise ValidationError(f"experiment kind {kind!r} needs '{key}'")


def _preflight_experiment(cfg: "RunConfig") -> None:
    """Check every precondition of the invoked operations before running."""
    params = cfg.params
    kind = cfg.kind
    omega = cfg.space.domain
    if kind in ("norm-lb", "kappa-lb") and cfg.symbol is None:
        raise ValidationError(f"experiment kind {kind!r} needs a symbol block")
    if kind == "norm-lb":
        _require(params, ("rho", "delta_schedule"), kind)
        rho = float(params["rho"])
        if rho <= 1.0:
            raise ValidationError("rho must exceed 1")
        deltas = [float(d) for d in params["delta_schedule"]]
        if not deltas or any(d <= 0 for d in deltas):
            raise ValidationError("delta schedule must be positive")
        if not all(b < a for a, b in zip(deltas, deltas[1:])):
            raise ValidationError("delta schedule must be strictly decreasing")
        placements = 0
        for d in deltas:
            try:
                wit.place_witness_center(omega, d, rho, params.get("ray"))
                placements += 1
            except ValidationError:
                pass
        if placements == 0:
            raise ValidationError(
                "no delta in the schedule admits a witness placement on this grid")
    elif kind == "kappa-lb":
        _require(params, ("rho", "theta", "lambda", "m"), kind)
        rho = float(params["rho"])
        if rho <= 1.0:
            raise ValidationError("rho must exceed 1")
        family = dbl.separated_sequence(omega, rho, float(params["theta"]),
                                        float(params["lambda"]), int(params["m"]),
                                        params.get("y0"))
        eta = params.get("eta")
        if eta is None:
            _, eta_vec = ops.argmax_freq_node(cfg.symbol)
        else:
            _, eta_vec = ops.nearest_freq_node(cfg.grid, eta)
        for y, radius in family:
            wit.WitnessParams(1.0 / radius, tuple(eta_vec), y, rho, omega)
        params["_family"] = family
    elif kind == "doubling-scan":
        _require(params, ("tau",), kind)
        tau = float(params["tau"])
        if tau <= 1.0:
            raise ValidationError(
                "tau must exceed 1 for a doubling ratio (weak doubling needs tau > 1)")
        schedule = []
        if "balls" in params:
            for entry in params["balls"]:
                schedule.append((entry["y"], float(entry["r"])))
        if all(k in params for k in ("theta", "lambda", "m")):
            schedule.extend(dbl.separated_sequence(
                omega, tau, float(params["theta"]), float(params["lambda"]),
                int(params["m"]), params.get("y0")))
        if not schedule:
            raise ValidationError(
                "doubling-scan needs 'balls' and/or family parameters "
                "(theta, lambda, m)")
        for y, radius in schedule:
            dbl_ball = gridmod.Ball(tuple(gridmod.as_point(y, cfg.grid.n)),
                                    tau * float(radius))
            if not dbl._contained(omega, dbl_ball):
                raise ValidationError(
                    f"inflated ball at y={y}, R={radius} leaves the box or the domain")
        params["_schedule"] = schedule
    elif kind == "tau-scan":
        _require(params, ("tau_list", "theta", "lambda", "m"), kind)
        taus = [float(t) for t in params["tau_list"]]
        if not taus or any(t <= 1.0 for t in taus):
            raise ValidationError("every tau in the scan must exceed 1")
        if not all(b < a for a, b in zip(taus, taus[1:])):
            raise ValidationError("tau list must be strictly decreasing toward 1")
        dbl.separated_sequence(omega, max(taus), float(params["theta"]),
                               float(params["lambda"]), int(params["m"]),
                               params.get("y0"))
    elif kind == "space-check":
        trials = int(params.get("trials", 100))
        if trials < 1:
            raise ValidationError("space-check needs at least one trial")
        params["trials"] = trials


def preflight(raw: dict) -> RunConfig:
    """Build every referenced object and validate all preconditions."""
    grid = _build_grid(raw["grid"])
    space_block = raw["space"]
    exponent = _build_exponent(space_block["exponent"], grid)
    weight = _build_weight(space_block["weight"], grid)
    domain = _build_domain(space_block["domain"], grid)
    space = spaces.SpaceSpec(grid, exponent, weight, domain)
    symbol = _build_symbol(raw["symbol"], grid) if "symbol" in raw else None
    output = raw.get("output", {})
    cfg = RunConfig(
        raw=raw,
        kind=raw["experiment"]["kind"],
        grid=grid,
        space=space,
        symbol=symbol,
        params={k: v for k, v in raw["experiment"].items() if k != "kind"},
        out_dir=output.get("directory", "out"),
        formats=output.get("formats", "both"),
        seed=int(raw.get("seed", 0)),
    )
    _preflight_experiment(cfg)
    return cfg


def run(cfg: RunConfig):
    """Execute the experiment; returns (artifacts, chains_passed)."""
    omega = cfg.space.domain
    params = cfg.params
    echo = cfg.echo
    artifacts = {}
    ok = True
    if cfg.kind == "norm-lb":
        report = wit.norm_lowerbound_experiment(
            cfg.symbol, omega, cfg.space, float(params["rho"]),
            [float(d) for d in params["delta_schedule"]],
            params.get("eta"), params.get("ray"))
        artifacts["report.txt"] = reports.experiment_text(report, echo)
        artifacts["witnesses.csv"] = reports.witness_csv(report, cfg.grid.n)
        ok = report.chains_passed
    elif cfg.kind == "kappa-lb":
        report = wit.kuratowski_experiment(
            cfg.symbol, omega, cfg.space, float(params["rho"]),
            params["_family"], params.get("eta"))
        artifacts["report.txt"] = reports.experiment_text(report, echo)
        artifacts["witnesses.csv"] = reports.witness_csv(report, cfg.grid.n)
        artifacts["pairwise.csv"] = reports.pairwise_csv(report)
        ok = report.chains_passed
    elif cfg.kind == "doubling-scan":
        report = dbl.weak_doubling_scan(cfg.space, float(params["tau"]),
                                        params["_schedule"])
        artifacts["report.txt"] = reports.doubling_text(report, echo)
        artifacts["doubling.csv"] = reports.doubling_csv(report, cfg.grid.n)
    elif cfg.kind == "tau-scan":
        rows = dbl.tau_scan(cfg.space, [float(t) for t in params["tau_list"]],
                            float(params["theta"]), float(params["lambda"]),
                            int(params["m"]), params.get("y0"))
        artifacts["report.txt"] = reports.tau_scan_text(rows, echo)
        artifacts["tau_scan.csv"] = reports.tau_scan_csv(rows)
    elif cfg.kind == "space-check":
        results = spaces.axiom_check(cfg.space, params.get("trials", 100), cfg.seed)
        artifacts["report.txt"] = reports.space_check_text(results, echo)
        artifacts["checks.csv"] = reports.space_check_csv(results)
        ok = all(r.passed for r in results)
    return artifacts, ok


def emit(artifacts: dict, formats: str, out_dir) -> list:
    """Write the rendered artifacts; deterministic bytes for a fixed report."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in sorted(artifacts.items()):
        is_csv = name.endswith(".csv")
        if is_csv and formats == "text":
            continue
        if not is_csv and formats == "csv":
            continue
        path = out / name
        path.write_text(content)
        written.append(path)
    return written


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whlab",
        description="Config-driven lower-bound experiments for Wiener-Hopf "
                    "type operators on weighted variable Lebesgue spaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENT_KINDS + ("validate",):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--format", default=None, choices=["csv", "text", "both"])
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        raw = load_config(args.config)
        cfg = preflight(raw)
        if args.command != "validate" and cfg.kind != args.command:
            raise ValidationError(
                f"subcommand {args.command!r} does not match config "
                f"experiment kind {cfg.kind!r}")
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except NumericFailure as exc:
        print(f"numeric failure during validation: {exc}", file=sys.stderr)
        return 3
    if args.command == "validate":
        print(f"config OK: {cfg.kind}")
        return 0
    try:
        artifacts, ok = run(cfg)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    written = emit(artifacts, args.format or cfg.formats, args.out or cfg.out_dir)
    for path in written:
        print(f"wrote {path}")
    if not ok:
        print("certified inequality chain FAILED; see the report ledger",
              file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
