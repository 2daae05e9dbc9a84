"""Command-line front end: simulations, sweeps, fits, and law predictions.

Subcommands: exact, induced, generalized, sweep, fit, predict.  Every run is
driven by a RunConfig assembled from an optional JSON config file plus
command-line overrides; identical configs produce byte-identical outputs.

Exit codes: 0 success, 2 config error, 3 simulation error, 4 fit
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .equilibrium import DEFAULT_AMP_TOL, DEFAULT_WINDOW, detect_equilibrium
from .errors import (
    DegenerateParametersError,
    FitNonConvergenceError,
    IntegrationUnstableError,
    ParameterCollapseError,
)
from .exact import ExactPropagator, ModelParams, exact_mean_values
from .generalized import IntegratorConfig, integrate_generalized
from .induced import RuleSchedule, run_induced
from .lab import (
    SweepSpec,
    converged_points,
    default_integrator_config,
    fit_tanh,
    predict_equilibrium,
    sweep_equilibria,
)
from .trajectory import Trajectory

MODES = ("exact", "induced", "generalized", "sweep", "fit", "predict")

_SECTION_RULES = {
    # mode: (required sections, allowed sections)
    "exact": ({"params"}, {"params", "integrator"}),
    "induced": ({"params", "schedule"}, {"params", "schedule"}),
    "generalized": ({"params"}, {"params", "integrator"}),
    "sweep": ({"sweep"}, {"sweep", "integrator"}),
    "fit": (set(), {"sweep", "integrator"}),
    "predict": ({"params"}, {"params"}),
}


class CliConfigError(Exception):
    """Configuration problem; the message names the offending field."""


@dataclass
class RunConfig:
    mode: str
    params: ModelParams | None = None
    schedule: RuleSchedule | None = None
    integrator: IntegratorConfig | None = None
    sweep: SweepSpec | None = None
    output_path: str | None = None
    format: str = "csv"

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise CliConfigError("config root must be a JSON object")
        known = {
            "mode", "params", "schedule", "integrator", "sweep",
            "output_path", "format",
        }
        for key in raw:
            if key not in known:
                raise CliConfigError(f"{key}: unknown config key")
        mode = raw.get("mode")
        if mode not in MODES:
            raise CliConfigError(
                f"mode: must be one of {', '.join(MODES)}, got {mode!r}"
            )
        fmt = raw.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise CliConfigError(f"format: must be csv or json, got {fmt!r}")
        cfg = cls(mode=mode, output_path=raw.get("output_path"), format=fmt)
        if "params" in raw:
            cfg.params = _params_from_dict(raw["params"])
        if "schedule" in raw:
            cfg.schedule = _schedule_from_dict(raw["schedule"])
        if "integrator" in raw:
            cfg.integrator = _integrator_from_dict(raw["integrator"])
        if "sweep" in raw:
            cfg.sweep = _sweep_from_dict(raw["sweep"])
        return cfg

    def to_dict(self) -> dict:
        out: dict = {"mode": self.mode, "format": self.format}
        if self.output_path is not None:
            out["output_path"] = self.output_path
        if self.params is not None:
            out["params"] = {
                "omega1": self.params.omega1,
                "omega2": self.params.omega2,
                "lambda": self.params.lam,
                "alpha1": self.params.alpha1,
                "alpha2": self.params.alpha2,
                "n1": self.params.n1,
                "n2": self.params.n2,
            }
        if self.schedule is not None:
            out["schedule"] = {
                "tau": self.schedule.tau,
                "horizon": self.schedule.horizon,
                "sample_step": self.schedule.sample_step,
            }
        if self.integrator is not None:
            out["integrator"] = {
                "step": self.integrator.step,
                "horizon": self.integrator.horizon,
                "sample_stride": self.integrator.sample_stride,
            }
        if self.sweep is not None:
            out["sweep"] = {
                "omega1": self.sweep.omega1,
                "omega2_grid": [float(w) for w in self.sweep.omega2_grid],
                "lambda": self.sweep.lam,
                "alpha1": self.sweep.alpha1,
                "alpha2": self.sweep.alpha2,
                "n1": self.sweep.n1,
                "n2": self.sweep.n2,
            }
        return out

    def validate_sections(self) -> None:
        required, allowed = _SECTION_RULES[self.mode]
        present = {
            name
            for name in ("params", "schedule", "integrator", "sweep")
            if getattr(self, name) is not None
        }
        for name in sorted(present - allowed):
            raise CliConfigError(f"{name}: section not applicable to mode {self.mode}")
        for name in sorted(required - present):
            raise CliConfigError(f"{name}: section required for mode {self.mode}")


def _number(section: str, data: dict, key: str, default=None):
    if key not in data:
        if default is None:
            raise CliConfigError(f"{section}.{key}: required field missing")
        return default
    value = data[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise CliConfigError(f"{section}.{key}: expected a number, got {value!r}")
    return value


def _check_keys(section: str, data: dict, allowed: set[str]) -> None:
    if not isinstance(data, dict):
        raise CliConfigError(f"{section}: expected a JSON object")
    for key in data:
        if key not in allowed:
            raise CliConfigError(f"{section}.{key}: unknown field")


def _params_from_dict(data: dict) -> ModelParams:
    _check_keys(
        "params", data,
        {"omega1", "omega2", "lambda", "alpha1", "alpha2", "n1", "n2"},
    )
    try:
        return ModelParams(
            omega1=_number("params", data, "omega1"),
            omega2=_number("params", data, "omega2"),
            lam=_number("params", data, "lambda"),
            alpha1=_number("params", data, "alpha1", 0.0),
            alpha2=_number("params", data, "alpha2", 0.0),
            n1=int(_number("params", data, "n1", 1)),
            n2=int(_number("params", data, "n2", 0)),
        )
    except ValueError as err:
        raise CliConfigError(f"params: {err}") from err


def _schedule_from_dict(data: dict) -> RuleSchedule:
    _check_keys("schedule", data, {"tau", "horizon", "sample_step"})
    try:
        return RuleSchedule(
            tau=_number("schedule", data, "tau"),
            horizon=_number("schedule", data, "horizon"),
            sample_step=(
                _number("schedule", data, "sample_step")
                if "sample_step" in data
                else None
            ),
        )
    except ValueError as err:
        raise CliConfigError(f"schedule: {err}") from err


def _integrator_from_dict(data: dict) -> IntegratorConfig:
    _check_keys("integrator", data, {"step", "horizon", "sample_stride"})
    try:
        return IntegratorConfig(
            step=_number("integrator", data, "step", 1e-3),
            horizon=_number("integrator", data, "horizon", 500.0),
            sample_stride=int(_number("integrator", data, "sample_stride", 100)),
        )
    except ValueError as err:
        raise CliConfigError(f"integrator: {err}") from err


def _sweep_from_dict(data: dict) -> SweepSpec:
    _check_keys(
        "sweep", data,
        {
            "omega1", "omega2_grid", "omega2_start", "omega2_stop",
            "omega2_count", "lambda", "alpha1", "alpha2", "n1", "n2",
        },
    )
    if "omega2_grid" in data:
        grid = data["omega2_grid"]
        if not isinstance(grid, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in grid
        ):
            raise CliConfigError("sweep.omega2_grid: expected a list of numbers")
        grid = np.asarray(grid, dtype=float)
    else:
        start = _number("sweep", data, "omega2_start", 0.1)
        stop = _number("sweep", data, "omega2_stop", 1.9)
        count = int(_number("sweep", data, "omega2_count", 37))
        if count < 1:
            raise CliConfigError("sweep.omega2_count: must be >= 1")
        grid = np.linspace(start, stop, count)
    try:
        return SweepSpec(
            lam=_number("sweep", data, "lambda"),
            alpha1=_number("sweep", data, "alpha1"),
            alpha2=_number("sweep", data, "alpha2"),
            omega1=_number("sweep", data, "omega1", 1.0),
            omega2_grid=grid,
            n1=int(_number("sweep", data, "n1", 1)),
            n2=int(_number("sweep", data, "n2", 0)),
        )
    except ValueError as err:
        raise CliConfigError(f"sweep: {err}") from err


# ---------------------------------------------------------------------------
# argument parsing and flag overlay


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="output file path")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--omega1", type=float)
    common.add_argument("--omega2", type=float)
    common.add_argument("--lambda", dest="lam", type=float)
    common.add_argument("--alpha1", type=float)
    common.add_argument("--alpha2", type=float)
    common.add_argument("--tau", type=float)
    common.add_argument("--horizon", type=float)
    common.add_argument("--step", type=float)
    common.add_argument(
        "--seed-state", help="initial occupation labels as 'n1,n2'"
    )

    parser = argparse.ArgumentParser(
        prog="twomode",
        description="Two-mode fermionic dynamics: simulations, sweeps, "
        "fits, and equilibrium-law predictions.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    sub.add_parser("exact", parents=[common],
                   help="closed-form evolution of the plain model")
    sub.add_parser("induced", parents=[common],
                   help="stepwise rule-adapted dynamics")
    sub.add_parser("generalized", parents=[common],
                   help="continuous-limit self-adaptive dynamics")
    sub.add_parser("sweep", parents=[common],
                   help="equilibrium sweep over an omega2 grid")
    fit = sub.add_parser("fit", parents=[common],
                         help="tanh fit of equilibrium-vs-gap data")
    fit.add_argument("--data", help="CSV of (x, y) or sweep output to fit")
    sub.add_parser("predict", parents=[common],
                   help="closed-form equilibrium prediction")
    return parser


def _parse_seed_state(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliConfigError(f"--seed-state: expected 'n1,n2', got {text!r}")
    try:
        n1, n2 = (int(p.strip()) for p in parts)
    except ValueError as err:
        raise CliConfigError(f"--seed-state: {err}") from err
    return n1, n2


def _overlay_flags(raw: dict, args: argparse.Namespace) -> dict:
    """Apply command-line overrides onto the raw config dict."""
    mode = raw["mode"]
    param_modes = {"exact", "induced", "generalized", "predict"}
    sweep_modes = {"sweep", "fit"}

    def section(name):
        return raw.setdefault(name, {})

    if args.out is not None:
        raw["output_path"] = args.out
    if args.format is not None:
        raw["format"] = args.format

    scalar_flags = [
        ("omega1", args.omega1),
        ("omega2", args.omega2),
        ("lambda", args.lam),
        ("alpha1", args.alpha1),
        ("alpha2", args.alpha2),
    ]
    for key, value in scalar_flags:
        if value is None:
            continue
        if mode in param_modes:
            section("params")[key] = value
        elif key == "omega2":
            raise CliConfigError(
                "--omega2: not applicable to sweep/fit modes (the omega2 grid "
                "comes from the sweep section)"
            )
        else:
            section("sweep")[key] = value
    if args.seed_state is not None:
        n1, n2 = _parse_seed_state(args.seed_state)
        target = "params" if mode in param_modes else "sweep"
        section(target)["n1"] = n1
        section(target)["n2"] = n2
    if args.tau is not None:
        if mode != "induced":
            raise CliConfigError("--tau: only applicable to induced mode")
        section("schedule")["tau"] = args.tau
    if args.horizon is not None:
        if mode == "induced":
            section("schedule")["horizon"] = args.horizon
        elif mode in sweep_modes or mode == "generalized" or mode == "exact":
            section("integrator")["horizon"] = args.horizon
        else:
            raise CliConfigError("--horizon: not applicable to predict mode")
    if args.step is not None:
        if mode == "induced":
            section("schedule")["sample_step"] = args.step
        elif mode in sweep_modes or mode == "generalized" or mode == "exact":
            section("integrator")["step"] = args.step
        else:
            raise CliConfigError("--step: not applicable to predict mode")
    return raw


def load_run_config(args: argparse.Namespace) -> RunConfig:
    raw: dict = {"mode": args.mode}
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as err:
            raise CliConfigError(f"--config: {err}") from err
        except json.JSONDecodeError as err:
            raise CliConfigError(
                f"--config: invalid JSON at line {err.lineno}, column {err.colno}: "
                f"{err.msg}"
            ) from err
        if not isinstance(raw, dict):
            raise CliConfigError("--config: root must be a JSON object")
        raw = dict(raw)
        raw_mode = raw.setdefault("mode", args.mode)
        if raw_mode != args.mode:
            raise CliConfigError(
                f"mode: config file says {raw_mode!r} but the subcommand is "
                f"{args.mode!r}"
            )
    raw = _overlay_flags(raw, args)
    cfg = RunConfig.from_dict(raw)
    cfg.validate_sections()
    return cfg


# ---------------------------------------------------------------------------
# output helpers


def _fmt(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    lines = ["time,n1,n2,omega1_eff,omega2_eff,coupling_im"]
    for i in range(len(traj)):
        lines.append(",".join(_fmt(col[i]) for col in (
            traj.times, traj.n1, traj.n2,
            traj.omega1_eff, traj.omega2_eff, traj.coupling_im,
        )))
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def trajectory_to_dict(traj: Trajectory) -> dict:
    return {
        "times": traj.times.tolist(),
        "n1": traj.n1.tolist(),
        "n2": traj.n2.tolist(),
        "omega1_eff": traj.omega1_eff.tolist(),
        "omega2_eff": traj.omega2_eff.tolist(),
        "coupling_im": traj.coupling_im.tolist(),
    }


def write_sweep_csv(path: str, points) -> None:
    lines = ["x,n1_eq,status,settle_time"]
    for p in points:
        lines.append(
            f"{_fmt(p.x)},{_fmt(p.n1_eq)},{p.status},{_fmt(p.settle_time)}"
        )
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_json(path: str | None, payload: dict | list) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_trajectory(cfg: RunConfig, traj: Trajectory, extra: dict | None = None):
    if cfg.output_path is None:
        raise CliConfigError("output_path: required for this mode")
    if cfg.format == "csv":
        write_trajectory_csv(cfg.output_path, traj)
    else:
        payload = {"trajectory": trajectory_to_dict(traj)}
        if extra:
            payload.update(extra)
        _write_json(cfg.output_path, payload)


# ---------------------------------------------------------------------------
# mode handlers


def _run_exact(cfg: RunConfig, args) -> int:
    params = cfg.params
    integ = cfg.integrator or IntegratorConfig(step=0.05, horizon=150.0)
    n_steps = max(1, round(integ.horizon / integ.step))
    t = np.arange(n_steps + 1) * integ.step
    n1, n2 = exact_mean_values(params, t)
    prop = ExactPropagator(params.omega1, params.omega2, params.lam)
    p11, p12, p21, p22 = prop.coefficients(t)
    coupling_im = 2.0 * (
        (np.conj(p11) * p21).imag * params.n1
        + (np.conj(p12) * p22).imag * params.n2
    )
    traj = Trajectory(
        times=t,
        n1=n1,
        n2=n2,
        omega1_eff=np.full_like(t, params.omega1),
        omega2_eff=np.full_like(t, params.omega2),
        coupling_im=coupling_im,
    )
    _write_trajectory(cfg, traj)
    return 0


def _run_induced(cfg: RunConfig, args) -> int:
    try:
        traj = run_induced(cfg.params, cfg.schedule)
    except ParameterCollapseError as err:
        if err.partial is not None and cfg.output_path:
            _write_trajectory(cfg, err.partial)
            print(
                f"simulation error: {err} (partial trajectory written to "
                f"{cfg.output_path})",
                file=sys.stderr,
            )
        else:
            print(f"simulation error: {err}", file=sys.stderr)
        return 3
    _write_trajectory(cfg, traj)
    return 0


def _equilibrium_to_dict(result) -> dict:
    return {
        "status": result.status,
        "converged": result.converged,
        "periodic": result.periodic,
        "n1_eq": result.n1_eq,
        "settle_time": result.settle_time,
        "time_average": result.time_average,
        "period": result.period,
    }


def _run_generalized(cfg: RunConfig, args) -> int:
    params = cfg.params
    integ = cfg.integrator or default_integrator_config(params)
    try:
        traj = integrate_generalized(params, integ)
    except IntegrationUnstableError as err:
        if err.partial is not None and cfg.output_path:
            _write_trajectory(cfg, err.partial)
            print(
                f"simulation error: {err} (partial trajectory written to "
                f"{cfg.output_path})",
                file=sys.stderr,
            )
        else:
            print(f"simulation error: {err}", file=sys.stderr)
        return 3
    window = min(DEFAULT_WINDOW, traj.horizon / 2.0)
    result = detect_equilibrium(traj, amp_tol=DEFAULT_AMP_TOL, window=window)
    summary = _equilibrium_to_dict(result)
    _write_trajectory(cfg, traj, extra={"equilibrium": summary})
    print(json.dumps(summary, sort_keys=True))
    return 0


def _run_sweep(cfg: RunConfig, args) -> int:
    points = sweep_equilibria(cfg.sweep, cfg.integrator)
    if cfg.output_path is None:
        raise CliConfigError("output_path: required for sweep mode")
    if cfg.format == "csv":
        write_sweep_csv(cfg.output_path, points)
    else:
        _write_json(cfg.output_path, [
            {
                "x": p.x,
                "omega2": p.omega2,
                "status": p.status,
                "n1_eq": p.n1_eq,
                "settle_time": p.settle_time,
                "time_average": p.time_average,
            }
            for p in points
        ])
    return 0


def _read_fit_data(path: str) -> list[tuple[float, float]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
    except OSError as err:
        raise CliConfigError(f"--data: {err}") from err
    if not lines:
        raise CliConfigError("--data: file is empty")
    header = [name.strip().lower() for name in lines[0].split(",")]
    if "x" not in header:
        raise CliConfigError("--data: expected a header containing 'x'")
    x_col = header.index("x")
    if "n1_eq" in header:
        y_col = header.index("n1_eq")
    elif "y" in header:
        y_col = header.index("y")
    else:
        raise CliConfigError("--data: expected a 'y' or 'n1_eq' column")
    status_col = header.index("status") if "status" in header else None
    pairs: list[tuple[float, float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [cell.strip() for cell in line.split(",")]
        if status_col is not None and cells[status_col] != "converged":
            continue
        if not cells[y_col]:
            continue
        try:
            pairs.append((float(cells[x_col]), float(cells[y_col])))
        except (ValueError, IndexError) as err:
            raise CliConfigError(f"--data: line {lineno}: {err}") from err
    return pairs


def _run_fit(cfg: RunConfig, args) -> int:
    data_path = getattr(args, "data", None)
    if data_path:
        pairs = _read_fit_data(data_path)
    elif cfg.sweep is not None:
        points = sweep_equilibria(cfg.sweep, cfg.integrator)
        xs, ys = converged_points(points)
        pairs = list(zip(xs, ys))
    else:
        raise CliConfigError(
            "sweep: section required for fit mode when --data is not given"
        )
    c0 = 1.0 / (2.0 * cfg.sweep.lam) if cfg.sweep is not None else None
    try:
        fit = fit_tanh(pairs, c0=c0)
    except ValueError as err:
        raise CliConfigError(f"fit data: {err}") from err
    payload = {
        "a": fit.a,
        "b": fit.b,
        "c": fit.c,
        "rms_residual": fit.rms_residual,
        "n_points": fit.n_points,
        "lambda": cfg.sweep.lam if cfg.sweep is not None else None,
        "alpha1": cfg.sweep.alpha1 if cfg.sweep is not None else None,
        "alpha2": cfg.sweep.alpha2 if cfg.sweep is not None else None,
    }
    _write_json(cfg.output_path, payload)
    return 0


def _run_predict(cfg: RunConfig, args) -> int:
    law = predict_equilibrium(cfg.params)
    payload = {
        "mu": law.mu,
        "predicted_n1_eq": law.predicted_n1_eq,
        "law_variant": law.law_variant,
        "periodic_case": law.periodic_case,
        "omega1": cfg.params.omega1,
        "omega2": cfg.params.omega2,
        "lambda": cfg.params.lam,
        "alpha1": cfg.params.alpha1,
        "alpha2": cfg.params.alpha2,
    }
    _write_json(cfg.output_path, payload)
    return 0


_DISPATCH = {
    "exact": _run_exact,
    "induced": _run_induced,
    "generalized": _run_generalized,
    "sweep": _run_sweep,
    "fit": _run_fit,
    "predict": _run_predict,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_run_config(args)
        return _DISPATCH[cfg.mode](cfg, args)
    except (DegenerateParametersError, ParameterCollapseError,
            IntegrationUnstableError) as err:
        print(f"simulation error: {err}", file=sys.stderr)
        return 3
    except FitNonConvergenceError as err:
        print(f"fit error: {err}", file=sys.stderr)
        return 4
    except CliConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        # precondition violations from the library surface as usage errors
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
