"""Batch experiment definitions shared by the CLI `run` and `sweep` commands.

Each experiment declares its parameter schema (name, type, default, aliases)
and two entry points: `run` produces the full artifact (header, rows,
sidecars) and `point` evaluates one parameter combination for sweeps.
Everything is closed-form or seeded, so identical configs give identical
rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import ensemble as ens
from . import regularization as reg
from . import spinbath as sbm
from . import spinboson as sb


class ConfigError(ValueError):
    """Invalid or incomplete experiment configuration (CLI exit code 2)."""


@dataclass
class Param:
    name: str
    kind: type
    default: object = None
    required: bool = False
    aliases: tuple[str, ...] = ()


@dataclass
class Experiment:
    name: str
    params: list[Param]
    needs_seed: bool = False
    sweepable: tuple[str, ...] = ()
    run: callable = field(repr=False, default=None)
    point: callable = field(repr=False, default=None)
    point_columns: tuple[str, ...] = ()


def _coerce(param: Param, value):
    try:
        if param.kind is int:
            out = int(value)
            if out != float(value):
                raise ValueError
            return out
        if param.kind is float:
            return float(value)
        if param.kind is str:
            return str(value)
        if param.kind is list:
            if not isinstance(value, (list, tuple)):
                raise ValueError
            return list(value)
    except (TypeError, ValueError):
        pass
    raise ConfigError(f"parameter {param.name!r} expects {param.kind.__name__}, got {value!r}")


def resolve_params(exp: Experiment, given: dict) -> dict:
    """Merge user parameters over defaults; unknown or missing keys fail."""
    by_name = {p.name: p for p in exp.params}
    alias_map = {a: p.name for p in exp.params for a in p.aliases}
    merged = {p.name: p.default for p in exp.params if p.default is not None}
    for key, value in (given or {}).items():
        name = alias_map.get(key, key)
        if name not in by_name:
            raise ConfigError(f"unknown parameter {key!r} for experiment {exp.name!r}")
        merged[name] = _coerce(by_name[name], value)
    missing = [p.name for p in exp.params if p.required and p.name not in merged]
    if missing:
        raise ConfigError(f"experiment {exp.name!r} missing parameters: {missing}")
    return merged


# --- scaling -------------------------------------------------------------


def _scaling_run(params: dict, seed: int):
    table = ens.scaling_experiment(
        (params["m_lo"], params["m_hi"]),
        params["n_list"],
        seed=seed,
        lam=params["lam"],
    )
    header = ("n", "mean_energy", "delta_h", "ratio")
    rows = [(p.n, p.mean_energy, p.delta_h, p.ratio) for p in table.points]
    return header, rows, {"fit": {"slope": table.slope, "intercept": table.intercept}}


def _scaling_point(params: dict, seed: int) -> tuple:
    _, _, sidecars = _scaling_run(params, seed)
    return (sidecars["fit"]["slope"], sidecars["fit"]["intercept"])


# --- zurek ---------------------------------------------------------------


def _zurek_cfg(params: dict) -> sbm.BathConfig:
    return sbm.BathConfig(n_spins=params["n_spins"], lam=params["lam"])


def _zurek_run(params: dict, seed: int):
    cfg = _zurek_cfg(params)
    times = np.linspace(0.0, params["t_max"], params["n_times"])
    header = ("t", "rho_uu", "rho_dd", "re_rho_ud", "im_rho_ud")
    rows = sbm.trajectory_rows(cfg, times)
    sidecars = {}
    if params.get("window"):
        sidecars["limit"] = sbm.limit_report(cfg, params["window"])
    return header, rows, sidecars


def _zurek_point(params: dict, seed: int) -> tuple:
    if params.get("t") is None:
        raise ConfigError("zurek sweep points need 't' (swept or fixed)")
    rho = sbm.reduced_density(_zurek_cfg(params), params["t"])
    return (
        float(rho[0, 0].real),
        float(rho[1, 1].real),
        float(rho[0, 1].real),
        float(rho[0, 1].imag),
    )


# --- spinboson -----------------------------------------------------------


def _spinboson_cfg(params: dict) -> sb.SpinBosonConfig:
    fock = params.get("fock_dim") or sb.suggested_fock_dim(
        params["n_spins"], params["omega"], params["g"]
    )
    return sb.SpinBosonConfig(
        n_spins=params["n_spins"],
        delta=params["delta"],
        omega=params["omega"],
        g=params["g"],
        fock_dim=fock,
    )


def _spinboson_quantities(cfg: sb.SpinBosonConfig, t: float) -> dict:
    lead = sb.leading_order_evolution(cfg, -cfg.n_spins, t)
    rho = sb.leading_order_field_density(cfg, t)
    return {
        "alpha_re": lead.alpha.real,
        "alpha_im": lead.alpha.imag,
        "global_phase": lead.phase,
        "mean_photons": sb.mean_photons(rho),
        "mandel_q": sb.mandel_q(rho),
    }


def _spinboson_run(params: dict, seed: int):
    header = ("n", "t", "quantity", "value")
    if params["scan"] == "decay":
        scan = sb.correction_decay_scan(
            params["delta"],
            params["omega"],
            params["g"],
            params["t_max"],
            params["n_list"],
        )
        rows = [
            (n, scan.t, "correction_integral_magnitude", v) for n, v in scan.rows
        ]
        return header, rows, {"decay": {"decayed": scan.decayed}}
    if params["scan"] != "dynamics":
        raise ConfigError(f"scan must be 'dynamics' or 'decay', got {params['scan']!r}")
    cfg = _spinboson_cfg(params)
    rows = []
    for t in np.linspace(0.0, params["t_max"], params["n_times"]):
        for quantity, value in _spinboson_quantities(cfg, float(t)).items():
            rows.append((cfg.n_spins, float(t), quantity, float(value)))
    return header, rows, {}


def _spinboson_point(params: dict, seed: int) -> tuple:
    if params.get("t") is None:
        raise ConfigError("spinboson sweep points need 't' (swept or fixed)")
    cfg = _spinboson_cfg(params)
    q = _spinboson_quantities(cfg, params["t"])
    return tuple(float(q[k]) for k in ("alpha_re", "alpha_im", "mean_photons", "mandel_q"))


# --- regularize ----------------------------------------------------------


def _regularize_schedule(params: dict) -> reg.RegularizationSchedule:
    return reg.RegularizationSchedule(
        epsilons=tuple(params["epsilons"]), windows=tuple(params["windows"])
    )


def _regularize_run(params: dict, seed: int):
    report = reg.equivalence_report(params["kind"], _regularize_schedule(params))
    header = ("regularizer", "parameter", "value")
    return header, report.rows, {
        "summary": {
            "limit": report.limit,
            "endpoint_gap": report.endpoint_gap,
            "converged": report.converged,
        }
    }


def _regularize_point(params: dict, seed: int) -> tuple:
    kind = params["kind"]
    if kind == "const":
        raise ConfigError("sweep points need kind 'cos' or 'sin'")
    return (
        reg.abel_integral(kind, params["epsilon"]),
        reg.cesaro_integral(kind, params["window"]),
    )


EXPERIMENTS = {
    "scaling": Experiment(
        name="scaling",
        params=[
            Param("n_list", list, required=True),
            Param("m_lo", float, default=0.3),
            Param("m_hi", float, default=0.9),
            Param("lam", float, default=1.0, aliases=("lambda",)),
        ],
        needs_seed=True,
        sweepable=("lam",),
        run=_scaling_run,
        point=_scaling_point,
        point_columns=("slope", "intercept"),
    ),
    "zurek": Experiment(
        name="zurek",
        params=[
            Param("n_spins", int, required=True, aliases=("n",)),
            Param("lam", float, required=True, aliases=("lambda",)),
            Param("t_max", float, default=10.0),
            Param("n_times", int, default=101),
            Param("window", float),
            Param("t", float),  # sweeps only
        ],
        sweepable=("n_spins", "lam", "t"),
        run=_zurek_run,
        point=_zurek_point,
        point_columns=("rho_uu", "rho_dd", "re_rho_ud", "im_rho_ud"),
    ),
    "spinboson": Experiment(
        name="spinboson",
        params=[
            Param("n_spins", int, required=True, aliases=("n",)),
            Param("delta", float, default=0.0),
            Param("omega", float, default=1.0),
            Param("g", float, required=True),
            Param("fock_dim", int),
            Param("scan", str, default="dynamics"),
            Param("t_max", float, default=4 * math.pi),
            Param("n_times", int, default=33),
            Param("n_list", list, default=[1, 2, 4, 8, 16, 32, 64]),
            Param("t", float),  # sweeps only
        ],
        sweepable=("n_spins", "delta", "omega", "g", "t"),
        run=_spinboson_run,
        point=_spinboson_point,
        point_columns=("alpha_re", "alpha_im", "mean_photons", "mandel_q"),
    ),
    "regularize": Experiment(
        name="regularize",
        params=[
            Param("kind", str, default="cos"),
            Param("epsilons", list, default=[1e-1, 1e-2, 1e-3, 1e-4]),
            Param("windows", list, default=[1e1, 1e2, 1e3, 1e4]),
            Param("epsilon", float, default=1e-3),  # sweeps only
            Param("window", float, default=1e3),  # sweeps only
        ],
        sweepable=("epsilon", "window"),
        run=_regularize_run,
        point=_regularize_point,
        point_columns=("abel", "cesaro"),
    ),
}
