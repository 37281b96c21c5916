"""Command-line front end.

Subcommands: ``optimize``, ``sweep``, ``montecarlo``, ``mg`` and ``presets``.
Sweeps are described by INI-style files::

    [system]
    M = 8
    T = 500
    P_dB = 15
    f = 0.1
    alpha = 0.3
    training = closed

    [sweep]
    parameter = T
    grid = 500, 1000, 2000
    outputs = ttr_frac_exact_sqbf_cl, se_exact_hf_cl

    [montecarlo]        ; only needed for mc_* outputs
    iters = 1000
    seed = 1

Exit codes: 0 success, 2 parse/usage error, 3 invalid configuration,
4 numerical failure.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import asymptotics, optimizer
from .config import InvalidConfig, Strategy, SystemConfig, TrainingType, db_to_linear
from .montecarlo import SimOptions, SimulationError, run_monte_carlo
from .precoding import RankDeficientCsi
from .strategy import se_bound, se_genie, se_improvement

EXIT_OK, EXIT_PARSE, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3, 4

SWEEPABLE = ("T", "P_dB", "f", "alpha", "zeta", "T_tr")
SYSTEM_KEYS = {"M", "T", "P_dB", "f", "alpha", "training", "P_SI", "T_tr", "zeta", "theta"}
SWEEP_KEYS = {"parameter", "grid", "outputs"}
MC_KEYS = {"iters", "seed", "workers", "feedback", "power_adaptation", "stochastic_ini",
           "perfect_csi"}
SECTIONS = {"system": SYSTEM_KEYS, "sweep": SWEEP_KEYS, "montecarlo": MC_KEYS}

_TRAINING = {"cl": TrainingType.CLOSED, "op": TrainingType.OPEN}
_STRAT = {"sqbf": Strategy.SQBF, "hf": Strategy.HF}
_PLAN_RE = re.compile(r"^(ttr|ttr_frac|se)_(exact|approx)_(sqbf|hf)_(cl|op)$")
_LOSS_RE = re.compile(r"^loss_bound_(sqbf|hf)_(cl|op)$")
_IMPR_RE = re.compile(r"^improvement_(exact|approx)_(cl|op)$")
_BOUND_RE = re.compile(r"^se_bound_(sqbf|hf)_(cl|op)$")
_MC_RE = re.compile(r"^mc_(se|ci)_(sqbf|hf)_(cl|op)$")
_MG_RE = re.compile(r"^mg_(" + "|".join(asymptotics.MG_STRATEGIES) + r")(?:@([0-9.eE+-]+))?$")


class SpecError(Exception):
    """The spec file cannot be parsed."""


class ConfigError(Exception):
    """The sweep file parses but describes an invalid scenario."""


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    return "%.17g" % x


@dataclass
class SweepSpec:
    base: dict
    parameter: str
    grid: list
    outputs: list
    mc: Optional[SimOptions] = None
    extras: dict = field(default_factory=dict)


def parse_grid(text: str) -> list:
    """Comma-separated numbers; ``a:b:step`` expands to an inclusive range."""
    values = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        if ":" in part:
            try:
                a, b, step = (float(v) for v in part.split(":"))
            except ValueError as exc:
                raise SpecError(f"bad range {part!r}") from exc
            if step <= 0:
                raise ConfigError(f"range step must be positive in {part!r}")
            n = int(math.floor((b - a) / step + 1e-9)) + 1
            values.extend(float(np.round(a + k * step, 12)) for k in range(max(n, 0)))
        else:
            try:
                values.append(float(part))
            except ValueError as exc:
                raise SpecError(f"bad grid value {part!r}") from exc
    return values


def _parse_bool(section, key, value):
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise SpecError(f"[{section}] {key}: expected a boolean, got {value!r}")


def parse_spec(text: str) -> SweepSpec:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"),
                                       interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SpecError(str(exc)) from exc
    for section in parser.sections():
        if section not in SECTIONS:
            raise SpecError(f"unknown section [{section}]")
        unknown = set(parser[section]) - SECTIONS[section]
        if unknown:
            raise SpecError(f"unknown key(s) in [{section}]: {', '.join(sorted(unknown))}")
    for required in ("system", "sweep"):
        if required not in parser:
            raise SpecError(f"missing section [{required}]")
    base = {}
    for key, value in parser["system"].items():
        if key == "training":
            base[key] = value.strip()
        else:
            try:
                base[key] = float(value)
            except ValueError as exc:
                raise SpecError(f"[system] {key}: not a number: {value!r}") from exc
    sw = parser["sweep"]
    for key in ("parameter", "grid", "outputs"):
        if key not in sw:
            raise SpecError(f"[sweep] missing key {key!r}")
    outputs = [o.strip() for o in sw["outputs"].split(",") if o.strip()]
    mc = None
    if "montecarlo" in parser:
        m = parser["montecarlo"]
        kwargs = {}
        try:
            if "iters" in m:
                kwargs["n_iter"] = int(m["iters"])
            if "seed" in m:
                kwargs["seed"] = int(m["seed"])
            if "workers" in m:
                kwargs["workers"] = int(m["workers"])
        except ValueError as exc:
            raise SpecError(f"[montecarlo] {exc}") from exc
        if "feedback" in m:
            kwargs["feedback"] = m["feedback"].strip()
        for key in ("power_adaptation", "stochastic_ini", "perfect_csi"):
            if key in m:
                kwargs[key] = _parse_bool("montecarlo", key, m[key])
        try:
            mc = SimOptions(**kwargs)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    spec = SweepSpec(base, sw["parameter"].strip(), parse_grid(sw["grid"]), outputs, mc)
    validate_spec(spec)
    return spec


def validate_spec(spec: SweepSpec):
    if spec.parameter not in SWEEPABLE:
        raise ConfigError(f"cannot sweep {spec.parameter!r}; choose one of {SWEEPABLE}")
    if not spec.grid:
        raise ConfigError("grid is empty")
    if any(b <= a for a, b in zip(spec.grid, spec.grid[1:])):
        raise ConfigError("grid must be strictly increasing")
    if not spec.outputs:
        raise ConfigError("no outputs requested")
    for name in spec.outputs:
        if not _known_output(name):
            raise ConfigError(f"unknown output {name!r}")
        if _MC_RE.match(name) and spec.mc is None:
            raise ConfigError(f"output {name!r} needs a [montecarlo] section")
    # surface invalid scenarios before any work is done
    for value in spec.grid:
        _point_config(spec.base, spec.parameter, value)


def _known_output(name: str) -> bool:
    return bool(name == "se_genie" or _PLAN_RE.match(name) or _LOSS_RE.match(name)
                or _IMPR_RE.match(name) or _BOUND_RE.match(name) or _MC_RE.match(name)
                or _MG_RE.match(name))


def _point_config(base: dict, parameter: Optional[str], value: float = 0.0):
    values = dict(base)
    if parameter is not None:
        values[parameter] = value
    try:
        cfg = SystemConfig(
            M=values.get("M", 8), T=values.get("T", 500),
            P=db_to_linear(values.get("P_dB", 15.0)), f=values.get("f", 0.1),
            alpha=values.get("alpha", 0.0), training=values.get("training", "closed"),
            P_SI=values.get("P_SI", 0.0))
    except (InvalidConfig, ValueError, TypeError) as exc:
        where = f"{parameter}={value}: " if parameter is not None else ""
        raise ConfigError(f"{where}{exc}") from exc
    T_tr = values.get("T_tr")
    if T_tr is not None and not 0 <= T_tr <= cfg.T:
        raise ConfigError(f"T_tr={T_tr} outside [0, {cfg.T}]")
    zeta = values.get("zeta", 0.5)
    if zeta < 0:
        raise ConfigError(f"zeta must be nonnegative, got {zeta}")
    theta = values.get("theta", cfg.theta)
    return cfg, T_tr, zeta, theta


class _Point:
    """Lazily evaluated quantities at one grid point."""

    def __init__(self, cfg, T_tr, zeta, theta, mc):
        self.cfg, self.T_tr, self.zeta, self.theta, self.mc = cfg, T_tr, zeta, theta, mc
        self._plans = {}
        self._mc = {}

    def _cfg(self, tr):
        return self.cfg.replace(training=_TRAINING[tr])

    def plan(self, method, strat, tr):
        key = (method, strat, tr)
        if key not in self._plans:
            fn = optimizer.exact_opt_ttr if method == "exact" else optimizer.approx_opt_ttr
            self._plans[key] = fn(self._cfg(tr), _STRAT[strat])
        return self._plans[key]

    def mc_result(self, strat, tr):
        key = (strat, tr)
        if key not in self._mc:
            T_tr = self.T_tr
            if T_tr is None:
                T_tr = self.plan("exact", strat, tr).T_tr_opt
            self._mc[key] = run_monte_carlo(self._cfg(tr), T_tr, _STRAT[strat], self.mc)
        return self._mc[key]

    def value(self, name):
        if name == "se_genie":
            return se_genie(self.cfg)
        m = _PLAN_RE.match(name)
        if m:
            kind, method, strat, tr = m.groups()
            plan = self.plan(method, strat, tr)
            if kind == "ttr":
                return plan.T_tr_opt
            if kind == "ttr_frac":
                return plan.T_tr_opt / self.cfg.T
            return plan.se_at_opt
        m = _LOSS_RE.match(name)
        if m:
            strat, tr = m.groups()
            return optimizer.se_loss_bound(self._cfg(tr), _STRAT[strat])
        m = _IMPR_RE.match(name)
        if m:
            method, tr = m.groups()
            return se_improvement(self.cfg, self.plan(method, "sqbf", tr).se_at_opt,
                                  self.plan(method, "hf", tr).se_at_opt)
        m = _BOUND_RE.match(name)
        if m:
            strat, tr = m.groups()
            if self.T_tr is None:
                raise ConfigError(f"output {name!r} needs T_tr in [system] or as the swept parameter")
            return se_bound(self._cfg(tr), self.T_tr, _STRAT[strat]).se_total
        m = _MC_RE.match(name)
        if m:
            what, strat, tr = m.groups()
            res = self.mc_result(strat, tr)
            return res.se_mean if what == "se" else res.se_ci95
        m = _MG_RE.match(name)
        if m:
            key, theta = m.groups()
            theta = float(theta) if theta else self.theta
            return asymptotics.mg_point(key, self.zeta, theta).r
        raise ConfigError(f"unknown output {name!r}")


def run_spec(spec: SweepSpec):
    """Evaluate a sweep; returns ``(header, rows)`` with numeric rows."""
    header = [spec.parameter] + list(spec.outputs)
    rows = []
    for value in spec.grid:
        cfg, T_tr, zeta, theta = _point_config(spec.base, spec.parameter, value)
        point = _Point(cfg, T_tr, zeta, theta, spec.mc)
        rows.append([value] + [point.value(name) for name in spec.outputs])
    return header, rows


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def to_json(header, rows) -> str:
    records = [{h: (None if isinstance(v, float) and math.isnan(v) else v)
                for h, v in zip(header, row)} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sqbf-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


PRESETS = {
    "fig3": """\
; optimal training fraction versus block length
[system]
M = 8
P_dB = 15
f = 0.1
alpha = 0.3
[sweep]
parameter = T
grid = 200, 300, 400, 500, 750, 1000, 1500, 2000, 2500, 3000, 4000, 5000
outputs = ttr_frac_exact_sqbf_cl, ttr_frac_exact_hf_cl, ttr_frac_exact_sqbf_op, ttr_frac_exact_hf_op,
    ttr_frac_approx_sqbf_cl, ttr_frac_approx_hf_cl, ttr_frac_approx_sqbf_op, ttr_frac_approx_hf_op
""",
    "fig4": """\
; spectral efficiency at the optimal training duration versus block length
[system]
M = 8
P_dB = 15
f = 0.1
alpha = 0.3
[sweep]
parameter = T
grid = 500, 1000, 1500, 2000, 2500, 3000
outputs = se_genie, se_exact_sqbf_cl, se_exact_hf_cl, se_exact_sqbf_op, se_exact_hf_op,
    loss_bound_sqbf_cl, loss_bound_hf_cl, loss_bound_sqbf_op, loss_bound_hf_op
""",
    "fig5": """\
; percent improvement of sequential beamforming over half duplex
[system]
M = 8
P_dB = 15
f = 0.1
alpha = 0.3
[sweep]
parameter = T
grid = 500, 1000, 1500, 2000, 2500, 3000
outputs = improvement_exact_cl, improvement_exact_op, improvement_approx_cl, improvement_approx_op
""",
    "fig6": """\
; multiplexing gain versus training power exponent
[system]
M = 8
T = 500
[sweep]
parameter = zeta
grid = 0:1.2:0.02
outputs = mg_sqbf_cl_no_ini@0.05, mg_hf_cl@0.05, mg_sqbf_cl@0.05, mg_sqbf_op@0.05,
    mg_sqbf_cl_no_ini@0.1, mg_hf_cl@0.1, mg_sqbf_cl@0.1, mg_sqbf_op@0.1
""",
    "validate": """\
; analytic bound against Monte Carlo over the training duration
[system]
M = 8
T = 500
P_dB = 15
f = 0.1
alpha = 0.3
training = closed
[sweep]
parameter = T_tr
grid = 80, 160, 240, 320
outputs = se_bound_sqbf_cl, mc_se_sqbf_cl, mc_ci_sqbf_cl, se_bound_hf_cl, mc_se_hf_cl, mc_ci_hf_cl
[montecarlo]
iters = 500
seed = 1
""",
}


def _add_system_args(p, need_ttr=False):
    p.add_argument("--config", help="INI file with a [system] section")
    p.add_argument("--M", type=int)
    p.add_argument("--T", type=int)
    p.add_argument("--P-dB", dest="P_dB", type=float)
    p.add_argument("--f", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--training", choices=["closed", "open"])
    p.add_argument("--P-SI", dest="P_SI", type=float)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")


def _system_from_args(args) -> SystemConfig:
    base = {}
    if args.config:
        parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"),
                                           interpolation=None)
        parser.optionxform = str
        try:
            with open(args.config) as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise SpecError(str(exc)) from exc
        if "system" in parser:
            unknown = set(parser["system"]) - SYSTEM_KEYS
            if unknown:
                raise SpecError(f"unknown key(s) in [system]: {', '.join(sorted(unknown))}")
            for key, value in parser["system"].items():
                try:
                    base[key] = value.strip() if key == "training" else float(value)
                except ValueError as exc:
                    raise SpecError(f"[system] {key}: not a number: {value!r}") from exc
    for key in ("M", "T", "P_dB", "f", "alpha", "training", "P_SI"):
        v = getattr(args, key, None)
        if v is not None:
            base[key] = v
    missing = [k for k in ("M", "T", "P_dB", "f") if k not in base]
    if missing:
        raise SpecError("missing required parameter(s): "
                        + ", ".join("--" + k.replace("_", "-") for k in missing))
    cfg, _, _, _ = _point_config(base, None)
    return cfg


def cmd_optimize(args, out):
    cfg = _system_from_args(args)
    strategies = ["sqbf", "hf"] if args.strategy == "both" else [args.strategy]
    records = []
    for s in strategies:
        approx = optimizer.approx_opt_ttr(cfg, _STRAT[s])
        exact = optimizer.exact_opt_ttr(cfg, _STRAT[s])
        records.append({
            "strategy": s, "training": cfg.training.value,
            "ttr_approx": approx.T_tr_opt, "se_approx": approx.se_at_opt,
            "approx_clamped": approx.clamped,
            "ttr_exact": exact.T_tr_opt, "se_exact": exact.se_at_opt,
            "c_marginal": exact.c_marginal,
            "se_loss_bound": optimizer.se_loss_bound(cfg, _STRAT[s]),
            "se_genie": se_genie(cfg),
        })
    if args.json:
        out.write(json.dumps(records, indent=2) + "\n")
        return
    for r in records:
        out.write(f"{r['strategy']} ({r['training']} loop), M={cfg.M} T={cfg.T} "
                  f"P={cfg.P_dB:.6g} dB f={cfg.f:.6g} alpha={cfg.alpha:.6g}\n")
        out.write(f"  closed form: T_tr = {r['ttr_approx']:.4f}  SE = {r['se_approx']:.6f}"
                  f"{'  (clamped)' if r['approx_clamped'] else ''}\n")
        out.write(f"  grid search: T_tr = {r['ttr_exact']:.4f}  SE = {r['se_exact']:.6f}\n")
        out.write(f"  c = {r['c_marginal']:.6f}  loss bound = {r['se_loss_bound']:.6f}"
                  f"  genie SE = {r['se_genie']:.6f}\n")


def cmd_montecarlo(args, out):
    cfg = _system_from_args(args)
    try:
        opts = SimOptions(n_iter=args.iters, seed=args.seed, workers=args.workers,
                          feedback=args.feedback, power_adaptation=args.power_adaptation,
                          stochastic_ini=args.stochastic_ini, perfect_csi=args.perfect_csi)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    strategy = Strategy(args.strategy)
    if args.T_tr == "opt":
        if strategy is Strategy.GENIE:
            T_tr = 0.0
        else:
            T_tr = optimizer.exact_opt_ttr(cfg, strategy).T_tr_opt
    else:
        try:
            T_tr = float(args.T_tr)
        except ValueError as exc:
            raise SpecError(f"--T-tr must be a number or 'opt', got {args.T_tr!r}") from exc
        if not 0 <= T_tr <= cfg.T:
            raise ConfigError(f"--T-tr {T_tr} outside [0, {cfg.T}]")
    res = run_monte_carlo(cfg, T_tr, strategy, opts)
    bound = se_bound(cfg, res.T_tr, strategy).se_total
    record = {
        "strategy": strategy.value, "training": cfg.training.value, "T_tr": res.T_tr,
        "n_iter": res.n_iter, "seed": opts.seed,
        "se_mean": res.se_mean, "se_ci95": res.se_ci95, "se_bound": bound,
        "r_data_mean": res.r_data_mean, "r_data_ci95": res.r_data_ci95,
        "r_tr_mean": res.r_tr_mean, "r_tr_ci95": res.r_tr_ci95,
        "n_resampled": res.n_resampled, "flagged": res.flagged,
    }
    if args.json:
        clean = {k: (None if isinstance(v, float) and math.isnan(v) else v)
                 for k, v in record.items()}
        clean["per_cycle_rates"] = [[None if math.isnan(x) else x for x in row]
                                    for row in res.per_cycle_rates.tolist()]
        out.write(json.dumps(clean, indent=2) + "\n")
        return
    out.write(f"{strategy.value} ({cfg.training.value} loop), T_tr = {res.T_tr}, "
              f"{res.n_iter} blocks, seed {opts.seed}\n")
    out.write(f"  SE = {res.se_mean:.6f} +/- {res.se_ci95:.6f} (95% CI), bound {bound:.6f}\n")
    out.write(f"  post-training rate = {res.r_data_mean:.6f} +/- {res.r_data_ci95:.6f}\n")
    if not math.isnan(res.r_tr_mean):
        out.write(f"  training-phase rate = {res.r_tr_mean:.6f} +/- {res.r_tr_ci95:.6f}\n")
    if res.n_resampled:
        out.write(f"  resampled {res.n_resampled} rank-deficient blocks"
                  f"{' (flagged)' if res.flagged else ''}\n")


def cmd_mg(args, out):
    if args.theta <= 0:
        raise ConfigError("--theta must be positive")
    if args.zeta < 0:
        raise ConfigError("--zeta must be nonnegative")
    points = [(k, asymptotics.mg_point(k, args.zeta, args.theta))
              for k in ("sqbf_cl_no_ini", "hf_cl", "sqbf_cl", "sqbf_op")]
    if args.json:
        out.write(json.dumps([{"strategy": k, "theta": args.theta, "zeta": p.zeta, "r": p.r,
                               "regime": p.regime} for k, p in points], indent=2) + "\n")
        return
    for k, p in points:
        out.write(f"{k:16s} r = {fmt(p.r):24s} regime = {p.regime}\n")


def cmd_sweep(args, out):
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; see 'sqbf presets'")
        text = PRESETS[args.preset]
    elif args.spec:
        try:
            with open(args.spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise SpecError(str(exc)) from exc
    else:
        raise SpecError("sweep needs a spec file or --preset")
    spec = parse_spec(text)
    if args.seed is not None or args.iters is not None:
        if spec.mc is None:
            raise ConfigError("--seed/--iters given but the sweep file has no [montecarlo] section")
        changes = {k: v for k, v in (("seed", args.seed), ("n_iter", args.iters)) if v is not None}
        try:
            spec.mc = SimOptions(**{**spec.mc.__dict__, **changes})
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    header, rows = run_spec(spec)
    body = to_json(header, rows) if args.json else to_csv(header, rows)
    if args.out:
        write_atomic(args.out, body)
    else:
        out.write(body)


def cmd_presets(args, out):
    if args.show:
        if args.show not in PRESETS:
            raise ConfigError(f"unknown preset {args.show!r}")
        out.write(PRESETS[args.show])
        return
    for name, text in PRESETS.items():
        out.write(f"{name:10s} {text.splitlines()[0].lstrip('; ')}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqbf", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="optimal training duration for one scenario")
    _add_system_args(p)
    p.add_argument("--strategy", choices=["sqbf", "hf", "both"], default="both")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("montecarlo", help="simulate one scenario")
    _add_system_args(p)
    p.add_argument("--T-tr", dest="T_tr", required=True,
                   help="training symbols, or 'opt' for the bound-optimal value")
    p.add_argument("--strategy", choices=["sqbf", "hf", "genie"], default="sqbf")
    p.add_argument("--iters", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--feedback", choices=["rvq", "fixed_point"], default="rvq")
    p.add_argument("--power-adaptation", action="store_true")
    p.add_argument("--stochastic-ini", action="store_true")
    p.add_argument("--perfect-csi", action="store_true")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("mg", help="high-SNR multiplexing gain at one point")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--zeta", type=float, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mg)

    p = sub.add_parser("sweep", help="evaluate a parameter sweep, CSV output")
    p.add_argument("spec", nargs="?", help="sweep spec file")
    p.add_argument("--preset", help="built-in figure preset instead of a file")
    p.add_argument("--out", help="write to this path (atomically) instead of stdout")
    p.add_argument("--seed", type=int, help="override the [montecarlo] seed")
    p.add_argument("--iters", type=int, help="override the [montecarlo] iteration count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("presets", help="list built-in sweep presets")
    p.add_argument("--show", help="print the sweep file of one preset")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    try:
        args.func(args, buf)
    except SpecError as exc:
        parser.print_usage(sys.stderr)
        print(f"sqbf: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, InvalidConfig) as exc:
        print(f"sqbf: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationError, RankDeficientCsi, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"sqbf: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
