"""Command-line front end.

Thirteen subcommands drive the library: PGF evaluation, iteration, and
coefficients; activation curves and coefficient recovery; kernel values,
Gram matrices, depth limits, and sphere eigensystems; MLP convergence
studies; GP fit and predict; and the activation-comparison figure data.

Conventions shared by every subcommand:

    exit 0  success, outputs written;
    exit 2  invalid input (one-line diagnostic on stderr);
    exit 3  numerical failure (instability, factorization, zero norms);
    long flags only, full double-precision decimal output, CSV with header.

A JSON experiment config can supply any parameter group via ``--config``;
explicit flags win over config values.  Schema: sections pgf{theta,a,c,q,r},
kernel{kind,depth,c_sequence}, activation{source,name,k_max},
mlp{widths,samples,seed}, gp{noise}, output{path,format}; unknown sections
or keys are rejected before any computation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

import numpy as np

from .activations import (
    Activation,
    activation_from_coefficients,
    activation_to_pgf,
    reference_activation,
)
from .errors import ConfigError, ThetaKernelError
from .gp import fit as gp_fit
from .gp import predict as gp_predict
from .kernels import (
    CMixedKernel,
    KernelSpec,
    MixedKernel,
    PureKernel,
    eigensystem,
    gram,
    kernel_at_rho,
    kernel_limit,
    surface_area,
)
from .mlp import MlpConfig, convergence_study
from .pgf import (
    ThetaPgf,
    make_theta_pgf,
    pgf_iterate_closed,
    theta_coefficients,
)

__all__ = ["app", "build_parser"]

_FIG1_CASES = {
    "linear": dict(theta=-1.0, a=0.99, q=0.99),
    "prelu-proxy": dict(theta=1.0, a=1.65, c=0.146),
    "relu-proxy": dict(theta=0.99, a=0.22, c=0.203, r=4.8),
}
_FIG1_REFERENCES = {
    "linear": ("linear", None),
    "prelu-proxy": ("prelu", 0.25),
    "relu-proxy": ("relu", None),
}

_CONFIG_SCHEMA = {
    "pgf": {"theta", "a", "c", "q", "r"},
    "kernel": {"kind", "depth", "c_sequence"},
    "activation": {"source", "name", "k_max"},
    "mlp": {"widths", "samples", "seed"},
    "gp": {"noise"},
    "output": {"path", "format"},
}


def _fmt(value) -> str:
    return repr(float(value))


class _Config:
    """Validated experiment config; empty when no file was given."""

    def __init__(self, path: str | None):
        self.data: dict = {}
        if path is None:
            return
        try:
            with open(path) as handle:
                raw = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        for section, body in raw.items():
            if section not in _CONFIG_SCHEMA:
                raise ConfigError(f"unknown config section {section!r}")
            if not isinstance(body, dict):
                raise ConfigError(f"config section {section!r} must be an object")
            for key in body:
                if key not in _CONFIG_SCHEMA[section]:
                    raise ConfigError(f"unknown key {key!r} in config section {section!r}")
        self._validate_types(raw)
        self.data = raw

    @staticmethod
    def _validate_types(raw: dict) -> None:
        def need(cond: bool, message: str) -> None:
            if not cond:
                raise ConfigError(message)

        num = (int, float)
        pgf = raw.get("pgf", {})
        for key in ("theta", "a", "q", "r"):
            if key in pgf:
                need(isinstance(pgf[key], num), f"pgf.{key} must be a number")
        if "c" in pgf:
            need(isinstance(pgf["c"], num), "pgf.c must be a number")
        kernel = raw.get("kernel", {})
        if "kind" in kernel:
            need(kernel["kind"] in ("pure", "mixed", "cmixed"),
                 "kernel.kind must be pure, mixed, or cmixed")
        if "depth" in kernel:
            need(isinstance(kernel["depth"], int), "kernel.depth must be an integer")
        if "c_sequence" in kernel:
            need(isinstance(kernel["c_sequence"], list)
                 and all(isinstance(v, num) for v in kernel["c_sequence"]),
                 "kernel.c_sequence must be a list of numbers")
        act = raw.get("activation", {})
        if "source" in act:
            need(act["source"] in ("theta", "reference"),
                 "activation.source must be theta or reference")
        if "name" in act:
            need(isinstance(act["name"], str), "activation.name must be a string")
        if "k_max" in act:
            need(isinstance(act["k_max"], int), "activation.k_max must be an integer")
        mlp = raw.get("mlp", {})
        if "widths" in mlp:
            need(isinstance(mlp["widths"], list)
                 and all(isinstance(v, int) for v in mlp["widths"]),
                 "mlp.widths must be a list of integers")
        for key in ("samples", "seed"):
            if key in mlp:
                need(isinstance(mlp[key], int), f"mlp.{key} must be an integer")
        gp = raw.get("gp", {})
        if "noise" in gp:
            need(isinstance(gp["noise"], num), "gp.noise must be a number")
        out = raw.get("output", {})
        if "path" in out:
            need(isinstance(out["path"], str), "output.path must be a string")
        if "format" in out:
            need(out["format"] in ("csv", "json"), "output.format must be csv or json")

    def get(self, section: str, key: str, default=None):
        return self.data.get(section, {}).get(key, default)


def _pick(flag_value, cfg: _Config, section: str, key: str, default=None):
    if flag_value is not None:
        return flag_value
    value = cfg.get(section, key)
    return default if value is None else value


def _require(value, what: str):
    if value is None:
        raise ConfigError(f"missing required parameter: {what}")
    return value


# ---------------------------------------------------------------------------
# Shared builders
# ---------------------------------------------------------------------------

def _add_pgf_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--theta", type=float, default=None)
    sub.add_argument("--a", type=float, default=None)
    sub.add_argument("--c", type=str, default=None,
                     help="PGF constant; comma list for c-mixed kernels")
    sub.add_argument("--q", type=float, default=None)
    sub.add_argument("--r", type=float, default=None)


def _scalar_c(raw: str | float | None) -> float | None:
    if raw is None:
        return None
    if isinstance(raw, (int, float)):
        return float(raw)
    return float(raw)


def _c_list(raw, what: str) -> tuple[float, ...]:
    if raw is None:
        raise ConfigError(f"missing required parameter: {what}")
    if isinstance(raw, (list, tuple)):
        return tuple(float(v) for v in raw)
    try:
        return tuple(float(part) for part in str(raw).split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"cannot parse {what} from {raw!r}")


def _build_theta_pgf(args, cfg: _Config) -> ThetaPgf:
    theta = _require(_pick(args.theta, cfg, "pgf", "theta"), "--theta")
    a = _require(_pick(args.a, cfg, "pgf", "a"), "--a")
    c = _scalar_c(_pick(args.c, cfg, "pgf", "c"))
    q = _pick(args.q, cfg, "pgf", "q")
    r = _pick(args.r, cfg, "pgf", "r", 1.0)
    return make_theta_pgf(theta=theta, a=a, c=c, q=q, r=r)


def _load_factor_list(path: str) -> tuple[ThetaPgf, ...]:
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read factors file {path}: {exc}")
    if not isinstance(raw, list) or not raw:
        raise ConfigError("factors file must hold a non-empty JSON list of PGF objects")
    factors = []
    for entry in raw:
        if not isinstance(entry, dict) or not set(entry) <= _CONFIG_SCHEMA["pgf"]:
            raise ConfigError(f"bad PGF object in factors file: {entry!r}")
        factors.append(make_theta_pgf(
            theta=entry.get("theta"), a=entry.get("a"),
            c=entry.get("c"), q=entry.get("q"), r=entry.get("r", 1.0)))
    return tuple(factors)


def _build_kernel(args, cfg: _Config) -> KernelSpec:
    kind = _pick(getattr(args, "kind", None), cfg, "kernel", "kind", "pure")
    if kind == "pure":
        depth = _require(_pick(args.depth, cfg, "kernel", "depth"), "--depth")
        return PureKernel(_build_theta_pgf(args, cfg), int(depth))
    if kind == "cmixed":
        theta = _require(_pick(args.theta, cfg, "pgf", "theta"), "--theta")
        cs = _c_list(_pick(args.c, cfg, "kernel", "c_sequence"), "--c")
        return CMixedKernel(float(theta), cs)
    if kind == "mixed":
        factors_path = getattr(args, "factors", None)
        if factors_path is None:
            raise ConfigError("kind=mixed needs --factors FILE (JSON list of PGF objects)")
        return MixedKernel(_load_factor_list(factors_path))
    raise ConfigError(f"unknown kernel kind {kind!r}")


def _build_activation(args, cfg: _Config) -> Activation:
    coeffs_path = getattr(args, "coeffs", None)
    if coeffs_path is not None:
        table = _read_csv(coeffs_path)
        return activation_from_coefficients(table[:, -1])
    source = _pick(args.source, cfg, "activation", "source")
    if source is None:
        source = "theta" if args.theta is not None or cfg.get("pgf", "theta") is not None \
            else "reference"
    if source == "reference":
        name = _require(_pick(args.name, cfg, "activation", "name"), "--name")
        return reference_activation(name, getattr(args, "slope", None))
    if source == "theta":
        k_max = int(_pick(args.k_max, cfg, "activation", "k_max", 64))
        f = _build_theta_pgf(args, cfg)
        p = theta_coefficients(f, k_max)
        return activation_from_coefficients(p, eps_tail=max(0.0, f.mass() - float(p.sum())))
    raise ConfigError(f"unknown activation source {source!r}")


# ---------------------------------------------------------------------------
# Table and file helpers
# ---------------------------------------------------------------------------

def _read_csv(path: str) -> np.ndarray:
    """Numeric CSV rows; a single leading non-numeric row is taken as header."""
    try:
        with open(path, newline="") as handle:
            rows = [row for row in csv.reader(handle) if row]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}")
    if not rows:
        raise ConfigError(f"{path} is empty")
    try:
        float(rows[0][0])
    except ValueError:
        rows = rows[1:]
    if not rows:
        raise ConfigError(f"{path} has a header but no data rows")
    try:
        data = np.array([[float(cell) for cell in row] for row in rows])
    except ValueError as exc:
        raise ConfigError(f"non-numeric data in {path}: {exc}")
    return data


def _write_table(path: str | None, header: Sequence[str],
                 rows: Sequence[Sequence]) -> None:
    def emit(handle) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, (str, int)) else _fmt(cell)
                             for cell in row])

    if path is None:
        emit(sys.stdout)
    else:
        with open(path, "w", newline="") as handle:
            emit(handle)


def _out_path(args, cfg: _Config) -> str | None:
    return _pick(getattr(args, "out", None), cfg, "output", "path")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_pgf_eval(args, cfg: _Config) -> None:
    f = _build_theta_pgf(args, cfg)
    print(_fmt(f.eval(args.s)))


def _cmd_pgf_iterate(args, cfg: _Config) -> None:
    f = pgf_iterate_closed(_build_theta_pgf(args, cfg), args.n)
    p = f.params
    record = {"theta": p.theta, "a": p.a, "c": p.c, "q": p.q, "r": p.r,
              "regime": p.regime.value}
    if args.s is not None:
        record["value"] = f.eval(args.s)
    print(json.dumps(record))


def _cmd_pgf_coeffs(args, cfg: _Config) -> None:
    f = _build_theta_pgf(args, cfg)
    k_max = int(_pick(args.k_max, cfg, "activation", "k_max", 64))
    p = theta_coefficients(f, k_max)
    _write_table(_out_path(args, cfg), ["k", "p"],
                 [(k, v) for k, v in enumerate(p)])


def _grid(args) -> np.ndarray:
    lo, hi, step = args.x_min, args.x_max, args.step
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo and step > 0):
        raise ConfigError(f"bad grid: [{lo}, {hi}] step {step}")
    count = int(round((hi - lo) / step))
    return np.linspace(lo, hi, count + 1)


def _cmd_activation_curve(args, cfg: _Config) -> None:
    act = _build_activation(args, cfg)
    xs = _grid(args)
    values = act(xs)
    _write_table(_out_path(args, cfg), ["x", "phi"], list(zip(xs, values)))


def _cmd_activation_to_pgf(args, cfg: _Config) -> None:
    act = _build_activation(args, cfg)
    k_max = int(_pick(args.k_max, cfg, "activation", "k_max", 64))
    p = activation_to_pgf(act, k_max, args.quad_nodes)
    _write_table(_out_path(args, cfg), ["k", "p"],
                 [(k, v) for k, v in enumerate(p)])


def _rho_from_args(args) -> float:
    if args.rho is not None:
        if args.x is not None or args.z is not None:
            raise ConfigError("give either --rho or the pair --x/--z, not both")
        return args.rho
    if args.x is None or args.z is None:
        raise ConfigError("need --rho, or both --x and --z")
    from .kernels import correlation
    return correlation(_c_list(args.x, "--x"), _c_list(args.z, "--z"))


def _cmd_kernel_eval(args, cfg: _Config) -> None:
    spec = _build_kernel(args, cfg)
    print(_fmt(kernel_at_rho(spec, _rho_from_args(args))))


def _cmd_kernel_gram(args, cfg: _Config) -> None:
    spec = _build_kernel(args, cfg)
    points = _read_csv(args.points)
    matrix = gram(spec, points)
    header = [f"c{i}" for i in range(matrix.shape[1])]
    _write_table(_out_path(args, cfg), header, matrix.tolist())


def _cmd_kernel_limit(args, cfg: _Config) -> None:
    spec = _build_kernel(args, cfg)
    value = kernel_limit(spec, _rho_from_args(args), c_sum=args.c_sum,
                         sum_diverges=args.diverges)
    print(_fmt(value))


def _cmd_kernel_eigen(args, cfg: _Config) -> None:
    spec = _build_kernel(args, cfg)
    system = eigensystem(spec, args.m, int(_pick(args.k_max, cfg, "activation",
                                                 "k_max", 20)))
    record = {"dimension": system.dimension,
              "surface_area": surface_area(system.dimension),
              "entries": system.records()}
    text = json.dumps(record, indent=2)
    path = _out_path(args, cfg)
    if path is None:
        print(text)
    else:
        with open(path, "w") as handle:
            handle.write(text + "\n")


def _cmd_mlp_study(args, cfg: _Config) -> None:
    names = [part for part in args.activation.split(",") if part.strip()]
    activations = tuple(reference_activation(name) for name in names)
    depth = args.depth if args.depth is not None else max(2, len(activations))
    if len(activations) == 1:
        acts: Activation | tuple[Activation, ...] = activations[0]
    elif len(activations) == depth:
        acts = activations
    else:
        raise ConfigError(
            f"got {len(activations)} activations for depth {depth}; "
            "give one (pure) or exactly depth many (mixed)")
    widths = [int(w) for w in
              _c_list(_pick(args.widths, cfg, "mlp", "widths"), "--widths")]
    samples = int(_pick(args.samples, cfg, "mlp", "samples", 20000))
    seed = int(_pick(args.seed, cfg, "mlp", "seed", 0))
    rho = args.rho
    if not -1.0 <= rho <= 1.0:
        raise ConfigError(f"--rho must lie in [-1, 1], got {rho}")
    x = np.array([1.0, 0.0])
    z = np.array([rho, math.sqrt(1.0 - rho * rho)])
    base = MlpConfig(widths=(2,) + (8,) * depth + (1,), activations=acts, seed=seed)
    rows = convergence_study(base, widths, x, z, samples)
    _write_table(_out_path(args, cfg), ["width", "estimate", "se", "reference", "gap"],
                 [(row.width, row.estimate, row.se, row.reference, row.gap)
                  for row in rows])


def _kernel_to_json(spec: KernelSpec) -> dict:
    if isinstance(spec, PureKernel) and isinstance(spec.f, ThetaPgf):
        p = spec.f.params
        return {"kind": "pure", "depth": spec.depth,
                "pgf": {"theta": p.theta, "a": p.a, "c": p.c, "q": p.q, "r": p.r}}
    if isinstance(spec, CMixedKernel):
        return {"kind": "cmixed", "theta": spec.theta,
                "c_sequence": list(spec.c_sequence)}
    if isinstance(spec, MixedKernel) and all(isinstance(f, ThetaPgf)
                                             for f in spec.factors):
        return {"kind": "mixed",
                "factors": [{"theta": f.params.theta, "a": f.params.a,
                             "c": f.params.c, "q": f.params.q, "r": f.params.r}
                            for f in spec.factors]}
    raise ConfigError("only theta-form kernel specs can be serialized")


def _kernel_from_json(record: dict) -> KernelSpec:
    kind = record.get("kind")
    if kind == "pure":
        p = record["pgf"]
        return PureKernel(make_theta_pgf(theta=p["theta"], a=p["a"], c=p.get("c"),
                                         q=p.get("q"), r=p.get("r", 1.0)),
                          int(record["depth"]))
    if kind == "cmixed":
        return CMixedKernel(float(record["theta"]),
                            tuple(float(v) for v in record["c_sequence"]))
    if kind == "mixed":
        return MixedKernel(tuple(
            make_theta_pgf(theta=p["theta"], a=p["a"], c=p.get("c"),
                           q=p.get("q"), r=p.get("r", 1.0))
            for p in record["factors"]))
    raise ConfigError(f"bad kernel record in model file: kind={kind!r}")


def _cmd_gp_fit(args, cfg: _Config) -> None:
    spec = _build_kernel(args, cfg)
    table = _read_csv(args.train)
    if table.shape[1] < 2:
        raise ConfigError("training CSV needs coordinate columns plus a target column")
    noise = float(_pick(args.noise, cfg, "gp", "noise", 0.0))
    model = gp_fit(spec, table[:, :-1], table[:, -1], noise)
    record = {"kernel": _kernel_to_json(spec),
              "inputs": model.inputs.tolist(),
              "targets": model.targets.tolist(),
              "noise": model.noise,
              "jitter": model.jitter,
              "jitter_level": model.jitter_level}
    with open(args.model_out, "w") as handle:
        json.dump(record, handle, indent=2)
        handle.write("\n")
    print(f"fit {model.targets.size} points, jitter_level={model.jitter_level}")


def _cmd_gp_predict(args, cfg: _Config) -> None:
    try:
        with open(args.model) as handle:
            record = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read model {args.model}: {exc}")
    for key in ("kernel", "inputs", "targets", "noise"):
        if key not in record:
            raise ConfigError(f"model file lacks {key!r}")
    spec = _kernel_from_json(record["kernel"])
    model = gp_fit(spec, np.asarray(record["inputs"], dtype=float),
                   np.asarray(record["targets"], dtype=float),
                   float(record["noise"]))
    queries = _read_csv(args.query)
    result = gp_predict(model, queries)
    _write_table(_out_path(args, cfg), ["mean", "variance"],
                 list(zip(result.means, result.variances)))
    if result.num_clamped:
        print(f"clamped {result.num_clamped} negative variances", file=sys.stderr)


def _cmd_reproduce_fig1(args, cfg: _Config) -> None:
    params = _FIG1_CASES[args.case]
    name, slope = _FIG1_REFERENCES[args.case]
    f = make_theta_pgf(**params)
    k_max = int(_pick(args.k_max, cfg, "activation", "k_max", 64))
    p = theta_coefficients(f, k_max)
    theta_act = activation_from_coefficients(
        p, eps_tail=max(0.0, f.mass() - float(p.sum())))
    ref_act = reference_activation(name, slope)
    xs = np.linspace(-3.0, 3.0, 601)
    theta_vals = theta_act(xs)
    ref_vals = ref_act(xs)
    _write_table(_out_path(args, cfg), ["x", "theta_activation", "reference"],
                 list(zip(xs, theta_vals, ref_vals)))
    window = np.abs(xs) <= 2.0 + 1e-12
    sup = float(np.max(np.abs(theta_vals[window] - ref_vals[window])))
    print(f"sup_distance {_fmt(sup)}")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-kernels",
        description="Compositional kernels from branching-process generating functions")
    subs = parser.add_subparsers(dest="command", required=True)

    def sub(name: str, func, help_: str) -> argparse.ArgumentParser:
        s = subs.add_parser(name, help=help_)
        s.set_defaults(func=func)
        s.add_argument("--config", type=str, default=None,
                       help="JSON experiment config; flags override it")
        return s

    s = sub("pgf-eval", _cmd_pgf_eval, "evaluate a theta PGF at a point")
    _add_pgf_flags(s)
    s.add_argument("--s", type=float, required=True)

    s = sub("pgf-iterate", _cmd_pgf_iterate, "n-fold composition in closed form")
    _add_pgf_flags(s)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--s", type=float, default=None)

    s = sub("pgf-coeffs", _cmd_pgf_coeffs, "series coefficients of a theta PGF")
    _add_pgf_flags(s)
    s.add_argument("--k-max", type=int, default=None)
    s.add_argument("--out", type=str, default=None)

    for name, func in (("activation-curve", _cmd_activation_curve),
                       ("activation-to-pgf", _cmd_activation_to_pgf)):
        s = sub(name, func, "activation curve export" if "curve" in name
                else "recover PGF coefficients from an activation")
        _add_pgf_flags(s)
        s.add_argument("--source", choices=("theta", "reference"), default=None)
        s.add_argument("--name", type=str, default=None,
                       help="reference activation: relu, linear, prelu(SLOPE)")
        s.add_argument("--slope", type=float, default=None)
        s.add_argument("--coeffs", type=str, default=None,
                       help="CSV of PGF coefficients to build the activation from")
        s.add_argument("--k-max", type=int, default=None)
        s.add_argument("--out", type=str, default=None)
        if "curve" in name:
            s.add_argument("--x-min", type=float, default=-3.0)
            s.add_argument("--x-max", type=float, default=3.0)
            s.add_argument("--step", type=float, default=0.01)
        else:
            s.add_argument("--quad-nodes", type=int, default=200)

    def add_kernel_flags(s: argparse.ArgumentParser) -> None:
        s.add_argument("--kind", choices=("pure", "mixed", "cmixed"), default=None)
        _add_pgf_flags(s)
        s.add_argument("--depth", type=int, default=None)
        s.add_argument("--factors", type=str, default=None,
                       help="JSON list of PGF objects (kind=mixed)")

    def add_rho_flags(s: argparse.ArgumentParser) -> None:
        s.add_argument("--rho", type=float, default=None)
        s.add_argument("--x", type=str, default=None, help="comma-separated vector")
        s.add_argument("--z", type=str, default=None, help="comma-separated vector")

    s = sub("kernel-eval", _cmd_kernel_eval, "kernel value at a correlation or pair")
    add_kernel_flags(s)
    add_rho_flags(s)

    s = sub("kernel-gram", _cmd_kernel_gram, "Gram matrix over points from CSV")
    add_kernel_flags(s)
    s.add_argument("--points", type=str, required=True)
    s.add_argument("--out", type=str, default=None)

    s = sub("kernel-limit", _cmd_kernel_limit, "infinite-depth kernel limit")
    add_kernel_flags(s)
    add_rho_flags(s)
    s.add_argument("--c-sum", type=float, default=None,
                   help="exact value of the infinite c sum (cmixed)")
    s.add_argument("--diverges", action="store_true",
                   help="assert the c sum diverges (cmixed)")

    s = sub("kernel-eigen", _cmd_kernel_eigen, "sphere eigensystem as JSON")
    add_kernel_flags(s)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k-max", type=int, default=None)
    s.add_argument("--out", type=str, default=None)

    s = sub("mlp-study", _cmd_mlp_study, "finite-width convergence study")
    s.add_argument("--activation", type=str, default="relu",
                   help="one name (pure) or comma list per layer (mixed)")
    s.add_argument("--depth", type=int, default=None)
    s.add_argument("--widths", type=str, default=None, help="comma list, increasing")
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--rho", type=float, default=0.5)
    s.add_argument("--out", type=str, default=None)

    s = sub("gp-fit", _cmd_gp_fit, "fit a GP and write the model JSON")
    add_kernel_flags(s)
    s.add_argument("--train", type=str, required=True,
                   help="CSV; coordinates then a final target column")
    s.add_argument("--noise", type=float, default=None)
    s.add_argument("--model-out", type=str, required=True)

    s = sub("gp-predict", _cmd_gp_predict, "posterior means and variances")
    s.add_argument("--model", type=str, required=True)
    s.add_argument("--query", type=str, required=True)
    s.add_argument("--out", type=str, default=None)

    s = sub("reproduce-fig1", _cmd_reproduce_fig1,
            "theta activation vs reference activation curves")
    s.add_argument("--case", choices=tuple(_FIG1_CASES), required=True)
    s.add_argument("--k-max", type=int, default=None)
    s.add_argument("--out", type=str, default=None)

    return parser


def app(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _Config(args.config)
        args.func(args, cfg)
    except ThetaKernelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3 if isinstance(exc, ArithmeticError) else 2
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(app())
