"""Command-line front end: verify, oscillate, sweep, spectrum.

Exit codes: 0 success, 1 physics failure (broken phase or a failed check),
2 usage error.  ``PTOSC_TOL`` overrides the default check tolerance.  Output
files are written atomically (temp file + rename) and identical invocations
produce byte-identical files.
"""

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .coperator import build_C
from .errors import BrokenPTError, ParameterError, PtoscError, ShapeError
from .linalg import eig_oracle
from .models import ModelSpec
from .oscillate import default_t_grid, standard_flavour_basis, transition_table
from .verify import realize, run_full_suite

EXIT_OK = 0
EXIT_PHYSICS = 1
EXIT_USAGE = 2

MODEL_FLAGS = {
    "sfdm": ("chi", "psi", "theta", "phi"),
    "h8": ("m0", "m1", "m2", "m3"),
    "h8r": ("m0", "m1", "m2"),
    "h8v": ("m0", "m2"),
}


def default_tol() -> float:
    raw = os.environ.get("PTOSC_TOL")
    return float(raw) if raw else 1e-10


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ptosc-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=("sfdm", "h8", "h8r", "h8v"), help="model name")
    parser.add_argument("--model-file", help="JSON ModelSpec file (any model, incl. generic)")
    for flag in ("chi", "psi", "theta", "phi", "m0", "m1", "m2", "m3"):
        parser.add_argument(f"--{flag}", type=float)
    parser.add_argument("--p", type=float, default=0.0, help="momentum magnitude")
    parser.add_argument("--theta-p", type=float, default=0.0, help="momentum polar angle")
    parser.add_argument("--phi-p", type=float, default=0.0, help="momentum azimuthal angle")


def model_spec_from_args(args) -> ModelSpec:
    if args.model_file:
        with open(args.model_file) as fh:
            return ModelSpec.from_json_dict(json.load(fh))
    if not args.model:
        raise SystemExit2("one of --model or --model-file is required")
    params = {}
    for flag in MODEL_FLAGS[args.model]:
        value = getattr(args, flag)
        if value is None:
            if flag in ("m1", "m2", "m3"):
                value = 0.0
            else:
                raise SystemExit2(f"--{flag} is required for model {args.model}")
        params[flag] = value
    momentum = None
    if args.model != "sfdm":
        momentum = {"p": args.p, "theta": args.theta_p, "phi": args.phi_p}
    return ModelSpec(model=args.model, params=params, momentum=momentum)


class SystemExit2(Exception):
    """Usage error carrying its message; converted to exit code 2 in main."""


def _add_tgrid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-points", type=int, default=64, help="number of grid points")
    parser.add_argument("--t-max", type=float, help="grid end (default: one oscillation period)")


def _t_grid(args, eigsys) -> np.ndarray:
    if args.t_max is not None:
        return np.linspace(0.0, args.t_max, args.t_points)
    return default_t_grid(eigsys, args.t_points)


def _build_table(spec: ModelSpec, args, tol: float):
    real = realize(spec)
    if real.eigensystem is None:
        raise BrokenPTError(real.eigensystem_note or "no eigenbasis for this model")
    eigsys = real.eigensystem
    c = build_C(real.sym, eigsys, hamiltonian=real.hamiltonian, tol=tol)
    basis = standard_flavour_basis(real.sym, eigsys, c)
    t_grid = _t_grid(args, eigsys)
    return transition_table(real.sym, basis, eigsys, c, t_grid), eigsys


def analytic_pattern(eigsys, t_grid) -> np.ndarray:
    """The cos^2/sin^2 table implied by the two eigenvalue gaps.

    Flavours pair eigenkets (1,3) and (2,4); each pair oscillates with half
    its eigenvalue gap and the pairs do not mix.
    """
    values = np.real(eigsys.values)
    g13 = 0.5 * (values[2] - values[0])
    g24 = 0.5 * (values[3] - values[1])
    out = np.zeros((len(t_grid), 4, 4))
    for k, t in enumerate(t_grid):
        for (i, j, g) in ((0, 2, g13), (1, 3, g24)):
            c2, s2 = math.cos(g * t) ** 2, math.sin(g * t) ** 2
            out[k, i, i] = out[k, j, j] = c2
            out[k, i, j] = out[k, j, i] = s2
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    spec = model_spec_from_args(args)
    reports = run_full_suite(spec, tol=default_tol())
    for report in reports:
        print(report.to_json_line())
    return EXIT_OK if all(r.passed for r in reports) else EXIT_PHYSICS


def cmd_spectrum(args) -> int:
    spec = model_spec_from_args(args)
    real = realize(spec)
    values = eig_oracle(real.hamiltonian).values
    for lam in values:
        print(f"{lam.real:.12g}" if abs(lam.imag) < 1e-12 else f"{lam.real:.12g}{lam.imag:+.12g}j")
    return EXIT_OK


def cmd_oscillate(args) -> int:
    spec = model_spec_from_args(args)
    table, eigsys = _build_table(spec, args, default_tol())
    if args.format == "json":
        text = json.dumps(table.to_json_dict(), indent=2) + "\n"
    else:
        text = table.to_csv()
    _emit(text, args.out)
    if args.golden:
        deviation = float(np.max(np.abs(table.probs - analytic_pattern(eigsys, table.t_grid))))
        print(f"golden max deviation: {deviation:.3e}", file=sys.stderr)
        if deviation > default_tol():
            return EXIT_PHYSICS
    return EXIT_OK


def _sweep_point(template: ModelSpec, axis: str, value: float, args, tol: float):
    params = dict(template.params)
    momentum = dict(template.momentum or {})
    if axis in params:
        params[axis] = value
    elif axis in ("p", "theta", "phi") and template.model != "sfdm":
        momentum[axis] = value
    else:
        raise SystemExit2(f"sweep axis {axis!r} does not resolve against model {template.model!r}")
    spec = ModelSpec(model=template.model, params=params, momentum=momentum or None)
    try:
        table, _ = _build_table(spec, args, tol)
    except (BrokenPTError, PtoscError) as exc:
        return value, None, f"broken: {exc}"
    return value, table, "ok"


def cmd_sweep(args) -> int:
    with open(args.config) as fh:
        config = json.load(fh)
    template = ModelSpec.from_json_dict(config["model"])
    axes = config.get("sweep", [])
    if len(axes) != 1:
        raise SystemExit2("exactly one sweep axis is supported")
    axis = axes[0]
    name, start, stop, steps = axis["param"], float(axis["start"]), float(axis["stop"]), int(axis["steps"])
    if steps < 1:
        raise SystemExit2("steps must be >= 1")
    values = [start] if steps == 1 else list(np.linspace(start, stop, steps))
    out_dir = config.get("out_dir", args.out_dir or ".")
    os.makedirs(out_dir, exist_ok=True)
    fmt = config.get("format", "csv")
    tol = default_tol()

    class GridArgs:
        t_points = int(config.get("t_grid", {}).get("points", 64))
        t_max = config.get("t_grid", {}).get("t_max")

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda v: _sweep_point(template, name, v, GridArgs, tol), values))
    index = []
    for value, table, status in results:
        entry = {"param": name, "value": float(value), "status": status}
        if table is not None:
            fname = f"sweep_{name}={value:.12g}.{fmt}"
            path = os.path.join(out_dir, fname)
            if fmt == "json":
                _atomic_write(path, json.dumps(table.to_json_dict(), indent=2) + "\n")
            else:
                _atomic_write(path, table.to_csv())
            entry["file"] = fname
        index.append(entry)
    _atomic_write(os.path.join(out_dir, "index.json"), json.dumps(index, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptosc", description="T-odd PT-symmetric models: verification and oscillation tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the axiom suite; JSON-lines report")
    _add_model_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_spec = sub.add_parser("spectrum", help="print eigenvalues of the working Hamiltonian")
    _add_model_flags(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_osc = sub.add_parser("oscillate", help="emit a transition-probability table")
    _add_model_flags(p_osc)
    _add_tgrid_flags(p_osc)
    p_osc.add_argument("--out", help="output file (stdout if omitted)")
    p_osc.add_argument("--format", choices=("csv", "json"), default="csv")
    p_osc.add_argument("--golden", action="store_true", help="compare against the analytic cos^2/sin^2 pattern")
    p_osc.set_defaults(func=cmd_oscillate)

    p_sweep = sub.add_parser("sweep", help="run oscillation tables over a parameter grid")
    p_sweep.add_argument("--config", required=True, help="JSON sweep configuration")
    p_sweep.add_argument("--out-dir", help="output directory (overridden by config out_dir)")
    p_sweep.add_argument("--jobs", type=int, default=1, help="concurrent grid points")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, FileNotFoundError, KeyError) as exc:
        print(f"error: malformed configuration: {exc!r}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPTError as exc:
        print(f"physics failure: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except PtoscError as exc:
        print(f"physics failure: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    raise SystemExit(main())
