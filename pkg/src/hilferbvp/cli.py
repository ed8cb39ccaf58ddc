"""Command-line interface.

Subcommands: ``bound``, ``theta``, ``eigen``, ``solve``, ``ml-plot``, ``verify-paper``.
Problem data comes from an optional JSON config (``--config``) with flags
taking precedence. Exit status: 0 evaluated, 1 usage/config error, 2 numerical
failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field, fields

import numpy as np

from . import analysis, green, solver, specfun
from .expr import ExprError
from .quadrature import QuadratureError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class ConfigError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass


# -- config -------------------------------------------------------------------


@dataclass
class QuadratureConfig:
    tol: float = 1e-12
    max_depth: int = 3


@dataclass
class OutputConfig:
    format: str = "csv"
    path: str | None = None


@dataclass
class Config:
    a: float = 0.0
    b: float = 1.0
    alpha: float = 2.0
    gamma: float = 2.0
    q: str = "1"
    f: str = "u"
    r1: float | None = None
    r2: float | None = None
    omega: float | None = None
    norm_u: float | None = None
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        kwargs = {}
        for key, value in data.items():
            if key == "quadrature":
                kwargs[key] = _nested(QuadratureConfig, value, "quadrature")
            elif key == "output":
                kwargs[key] = _nested(OutputConfig, value, "output")
            elif key in ("q", "f"):
                if not isinstance(value, str):
                    raise ConfigError(f"field {key!r} must be an expression string")
                kwargs[key] = value
            else:
                kwargs[key] = _number(key, value)
        return cls(**kwargs)

    def validate(self) -> "Config":
        if self.output.format not in ("csv", "json"):
            raise ConfigError("field 'output.format' must be 'csv' or 'json'")
        if not self.quadrature.tol > 0:
            raise ConfigError("field 'quadrature.tol' must be positive")
        self.spec()
        return self

    def spec(self) -> analysis.ProblemSpec:
        try:
            return analysis.ProblemSpec.from_strings(self.a, self.b, self.alpha, self.gamma, self.q, self.f)
        except ExprError as exc:
            raise ConfigError(f"invalid expression: {exc}") from exc
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _number(key: str, value):
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {key!r} must be a number")
    return float(value)


def _nested(klass, value, name):
    if not isinstance(value, dict):
        raise ConfigError(f"field {name!r} must be an object")
    known = {f.name for f in fields(klass)}
    unknown = sorted(set(value) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(unknown)}")
    return klass(**value)


_OVERRIDES = ("a", "b", "alpha", "gamma", "q", "f", "r1", "r2", "omega", "norm_u")


def load_config(args: argparse.Namespace) -> Config:
    data = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    cfg = Config.from_dict(data)
    for key in _OVERRIDES:
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "quad_tol", None) is not None:
        cfg.quadrature.tol = args.quad_tol
    if getattr(args, "format", None):
        cfg.output.format = args.format
    if getattr(args, "output", None):
        cfg.output.path = args.output
    return cfg.validate()


# -- output -------------------------------------------------------------------


def _fmt(x) -> str:
    return format(float(x), ".17g")


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _finite(obj):
    # NaN/inf are not JSON; report them as null
    if isinstance(obj, float):
        return obj if np.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _json(obj) -> str:
    return json.dumps(_finite(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(cfg: Config, header, rows, payload) -> None:
    if not cfg.output.path:
        return
    if cfg.output.format == "csv":
        write_atomic(cfg.output.path, csv_text(header, rows))
    else:
        write_atomic(cfg.output.path, _json(payload))


# -- subcommands --------------------------------------------------------------


def cmd_bound(cfg: Config, kinds: list[str], out=sys.stdout) -> list[analysis.BoundReport]:
    spec = cfg.spec()
    tol = cfg.quadrature.tol
    reports = []
    for kind in kinds:
        if kind == "lyapunov":
            if not spec.linear:
                raise ConfigError("kind 'lyapunov' needs f = 'u'; use 'nonlinear' with omega")
            reports.append(analysis.lyapunov_check_linear(spec, tol))
        elif kind == "nonlinear":
            if cfg.omega is None:
                raise ConfigError("field 'omega' is required for kind 'nonlinear'")
            reports.append(analysis.lyapunov_check_nonlinear(spec, cfg.omega, tol))
        elif kind == "hw":
            norm_u = cfg.norm_u
            if norm_u is None:
                if not spec.linear:
                    raise ConfigError("field 'norm_u' is required for kind 'hw' with nonlinear f")
                norm_u = 1.0
            reports.append(analysis.hartman_wintner_check(spec, norm_u, tol))
        else:
            raise ConfigError(f"unknown bound kind {kind!r}")
    payload = [r.to_dict() for r in reports]
    out.write(_json(payload))
    _emit(
        cfg,
        ("kind", "lhs", "rhs", "verdict"),
        [(r.kind.value, r.lhs, r.rhs, r.verdict.value) for r in reports],
        payload,
    )
    return reports


def cmd_theta(cfg: Config, u_max: float | None = None, out=sys.stdout) -> dict:
    spec = cfg.spec()
    tp = analysis.theta_pair(spec, cfg.quadrature.tol)
    result = {"theta_pair": tp.to_dict(), "r": green.crossing_r(spec.kernel)}
    if cfg.r1 is not None and cfg.r2 is not None:
        result["existence"] = analysis.existence_check(spec, cfg.r1, cfg.r2, tp).to_dict()
    if u_max is not None:
        result["nonexistence"] = analysis.nonexistence_check(spec, (0.0, u_max), tp).to_dict()
    out.write(_json(result))
    _emit(cfg, ("quantity", "value"), [("theta", tp.theta), ("theta_star", tp.theta_star)], result)
    return result


def ml_curve(alpha: float, gamma: float, lambda_max: float, n: int):
    rows = []
    for lam in np.linspace(0.0, lambda_max, n + 1):
        try:
            rows.append((float(lam), specfun.ml_eval(alpha, gamma, -lam).value))
        except specfun.MLRangeError:
            break
    return rows


def cmd_eigen(cfg: Config, k_max: int, lambda_max: float | None, n_samples: int = 1000, out=sys.stdout) -> dict:
    al, ga = cfg.alpha, cfg.gamma
    pairs, notes = solver.eigen_solve(al, ga, k_max, lambda_max=lambda_max)
    ly = analysis.eigen_lower_bound_lyapunov(al, ga)
    hw = analysis.eigen_lower_bound_hw(al, ga)
    out.write(f"E_{{{al:g},{ga:g}}}(-lambda) roots  (Lyapunov bound {ly:.10g}, Hartman-Wintner bound {hw:.10g})\n")
    out.write(f"{'k':>3}  {'lambda':>22}  {'> Lyapunov':>10}  {'> HW':>6}  {'residual':>10}\n")
    for i, p in enumerate(pairs, 1):
        out.write(
            f"{i:>3}  {p.lam:>22.15g}  {str(p.lam > ly):>10}  {str(p.lam > hw):>6}  {p.derivative_residual:>10.3g}\n"
        )
    for note in notes:
        out.write(f"note: {note}\n")
    span = lambda_max or (1.2 * pairs[-1].lam if pairs else 50.0)
    rows = ml_curve(al, ga, span, n_samples)
    result = {
        "alpha": al,
        "gamma": ga,
        "roots": [p.lam for p in pairs],
        "eigenpairs": [p.to_dict() for p in pairs],
        "lyapunov_bound": ly,
        "hw_bound": hw,
        "notes": notes,
    }
    _emit(cfg, ("lambda", "ml_value"), rows, result)
    return result


def cmd_ml_plot(cfg: Config, lambda_max: float, n_samples: int, out=sys.stdout) -> list:
    rows = ml_curve(cfg.alpha, cfg.gamma, lambda_max, n_samples)
    text = csv_text(("lambda", "ml_value"), rows)
    if cfg.output.path:
        write_atomic(cfg.output.path, text)
    else:
        out.write(text)
    return rows


def cmd_solve(cfg: Config, n_grid: int, tol: float, max_iter: int, out=sys.stdout) -> dict:
    spec = cfg.spec()
    sol = solver.picard_solve(spec, n_grid=n_grid, tol=tol, max_iter=max_iter, r1=cfg.r1)
    summary = sol.summary()
    if sol.converged:
        summary["residual_certified"] = sol.quad_error
    if cfg.r1 is not None and cfg.r2 is not None:
        summary["in_window"] = bool(cfg.r1 <= sol.norm <= cfg.r2)
        summary["window"] = [cfg.r1, cfg.r2]
    if cfg.output.path:
        if cfg.output.format == "csv":
            write_atomic(cfg.output.path, csv_text(("t", "u"), zip(sol.grid, sol.values)))
        else:
            payload = dict(summary, t=[float(x) for x in sol.grid], u=[float(x) for x in sol.values])
            write_atomic(cfg.output.path, _json(payload))
    out.write(_json(summary))
    if sol.diverged or not sol.converged:
        raise NumericalFailure(
            f"Picard iteration {'diverged' if sol.diverged else 'did not converge'} after {sol.iterations} sweeps"
        )
    return summary


def cmd_verify_paper(out=sys.stdout, json_path: str | None = None) -> list:
    from .published import reproduction_rows

    rows = reproduction_rows()
    w = max(len(r.quantity) for r in rows)
    out.write(f"{'quantity':<{w}}  {'published':>16}  {'computed':>22}  status\n")
    for r in rows:
        out.write(f"{r.quantity:<{w}}  {r.published_text:>16}  {r.computed_text:>22}  {r.status}\n")
    n_disc = sum(r.status == "DISCREPANCY" for r in rows)
    out.write(f"\n{len(rows)} rows, {n_disc} DISCREPANCY\n")
    if json_path:
        write_atomic(json_path, _json([r.to_dict() for r in rows]))
    return rows


# -- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file")
    for name in ("a", "b", "alpha", "gamma", "r1", "r2", "omega"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--norm-u", dest="norm_u", type=float)
    p.add_argument("--q", help="coefficient q(t)")
    p.add_argument("--f", help="nonlinearity f(u)")
    p.add_argument("--quad-tol", dest="quad_tol", type=float)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", "-o")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilferbvp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bound", help="Lyapunov / Hartman-Wintner necessary conditions")
    _problem_flags(p)
    p.add_argument("--kind", action="append", choices=("lyapunov", "nonlinear", "hw"))

    p = sub.add_parser("theta", help="existence constants theta, theta* and hypothesis checks")
    _problem_flags(p)
    p.add_argument("--u-max", dest="u_max", type=float, help="also run the nonexistence test on (0, u_max]")

    p = sub.add_parser("eigen", help="eigenvalues as Mittag-Leffler roots")
    _problem_flags(p)
    p.add_argument("--k-max", dest="k_max", type=int, default=3)
    p.add_argument("--lambda-max", dest="lambda_max", type=float)
    p.add_argument("--n-samples", dest="n_samples", type=int, default=1000)

    p = sub.add_parser("solve", help="Picard iteration for a positive solution")
    _problem_flags(p)
    p.add_argument("--n-grid", dest="n_grid", type=int, default=400)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=500)

    p = sub.add_parser("ml-plot", help="CSV samples of E_{alpha,gamma}(-lambda)")
    _problem_flags(p)
    p.add_argument("--lambda-max", dest="lambda_max", type=float, default=100.0)
    p.add_argument("--n-samples", dest="n_samples", type=int, default=1000)

    p = sub.add_parser("verify-paper", help="reproduce the published constants and list discrepancies")
    p.add_argument("--json", dest="json_path", help="also write the table as JSON")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify-paper":
            cmd_verify_paper(out, args.json_path)
            return EXIT_OK
        cfg = load_config(args)
        if args.command == "bound":
            cmd_bound(cfg, args.kind or ["lyapunov"], out)
        elif args.command == "theta":
            cmd_theta(cfg, args.u_max, out)
        elif args.command == "eigen":
            cmd_eigen(cfg, args.k_max, args.lambda_max, args.n_samples, out)
        elif args.command == "solve":
            cmd_solve(cfg, args.n_grid, args.tol, args.max_iter, out)
        elif args.command == "ml-plot":
            cmd_ml_plot(cfg, args.lambda_max, args.n_samples, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, QuadratureError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
