"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain infeasibility,
3 numeric non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import render
from .convergence_lab import FIELDS, METRICS, RNG_NAME, SweepConfig, monte_carlo_check, run_sweep
from .errors import DomainError, QuadratureError
from .excess import ExcessSpec, excess_survival, gpd_stability
from .functionals import DEFAULT_REL_TOL
from .maxent import forward_constraints, gpd_from_maxent, inverse_solve
from .survival_models import GpdParams, gpd_density, gpd_survival, parse_model_spec

EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _model(spec: str):
    try:
        return parse_model_spec(spec)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _require_format(args, allowed):
    if args.format not in allowed:
        raise UsageError(f"{args.command} supports --format {'/'.join(allowed)}, got {args.format}")


# plot-gpd

def cmd_plot_gpd(args) -> str:
    _require_format(args, ("csv", "json", "svg"))
    if not args.gammas or any(not (math.isfinite(g) and g >= 0) for g in args.gammas):
        raise UsageError("--gammas needs one or more finite values >= 0")
    if not (args.sigma > 0 and args.x_max > 0 and args.points >= 2):
        raise UsageError("--sigma and --x-max must be positive, --points >= 2")
    x = np.linspace(0.0, args.x_max, args.points)
    curves = {g: gpd_density(GpdParams(g, args.sigma), x) for g in args.gammas}
    if args.format == "svg":
        series = [(f"γ={g:g}", x, y) for g, y in curves.items()]
        return render.line_chart(series, title=f"Generalized Pareto densities, σ={args.sigma:g}",
                                 xlabel="x", ylabel="f(x)")
    if args.format == "json":
        return render.json_text(
            {"sigma": args.sigma, "x": x, "densities": {f"{g:g}": y for g, y in curves.items()}},
            args.precision)
    columns = ["x"] + [f"f_{g:g}" for g in curves]
    rows = np.column_stack([x] + list(curves.values()))
    comments = [
        "pickands plot-gpd: GPD densities f(x) = (1/sigma)(1 + gamma x / sigma)^(-1/gamma - 1)",
        f"sigma={render.fmt(args.sigma)}; column f_<gamma> holds the density for that gamma",
    ]
    return render.csv_text(columns, rows, comments, args.precision)


# maxent

def maxent_record(q: float, mu: float, theta: float) -> dict:
    sol = inverse_solve(q, mu, theta)
    check = forward_constraints(sol)
    rec = {"q": sol.q, "alpha": sol.alpha, "beta": sol.beta,
           "gpd_gamma": None, "gpd_sigma": None,
           "mu": check.mu, "theta": check.theta, "entropy_stat": check.entropy_stat}
    if math.isclose(sol.alpha, 1.0, rel_tol=1e-9):
        gpd = gpd_from_maxent(type(sol)(sol.q, 1.0, sol.beta))
        rec["gpd_gamma"], rec["gpd_sigma"] = gpd.gamma, gpd.sigma
    return rec


def cmd_maxent(args) -> str:
    _require_format(args, ("csv", "json"))
    rec = maxent_record(args.q, args.mu, args.theta)
    if args.format == "json":
        return render.json_text(rec, args.precision)
    comments = [
        "pickands maxent: max-entropy solution (alpha, beta) for order q and constraints (mu, theta)",
        "mu, theta, entropy_stat echo the forward constraints of the solution "
        "(entropy_stat = q-norm^q for q < 1, Shannon entropy for q = 1); gpd_* are nan unless alpha = 1",
    ]
    return render.csv_text(list(rec), [list(rec.values())], comments, args.precision)


# excess / sweep

REPORT_COLUMNS = (
    ["u", "scale", "q"]
    + list(FIELDS)
    + [f"pred_{f}" for f in FIELDS]
    + [f"target_{f}" for f in FIELDS]
    + [f"relerr_pred_{f}" for f in FIELDS]
    + [f"relerr_target_{f}" for f in FIELDS]
    + ["entropy_gap", "bregman", "sup_norm", "stability_sup"]
)


def report_row(r) -> dict:
    row = {"u": r.u, "scale": r.scale, "q": r.q}
    for f in FIELDS:
        row[f] = getattr(r.computed, f)
    pred = dict((f, getattr(r.predicted, f)) for f in FIELDS)
    if pred["qnorm_q"] is None and r.q == 1:
        pred["qnorm_q"] = r.predicted.onenorm
    for f in FIELDS:
        row[f"pred_{f}"] = pred[f]
    targets = {}
    if r.target is not None:
        targets = {"onenorm": r.target.theta, "moment": r.target.mu}
        if r.target_solution.q == 1:
            targets["shannon"] = r.target.entropy_stat
            if r.q == 1:
                targets["qnorm_q"] = r.target.theta
        elif math.isclose(r.q, r.target_solution.q, rel_tol=0, abs_tol=1e-12):
            targets["qnorm_q"] = r.target.entropy_stat
    for f in FIELDS:
        row[f"target_{f}"] = targets.get(f)
        row[f"relerr_pred_{f}"] = r.err_predicted.get(f)
        row[f"relerr_target_{f}"] = r.err_target.get(f)
    for k in ("entropy_gap", "bregman", "sup_norm", "stability_sup"):
        row[k] = getattr(r, k)
    return row


def _report_comments(command, model, normalization, q_note):
    return [
        f"pickands {command}: model={model.spec} normalization={normalization} {q_note}",
        "columns: qnorm_q=int S^q, onenorm=int S, moment=int z S, shannon=-int S log S of the "
        "(normalized) excess survival S by quadrature",
        "pred_* = asymptotic predictions; target_* = constraints of the matching max-entropy "
        "solution; relerr_* = |computed - ref| / |ref|",
        "entropy_gap = H_q(G*) - H_q(S); bregman = B(S, G*); sup_norm = max |S - target GPD| "
        "on the grid; stability_sup = max |excess - stability GPD| (gpd models)",
        "inf marks divergent integrals; nan marks quantities not defined for this row",
    ]


def _reports_output(args, reports, comments, svg_title):
    rows = [report_row(r) for r in reports]
    if args.format == "json":
        return render.json_text({"comments": comments, "rows": rows}, args.precision)
    if args.format == "svg":
        u = [r["u"] for r in rows]
        series = []
        for key in ["sup_norm", "bregman"] + [f"relerr_target_{f}" for f in FIELDS] \
                + [f"relerr_pred_{f}" for f in FIELDS]:
            ys = [r[key] if r[key] is not None else math.nan for r in rows]
            if any(math.isfinite(y) and y > 0 for y in ys):
                series.append((key, u, ys))
        gaps = [abs(r["entropy_gap"]) if r["entropy_gap"] is not None else math.nan for r in rows]
        if any(math.isfinite(y) and y > 0 for y in gaps):
            series.append(("|entropy_gap|", u, gaps))
        return render.line_chart(series, title=svg_title, xlabel="threshold u",
                                 ylabel="discrepancy", logx=True, logy=True)
    return render.csv_text(REPORT_COLUMNS, [[row[c] for c in REPORT_COLUMNS] for row in rows],
                           comments, args.precision)


def cmd_excess(args) -> str:
    _require_format(args, ("csv", "json"))
    model = _model(args.model)
    if not args.u or any(not u > 0 for u in args.u):
        raise UsageError("--u needs positive thresholds")
    u_grid = sorted(set(args.u))
    config = SweepConfig(model, u_grid, q=args.q, metrics=("functionals",),
                         rel_tol=args.tol, normalized=args.normalized)
    reports = run_sweep(config)
    normalization = reports[0].normalization
    comments = _report_comments("excess", model, normalization, f"q={render.fmt(reports[0].q)}")
    return _reports_output(args, reports, comments, f"excess functionals, {model.spec}")


def cmd_sweep(args) -> str:
    _require_format(args, ("csv", "json", "svg"))
    model = _model(args.model)
    if not (0 < args.u_min < args.u_max) or args.points < 2:
        raise UsageError("need 0 < --u-min < --u-max and --points >= 2")
    metrics = tuple(args.metrics) if args.metrics else METRICS
    unknown = set(metrics) - set(METRICS)
    if unknown:
        raise UsageError(f"unknown metrics {sorted(unknown)}; choose from {', '.join(METRICS)}")
    u_grid = np.geomspace(args.u_min, args.u_max, args.points)
    config = SweepConfig(model, u_grid, q=args.q, metrics=metrics, rel_tol=args.tol,
                         workers=args.workers)
    reports = run_sweep(config)
    comments = _report_comments("sweep", model, reports[0].normalization,
                                f"q={render.fmt(reports[0].q)} metrics={','.join(metrics)}")
    return _reports_output(args, reports, comments, f"convergence of the normalized excess, {model.spec}")


# stability

def stability_table(gamma: float, sigma: float, u: float, points: int = 20):
    params = GpdParams(gamma, sigma)
    image = gpd_stability(params, u)
    from .survival_models import make_model
    excess = excess_survival(ExcessSpec(make_model("gpd", (gamma, sigma)), u))
    z = np.linspace(0.0, 5.0 * image.sigma, points)
    ex = excess(z)
    gp = gpd_survival(image, z)
    return image, z, ex, gp, np.abs(ex - gp)


def cmd_stability(args) -> str:
    _require_format(args, ("csv", "json"))
    try:
        image, z, ex, gp, err = stability_table(args.gamma, args.sigma, args.u)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        return render.json_text({
            "gamma": args.gamma, "sigma": args.sigma, "u": args.u,
            "sigma_prime": image.sigma, "max_abs_error": float(err.max()),
            "table": [{"z": a, "excess": b, "gpd": c, "abs_err": d}
                      for a, b, c, d in zip(z, ex, gp, err)],
        }, args.precision)
    comments = [
        "pickands stability: excess of GPD(gamma, sigma) over u versus GPD(gamma, sigma')",
        f"gamma={render.fmt(args.gamma)} sigma={render.fmt(args.sigma)} u={render.fmt(args.u)} "
        f"sigma_prime={render.fmt(image.sigma, args.precision)} "
        f"max_abs_error={render.fmt(err.max(), args.precision)}",
    ]
    return render.csv_text(["z", "excess", "gpd", "abs_err"], np.column_stack([z, ex, gp, err]),
                           comments, args.precision)


# montecarlo

def cmd_montecarlo(args) -> str:
    _require_format(args, ("csv", "json"))
    model = _model(args.model)
    rep = monte_carlo_check(model, args.u, args.n, args.seed)
    fields = ["model", "u", "n", "seed", "exceedances", "scale",
              "onenorm", "onenorm_se", "moment", "moment_se"]
    rec = {f: getattr(rep, f) for f in fields}
    if args.format == "json":
        return render.json_text(dict(rec, rng=rep.rng), args.precision)
    comments = [
        "pickands montecarlo: empirical 1-norm and first moment of the normalized excess survival",
        f"rng={RNG_NAME} seed={args.seed}",
    ]
    return render.csv_text(fields, [list(rec.values())], comments, args.precision)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", default="csv", choices=("csv", "json", "svg"))
    common.add_argument("--precision", type=int, default=10, help="significant digits, 4..17")
    common.add_argument("--tol", type=float, default=DEFAULT_REL_TOL, help="quadrature rel_tol")
    common.add_argument("--seed", type=int, default=0, help="seed for Monte Carlo draws")

    parser = _Parser(prog="pickands", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plot-gpd", parents=[common], help="GPD density curves")
    p.add_argument("--gammas", type=_floats, default=[0.0, 1.0, 10.0, 100.0])
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=201)
    p.set_defaults(func=cmd_plot_gpd)

    p = sub.add_parser("maxent", parents=[common], help="solve for (alpha, beta)")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(func=cmd_maxent)

    p = sub.add_parser("excess", parents=[common], help="computed vs predicted excess functionals")
    p.add_argument("model", help="model spec name[:p1[,p2]]")
    p.add_argument("--u", type=_floats, required=True, help="comma-separated thresholds")
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_excess)

    p = sub.add_parser("sweep", parents=[common], help="log-spaced threshold sweep")
    p.add_argument("model")
    p.add_argument("--u-min", type=float, required=True)
    p.add_argument("--u-max", type=float, required=True)
    p.add_argument("--points", type=int, default=5)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--metrics", type=lambda s: [m.strip() for m in s.split(",") if m.strip()],
                   default=None, help=f"subset of {','.join(METRICS)}")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stability", parents=[common], help="GPD threshold stability check")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--u", type=float, required=True)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("montecarlo", parents=[common], help="Monte Carlo cross-check")
    p.add_argument("model")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--n", type=int, default=100_000)
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if not 4 <= args.precision <= 17:
            raise UsageError(f"--precision must lie in [4, 17], got {args.precision}")
        if not 1e-12 <= args.tol <= 1e-2:
            raise UsageError(f"--tol must lie in [1e-12, 1e-2], got {args.tol}")
        text = args.func(args)
    except UsageError as exc:
        print(f"pickands {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        record = {"error": "domain", "command": args.command, "message": str(exc)}
        render.write_output(render.json_text(record), args.out)
        print(f"pickands {args.command}: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except QuadratureError as exc:
        print(f"pickands {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    render.write_output(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
