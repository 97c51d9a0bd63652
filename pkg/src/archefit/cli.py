"""Command-line front end.

Subcommands::

    fit-aa    archetypes of a plain data matrix (wide CSV)
    fit-ada   archetypoids of a plain data matrix
    fit-faa   functional archetypes of one or more curve files
    fit-fada  functional archetypoids of one or more curve files
    elbow     RSS against a range of k values (CSV + SVG)
    render    SVG overlay of curves and a fitted model

Options may come from a JSON config file (``--config``); explicit flags
override it, and a ``model.json`` written by a fit can be passed back as
the config to reproduce the run.  Outputs are staged in a temporary
directory and moved into place only on success.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
"""

import argparse
import csv
import json
import os
import shutil
import sys
import tempfile

import numpy as np

from . import __version__, svg
from .archetypes import ElbowReport, ElbowRow, FitOptions, fit_archetypes, rss as rss_of
from .archetypoids import fit_archetypoids
from .basis import BasisSpec, SampledCurve, design_matrix
from .errors import (
    ArchefitError,
    ArgumentError,
    DataError,
    IterationLimitError,
    NotPositiveDefiniteError,
)
from .functional import (
    FunctionalDataset,
    MultivariateFunctionalDataset,
    faa,
    fada,
    fit_dataset,
    component_slices,
    stack_multivariate,
    standardize,
)
from .io import ingest
from .linalg import SolverOptions

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# (dest, hard default) for options that may also come from the config file.
CONFIG_DEFAULTS = {
    "inputs": None,
    "format": "wide",
    "k": None,
    "k_min": None,
    "k_max": None,
    "mode": "aa",
    "basis": "bspline",
    "basis_size": 12,
    "domain": None,
    "order": 4,
    "period": None,
    "standardize": False,
    "restarts": 10,
    "max_iters": 100,
    "rel_tol": 1e-6,
    "seed": 0,
    "huge_weight": 200.0,
    "grid_size": 201,
    "output_grid": 101,
    "model": None,
}


def build_parser():
    parser = _Parser(prog="archefit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"archefit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_k=True):
        p.add_argument("--config", help="JSON config file (or a model.json)")
        p.add_argument("-i", "--input", action="append", dest="inputs",
                       metavar="[NAME=]PATH", help="input CSV; repeatable")
        p.add_argument("--format", choices=["wide", "long"], default=None)
        p.add_argument("-o", "--output-dir", required=False, default=None)
        if with_k:
            p.add_argument("-k", type=int, default=None, help="number of archetypes")
        p.add_argument("--standardize", action=argparse.BooleanOptionalAction,
                       default=None)
        p.add_argument("--restarts", type=int, default=None)
        p.add_argument("--max-iters", type=int, default=None, dest="max_iters")
        p.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--huge-weight", type=float, default=None, dest="huge_weight")
        p.add_argument("--grid-size", type=int, default=None, dest="grid_size",
                       help="grid used for functional standardisation")
        p.add_argument("--output-grid", type=int, default=None, dest="output_grid",
                       help="points at which archetype curves are exported")

    def add_basis(p):
        p.add_argument("--basis", choices=["fourier", "bspline"], default=None)
        p.add_argument("--basis-size", type=int, default=None, dest="basis_size")
        p.add_argument("--domain", type=float, nargs=2, default=None,
                       metavar=("A", "B"))
        p.add_argument("--order", type=int, default=None)
        p.add_argument("--period", type=float, default=None)

    for name in ("fit-aa", "fit-ada", "fit-faa", "fit-fada"):
        p = sub.add_parser(name, help=f"run {name[4:].upper()}")
        add_common(p)
        if name in ("fit-faa", "fit-fada"):
            add_basis(p)

    p = sub.add_parser("elbow", help="RSS for a range of k values")
    add_common(p, with_k=False)
    add_basis(p)
    p.add_argument("--k-min", type=int, default=None, dest="k_min")
    p.add_argument("--k-max", type=int, default=None, dest="k_max")
    p.add_argument("--mode", choices=["aa", "ada", "faa", "fada"], default=None)

    p = sub.add_parser("render", help="draw curves (and a fitted model) as SVG")
    add_common(p, with_k=False)
    add_basis(p)
    p.add_argument("--model", default=None, help="model.json from a fit command")
    return parser


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config {path} is not valid JSON: {exc}") from exc
    if isinstance(raw, dict) and "config" in raw and "results" in raw:
        raw = raw["config"]  # a model.json was passed
    if not isinstance(raw, dict):
        raise DataError(f"config {path} must hold a JSON object")
    return raw


def resolve_options(args):
    """Merge flag values over config-file values over hard defaults."""
    config = _load_config(args.config) if getattr(args, "config", None) else {}
    merged = {}
    problems = []
    for key, default in CONFIG_DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
        elif key in config:
            merged[key] = config[key]
        else:
            merged[key] = default
    for key in config:
        if key not in CONFIG_DEFAULTS and key != "output_dir":
            problems.append(f"unknown config key {key!r}")
    merged["output_dir"] = getattr(args, "output_dir", None) or config.get("output_dir")
    return merged, problems


def validate_config(command, cfg):
    """Collect every problem with the run configuration at once."""
    problems = []
    needs_inputs = command != "render" or True  # render also needs data
    if needs_inputs and not cfg.get("inputs"):
        problems.append("at least one --input is required")
    if command.startswith("fit"):
        if cfg.get("k") is None:
            problems.append("-k is required")
        elif cfg["k"] < 1:
            problems.append(f"k must be >= 1, got {cfg['k']}")
    if command == "elbow":
        if cfg.get("k_min") is None or cfg.get("k_max") is None:
            problems.append("--k-min and --k-max are required")
        elif not 1 <= cfg["k_min"] <= cfg["k_max"]:
            problems.append(f"need 1 <= k-min <= k-max, got {cfg['k_min']}..{cfg['k_max']}")
    if command != "render" and not cfg.get("output_dir"):
        problems.append("--output-dir is required")
    if cfg.get("restarts") is not None and cfg["restarts"] < 1:
        problems.append("restarts must be >= 1")
    if cfg.get("rel_tol") is not None and not cfg["rel_tol"] > 0:
        problems.append("rel-tol must be positive")
    if cfg.get("huge_weight") is not None and not cfg["huge_weight"] > 0:
        problems.append("huge-weight must be positive")
    if cfg.get("basis_size") is not None and cfg["basis_size"] < 1:
        problems.append("basis-size must be >= 1")
    if cfg.get("output_grid") is not None and cfg["output_grid"] < 2:
        problems.append("output-grid must be >= 2")
    return problems


def _parse_inputs(raw):
    out = []
    for item in raw:
        if isinstance(item, (list, tuple)) and len(item) == 2:
            out.append((str(item[0]), str(item[1])))
        elif isinstance(item, str) and "=" in item and not os.path.exists(item):
            name, path = item.split("=", 1)
            out.append((name, path))
        else:
            out.append((None, str(item)))
    return out


class StagedOutputs:
    """Write files to a scratch dir; move them into place only on success."""

    def __init__(self, output_dir):
        self.output_dir = output_dir
        parent = os.path.dirname(os.path.abspath(output_dir)) or "."
        os.makedirs(parent, exist_ok=True)
        self.tmp = tempfile.mkdtemp(prefix=".archefit-", dir=parent)
        self.names = []

    def path(self, name):
        self.names.append(name)
        return os.path.join(self.tmp, name)

    def write_text(self, name, text):
        with open(self.path(name), "w", encoding="utf-8") as fh:
            fh.write(text)

    def commit(self):
        os.makedirs(self.output_dir, exist_ok=True)
        for name in self.names:
            os.replace(os.path.join(self.tmp, name), os.path.join(self.output_dir, name))
        shutil.rmtree(self.tmp, ignore_errors=True)

    def discard(self):
        shutil.rmtree(self.tmp, ignore_errors=True)


def _fit_options(cfg):
    return FitOptions(
        restarts=int(cfg["restarts"]),
        max_outer_iters=int(cfg["max_iters"]),
        rel_tol=float(cfg["rel_tol"]),
        seed=int(cfg["seed"]),
        standardize=False,  # handled explicitly per command
    )


def _solver_options(cfg):
    return SolverOptions(huge_weight=float(cfg["huge_weight"]))


def _basis_spec(cfg, curves_by_var):
    domain = cfg.get("domain")
    if domain is None:
        lo = min(c.arguments[0] for cs in curves_by_var.values() for c in cs)
        hi = max(c.arguments[-1] for cs in curves_by_var.values() for c in cs)
        domain = (float(lo), float(hi))
    if cfg["basis"] == "fourier":
        return BasisSpec.fourier(cfg["basis_size"], domain, period=cfg.get("period"))
    return BasisSpec.bspline(cfg["basis_size"], domain, order=cfg["order"])


def _load_matrix(inputs, fmt):
    """A complete wide CSV as (ids, column arguments, value matrix)."""
    if len(inputs) != 1:
        raise ArgumentError("matrix commands take exactly one --input file")
    _, path = inputs[0]
    groups = ingest(path, format=fmt)
    curves = next(iter(groups.values()))
    args0 = curves[0].arguments
    rows = []
    for c in curves:
        if len(c) != args0.size or not np.array_equal(c.arguments, args0):
            raise DataError(
                f"curve {c.id!r}: matrix commands need every row observed at "
                "the same arguments (no gaps)"
            )
        rows.append(c.values)
    return [c.id for c in curves], args0, np.vstack(rows)


def _load_functional(inputs, fmt, cfg):
    groups = {}
    for name, path in inputs:
        for var, curves in ingest(path, format=fmt, variable=name).items():
            if var in groups:
                raise DataError(f"duplicate variable {var!r} across inputs")
            groups[var] = curves
    spec = _basis_spec(cfg, groups)
    datasets = [fit_dataset(curves, spec, variable_name=var) for var, curves in groups.items()]
    if cfg["standardize"]:
        datasets = [standardize(ds, grid_size=int(cfg["grid_size"])) for ds in datasets]
    if len(datasets) == 1:
        return datasets[0]
    return MultivariateFunctionalDataset(datasets)


def _write_alpha_csv(staged, ids, alpha):
    with open(staged.path("alpha.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["id"] + [f"alpha_{j + 1}" for j in range(alpha.shape[1])])
        for cid, row in zip(ids, alpha):
            w.writerow([cid] + [f"{v:.10g}" for v in row])


def _write_beta_csv(staged, ids, beta):
    with open(staged.path("beta.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["archetype"] + list(ids))
        for j, row in enumerate(beta):
            w.writerow([j + 1] + [f"{v:.10g}" for v in row])


def _write_archetypoids_csv(staged, ids, indices):
    with open(staged.path("archetypoids.csv"), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["archetypoid", "row_index", "id"])
        for j, idx in enumerate(indices):
            w.writerow([j + 1, int(idx), ids[int(idx)]])


def _write_curves_csv(staged, name, blocks):
    """blocks: list of (variable, grid, k x len(grid) values)."""
    with open(staged.path(name), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        k = blocks[0][2].shape[0]
        w.writerow(["variable", "t"] + [f"archetype_{j + 1}" for j in range(k)])
        for var, grid, vals in blocks:
            for i, t in enumerate(grid):
                w.writerow([var, f"{t:.10g}"] + [f"{vals[j, i]:.10g}" for j in range(k)])


def _model_json(command, cfg, results):
    record = {
        "tool": "archefit",
        "version": __version__,
        "command": command,
        "config": {key: cfg[key] for key in CONFIG_DEFAULTS if key != "model"},
        "results": results,
    }
    record["config"]["output_dir"] = cfg.get("output_dir")
    return json.dumps(record, indent=2, sort_keys=True) + "\n"


def _functional_blocks(dataset, coeff_rows, grid_points):
    """Evaluate stacked coefficient rows per component on fresh grids."""
    blocks = []
    for var, spec, cols in component_slices(dataset):
        a, b = spec.domain
        grid = np.linspace(a, b, grid_points)
        vals = coeff_rows[:, cols] @ design_matrix(spec, grid).T
        blocks.append((var, grid, vals))
    return blocks


def cmd_fit_matrix(command, cfg):
    inputs = _parse_inputs(cfg["inputs"])
    ids, args0, X = _load_matrix(inputs, cfg["format"])
    opts = _fit_options(cfg)
    solver = _solver_options(cfg)
    k = int(cfg["k"])
    work = X
    scaler = None
    if cfg["standardize"]:
        from .archetypes import standardize_columns

        work, means, sds = standardize_columns(X)
        scaler = (means, sds)

    staged = StagedOutputs(cfg["output_dir"])
    try:
        results = {"k": k, "n": X.shape[0], "ids": ids}
        if command == "fit-aa":
            model = fit_archetypes(work, k, opts=opts, solver=solver)
            _write_alpha_csv(staged, ids, model.alpha)
            _write_beta_csv(staged, ids, model.beta)
            curves = model.archetypes
            results.update(
                rss=model.rss, iterations=model.iterations, converged=model.converged
            )
        else:
            model = fit_archetypoids(work, k, opts=opts, solver=solver)
            _write_alpha_csv(staged, ids, model.alpha)
            _write_archetypoids_csv(staged, ids, model.indices)
            curves = work[model.indices]
            results.update(
                rss=model.rss,
                indices=[int(i) for i in model.indices],
                archetypoid_ids=[ids[int(i)] for i in model.indices],
                init_used=model.init_used,
                swap_steps=model.swap_steps,
            )
        if scaler is not None:
            means, sds = scaler
            raw_curves = curves * sds + means
            alpha = model.alpha
            results["rss_raw_scale"] = float(rss_of(X, alpha, raw_curves))
            results["standardized"] = True
        _write_curves_csv(staged, "archetype_curves.csv", [("value", args0, curves)])
        staged.write_text("model.json", _model_json(command, cfg, results))
        staged.commit()
    except BaseException:
        staged.discard()
        raise
    return EXIT_OK


def cmd_fit_functional(command, cfg):
    inputs = _parse_inputs(cfg["inputs"])
    dataset = _load_functional(inputs, cfg["format"], cfg)
    ids = dataset.ids
    opts = _fit_options(cfg)
    solver = _solver_options(cfg)
    k = int(cfg["k"])
    grid_points = int(cfg["output_grid"])

    staged = StagedOutputs(cfg["output_dir"])
    try:
        coeffs, _ = stack_multivariate(dataset)
        results = {"k": k, "n": len(ids), "ids": ids}
        if command == "fit-faa":
            model = faa(dataset, k, opts=opts, solver=solver)
            _write_alpha_csv(staged, ids, model.alpha)
            _write_beta_csv(staged, ids, model.beta)
            arch_rows = model.archetype_coefficients
            results.update(
                rss=model.rss,
                iterations=model.model.iterations,
                converged=model.model.converged,
            )
        else:
            model = fada(dataset, k, opts=opts, solver=solver)
            _write_alpha_csv(staged, ids, model.alpha)
            _write_archetypoids_csv(staged, ids, model.indices)
            arch_rows = coeffs[model.indices]
            results.update(
                rss=model.rss,
                indices=[int(i) for i in model.indices],
                archetypoid_ids=[ids[int(i)] for i in model.indices],
                init_used=model.init_used,
                swap_steps=model.swap_steps,
            )
        results["archetype_coefficients"] = {
            var: arch_rows[:, cols].tolist()
            for var, _, cols in component_slices(dataset)
        }
        blocks = _functional_blocks(dataset, arch_rows, grid_points)
        _write_curves_csv(staged, "archetype_curves.csv", blocks)
        staged.write_text("model.json", _model_json(command, cfg, results))
        staged.commit()
    except BaseException:
        staged.discard()
        raise
    return EXIT_OK


def cmd_elbow(cfg):
    inputs = _parse_inputs(cfg["inputs"])
    opts = _fit_options(cfg)
    solver = _solver_options(cfg)
    ks = list(range(int(cfg["k_min"]), int(cfg["k_max"]) + 1))
    mode = cfg["mode"]

    if mode in ("aa", "ada"):
        ids, _, X = _load_matrix(inputs, cfg["format"])
        work = X
        if cfg["standardize"]:
            from .archetypes import standardize_columns

            work, _, _ = standardize_columns(X)
        metric = None
        coeffs = work
    else:
        dataset = _load_functional(inputs, cfg["format"], cfg)
        coeffs, metric = stack_multivariate(dataset)

    report = ElbowReport()
    for k in ks:
        try:
            if mode in ("aa", "faa"):
                model = fit_archetypes(coeffs, k, opts=opts, metric=metric, solver=solver)
                report.rows.append(ElbowRow(k, model.rss, model.converged, opts.restarts))
            else:
                model = fit_archetypoids(coeffs, k, opts=opts, metric=metric, solver=solver)
                report.rows.append(ElbowRow(k, model.rss, True, opts.restarts))
        except (ArgumentError, DataError):
            raise
        except ArchefitError:
            report.rows.append(ElbowRow(k, float("nan"), False, opts.restarts))

    staged = StagedOutputs(cfg["output_dir"])
    try:
        with open(staged.path("elbow.csv"), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "rss", "converged", "restarts_used"])
            for row in report.rows:
                w.writerow([row.k, f"{row.rss:.10g}", row.converged, row.restarts_used])
        staged.write_text(
            "elbow.svg", svg.elbow_svg(report.ks(), report.rss_values())
        )
        staged.write_text(
            "model.json",
            _model_json("elbow", cfg, {
                "ks": report.ks(),
                "rss": [None if np.isnan(r) else r for r in report.rss_values()],
            }),
        )
        staged.commit()
    except BaseException:
        staged.discard()
        raise
    return EXIT_OK


def cmd_render(cfg):
    inputs = _parse_inputs(cfg["inputs"])
    model = None
    if cfg.get("model"):
        try:
            with open(cfg["model"], encoding="utf-8") as fh:
                model = json.load(fh)
        except OSError as exc:
            raise DataError(f"cannot read model file {cfg['model']}: {exc}") from exc
        model_cfg = dict(model["config"])
        model_cfg["inputs"] = cfg["inputs"]
        model_cfg["standardize"] = cfg["standardize"] or model_cfg.get("standardize")
        cfg = {**cfg, **{k: v for k, v in model_cfg.items() if cfg.get(k) is None or k
                         in ("basis", "basis_size", "domain", "order", "period",
                             "grid_size", "standardize")}}
    dataset = _load_functional(inputs, cfg["format"], cfg)
    grid_points = int(cfg["output_grid"])

    arch = {}
    poid_rows = None
    if model is not None:
        res = model.get("results", {})
        arch = res.get("archetype_coefficients", {})
        if "indices" in res:
            poid_rows = [int(i) for i in res["indices"]]

    out_dir = cfg.get("output_dir") or "."
    staged = StagedOutputs(out_dir)
    try:
        comps = component_slices(dataset)
        coeffs, _ = stack_multivariate(dataset)
        for var, spec, cols in comps:
            a, b = spec.domain
            grid = np.linspace(a, b, grid_points)
            D = design_matrix(spec, grid)
            data_vals = coeffs[:, cols] @ D.T
            arch_vals = []
            if var in arch:
                arch_vals = [np.asarray(row) @ D.T for row in arch[var]]
            poid_vals = []
            if poid_rows is not None:
                poid_vals = [data_vals[i] for i in poid_rows]
            name = "curves.svg" if len(comps) == 1 else f"curves_{var}.svg"
            staged.write_text(
                name,
                svg.curves_svg(
                    grid, list(data_vals), arch_vals, poid_vals,
                    title=var, xlabel="t", ylabel=var,
                ),
            )
        staged.commit()
    except BaseException:
        staged.discard()
        raise
    return EXIT_OK


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg, problems = resolve_options(args)
    problems += validate_config(args.command, cfg)
    if problems:
        raise UsageError("; ".join(problems))
    if args.command in ("fit-aa", "fit-ada"):
        return cmd_fit_matrix(args.command, cfg)
    if args.command in ("fit-faa", "fit-fada"):
        return cmd_fit_functional(args.command, cfg)
    if args.command == "elbow":
        return cmd_elbow(cfg)
    if args.command == "render":
        return cmd_render(cfg)
    raise UsageError(f"unknown command {args.command}")


def main(argv=None):
    try:
        return run(argv)
    except UsageError as exc:
        print(f"archefit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArgumentError as exc:
        print(f"archefit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotPositiveDefiniteError, IterationLimitError, FloatingPointError) as exc:
        print(f"archefit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DataError, ArchefitError, OSError) as exc:
        print(f"archefit: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SystemExit as exc:
        # argparse --version/--help paths
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
