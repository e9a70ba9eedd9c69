"""Command-line interface: fit, simulate, serve."""

from __future__ import annotations

import csv
import itertools
import sys
from dataclasses import fields as dataclass_fields

import click
import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .estimator import FsrLasso
from .exceptions import FsrPathError
from .fsr import FsrConfig
from .server import serve_document
from .simgen import Scenario, run_scenario

EXIT_BAD_INPUT = 2
EXIT_SOLVER_FAILURE = 3


class CsvError(Exception):
    pass


def read_numeric_csv(path):
    """Parse an RFC-4180 CSV with header into (column_names, columns dict).

    Raises CsvError naming the offending row and column on any non-numeric
    or ragged cell.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvError("file is empty; a header row is required") from None
        header = [h.strip() for h in header]
        if len(set(header)) != len(header):
            raise CsvError("header contains duplicate column names")
        columns = {name: [] for name in header}
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue
            if len(row) != len(header):
                raise CsvError(
                    f"row {row_no} has {len(row)} fields, header has "
                    f"{len(header)}"
                )
            for name, cell in zip(header, row):
                try:
                    columns[name].append(float(cell))
                except ValueError:
                    raise CsvError(
                        f"row {row_no}, column {name!r}: {cell!r} is not "
                        "numeric"
                    ) from None
    n = len(columns[header[0]])
    if n == 0:
        raise CsvError("no data rows found")
    return header, {k: np.array(v) for k, v in columns.items()}


@click.group()
def main():
    """Label Lasso solution paths with estimated false selection rates."""


@main.command("fit")
@click.argument("csv_path", type=click.Path(exists=False))
@click.option("--response", required=True, help="Response column name.")
@click.option("--family", type=click.Choice(["linear", "logistic", "cox"]),
              default="linear", show_default=True)
@click.option("--status", default=None,
              help="Event-indicator column (required for cox).")
@click.option("--screen", type=click.Choice(["cv", "pseudo"]), default="cv",
              show_default=True)
@click.option("--b", "-B", "b_replicates", type=int, default=100,
              show_default=True, help="Pseudo-variable replicates.")
@click.option("--alpha", "alphas", type=float, multiple=True,
              default=(0.1, 0.2, 0.3), show_default=True,
              help="Target FSR (repeatable).")
@click.option("--no-permutation", is_flag=True,
              help="Drop the permuted-clone augmentation.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--lambda-count", type=int, default=100, show_default=True)
@click.option("--lambda-ratio", type=float, default=None,
              help="Grid span; default 1e-3 (n>p) or 1e-2 (p>=n).")
@click.option("--no-intercept", is_flag=True, help="Drop the intercept.")
@click.option("--out", required=True, type=click.Path(),
              help="Output path document (JSON).")
def cmd_fit(csv_path, response, family, status, screen, b_replicates, alphas,
            no_permutation, seed, lambda_count, lambda_ratio, no_intercept,
            out):
    """Fit a labeled path from a CSV file and write a path document."""
    try:
        header, columns = read_numeric_csv(csv_path)
    except (CsvError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    if response not in columns:
        click.echo(f"error: response column {response!r} not in header",
                   err=True)
        sys.exit(EXIT_BAD_INPUT)
    drop = {response}
    status_vec = None
    if family == "cox":
        if status is None:
            click.echo("error: --status is required for the cox family",
                       err=True)
            sys.exit(EXIT_BAD_INPUT)
        if status not in columns:
            click.echo(f"error: status column {status!r} not in header",
                       err=True)
            sys.exit(EXIT_BAD_INPUT)
        drop.add(status)
        status_vec = columns[status]
    feature_names = [h for h in header if h not in drop]
    if not feature_names:
        click.echo("error: no predictor columns remain", err=True)
        sys.exit(EXIT_BAD_INPUT)
    x = np.column_stack([columns[h] for h in feature_names])
    y = columns[response]

    est = FsrLasso(
        family=family,
        alphas=tuple(alphas),
        b_replicates=b_replicates,
        screen=screen,
        use_permutation=not no_permutation,
        lambda_count=lambda_count,
        lambda_ratio=lambda_ratio,
        fit_intercept=not no_intercept,
        random_state=seed,
    )
    try:
        est.fit(x, y, status=status_vec, feature_names=feature_names)
    except FsrPathError as exc:
        click.echo(f"solver failure: {exc}", err=True)
        sys.exit(EXIT_SOLVER_FAILURE)
    doc = est.to_document(response_name=response)
    doc.save(out)
    click.echo(f"wrote {out}")
    for alpha in alphas:
        model = est.selected_[alpha]
        if model.feasible:
            names = ", ".join(feature_names[j] for j in model.active) or "(none)"
            click.echo(f"alpha={alpha:g}: lambda={model.lam:.5g} "
                       f"-> {model.active.size} variables: {names}")
        else:
            click.echo(f"alpha={alpha:g}: no feasible penalty on the grid")


_SCENARIO_FIELDS = {f.name for f in dataclass_fields(Scenario)}
_RUN_KEYS = {"methods", "b_replicates", "n_jobs", "use_permutation"}


def expand_scenarios(config):
    """Materialize the scenario grid from a parsed config mapping.

    Top-level keys give defaults; each entry of ``scenarios`` overrides
    them, and any list-valued scenario field expands into its cartesian
    product.
    """
    defaults = {k: v for k, v in config.items()
                if k in _SCENARIO_FIELDS or k in _RUN_KEYS}
    entries = config.get("scenarios") or [{}]
    out = []
    for entry in entries:
        merged = dict(defaults)
        merged.update(entry)
        unknown = set(merged) - _SCENARIO_FIELDS - _RUN_KEYS
        if unknown:
            raise CsvError(f"unknown scenario keys: {sorted(unknown)}")
        methods = merged.pop("methods", ["pseudo2"])
        if isinstance(methods, str):
            methods = [methods]
        b_replicates = merged.pop("b_replicates", 20)
        use_permutation = merged.pop("use_permutation", True)
        merged.pop("n_jobs", None)
        grid_keys = [k for k, v in merged.items() if isinstance(v, list)]
        grid_vals = [merged[k] for k in grid_keys]
        for combo in itertools.product(*grid_vals) if grid_keys else [()]:
            params = dict(merged)
            params.update(dict(zip(grid_keys, combo)))
            for method in methods:
                out.append((Scenario(**params), method, b_replicates,
                            use_permutation))
    return out


@main.command("simulate")
@click.argument("config_path", type=click.Path())
@click.option("--out", required=True, type=click.Path(),
              help="Output CSV of per-scenario FSR/TSR summaries.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Parallel replicate workers.")
def cmd_simulate(config_path, out, jobs):
    """Run the scenario grid in a TOML config file."""
    try:
        with open(config_path, "rb") as fh:
            config = tomllib.load(fh)
        runs = expand_scenarios(config)
    except (OSError, tomllib.TOMLDecodeError, CsvError, TypeError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)

    rows = []
    for sc, method, b_reps, use_perm in runs:
        cfg = FsrConfig(b_replicates=b_reps, use_permutation=use_perm)
        result = run_scenario(sc, method=method, fsr_cfg=cfg, n_jobs=jobs)
        sizes = [r[2] for r in result.per_replicate]
        rows.append({
            "family": sc.family, "n": sc.n, "p": sc.p, "rho": sc.rho,
            "amplitude": sc.amplitude, "sparsity": sc.sparsity,
            "alpha": sc.alpha, "method": method,
            "n_replicates": len(result.per_replicate),
            "n_failed": result.n_failed,
            "mean_fsr": f"{result.mean_fsr:.6f}",
            "se_fsr": f"{result.se_fsr:.6f}",
            "mean_tsr": f"{result.mean_tsr:.6f}",
            "se_tsr": f"{result.se_tsr:.6f}",
            "mean_model_size": f"{np.mean(sizes):.3f}",
        })
        click.echo(
            f"{sc.family} n={sc.n} p={sc.p} rho={sc.rho} A={sc.amplitude} "
            f"s={sc.sparsity} {method}: FSR {result.mean_fsr:.3f} "
            f"(se {result.se_fsr:.3f}), TSR {result.mean_tsr:.3f}"
        )
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    click.echo(f"wrote {out}")


@main.command("serve")
@click.argument("document_path", type=click.Path())
@click.option("--port", type=int, default=8310, show_default=True)
def cmd_serve(document_path, port):
    """Serve a path document and the explorer UI over HTTP."""
    try:
        serve_document(document_path, port)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)


if __name__ == "__main__":
    main()
