"""Thin command-line client for the estimation service.

File handling (sample TSV, curve CSV, config JSON) happens client-side;
the numerical work is done by the HTTP service.  By default the service
app runs in-process, so no server needs to be up; pass --server to talk
to a remote instance.

Exit codes: 0 success, 2 usage/parse error, 3 validation error,
4 internal consistency failure.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .core import DomainError
from .formats import (
    curve_to_csv,
    format_float,
    read_curve,
    read_samples,
    reps_csv as format_reps_csv,
    write_json,
)
from .core import MonotoneCurve
from .schemas import ratio_to_wire

EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        # starlette warns about the bundled httpx version at import time;
        # that is an environment notice, not something CLI users can act on.
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    response = client.post(path, json=payload)
    if response.status_code >= 500:
        click.echo(f"error: internal failure: {response.text}", err=True)
        sys.exit(EXIT_INTERNAL)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(EXIT_VALIDATION)
    return response.json()


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


@click.group()
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Base URL of a running service; default runs the app in-process.",
)
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Estimate optimal ROC curves from likelihood-ratio samples."""
    ctx.obj = server


@main.command()
@click.argument("samples_path", type=click.Path(path_type=Path))
@click.option(
    "--estimator",
    type=click.Choice(["E", "CE", "ML"]),
    required=True,
    help="Which estimator to fit.",
)
@click.option(
    "--out",
    type=click.Path(path_type=Path),
    required=True,
    help="Output path for the curve CSV.",
)
@click.option(
    "--fit-json",
    type=click.Path(path_type=Path),
    default=None,
    help="Output path for the ML fit JSON (default: --out with .json).",
)
@click.pass_obj
def fit(
    server: str | None,
    samples_path: Path,
    estimator: str,
    out: Path,
    fit_json: Path | None,
) -> None:
    """Fit an estimator to a label<TAB>ratio sample file."""
    try:
        samples = read_samples(samples_path)
    except OSError as exc:
        _fail_usage(f"cannot read {samples_path}: {exc}")
    except DomainError as exc:
        _fail_usage(f"{samples_path}: {exc}")
    payload = {
        "samples": [(s.label, ratio_to_wire(s.ratio)) for s in samples],
        "estimator": estimator,
    }
    with _client(server) as client:
        result = _post(client, "/fit", payload)
    out.write_text(curve_to_csv(MonotoneCurve(tuple(result["curve"]["vertices"]))))
    if estimator == "ML":
        path = fit_json or out.with_suffix(".json")
        write_json(
            path,
            {
                "lambda_n": result["lambda_n"],
                "auc": result["auc"],
                "f0": result["f0"],
                "f1": result["f1"],
            },
        )


@main.command()
@click.argument("curve_a", type=click.Path(path_type=Path))
@click.argument("curve_b", type=click.Path(path_type=Path))
@click.option(
    "--metric",
    type=click.Choice(["levy", "uniform"]),
    default="levy",
    show_default=True,
)
@click.pass_obj
def distance(
    server: str | None, curve_a: Path, curve_b: Path, metric: str
) -> None:
    """Print the distance between two curve CSV files."""
    curves = []
    for path in (curve_a, curve_b):
        try:
            curves.append(read_curve(path))
        except OSError as exc:
            _fail_usage(f"cannot read {path}: {exc}")
        except DomainError as exc:
            _fail_usage(f"{path}: {exc}")
    payload = {
        "curve_a": {"vertices": list(curves[0].vertices)},
        "curve_b": {"vertices": list(curves[1].vertices)},
        "metric": metric,
    }
    with _client(server) as client:
        result = _post(client, "/distance", payload)
    click.echo(format(result["distance"], ".12g"))


@main.command()
@click.argument("curve_path", type=click.Path(path_type=Path))
@click.pass_obj
def auc(server: str | None, curve_path: Path) -> None:
    """Print the area under a curve CSV file."""
    try:
        curve = read_curve(curve_path)
    except OSError as exc:
        _fail_usage(f"cannot read {curve_path}: {exc}")
    except DomainError as exc:
        _fail_usage(f"{curve_path}: {exc}")
    with _client(server) as client:
        result = _post(
            client, "/auc", {"curve": {"vertices": list(curve.vertices)}}
        )
    click.echo(format(result["auc"], ".12g"))


@main.command()
@click.option(
    "--config",
    type=click.Path(path_type=Path),
    required=True,
    help="Experiment config JSON.",
)
@click.option(
    "--out",
    type=click.Path(path_type=Path),
    required=True,
    help="Output path for the report JSON.",
)
@click.option(
    "--reps-csv",
    type=click.Path(path_type=Path),
    default=None,
    help="Optional per-replication distance CSV.",
)
@click.pass_obj
def simulate(
    server: str | None, config: Path, out: Path, reps_csv: Path | None
) -> None:
    """Run a Monte Carlo experiment from a config JSON file."""
    reps_path = reps_csv
    try:
        payload = json.loads(config.read_text())
    except OSError as exc:
        _fail_usage(f"cannot read {config}: {exc}")
    except json.JSONDecodeError as exc:
        _fail_usage(f"{config}: invalid JSON: {exc}")
    if not isinstance(payload, dict):
        _fail_usage(f"{config}: config must be a JSON object")
    with _client(server) as client:
        result = _post(client, "/simulate", payload)
    per_rep = result.pop("per_replication")
    write_json(out, result)
    if reps_path:
        rows = [
            (rep, name, value)
            for name, values in per_rep.items()
            for rep, value in enumerate(values)
        ]
        rows.sort(key=lambda row: (row[0], row[1]))
        Path(reps_path).write_text(format_reps_csv(rows))


@main.command()
@click.argument("n0", type=int)
@click.argument("n1", type=int)
@click.argument("delta", type=float)
@click.pass_obj
def bound(server: str | None, n0: int, n1: int, delta: float) -> None:
    """Print the two-sample DKW tail bound for the empirical estimator."""
    if n0 < 1 or n1 < 1:
        _fail_usage("n0 and n1 must be positive integers")
    if not delta > 0:
        _fail_usage("delta must be positive")
    with _client(server) as client:
        result = _post(
            client, "/bound", {"n0": n0, "n1": n1, "delta": delta}
        )
    click.echo(format(result["bound"], ".12g"))


if __name__ == "__main__":
    main()
