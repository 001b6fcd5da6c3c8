"""Command-line front end: train | infer | evaluate | surface."""
from __future__ import annotations

import functools
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from .constants import INPUT_VARIABLES
from .dataset import parse_survey_csv, split, to_training
from .errors import NoRuleCoverageError, OutOfRangeError, SchemaError
from .fcm import FcmConfig
from .inference import MamdaniModel, load_model, save_model
from .report import document_to_json, render_report_text, report_document, report_to_dict
from .stats import evaluate as evaluate_records
from .training import TrainConfig, train

EXIT_ARGUMENT = 2
EXIT_DATA = 3
EXIT_NO_COVERAGE = 4

UNCOVERED_TOKEN = "uncovered"


def _fail(code: int, message) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except OutOfRangeError as exc:
            _fail(EXIT_ARGUMENT, exc)
        except NoRuleCoverageError as exc:
            _fail(EXIT_NO_COVERAGE, exc)
        except (SchemaError, ValueError, OSError) as exc:
            _fail(EXIT_DATA, exc)

    return wrapper


@dataclass(frozen=True)
class SurfaceGrid:
    """Crisp outputs over a 2-D sweep of two inputs, the others held fixed.

    ``cells[i][j]`` is the output at (xs[i], ys[j]); ``None`` marks input
    combinations without rule coverage.
    """

    var_x: str
    var_y: str
    fixed: dict[str, float]
    step: float
    xs: tuple[float, ...]
    ys: tuple[float, ...]
    cells: tuple[tuple[float | None, ...], ...]


def compute_surface(
    model: MamdaniModel,
    var_x: str,
    var_y: str,
    step: float,
    fixed: dict[str, float] | None = None,
) -> SurfaceGrid:
    """Evaluate the model on a uniform grid over two input variables."""
    names = model.input_names
    if var_x not in names:
        raise OutOfRangeError(f"unknown variable '{var_x}' (inputs: {', '.join(names)})")
    if var_y not in names:
        raise OutOfRangeError(f"unknown variable '{var_y}' (inputs: {', '.join(names)})")
    if var_x == var_y:
        raise OutOfRangeError("var_x and var_y must differ")

    fixed = dict(fixed or {})
    for name in fixed:
        if name not in names:
            raise OutOfRangeError(f"unknown fixed variable '{name}'")
    for name in names:
        if name not in (var_x, var_y):
            fixed.setdefault(name, 50.0)
    fixed.pop(var_x, None)
    fixed.pop(var_y, None)

    def _axis(name: str) -> tuple[float, ...]:
        universe = model.input(name).universe
        span = universe.hi - universe.lo
        steps = span / step
        if step <= 0 or abs(steps - round(steps)) > 1e-9:
            raise OutOfRangeError(f"step {step} does not divide the span of '{name}'")
        return tuple(float(v) for v in np.linspace(universe.lo, universe.hi,
                                                   int(round(steps)) + 1))

    xs, ys = _axis(var_x), _axis(var_y)
    cells = []
    for x in xs:
        row: list[float | None] = []
        for y in ys:
            inputs = dict(fixed)
            inputs[var_x] = x
            inputs[var_y] = y
            try:
                row.append(model.infer(inputs).crisp)
            except NoRuleCoverageError:
                row.append(None)
        cells.append(tuple(row))
    return SurfaceGrid(var_x=var_x, var_y=var_y, fixed=fixed, step=step,
                       xs=xs, ys=ys, cells=tuple(cells))


def write_surface_csv(grid: SurfaceGrid, dest) -> None:
    """Long-format x,y,z CSV; uncovered cells carry a sentinel token."""
    lines = ["x,y,z"]
    for i, x in enumerate(grid.xs):
        for j, y in enumerate(grid.ys):
            z = grid.cells[i][j]
            lines.append(f"{x!r},{y!r},{UNCOVERED_TOKEN if z is None else repr(z)}")
    text = "\n".join(lines) + "\n"
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)


@click.group()
def main() -> None:
    """Build, run, and validate fuzzy QoE models from Likert survey data."""


@main.command("train")
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Survey CSV to train on.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Where to write the model JSON.")
@click.option("--seed", default=0, show_default=True, help="PRNG seed for split and clustering.")
@click.option("--train-fraction", default=0.6, show_default=True,
              type=click.FloatRange(0.0, 1.0, min_open=True),
              help="Fraction of rows used for training; the rest is held out.")
@click.option("--clusters", default=4, show_default=True, type=click.IntRange(min=1),
              help="Output cluster count for fuzzy c-means.")
@click.option("--fuzzifier", default=2.0, show_default=True,
              type=click.FloatRange(1.0, min_open=True), help="FCM fuzzifier exponent m.")
@click.option("--stratify-by-app", is_flag=True, default=False,
              help="Split within each application group separately.")
@_handle_errors
def cmd_train(data_path, out_path, seed, train_fraction, clusters, fuzzifier,
              stratify_by_app) -> None:
    """Ingest a survey CSV, train a model, and write canonical model JSON."""
    dataset = parse_survey_csv(data_path)
    config = TrainConfig(
        train_fraction=train_fraction,
        fcm=FcmConfig(c=clusters, m=fuzzifier, seed=seed),
        seed=seed,
        stratify_by_app=stratify_by_app,
    )
    result = train(dataset, config)
    save_model(result.model, out_path)
    summary = result.summary
    click.echo(f"model written to {out_path}")
    click.echo(f"rows: {summary['rows']} "
               f"(train {summary['train_rows']} / test {summary['test_rows']})")
    click.echo(f"rules: {summary['rule_count']}")
    centers = ", ".join(f"{c:.3f}" for c in summary["fcm_centers"])
    click.echo(f"fcm centers: [{centers}] "
               f"({summary['fcm_iterations']} iterations, "
               f"converged={summary['fcm_converged']})")


@main.command("infer")
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Trained model JSON.")
@click.option("--diagnostics", is_flag=True, default=False,
              help="Also print per-rule firing strengths to stderr.")
@click.argument("scores", nargs=4, type=float)
@_handle_errors
def cmd_infer(model_path, diagnostics, scores) -> None:
    """Run one inference; SCORES are the four inputs in canonical order.

    Order: content_quality hardware_quality environment_understanding
    user_interaction.
    """
    model = load_model(model_path)
    inputs = dict(zip(INPUT_VARIABLES, scores))
    for name, value in inputs.items():
        if not 0.0 <= value <= 100.0:
            raise OutOfRangeError(f"{name} = {value} outside [0, 100]")
    result = model.infer(inputs)
    if diagnostics:
        for rule, strength in zip(model.rules, result.firing_strengths):
            if strength > 0.0:
                antecedents = ", ".join(f"{k}={v}" for k, v in rule.antecedents.items())
                click.echo(f"{strength:.4f}  IF {antecedents} THEN {rule.consequent}",
                           err=True)
    click.echo(f"{result.crisp:.3f}")


@main.command("evaluate")
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Trained model JSON.")
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Survey CSV to evaluate on.")
@click.option("--holdout", is_flag=True, default=False,
              help="Re-derive the model's held-out test split from --data and use it.")
@click.option("--alpha", default=0.05, show_default=True,
              type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True),
              help="Significance level for the paired t-test.")
@click.option("--out", "out_prefix", default=None, type=click.Path(),
              help="Write OUT.json and OUT.txt reports.")
@_handle_errors
def cmd_evaluate(model_path, data_path, holdout, alpha, out_prefix) -> None:
    """Compare model estimates against recorded overall ratings, per application."""
    model = load_model(model_path)
    dataset = parse_survey_csv(data_path)
    if holdout:
        training_meta = model.provenance.get("training", {})
        if "seed" not in training_meta or "train_fraction" not in training_meta:
            raise SchemaError("model carries no training provenance; cannot re-derive "
                              "the held-out split")
        if training_meta["train_fraction"] >= 1.0:
            raise ValueError("model was trained on the full dataset; no held-out rows")
        _, dataset = split(dataset, training_meta["train_fraction"],
                           training_meta["seed"],
                           training_meta.get("stratify_by_app", False))
        if len(dataset) == 0:
            raise ValueError("held-out split is empty")

    blocks: dict[str, dict] = {}
    covered_any = False
    for app in sorted({row.app for row in dataset.rows}):
        rows = tuple(row for row in dataset.rows if row.app == app)
        records = to_training(type(dataset)(rows))
        try:
            report = evaluate_records(model, records, alpha)
        except NoRuleCoverageError:
            blocks[app] = {"n": 0, "uncovered": len(records), "qoe_user": None,
                           "qoe_fis": None, "rmse": None, "ttest": None}
            continue
        covered_any = True
        blocks[app] = report_to_dict(report)
    if not covered_any:
        raise NoRuleCoverageError("no test record in any application has rule coverage")

    document = report_document(blocks, alpha)
    text = render_report_text(document)
    click.echo(text, nl=False)
    if out_prefix is not None:
        Path(f"{out_prefix}.json").write_text(document_to_json(document), encoding="utf-8")
        Path(f"{out_prefix}.txt").write_text(text, encoding="utf-8")
        click.echo(f"reports written to {out_prefix}.json and {out_prefix}.txt", err=True)


@main.command("surface")
@click.option("--model", "model_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Trained model JSON.")
@click.option("--x", "var_x", default="content_quality", show_default=True,
              help="Variable swept on the x axis.")
@click.option("--y", "var_y", default="environment_understanding", show_default=True,
              help="Variable swept on the y axis.")
@click.option("--step", default=5.0, show_default=True, type=click.FloatRange(0.0, min_open=True),
              help="Grid step; must divide the universe span.")
@click.option("--fix", "fixes", multiple=True, metavar="VAR=VALUE",
              help="Fixed value for a remaining input (repeatable; default 50).")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False),
              help="Where to write the x,y,z CSV.")
@_handle_errors
def cmd_surface(model_path, var_x, var_y, step, fixes, out_path) -> None:
    """Sweep two inputs over a grid and write the crisp outputs as CSV."""
    fixed = {}
    for item in fixes:
        name, sep, raw = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected VAR=VALUE, got {item!r}", param_hint="--fix")
        try:
            fixed[name.strip()] = float(raw)
        except ValueError:
            raise click.BadParameter(f"expected a number, got {raw!r}",
                                     param_hint="--fix") from None
    model = load_model(model_path)
    grid = compute_surface(model, var_x, var_y, step, fixed)
    write_surface_csv(grid, out_path)
    covered = sum(1 for row in grid.cells for z in row if z is not None)
    total = len(grid.xs) * len(grid.ys)
    click.echo(f"surface written to {out_path} ({covered}/{total} cells covered)")


if __name__ == "__main__":
    main()
