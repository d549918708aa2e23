"""Command-line front end: oracle, split, validate, train, generate, eval, snrmap.

Machine-readable results go to files only. Diagnostics, progress and drawn
seeds go to standard error.
"""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, NoReturn

import pandas as pd
import typer
from pydantic import ValidationError

from mmwave_channel_gen import __version__
from mmwave_channel_gen.antenna.snr_map import GnbSpec, SnrGrid, snr_map, write_snr_map
from mmwave_channel_gen.config.logging_setup import configure_logging
from mmwave_channel_gen.config.settings import get_settings
from mmwave_channel_gen.config.standards import (
    BATCH_SIZE,
    LINK_STATE_EPOCHS,
    LINK_STATE_LEARNING_RATE,
    SNR_REALIZATIONS,
    TRAIN_FRACTION,
    VAE_EPOCHS,
    VAE_LEARNING_RATE,
    CellType,
)
from mmwave_channel_gen.data.dataset import load_conditions, load_dataset, save_dataset, split_train_test
from mmwave_channel_gen.data.oracle import OracleParams, oracle_generate, sample_conditions
from mmwave_channel_gen.errors import ChannelModelError, DatasetFormatError
from mmwave_channel_gen.evaluation.compare import compare_model_to_test
from mmwave_channel_gen.evaluation.report import write_report
from mmwave_channel_gen.generative.generator import (
    ChannelTrainingResult,
    generate_batch,
    load_model,
    save_model,
    train_channel_model,
)
from mmwave_channel_gen.generative.path_vae import GenerationMode
from mmwave_channel_gen.models.run import (
    EvalRunConfig,
    GenerateRunConfig,
    OracleRunConfig,
    SnrMapRunConfig,
    SplitRunConfig,
    TrainRunConfig,
    write_run_config,
)
from mmwave_channel_gen.models.training import LinkStateTrainConfig, VaeTrainConfig
from mmwave_channel_gen.rng import entropy_seed
from mmwave_channel_gen.validators.dataset import validate_dataset_file

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_MISSING_FILE = 3

EXIT_CODES_HELP = (
    "Exit codes: 0 success, 1 unexpected error, 2 usage error, 3 missing input file, "
    "4 model format version mismatch, 5 invalid data, 6 training or generation failure."
)

app = typer.Typer(
    name="mmwchan",
    help=f"Two-stage generative mmWave air-to-ground channel model. {EXIT_CODES_HELP}",
    no_args_is_help=True,
    add_completion=False,
)

SeedOption = Annotated[
    int | None,
    typer.Option("--seed", min=0, help="Master seed; drawn from OS entropy and printed when omitted"),
]


def _fail(message: str, code: int) -> NoReturn:
    first_line = message.strip().splitlines()[0] if message.strip() else "error"
    typer.echo(f"error: {first_line}", err=True)
    raise typer.Exit(code)


@contextmanager
def _reported_errors() -> Iterator[None]:
    """Turn exceptions into a one-line diagnostic and a documented exit code."""
    try:
        yield
    except ChannelModelError as e:
        _fail(e.message, e.exit_code)
    except FileNotFoundError as e:
        _fail(f"file not found: {e.filename}", EXIT_MISSING_FILE)
    except ValidationError as e:
        _fail(f"invalid parameters: {e.errors()[0]['msg']}", EXIT_USAGE)
    except ValueError as e:
        _fail(str(e), EXIT_USAGE)
    except OSError as e:
        _fail(str(e), EXIT_UNEXPECTED)


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    drawn = entropy_seed()
    typer.echo(f"seed: {drawn}", err=True)
    return drawn


def _require_file(path: Path) -> None:
    if not path.is_file():
        _fail(f"file not found: {path}", EXIT_MISSING_FILE)


def _write_traces(result: ChannelTrainingResult, out: Path) -> Path:
    rows = [("link_state", 0, result.link_state_initial_loss)]
    rows += [("link_state", i + 1, loss) for i, loss in enumerate(result.link_state_trace)]
    rows += [("vae", 0, result.vae_initial_loss)]
    rows += [("vae", i + 1, loss) for i, loss in enumerate(result.vae_trace)]
    path = out.with_name(out.name + ".traces.csv")
    pd.DataFrame(rows, columns=["stage", "epoch", "loss"]).to_csv(path, index=False)
    return path


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"mmwchan {__version__}")
        raise typer.Exit(EXIT_OK)


@app.callback()
def _root(
    version: Annotated[  # noqa: ARG001
        bool,
        typer.Option("--version", callback=_version_callback, is_eager=True, help="Show the version and exit"),
    ] = False,
) -> None:
    configure_logging(get_settings().log_level)


@app.command()
def oracle(
    n: Annotated[int, typer.Option("--n", min=1, help="Number of links to draw")],
    out: Annotated[Path, typer.Option("--out", help="Output JSONL dataset")],
    seed: SeedOption = None,
    conditions: Annotated[
        Path | None,
        typer.Option("--conditions", help="Use the first N conditions of this file instead of random placements"),
    ] = None,
) -> None:
    """Write a synthetic dataset drawn from the ground-truth oracle."""
    seed = _resolve_seed(seed)
    with _reported_errors():
        params = OracleParams()
        if conditions is not None:
            _require_file(conditions)
            placed = load_conditions(conditions)[:n]
            if len(placed) < n:
                raise ValueError(f"{conditions} holds {len(placed)} conditions, fewer than --n {n}")
        else:
            placed = sample_conditions(n, seed)
        dataset = oracle_generate(params, placed, seed)
        save_dataset(dataset.links, out)
        write_run_config(
            OracleRunConfig(
                out=str(out),
                n=n,
                seed=seed,
                conditions=str(conditions) if conditions else None,
                params=params.model_dump(),
            ),
            out,
        )


@app.command()
def split(
    data: Annotated[Path, typer.Option("--data", help="Input JSONL dataset")],
    train: Annotated[Path, typer.Option("--train", help="Output JSONL for the training split")],
    test: Annotated[Path, typer.Option("--test", help="Output JSONL for the test split")],
    fraction: Annotated[float, typer.Option("--fraction", help="Training fraction in (0, 1)")] = TRAIN_FRACTION,
    seed: SeedOption = None,
) -> None:
    """Split a dataset into training and test files."""
    seed = _resolve_seed(seed)
    _require_file(data)
    with _reported_errors():
        dataset = split_train_test(load_dataset(data), fraction, seed)
        save_dataset(dataset.train_links, train)
        save_dataset(dataset.test_links, test)
        write_run_config(
            SplitRunConfig(
                data=str(data),
                train=str(train),
                test=str(test),
                fraction=fraction,
                seed=seed,
                train_count=len(dataset.train_links),
                test_count=len(dataset.test_links),
            ),
            train,
        )


@app.command()
def validate(
    data: Annotated[Path, typer.Option("--data", help="JSONL dataset to check")],
) -> None:
    """Check every record of a dataset file and report the bad lines."""
    _require_file(data)
    result = validate_dataset_file(data)
    for line in result.errors:
        typer.echo(line, err=True)
    counts = ", ".join(f"{k}={v}" for k, v in result.state_counts.items())
    typer.echo(f"{data}: {result.link_count}/{result.line_count} valid links ({counts})", err=True)
    if not result.is_valid:
        raise typer.Exit(DatasetFormatError.exit_code)


@app.command()
def train(
    data: Annotated[Path, typer.Option("--data", help="Training JSONL dataset")],
    out: Annotated[Path, typer.Option("--out", help="Output model JSON")],
    epochs_ls: Annotated[int, typer.Option("--epochs-ls", min=1)] = LINK_STATE_EPOCHS,
    epochs_vae: Annotated[int, typer.Option("--epochs-vae", min=1)] = VAE_EPOCHS,
    batch_size: Annotated[int, typer.Option("--batch-size", min=1)] = BATCH_SIZE,
    lr_ls: Annotated[float, typer.Option("--lr-ls")] = LINK_STATE_LEARNING_RATE,
    lr_vae: Annotated[float, typer.Option("--lr-vae")] = VAE_LEARNING_RATE,
    train_fraction: Annotated[
        float | None,
        typer.Option("--train-fraction", help="Hold out the rest as <out>.test.jsonl; default trains on all links"),
    ] = None,
    class_weighting: Annotated[
        bool, typer.Option("--class-weighting", help="Weight link-state loss by inverse class frequency")
    ] = False,
    seed: SeedOption = None,
) -> None:
    """Train both stages and write the model plus loss traces."""
    seed = _resolve_seed(seed)
    _require_file(data)
    with _reported_errors():
        config = TrainRunConfig(
            data=str(data),
            out=str(out),
            seed=seed,
            train_fraction=train_fraction,
            carrier_frequency_hz=get_settings().carrier_frequency_hz,
            link_state=LinkStateTrainConfig(
                epochs=epochs_ls,
                batch_size=batch_size,
                learning_rate=lr_ls,
                seed=seed,
                class_weighting=class_weighting,
            ),
            vae=VaeTrainConfig(epochs=epochs_vae, batch_size=batch_size, learning_rate=lr_vae, seed=seed),
        )
        dataset = load_dataset(data)
        split_seed: int | None = None
        links = dataset.links
        if train_fraction is not None:
            dataset = split_train_test(dataset, train_fraction, seed)
            split_seed, links = seed, dataset.train_links
            save_dataset(dataset.test_links, out.with_name(out.name + ".test.jsonl"))

        result = train_channel_model(
            links,
            config.link_state,
            config.vae,
            carrier_frequency_hz=config.carrier_frequency_hz,
            split_seed=split_seed,
        )
        for warning in result.warnings:
            typer.echo(f"warning: {warning}", err=True)
        save_model(result.model, out)
        _write_traces(result, out)
        write_run_config(config, out)


@app.command()
def generate(
    model: Annotated[Path, typer.Option("--model", help="Trained model JSON")],
    conditions: Annotated[Path, typer.Option("--conditions", help="JSONL link conditions")],
    out: Annotated[Path, typer.Option("--out", help="Output JSONL links")],
    n: Annotated[int, typer.Option("--n", min=1, help="Realizations per condition")] = 1,
    mode: Annotated[GenerationMode, typer.Option("--mode")] = GenerationMode.SAMPLE,
    seed: SeedOption = None,
) -> None:
    """Generate links for every condition of a file."""
    seed = _resolve_seed(seed)
    _require_file(model)
    _require_file(conditions)
    with _reported_errors():
        channel_model = load_model(model)
        links = generate_batch(channel_model, load_conditions(conditions), n, seed, mode)
        save_dataset(links, out)
        write_run_config(
            GenerateRunConfig(
                model=str(model),
                conditions=str(conditions),
                out=str(out),
                n_per_condition=n,
                seed=seed,
                mode=mode.value,
            ),
            out,
        )


@app.command(name="eval")
def evaluate(
    model: Annotated[Path, typer.Option("--model", help="Trained model JSON")],
    test: Annotated[Path, typer.Option("--test", help="Held-out JSONL links")],
    outdir: Annotated[Path, typer.Option("--outdir", help="Report directory")],
    seed: SeedOption = None,
) -> None:
    """Compare generated links against a test set and write the report."""
    seed = _resolve_seed(seed)
    _require_file(model)
    _require_file(test)
    with _reported_errors():
        channel_model = load_model(model)
        report = compare_model_to_test(channel_model, load_dataset(test).links, seed)
        write_report(report, outdir)
        write_run_config(EvalRunConfig(model=str(model), test=str(test), outdir=str(outdir), seed=seed), outdir)
        for cell_type, ks in report.ks.items():
            shown = "n/a" if ks is None else f"{ks:.4f}"
            typer.echo(f"KS omni path loss ({cell_type}): {shown}", err=True)


@app.command()
def snrmap(
    model: Annotated[Path, typer.Option("--model", help="Trained model JSON")],
    gnb: Annotated[CellType, typer.Option("--gnb", help="gNB type")],
    out: Annotated[Path, typer.Option("--out", help="Output CSV")],
    height: Annotated[float | None, typer.Option("--height", min=0, help="gNB height in meters")] = None,
    n_real: Annotated[int, typer.Option("--n-real", min=1)] = SNR_REALIZATIONS,
    x_max: Annotated[float, typer.Option("--x-max")] = 500.0,
    x_step: Annotated[float, typer.Option("--x-step")] = 10.0,
    z_max: Annotated[float, typer.Option("--z-max")] = 130.0,
    z_step: Annotated[float, typer.Option("--z-step")] = 10.0,
    seed: SeedOption = None,
) -> None:
    """Write the median-SNR map over UAV positions for one gNB."""
    seed = _resolve_seed(seed)
    _require_file(model)
    with _reported_errors():
        spec = GnbSpec(cell_type=gnb, height_m=height)
        grid = SnrGrid(x_max_m=x_max, x_step_m=x_step, z_max_m=z_max, z_step_m=z_step)
        result = snr_map(load_model(model), spec, grid, n_real, seed)
        write_snr_map(result, out)
        write_run_config(
            SnrMapRunConfig(
                model=str(model),
                out=str(out),
                gnb=gnb,
                gnb_height_m=spec.resolved_height_m,
                seed=seed,
                n_real=n_real,
                x_max_m=x_max,
                x_step_m=x_step,
                z_max_m=z_max,
                z_step_m=z_step,
            ),
            out,
        )


def main() -> None:
    """Run the command-line interface."""
    app()


if __name__ == "__main__":
    main()
