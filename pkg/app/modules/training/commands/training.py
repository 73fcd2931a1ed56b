import json
from pathlib import Path
from typing import Any

import click

from app.common.schemas import CliState
from app.common.utils.click_types import FLOAT_LIST, INT_LIST
from app.common.utils.dependencies import get_config_file_reader, get_manifest_builder
from app.config.dependencies.exception import get_exception_handler
from app.config.settings import settings
from app.modules.data.consts import SplitFiles
from app.modules.data.schemas import SplitPair
from app.modules.data.services.dependencies import get_dataset_splitter, get_interaction_loader
from app.modules.evaluation.services.dependencies import get_report_writer
from app.modules.loss.consts import LossFamily
from app.modules.model.services.dependencies import get_checkpoint_store
from app.modules.ranking.consts import ComparatorKind
from app.modules.training.consts import GRID_DIMS, GRID_LEARNING_RATES, Algorithm, OptimizerKind, TrainFiles
from app.modules.training.schemas import TrainConfig
from app.modules.training.usecases.dependencies import get_training_usecase

exception_handler = get_exception_handler()


def training_options(func):
    """Flags shared by `train` and `grid`; every flag overrides the config file."""
    options = [
        click.option("--data", required=True, type=click.Path(file_okay=False), help="Split directory from `ingest`."),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="Flat key=value config file."),
        click.option("--algo", type=click.Choice(Algorithm.list()), default=None),
        click.option("--comparator", type=click.Choice(ComparatorKind.list()), default=None),
        click.option("--loss", type=click.Choice(LossFamily.list()), default=None),
        click.option("--loss-p", type=float, default=None, help="Exponent of the poly loss."),
        click.option("--loss-lambda", type=float, default=None, help="Base of the exp loss."),
        click.option("--q", type=float, default=None, help="Item sample fraction per mini-batch."),
        click.option("--lr", type=float, default=None),
        click.option("--dim", type=int, default=None),
        click.option("--epochs", type=int, default=None),
        click.option("--patience", type=int, default=None),
        click.option("--batch-size", type=int, default=None),
        click.option("--l2", type=float, default=None),
        click.option("--optimizer", type=click.Choice(OptimizerKind.list()), default=None),
        click.option("--seed", type=int, default=None),
        click.option("--output", type=click.Path(file_okay=False), default=None, help="Run directory."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _resolve(config_path: str | None, flags: dict[str, Any], workers: int | None) -> TrainConfig:
    overrides = {
        "algo": flags["algo"],
        "comparator": flags["comparator"],
        "loss": {"family": flags["loss"], "p": flags["loss_p"], "lambda": flags["loss_lambda"]},
        "q": flags["q"],
        "lr": flags["lr"],
        "dim": flags["dim"],
        "epochs": flags["epochs"],
        "patience": flags["patience"],
        "batch_size": flags["batch_size"],
        "l2": flags["l2"],
        "optimizer": flags["optimizer"],
        "seed": flags["seed"],
    }
    file_values = get_config_file_reader().read(config_path)
    return get_training_usecase(workers).build_config(file_values, overrides)


def _fit_and_dev(data: str, seed: int) -> tuple[SplitPair, SplitPair]:
    split = get_interaction_loader().load_split(data)
    return split, get_dataset_splitter().carve_dev(split.train, seed)


@click.command("train")
@training_options
@click.pass_obj
@exception_handler
def train(state: CliState, data: str, config_path: str | None, output: str | None, **flags: Any) -> None:
    """
    Train one model on a split directory and write its checkpoint and report.
    """

    cfg = _resolve(config_path, flags, state.workers)
    split, carved = _fit_and_dev(data, cfg.seed)
    output_dir = Path(output or Path(settings.runtime.OUTPUT_DIR) / f"train-{cfg.algorithm}")
    output_dir.mkdir(parents=True, exist_ok=True)

    builder = get_manifest_builder()
    manifest = builder.build(
        command="train",
        config=cfg.model_dump(mode="json", by_alias=True),
        seed=cfg.seed,
        datasets=[builder.dataset("train", split.train), builder.dataset("dev", carved.test)],
    )

    model, report = get_training_usecase(state.workers).train(cfg, carved.train, carved.test)
    checkpoint = get_checkpoint_store().save(model, output_dir / TrainFiles.CHECKPOINT.value)
    report = report.model_copy(update={"checkpoint": str(checkpoint), "run_id": manifest.run_id})
    report_path = output_dir / TrainFiles.REPORT.value
    report_path.write_text(json.dumps(report.model_dump(mode="json"), indent=2), encoding="utf-8")

    builder.write(manifest, [checkpoint, report_path], output_dir / SplitFiles.MANIFEST.value)
    state.echo(
        report.model_dump(mode="json"),
        f"{cfg.algorithm}: best epoch {report.best_epoch} of {len(report.epochs)}, "
        f"dev NDCG@30={report.best_dev_metric:.4f}; checkpoint {checkpoint} (run {manifest.run_id})",
    )


@click.command("grid")
@training_options
@click.option("--dims", type=INT_LIST, default=",".join(map(str, GRID_DIMS)), show_default=True)
@click.option("--lrs", type=FLOAT_LIST, default=",".join(map(str, GRID_LEARNING_RATES)), show_default=True)
@click.pass_obj
@exception_handler
def grid(
    state: CliState,
    data: str,
    config_path: str | None,
    output: str | None,
    dims: tuple[int, ...],
    lrs: tuple[float, ...],
    **flags: Any,
) -> None:
    """
    Sweep embedding size and learning rate, recording the best dev NDCG@30 of each run.
    """

    cfg = _resolve(config_path, flags, state.workers)
    split, carved = _fit_and_dev(data, cfg.seed)
    output_dir = Path(output or Path(settings.runtime.OUTPUT_DIR) / f"grid-{cfg.algorithm}")
    output_dir.mkdir(parents=True, exist_ok=True)

    builder = get_manifest_builder()
    manifest = builder.build(
        command="grid",
        config={**cfg.model_dump(mode="json", by_alias=True), "dims": list(dims), "lrs": list(lrs)},
        seed=cfg.seed,
        datasets=[builder.dataset("train", split.train), builder.dataset("dev", carved.test)],
    )

    frame = get_training_usecase(state.workers).grid(cfg, carved.train, carved.test, dims, lrs)
    grid_path = get_report_writer().write_table(frame, output_dir / TrainFiles.GRID.value, manifest.run_id)
    builder.write(manifest, [grid_path], output_dir / SplitFiles.MANIFEST.value)

    best = frame.loc[frame["best_dev_ndcg"].idxmax()]
    state.echo(
        {"run_id": manifest.run_id, "grid": str(grid_path), "rows": frame.to_dict(orient="records")},
        f"Best of {len(frame)} runs: dim={int(best['dim'])} lr={best['learning_rate']} "
        f"dev NDCG@30={best['best_dev_ndcg']:.4f}; table {grid_path}",
    )
