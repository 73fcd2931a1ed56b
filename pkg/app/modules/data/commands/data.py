import json
from pathlib import Path

import click

from app.common.schemas import CliState
from app.common.utils.dependencies import get_manifest_builder
from app.config.dependencies.exception import get_exception_handler
from app.config.settings import settings
from app.modules.data.consts import InputFormat, SplitFiles, SplitProtocol
from app.modules.data.services.dependencies import (
    get_dataset_splitter,
    get_dataset_statistics,
    get_interaction_loader,
    get_interaction_writer,
    get_synthetic_data_generator,
)

exception_handler = get_exception_handler()

# Short names accepted by --split
SPLIT_ALIASES = {
    "random": SplitProtocol.RANDOM_HOLDOUT,
    "chrono": SplitProtocol.CHRONOLOGICAL,
    SplitProtocol.RANDOM_HOLDOUT.value: SplitProtocol.RANDOM_HOLDOUT,
    SplitProtocol.CHRONOLOGICAL.value: SplitProtocol.CHRONOLOGICAL,
}


@click.command("ingest")
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="Interaction file.")
@click.option("--format", "fmt", type=click.Choice(InputFormat.list()), default=InputFormat.TSV_TRIPLES.value,
              show_default=True)
@click.option("--user-attributes", type=click.Path(dir_okay=False), default=None, help="user<TAB>attribute file.")
@click.option("--item-attributes", type=click.Path(dir_okay=False), default=None, help="item<TAB>attribute file.")
@click.option("--split", "split_name", type=click.Choice(list(SPLIT_ALIASES)), default="random", show_default=True)
@click.option("--test-frac", type=float, default=0.2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(file_okay=False), default=None, help="Split directory.")
@click.pass_obj
@exception_handler
def ingest(
    state: CliState,
    input_path: str,
    fmt: str,
    user_attributes: str | None,
    item_attributes: str | None,
    split_name: str,
    test_frac: float,
    seed: int,
    output: str | None,
) -> None:
    """
    Load an interaction file, split it and write the split directory.
    """

    protocol = SPLIT_ALIASES[split_name]
    output_dir = Path(output or Path(settings.runtime.OUTPUT_DIR) / "data")

    ds = get_interaction_loader().load(input_path, InputFormat(fmt), user_attributes, item_attributes)
    splitter = get_dataset_splitter()
    if protocol == SplitProtocol.CHRONOLOGICAL:
        split = splitter.split_chronological(ds, test_frac)
    else:
        split = splitter.split_random(ds, test_frac, seed)

    builder = get_manifest_builder()
    manifest = builder.build(
        command="ingest",
        config={
            "input": str(input_path),
            "format": fmt,
            "split": protocol.value,
            "test_frac": test_frac,
            "user_attributes": user_attributes,
            "item_attributes": item_attributes,
        },
        seed=seed,
        datasets=[builder.dataset("input", ds)],
    )

    paths = get_interaction_writer().write_split(split, output_dir)
    statistics = get_dataset_statistics()
    stats = {
        "protocol": protocol.value,
        "run_id": manifest.run_id,
        "full": statistics.dataset_stats(ds).model_dump(),
        "train": statistics.dataset_stats(split.train).model_dump(),
        "test": statistics.dataset_stats(split.test).model_dump(),
    }
    stats_path = output_dir / SplitFiles.STATS.value
    stats_path.write_text(json.dumps(stats, indent=2, sort_keys=True), encoding="utf-8")

    builder.write(manifest, [*paths.values(), stats_path], output_dir / SplitFiles.MANIFEST.value)
    state.echo(
        {"run_id": manifest.run_id, "output": str(output_dir), **stats},
        f"Wrote {protocol.value} split to {output_dir}: "
        f"train={len(split.train)} test={len(split.test)} (run {manifest.run_id})",
    )


@click.command("stats")
@click.option("--input", "input_path", required=True, type=click.Path(), help="Interaction file or split directory.")
@click.option("--format", "fmt", type=click.Choice(InputFormat.list()), default=InputFormat.TSV_TRIPLES.value,
              show_default=True)
@click.option("--user-attributes", type=click.Path(dir_okay=False), default=None)
@click.option("--item-attributes", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@exception_handler
def stats(
    state: CliState,
    input_path: str,
    fmt: str,
    user_attributes: str | None,
    item_attributes: str | None,
) -> None:
    """
    Print dataset statistics of an interaction file or of both halves of a split directory.
    """

    loader = get_interaction_loader()
    statistics = get_dataset_statistics()
    if Path(input_path).is_dir():
        split = loader.load_split(input_path)
        summary = {
            "train": statistics.dataset_stats(split.train).model_dump(),
            "test": statistics.dataset_stats(split.test).model_dump(),
        }
    else:
        ds = loader.load(input_path, InputFormat(fmt), user_attributes, item_attributes)
        summary = {"full": statistics.dataset_stats(ds).model_dump()}

    lines = [
        f"{name}: users={s['users']} items={s['items']} interactions={s['interactions']} "
        f"positives={s['positives']} density={s['density']:.6f} "
        f"attributes/pair={s['mean_attributes_per_pair']:.3f}"
        for name, s in summary.items()
    ]
    state.echo(summary, "\n".join(lines))


@click.command("synthesize")
@click.option("--users", "num_users", type=int, default=1000, show_default=True)
@click.option("--items", "num_items", type=int, default=2000, show_default=True)
@click.option("--per-user", "interactions_per_user", type=int, default=20, show_default=True)
@click.option("--latent-dim", type=int, default=8, show_default=True)
@click.option("--genres", "num_genres", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", required=True, type=click.Path(file_okay=False), help="Directory for the TSV files.")
@click.pass_obj
@exception_handler
def synthesize(
    state: CliState,
    num_users: int,
    num_items: int,
    interactions_per_user: int,
    latent_dim: int,
    num_genres: int,
    seed: int,
    output: str,
) -> None:
    """
    Write a planted low-rank dataset as interaction and item-attribute TSVs.
    """

    ds = get_synthetic_data_generator().make_planted_dataset(
        num_users=num_users,
        num_items=num_items,
        interactions_per_user=interactions_per_user,
        latent_dim=latent_dim,
        num_genres=num_genres,
        seed=seed,
    )
    output_dir = Path(output)
    output_dir.mkdir(parents=True, exist_ok=True)
    interactions_path = output_dir / "interactions.tsv"
    user_path = output_dir / SplitFiles.USER_ATTRIBUTES.value
    item_path = output_dir / SplitFiles.ITEM_ATTRIBUTES.value

    writer = get_interaction_writer()
    writer.write(ds, interactions_path)
    # ingest rejects attribute rows for items that never occur in the interaction file
    observed = set(ds.item_ids.tolist())
    listed = ds.model_copy(update={
        "item_attributes": {item: attrs for item, attrs in ds.item_attributes.items() if item in observed},
    })
    writer.write_attributes(listed, user_path, item_path)

    builder = get_manifest_builder()
    manifest = builder.build(
        command="synthesize",
        config={
            "users": num_users,
            "items": num_items,
            "per_user": interactions_per_user,
            "latent_dim": latent_dim,
            "genres": num_genres,
        },
        seed=seed,
        datasets=[builder.dataset("synthetic", ds)],
    )
    builder.write(manifest, [interactions_path, user_path, item_path], output_dir / SplitFiles.MANIFEST.value)
    state.echo(
        {"run_id": manifest.run_id, "interactions": str(interactions_path), "item_attributes": str(item_path)},
        f"Wrote {len(ds)} interactions to {interactions_path} (run {manifest.run_id})",
    )
