from pathlib import Path

import click

from app.common.consts.dependencies import get_error_codes
from app.common.schemas import CliState
from app.common.utils.click_types import FLOAT_LIST, INT_LIST
from app.common.utils.dependencies import get_manifest_builder
from app.config.dependencies.exception import get_exception_handler
from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.data.consts import SplitFiles
from app.modules.data.services.dependencies import get_interaction_loader
from app.modules.evaluation.consts import DEFAULT_CUTOFFS, EvalFiles, ScoreProfile, StudyName
from app.modules.evaluation.services.dependencies import get_estimator_studies, get_evaluator, get_report_writer
from app.modules.model.services.dependencies import get_checkpoint_store
from app.modules.ranking.consts import ComparatorKind

exception_handler = get_exception_handler()


@click.command("evaluate")
@click.option("--data", required=True, type=click.Path(file_okay=False), help="Split directory from `ingest`.")
@click.option("--checkpoint", required=True, type=click.Path(dir_okay=False), help="Checkpoint from `train`.")
@click.option("--cutoffs", type=INT_LIST, default=",".join(map(str, DEFAULT_CUTOFFS)), show_default=True)
@click.option("--remove-historical/--no-remove-historical", default=True, show_default=True,
              help="Drop training items from the ranked lists.")
@click.option("--output", type=click.Path(file_okay=False), default=None, help="Report directory.")
@click.pass_obj
@exception_handler
def evaluate(
    state: CliState,
    data: str,
    checkpoint: str,
    cutoffs: tuple[int, ...],
    remove_historical: bool,
    output: str | None,
) -> None:
    """
    Score a checkpoint on the test half of a split directory.
    """

    split = get_interaction_loader().load_split(data)
    model = get_checkpoint_store().load(checkpoint)
    output_dir = Path(output or Path(settings.runtime.OUTPUT_DIR) / "eval")

    builder = get_manifest_builder()
    manifest = builder.build(
        command="evaluate",
        config={
            "checkpoint": str(checkpoint),
            "cutoffs": list(cutoffs),
            "remove_historical": remove_historical,
            "model": model.config.model_dump(mode="json"),
        },
        seed=model.config.seed,
        datasets=[builder.dataset("train", split.train), builder.dataset("test", split.test)],
    )

    report = get_evaluator().evaluate(model, split.train, split.test, cutoffs, remove_historical, state.workers)
    report = report.model_copy(update={"run_id": manifest.run_id})
    paths = get_report_writer().write_eval_report(report, output_dir)
    builder.write(manifest, list(paths.values()), output_dir / SplitFiles.MANIFEST.value)

    lines = [
        f"P@{m.k}={m.precision:.4f} R@{m.k}={m.recall:.4f} NDCG@{m.k}={m.ndcg:.4f}" for m in report.cutoffs
    ]
    state.echo(
        report.model_dump(mode="json"),
        f"{report.users_evaluated} users evaluated (run {manifest.run_id})\n" + "\n".join(lines),
    )


@click.command("simulate")
@click.option("--study", required=True, help="variance or fidelity.")
@click.option("--N", "num_items", type=int, default=100_000, show_default=True, help="Item set size.")
@click.option("--ranks", type=INT_LIST, default="10,100,1000,10000", show_default=True)
@click.option("--q", "q_list", type=FLOAT_LIST, default="0.05,0.1", show_default=True)
@click.option("--resamples", type=int, default=10_000, show_default=True)
@click.option("--profile", type=click.Choice(ScoreProfile.list()), default=ScoreProfile.GAUSSIAN.value,
              show_default=True)
@click.option("--comparator", type=click.Choice(ComparatorKind.list()), default=ComparatorKind.MARGIN.value,
              show_default=True)
@click.option("--data", type=click.Path(file_okay=False), default=None, help="Split directory (fidelity).")
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None, help="Trained model (fidelity).")
@click.option("--sample-users", type=int, default=500, show_default=True)
@click.option("--bins", "num_bins", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", type=click.Path(file_okay=False), default=None, help="Study directory.")
@click.pass_obj
@exception_handler
def simulate(
    state: CliState,
    study: str,
    num_items: int,
    ranks: tuple[int, ...],
    q_list: tuple[float, ...],
    resamples: int,
    profile: str,
    comparator: str,
    data: str | None,
    checkpoint: str | None,
    sample_users: int,
    num_bins: int,
    seed: int,
    output: str | None,
) -> None:
    """
    Run an estimator-quality study and write its CSV tables.
    """

    errors = get_error_codes()
    if study not in StudyName.list():
        raise ToolkitException(errors.Config.UNKNOWN_STUDY, cause=f"{study!r}; expected one of {StudyName.list()}")
    output_dir = Path(output or Path(settings.runtime.OUTPUT_DIR) / f"study-{study}")
    output_dir.mkdir(parents=True, exist_ok=True)
    studies = get_estimator_studies()
    writer = get_report_writer()
    builder = get_manifest_builder()

    if StudyName(study) == StudyName.VARIANCE:
        manifest = builder.build(
            command="simulate",
            config={
                "study": study,
                "N": num_items,
                "ranks": list(ranks),
                "q": list(q_list),
                "resamples": resamples,
                "profile": profile,
                "comparator": comparator,
            },
            seed=seed,
        )
        frame = studies.variance_study(
            num_items, ranks, q_list, resamples, ScoreProfile(profile), ComparatorKind(comparator), seed, state.workers
        )
        table = writer.write_table(frame, output_dir / EvalFiles.VARIANCE_CSV.value, manifest.run_id)
        builder.write(manifest, [table], output_dir / SplitFiles.MANIFEST.value)
        state.echo(
            {"run_id": manifest.run_id, "table": str(table), "rows": frame.to_dict(orient="records")},
            frame.to_string(index=False),
        )
        return

    if data is None or checkpoint is None:
        raise ToolkitException(errors.Config.INVALID_CONFIG, cause="the fidelity study needs --data and --checkpoint")
    split = get_interaction_loader().load_split(data)
    model = get_checkpoint_store().load(checkpoint)
    manifest = builder.build(
        command="simulate",
        config={
            "study": study,
            "checkpoint": str(checkpoint),
            "sample_users": sample_users,
            "bins": num_bins,
            "comparator": comparator,
        },
        seed=seed,
        datasets=[builder.dataset("train", split.train)],
    )
    result = studies.rank_fidelity_study(
        model, split.train, sample_users, ComparatorKind(comparator), num_bins, seed
    )
    binned = writer.write_table(result.binned, output_dir / EvalFiles.FIDELITY_CSV.value, manifest.run_id)
    pairs = writer.write_table(result.pairs, output_dir / EvalFiles.FIDELITY_PAIRS_CSV.value, manifest.run_id)
    builder.write(manifest, [binned, pairs], output_dir / SplitFiles.MANIFEST.value)
    state.echo(
        {"run_id": manifest.run_id, "table": str(binned), "pairs": str(pairs), "pearson": result.pearson},
        f"{len(result.pairs)} ranked positives, Pearson r={result.pearson:.4f}; table {binned}",
    )
