import click

from app.common.consts.enums import LoggerLevelEnum
from app.common.logger.dependencies import get_logger_manager
from app.common.schemas import CliState
from app.config.settings import settings
from app.router import include_commands


# === Root Command === #
@click.group(name="bars", context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(settings.project.PROJECT_VERSION, prog_name=settings.project.PROJECT_NAME)
@click.option("--json", "json_output", is_flag=True, default=False, help="Print command summaries as JSON.")
@click.option("--workers", type=click.IntRange(min=1), default=None,
              help="Cap on worker threads (default: BARS_WORKERS).")
@click.option("--log-level", type=click.Choice(LoggerLevelEnum.list(), case_sensitive=False), default=None,
              help="Override BARS_LOG_LEVEL.")
@click.pass_context
def cli(ctx: click.Context, json_output: bool, workers: int | None, log_level: str | None) -> None:
    """
    Batch-approximated rank estimators and rank-sensitive losses for top-k recommendation.

    Logs go to stderr; result files go to the paths each command reports.
    """
    if log_level:
        get_logger_manager().set_level(log_level.upper())
    ctx.obj = CliState(json_output=json_output, workers=workers)


# === Command Setup === #
include_commands(cli)
