import click

from app.modules.data.commands import ingest, stats, synthesize
from app.modules.evaluation.commands import evaluate, simulate
from app.modules.training.commands import grid, train


COMMANDS: tuple[click.Command, ...] = (
    ingest,
    stats,
    synthesize,
    train,
    grid,
    evaluate,
    simulate,
)


def include_commands(group: click.Group) -> None:
    """
    Registers every module's commands on the root group.
    """
    for command in COMMANDS:
        group.add_command(command)
