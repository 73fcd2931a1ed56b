import json
from typing import Any

import click
from pydantic import Field

from app.common.schemas.core_schema import CoreSchema


class CliState(CoreSchema):
    """Options of the root command shared with every subcommand."""

    json_output: bool = False
    workers: int | None = Field(None, ge=1)

    def echo(self, payload: dict[str, Any], text: str) -> None:
        """Print a command summary to stdout, as JSON when `--json` is set."""
        if self.json_output:
            click.echo(json.dumps(payload, sort_keys=True, default=str))
        else:
            click.echo(text)
