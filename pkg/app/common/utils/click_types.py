from typing import Any, Callable

import click


class CommaSeparated(click.ParamType):
    """Click parameter parsing ``a,b,c`` into a tuple of `cast` values."""

    name = "list"

    def __init__(self, cast: Callable[[str], Any]):
        self._cast = cast

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> tuple:
        if isinstance(value, (tuple, list)):
            return tuple(value)
        try:
            parsed = tuple(self._cast(part.strip()) for part in str(value).split(",") if part.strip())
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list", param, ctx)
        if not parsed:
            self.fail("expected at least one value", param, ctx)
        return parsed


INT_LIST = CommaSeparated(int)
FLOAT_LIST = CommaSeparated(float)
