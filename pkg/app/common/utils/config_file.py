from pathlib import Path
from typing import Any

from dotenv import dotenv_values

from app.common.consts import ErrorCodesEnums
from app.common.contracts import IConfigFileReader
from app.config.exception import ToolkitException


class ConfigFileReader(IConfigFileReader):
    """
    Reads flat ``key=value`` files with python-dotenv and nests dotted keys.

    Keys are case-insensitive and normalised to lower case; ``-`` in keys is
    read as ``_`` so ``batch-size`` and ``batch_size`` are the same key.
    """

    def __init__(self, errors: ErrorCodesEnums):
        self._errors = errors

    def read(self, path: str | Path | None) -> dict[str, Any]:
        if path is None:
            return {}

        path = Path(path)
        if not path.is_file():
            raise ToolkitException(self._errors.Config.CONFIG_FILE_NOT_FOUND, cause=str(path))

        nested: dict[str, Any] = {}
        for raw_key, value in dotenv_values(path).items():
            if value is None or value == "":
                continue
            parts = raw_key.strip().lower().replace("-", "_").split(".")
            node = nested
            for part in parts[:-1]:
                if isinstance(node.get(part), str) and len(parts) == 2:
                    node[part] = {"family": node[part]}
                node = node.setdefault(part, {})
                if not isinstance(node, dict):
                    raise ToolkitException(self._errors.Config.INVALID_CONFIG, cause=f"key {raw_key!r} conflicts")
            leaf = parts[-1]
            if isinstance(node.get(leaf), dict):
                # `loss=log` next to `loss.p=0.5`
                node[leaf]["family"] = value
            else:
                node[leaf] = value
        return nested

    @staticmethod
    def merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
        merged = dict(base)
        for key, value in overrides.items():
            if value is None:
                continue
            current = merged.get(key)
            if isinstance(value, dict) and isinstance(current, dict):
                merged[key] = ConfigFileReader.merge(current, value)
            elif isinstance(value, dict) and current is not None:
                # a bare family string below nested loss keys
                merged[key] = {"family": current, **value}
            elif isinstance(current, dict):
                merged[key] = {**current, "family": value}
            else:
                merged[key] = value
        return merged
