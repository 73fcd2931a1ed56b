import json
import logging
from pathlib import Path

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.config.exception import ToolkitException
from app.modules.data.consts import InputFormat, SplitFiles, SplitProtocol
from app.modules.data.contracts import IInteractionLoader
from app.modules.data.schemas import InteractionDataset, SplitPair, Vocabulary


class _TokenIndex:
    """First-seen token to dense index assignment, optionally frozen."""

    def __init__(self, tokens: list[str] | None = None, frozen: bool = False):
        self.tokens: list[str] = list(tokens or [])
        self._index = {token: i for i, token in enumerate(self.tokens)}
        self._frozen = frozen

    def get(self, token: str) -> int | None:
        index = self._index.get(token)
        if index is None and not self._frozen:
            index = len(self.tokens)
            self._index[token] = index
            self.tokens.append(token)
        return index

    def lookup(self, token: str) -> int | None:
        return self._index.get(token)


class InteractionLoader(IInteractionLoader):
    """
    Reads interaction TSVs and attribute TSVs into immutable datasets.

    Rows are split on tabs; a row without tabs is split on whitespace. Blank
    lines and ``#`` comment lines are skipped.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the loader.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for ingestion progress.
        """

        self._errors = errors
        self._logger = logger

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Parse an interaction file and optional attribute files into a dataset."
    )
    def load(
        self,
        path: str | Path,
        fmt: InputFormat = InputFormat.TSV_TRIPLES,
        user_attr_path: str | Path | None = None,
        item_attr_path: str | Path | None = None,
        vocabulary: Vocabulary | None = None,
    ) -> InteractionDataset:
        frozen = vocabulary is not None
        users = _TokenIndex(vocabulary.users if frozen else None, frozen)
        items = _TokenIndex(vocabulary.items if frozen else None, frozen)

        user_ids, item_ids, timestamps, weights = [], [], [], []
        min_cols, max_cols = (3, 4) if fmt == InputFormat.TSV_WITH_TIME else (2, 4)

        for line_no, fields in self._rows(path):
            if not min_cols <= len(fields) <= max_cols:
                raise ToolkitException(
                    self._errors.Data.MALFORMED_ROW,
                    cause=f"{path}:{line_no}: expected {min_cols}-{max_cols} columns, got {len(fields)}",
                )
            try:
                timestamp = int(fields[2]) if len(fields) > 2 else 0
                weight = float(fields[3]) if len(fields) > 3 else 1.0
            except ValueError as e:
                raise ToolkitException(self._errors.Data.MALFORMED_ROW, cause=f"{path}:{line_no}: {e}") from e
            if not weight > 0:
                raise ToolkitException(
                    self._errors.Data.MALFORMED_ROW, cause=f"{path}:{line_no}: weight must be positive"
                )

            user, item = users.get(fields[0]), items.get(fields[1])
            if user is None or item is None:
                raise ToolkitException(
                    self._errors.Data.UNKNOWN_ENTITY,
                    cause=f"{path}:{line_no}: token {fields[0] if user is None else fields[1]!r} not in vocabulary",
                )
            user_ids.append(user)
            item_ids.append(item)
            timestamps.append(timestamp)
            weights.append(weight)

        if not user_ids:
            raise ToolkitException(self._errors.Data.NO_INTERACTIONS, cause=str(path))

        user_attr_tokens = _TokenIndex(vocabulary.user_attributes if frozen else None, frozen)
        item_attr_tokens = _TokenIndex(vocabulary.item_attributes if frozen else None, frozen)
        user_attributes = self._load_attributes(user_attr_path, users, user_attr_tokens)
        item_attributes = self._load_attributes(item_attr_path, items, item_attr_tokens)

        ds = InteractionDataset(
            vocabulary=Vocabulary(
                users=users.tokens,
                items=items.tokens,
                user_attributes=user_attr_tokens.tokens,
                item_attributes=item_attr_tokens.tokens,
            ),
            user_ids=np.asarray(user_ids, dtype=np.int64),
            item_ids=np.asarray(item_ids, dtype=np.int64),
            timestamps=np.asarray(timestamps, dtype=np.int64),
            weights=np.asarray(weights, dtype=np.float64),
            user_attributes=user_attributes,
            item_attributes=item_attributes,
        )

        self._logger.info(
            f"Loaded {path}: users={ds.num_users} items={ds.num_items} interactions={len(ds)}"
        )
        return ds

    def load_vocabulary(self, path: str | Path) -> Vocabulary:
        path = Path(path)
        if not path.is_file():
            raise ToolkitException(self._errors.Data.FILE_NOT_FOUND, cause=str(path))
        return Vocabulary.model_validate(json.loads(path.read_text(encoding="utf-8")))

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Read a persisted train/test split directory."
    )
    def load_split(self, directory: str | Path) -> SplitPair:
        directory = Path(directory)
        vocabulary = self.load_vocabulary(directory / SplitFiles.VOCABULARY.value)
        meta = json.loads((directory / SplitFiles.STATS.value).read_text(encoding="utf-8")) \
            if (directory / SplitFiles.STATS.value).is_file() else {}

        user_attr = directory / SplitFiles.USER_ATTRIBUTES.value
        item_attr = directory / SplitFiles.ITEM_ATTRIBUTES.value
        attr_paths = dict(
            user_attr_path=user_attr if user_attr.is_file() else None,
            item_attr_path=item_attr if item_attr.is_file() else None,
        )
        train = self.load(directory / SplitFiles.TRAIN.value, InputFormat.TSV_WITH_TIME, vocabulary=vocabulary, **attr_paths)
        test = self.load(directory / SplitFiles.TEST.value, InputFormat.TSV_WITH_TIME, vocabulary=vocabulary, **attr_paths)
        return SplitPair(
            train=train,
            test=test,
            protocol=SplitProtocol(meta.get("protocol", SplitProtocol.RANDOM_HOLDOUT.value)),
        )

    def _rows(self, path: str | Path):
        path = Path(path)
        if not path.is_file():
            raise ToolkitException(self._errors.Data.FILE_NOT_FOUND, cause=str(path))

        with open(path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.rstrip("\r\n")
                if not line.strip() or line.lstrip().startswith("#"):
                    continue
                fields = line.split("\t") if "\t" in line else line.split()
                yield line_no, [field.strip() for field in fields]

    def _load_attributes(
        self,
        path: str | Path | None,
        entities: _TokenIndex,
        attributes: _TokenIndex,
    ) -> dict[int, tuple[int, ...]]:
        if path is None:
            return {}

        table: dict[int, list[int]] = {}
        for line_no, fields in self._rows(path):
            if len(fields) != 2:
                raise ToolkitException(
                    self._errors.Data.MALFORMED_ROW,
                    cause=f"{path}:{line_no}: expected 2 columns, got {len(fields)}",
                )
            entity = entities.lookup(fields[0])
            if entity is None:
                raise ToolkitException(
                    self._errors.Data.UNKNOWN_ENTITY, cause=f"{path}:{line_no}: unknown entity token {fields[0]!r}"
                )
            attribute = attributes.get(fields[1])
            if attribute is None:
                raise ToolkitException(
                    self._errors.Data.UNKNOWN_ENTITY, cause=f"{path}:{line_no}: unknown attribute token {fields[1]!r}"
                )
            listed = table.setdefault(entity, [])
            if attribute not in listed:
                listed.append(attribute)

        return {entity: tuple(sorted(ids)) for entity, ids in table.items()}
