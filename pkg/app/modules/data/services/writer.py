import json
import logging
from pathlib import Path

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.modules.data.consts import SplitFiles
from app.modules.data.contracts import IInteractionWriter
from app.modules.data.schemas import InteractionDataset, SplitPair, Vocabulary


class InteractionWriter(IInteractionWriter):
    """
    Persists datasets in the same TSV layout the loader reads back, so a
    written split reloads with identical index assignments.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the writer.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for written artifacts.
        """

        self._errors = errors
        self._logger = logger

    def write(self, ds: InteractionDataset, path: str | Path) -> None:
        users, items = ds.vocabulary.users, ds.vocabulary.items
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for u, i, t, w in zip(
                ds.user_ids.tolist(), ds.item_ids.tolist(), ds.timestamps.tolist(), ds.weights.tolist()
            ):
                handle.write(f"{users[u]}\t{items[i]}\t{t}\t{w!r}\n")

    def write_attributes(self, ds: InteractionDataset, user_path: str | Path, item_path: str | Path) -> None:
        vocab = ds.vocabulary
        self._write_table(ds.user_attributes, vocab.users, vocab.user_attributes, user_path)
        self._write_table(ds.item_attributes, vocab.items, vocab.item_attributes, item_path)

    def write_vocabulary(self, vocabulary: Vocabulary, path: str | Path) -> None:
        Path(path).write_text(json.dumps(vocabulary.model_dump(), ensure_ascii=False), encoding="utf-8")

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Persist a train/test split directory."
    )
    def write_split(self, split: SplitPair, directory: str | Path) -> dict[str, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)

        paths = {
            "train": directory / SplitFiles.TRAIN.value,
            "test": directory / SplitFiles.TEST.value,
            "vocabulary": directory / SplitFiles.VOCABULARY.value,
        }
        self.write(split.train, paths["train"])
        self.write(split.test, paths["test"])
        self.write_vocabulary(split.train.vocabulary, paths["vocabulary"])

        if split.train.user_attributes or split.train.item_attributes:
            paths["user_attributes"] = directory / SplitFiles.USER_ATTRIBUTES.value
            paths["item_attributes"] = directory / SplitFiles.ITEM_ATTRIBUTES.value
            self.write_attributes(split.train, paths["user_attributes"], paths["item_attributes"])

        self._logger.info(
            f"Wrote split to {directory}: train={len(split.train)} test={len(split.test)} protocol={split.protocol}"
        )
        return paths

    @staticmethod
    def _write_table(
        table: dict[int, tuple[int, ...]],
        entity_tokens: list[str],
        attribute_tokens: list[str],
        path: str | Path,
    ) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for entity in sorted(table):
                for attribute in table[entity]:
                    handle.write(f"{entity_tokens[entity]}\t{attribute_tokens[attribute]}\n")
