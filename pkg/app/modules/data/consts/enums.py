from enum import Enum
from typing import Type

from app.common.consts.enums import StringEnum


class InputFormat(StringEnum):
    """
    Interaction file layouts.

    Attributes:
        TSV_TRIPLES: ``user, item[, timestamp[, weight]]``; timestamp 0 when absent.
        TSV_WITH_TIME: ``user, item, timestamp[, weight]``; timestamp required.
    """

    TSV_TRIPLES = "tsv_triples"
    TSV_WITH_TIME = "tsv_with_time"


class SplitProtocol(StringEnum):
    """Train/test split protocols."""

    RANDOM_HOLDOUT = "random_holdout"
    CHRONOLOGICAL = "chronological"


class SplitFiles(str, Enum):
    """File names of a persisted split directory."""

    TRAIN = "train.tsv"
    TEST = "test.tsv"
    USER_ATTRIBUTES = "user_attributes.tsv"
    ITEM_ATTRIBUTES = "item_attributes.tsv"
    VOCABULARY = "vocab.json"
    STATS = "stats.json"
    MANIFEST = "manifest.json"


class DataEnums:
    """
    Container of enums used across the data module.
    """

    Format: Type[InputFormat] = InputFormat
    Protocol: Type[SplitProtocol] = SplitProtocol
    Files: Type[SplitFiles] = SplitFiles


# Fraction of train carved out as the early-stopping dev split
DEV_FRACTION = 0.05
