from enum import Enum


class CommonError(Enum):
    """Common errors not specific to a single domain. Values are (code, exit code, description)."""

    UNDEFINED = (0, 1, "Unknown error")
    CONTRACT_VIOLATION = (1, 1, "Precondition of an operation violated")


class ConfigError(Enum):
    """Errors caused by invalid run configuration or command-line flags."""

    INVALID_CONFIG = (100, 2, "Invalid configuration")
    FRACTION_OUT_OF_RANGE = (101, 2, "Fraction must lie in the open interval (0, 1)")
    INVALID_COMBINATION = (102, 2, "Incompatible algorithm and loss combination")
    CONFIG_FILE_NOT_FOUND = (103, 2, "Config file not found")
    UNKNOWN_STUDY = (104, 2, "Unknown study name")


class DataError(Enum):
    """Errors raised while ingesting, splitting or describing interaction data."""

    FILE_NOT_FOUND = (200, 3, "Input file not found")
    MALFORMED_ROW = (201, 3, "Malformed row")
    NO_INTERACTIONS = (202, 3, "no interactions")
    UNKNOWN_ENTITY = (203, 3, "Attribute file references an unknown entity")
    NO_TIMESTAMPS = (204, 3, "chronological split requires timestamps")
    EMPTY_ITEM_SET = (205, 3, "Dataset has no items")
    VOCABULARY_MISMATCH = (206, 3, "Splits do not share vocabularies")
    UNKNOWN_ENTITY_INDEX = (207, 3, "Entity index outside the vocabulary")


class ModelError(Enum):
    """Errors related to model parameters and checkpoints."""

    CHECKPOINT_NOT_FOUND = (300, 3, "Checkpoint not found")
    CHECKPOINT_VERSION = (301, 3, "Unsupported checkpoint format version")


class NumericError(Enum):
    """Errors signalling numerical breakdown during training."""

    DIVERGENCE = (400, 4, "Objective or parameters became non-finite")


class ErrorCodesEnums:
    """
    Centralized container for all grouped domain-specific error enums.
    """

    def __init__(self):
        self.Common = CommonError
        self.Config = ConfigError
        self.Data = DataError
        self.Model = ModelError
        self.Numeric = NumericError
