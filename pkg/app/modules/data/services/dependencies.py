from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_data_logger
from app.modules.data.contracts import (
    IDatasetSplitter,
    IDatasetStatistics,
    IInteractionLoader,
    IInteractionWriter,
    ISyntheticDataGenerator,
)
from app.modules.data.services import (
    DatasetSplitter,
    DatasetStatistics,
    InteractionLoader,
    InteractionWriter,
    SyntheticDataGenerator,
)


def get_interaction_loader() -> IInteractionLoader:
    """
    Dependency provider for IInteractionLoader implementation.

    :return: Instance of InteractionLoader.
    """

    return InteractionLoader(errors=get_error_codes(), logger=get_data_logger())


def get_interaction_writer() -> IInteractionWriter:
    """
    Dependency provider for IInteractionWriter implementation.

    :return: Instance of InteractionWriter.
    """

    return InteractionWriter(errors=get_error_codes(), logger=get_data_logger())


def get_dataset_splitter() -> IDatasetSplitter:
    """
    Dependency provider for IDatasetSplitter implementation.

    :return: Instance of DatasetSplitter.
    """

    return DatasetSplitter(errors=get_error_codes(), logger=get_data_logger())


def get_dataset_statistics() -> IDatasetStatistics:
    return DatasetStatistics(errors=get_error_codes(), logger=get_data_logger())


def get_synthetic_data_generator() -> ISyntheticDataGenerator:
    return SyntheticDataGenerator(errors=get_error_codes(), logger=get_data_logger())
