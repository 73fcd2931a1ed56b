from .data_services import (
    IDatasetSplitter,
    IDatasetStatistics,
    IInteractionLoader,
    IInteractionWriter,
    ISyntheticDataGenerator,
)
