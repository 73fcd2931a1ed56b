import logging

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.config.exception import ToolkitException
from app.modules.data.contracts import IDatasetStatistics
from app.modules.data.schemas import DatasetStats, InteractionDataset


class DatasetStatistics(IDatasetStatistics):
    """
    Size, density and attribute complexity of a dataset.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        self._errors = errors
        self._logger = logger

    def dataset_stats(self, ds: InteractionDataset) -> DatasetStats:
        if ds.num_items == 0 or ds.num_users == 0:
            raise ToolkitException(self._errors.Data.EMPTY_ITEM_SET)

        users, items = ds.positive_pairs()
        if len(users):
            # identity attribute counts as one per entity
            user_sizes = np.array([1 + len(ds.user_attributes.get(u, ())) for u in range(ds.num_users)])
            item_sizes = np.array([1 + len(ds.item_attributes.get(i, ())) for i in range(ds.num_items)])
            mean_attributes = float(np.mean(user_sizes[users] + item_sizes[items]))
        else:
            mean_attributes = 0.0

        stats = DatasetStats(
            users=ds.num_users,
            items=ds.num_items,
            interactions=len(ds),
            positives=len(users),
            density=len(ds) / (ds.num_users * ds.num_items),
            mean_attributes_per_pair=mean_attributes,
        )
        self._logger.debug(f"Dataset stats: {stats.model_dump()}")
        return stats
