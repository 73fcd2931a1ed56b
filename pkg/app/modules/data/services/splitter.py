import logging
import math

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.config.exception import ToolkitException
from app.modules.data.consts import DEV_FRACTION, SplitProtocol
from app.modules.data.contracts import IDatasetSplitter
from app.modules.data.schemas import InteractionDataset, SplitPair


class DatasetSplitter(IDatasetSplitter):
    """
    Random hold-out and chronological train/test splits.

    Both protocols partition the interaction log, so |train| + |test| always
    equals the size of the input.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the splitter.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for split sizes.
        """

        self._errors = errors
        self._logger = logger

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Seeded per-interaction Bernoulli split."
    )
    def split_random(self, ds: InteractionDataset, test_fraction: float, seed: int) -> SplitPair:
        self._check(ds, test_fraction)

        rng = np.random.default_rng(seed)
        in_test = rng.random(len(ds)) < test_fraction
        split = SplitPair(
            train=ds.subset(np.flatnonzero(~in_test)),
            test=ds.subset(np.flatnonzero(in_test)),
            protocol=SplitProtocol.RANDOM_HOLDOUT,
        )
        self._logger.info(f"Random split: train={len(split.train)} test={len(split.test)} seed={seed}")
        return split

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Stable timestamp sort, tail goes to test."
    )
    def split_chronological(self, ds: InteractionDataset, test_fraction: float) -> SplitPair:
        self._check(ds, test_fraction)
        if not np.any(ds.timestamps != 0):
            raise ToolkitException(self._errors.Data.NO_TIMESTAMPS)

        n = len(ds)
        # round() first: 0.3 * 10 is 3.0000000000000004 in binary floating point
        n_test = math.ceil(round(test_fraction * n, 9))
        order = np.argsort(ds.timestamps, kind="stable")
        split = SplitPair(
            train=ds.subset(order[:n - n_test]),
            test=ds.subset(order[n - n_test:]),
            protocol=SplitProtocol.CHRONOLOGICAL,
        )
        self._logger.info(f"Chronological split: train={len(split.train)} test={len(split.test)}")
        return split

    def carve_dev(self, train: InteractionDataset, seed: int) -> SplitPair:
        return self.split_random(train, DEV_FRACTION, seed)

    def _check(self, ds: InteractionDataset, test_fraction: float) -> None:
        if not 0.0 < test_fraction < 1.0:
            raise ToolkitException(self._errors.Config.FRACTION_OUT_OF_RANGE, cause=f"got {test_fraction}")
        if len(ds) == 0:
            raise ToolkitException(self._errors.Data.NO_INTERACTIONS)
