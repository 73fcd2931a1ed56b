import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.contracts import IFingerprinter
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.data.schemas import InteractionDataset
from app.modules.evaluation.consts import DEFAULT_CUTOFFS, USER_CHUNK
from app.modules.evaluation.contracts import IEvaluator
from app.modules.evaluation.schemas import CutoffMetrics, EvalReport
from app.modules.evaluation.services.metrics import RankingMetrics
from app.modules.model.schemas import FactorModel


class Evaluator(IEvaluator):
    """
    Offline top-k evaluation.

    Users are scored in blocks of `USER_CHUNK` against every item on a thread
    pool; each block returns metric sums and the sums are reduced in block
    order, so the report does not depend on scheduling.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
        metrics: RankingMetrics,
        fingerprinter: IFingerprinter,
    ):
        """
        Initialize the evaluator.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for evaluation summaries.
        :param metrics: Metric implementation used per user.
        :param fingerprinter: Digest of the evaluation configuration.
        """

        self._errors = errors
        self._logger = logger
        self._metrics = metrics
        self._fingerprinter = fingerprinter

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Top-k evaluation over users with test positives."
    )
    def evaluate(
        self,
        model: FactorModel,
        train_ds: InteractionDataset,
        test_ds: InteractionDataset,
        cutoffs: Sequence[int] = DEFAULT_CUTOFFS,
        remove_historical: bool = True,
        workers: int | None = None,
    ) -> EvalReport:
        if train_ds.vocabulary != test_ds.vocabulary:
            raise ToolkitException(self._errors.Data.VOCABULARY_MISMATCH)
        cutoffs = sorted({int(k) for k in cutoffs})
        if not cutoffs or cutoffs[0] < 1:
            raise ToolkitException(self._errors.Config.INVALID_CONFIG, cause=f"cutoffs {cutoffs}")

        test_positives = test_ds.positives
        _ = train_ds.positives  # build the cached matrix before threads share it
        users = np.flatnonzero(np.diff(test_positives.indptr) > 0)
        chunks = [users[i:i + USER_CHUNK] for i in range(0, len(users), USER_CHUNK)]

        def run(chunk: np.ndarray) -> np.ndarray:
            return self._evaluate_chunk(model, chunk, train_ds, test_ds, cutoffs, remove_historical)

        workers = min(workers or settings.runtime.WORKERS, max(1, len(chunks)))
        totals = np.zeros((len(cutoffs), 3))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for sums in pool.map(run, chunks):
                totals += sums

        n = max(1, len(users))
        report = EvalReport(
            cutoffs=[
                CutoffMetrics(
                    k=k,
                    precision=totals[j, 0] / n,
                    recall=totals[j, 1] / n,
                    ndcg=totals[j, 2] / n,
                )
                for j, k in enumerate(cutoffs)
            ],
            users_evaluated=len(users),
            remove_historical=remove_historical,
            config_fingerprint=self._fingerprinter.json_digest({
                "model": model.config.model_dump(),
                "cutoffs": cutoffs,
                "remove_historical": remove_historical,
                "test_interactions": len(test_ds),
            }),
        )
        self._logger.info(
            f"Evaluated {report.users_evaluated} users: "
            + " ".join(f"NDCG@{m.k}={m.ndcg:.4f}" for m in report.cutoffs)
        )
        return report

    def _evaluate_chunk(
        self,
        model: FactorModel,
        users: np.ndarray,
        train_ds: InteractionDataset,
        test_ds: InteractionDataset,
        cutoffs: list[int],
        remove_historical: bool,
    ) -> np.ndarray:
        sums = np.zeros((len(cutoffs), 3))
        scores = model.score_block(users, np.arange(model.num_items))
        k_max = cutoffs[-1]
        for row, user in enumerate(users):
            exclude = train_ds.user_positives(user) if remove_historical else ()
            ranked = self._metrics.topk_from_scores(scores[row], k_max, exclude).tolist()
            relevant = test_ds.user_positives(user).tolist()
            for j, k in enumerate(cutoffs):
                sums[j, 0] += self._metrics.precision_at_k(ranked, relevant, k)
                sums[j, 1] += self._metrics.recall_at_k(ranked, relevant, k)
                sums[j, 2] += self._metrics.ndcg_at_k(ranked, relevant, k)
        return sums
