import pandas as pd
from pydantic import Field

from app.common.schemas import ArraySchema, CoreSchema


class CutoffMetrics(CoreSchema):
    k: int = Field(ge=1)
    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    ndcg: float = Field(ge=0, le=1)


class EvalReport(CoreSchema):
    """User-averaged ranking metrics; users without test positives are not counted."""

    cutoffs: list[CutoffMetrics]
    users_evaluated: int = Field(ge=0)
    remove_historical: bool
    config_fingerprint: str
    run_id: str | None = None

    def at(self, k: int) -> CutoffMetrics:
        for metrics in self.cutoffs:
            if metrics.k == k:
                return metrics
        raise KeyError(k)


class FidelityResult(ArraySchema):
    """
    Output of the rank fidelity study.

    `pairs` has one row per sampled (user, item) with columns user, item,
    true_rank, estimate; `binned` uses the study CSV columns.
    """

    pairs: pd.DataFrame
    binned: pd.DataFrame
    pearson: float
