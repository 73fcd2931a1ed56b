from pydantic import Field, model_validator

from app.common.schemas import CoreSchema
from app.modules.ranking.consts import EstimatorKind


class RankEstimate(CoreSchema):
    value: float = Field(ge=0)
    estimator: EstimatorKind
    trials: int | None = Field(None, ge=1)
    sample_fraction: float | None = Field(None, gt=0, le=1)
    # pairwise only: no violator found within max_trials
    censored: bool = False

    @model_validator(mode="after")
    def _check_provenance(self) -> "RankEstimate":
        if self.trials is not None and self.estimator != EstimatorKind.PAIRWISE_SAMPLED:
            raise ValueError("trials are only reported by the pairwise estimator")
        if self.sample_fraction is not None and self.estimator != EstimatorKind.MINIBATCH:
            raise ValueError("sample_fraction is only reported by the minibatch estimator")
        return self


class PairwiseMoments(CoreSchema):
    """Exact mean and standard deviation of the pairwise estimate."""

    mean: float
    std: float
    censor_probability: float
