from typing import Any

import numpy as np
from pydantic import Field, field_validator, model_validator

from app.common.consts.error_codes import ConfigError
from app.common.schemas import ArraySchema, CoreSchema
from app.config.exception import ToolkitException
from app.modules.evaluation.consts import DEFAULT_CUTOFFS
from app.modules.loss.schemas import LossSpec
from app.modules.model.schemas import ModelConfig
from app.modules.ranking.consts import ComparatorKind
from app.modules.training.consts import (
    ALGORITHM_LOSSES,
    DEFAULT_MINIBATCH_SIZE,
    EARLY_STOP_CUTOFF,
    PER_OBSERVATION_ALGORITHMS,
    Algorithm,
    OptimizerKind,
)


class TrainConfig(CoreSchema):
    """
    Every knob of a training run.

    `loss` accepts a bare family string; a missing loss falls back to the
    algorithm's default family. Without an explicit mini-batch size warp and
    bpr take one step per observation.
    """

    algorithm: Algorithm = Algorithm.BARS
    comparator: ComparatorKind = ComparatorKind.SUPPRESSED_MARGIN
    loss: LossSpec = Field(default_factory=LossSpec)
    model: ModelConfig = Field(default_factory=ModelConfig)
    optimizer: OptimizerKind = OptimizerKind.SGD
    minibatch_size: int = Field(DEFAULT_MINIBATCH_SIZE, ge=1)
    sample_fraction: float = Field(0.1, gt=0, le=1)
    learning_rate: float = Field(0.05, gt=0)
    max_epochs: int = Field(30, ge=1)
    patience: int = Field(3, ge=1)
    eval_cutoffs: list[int] = Field(default_factory=lambda: list(DEFAULT_CUTOFFS))
    remove_historical: bool = True
    seed: int = 0

    @model_validator(mode="before")
    @classmethod
    def _algorithm_defaults(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        algorithm = Algorithm(data.get("algorithm", Algorithm.BARS))
        loss = data.get("loss")
        if isinstance(loss, str):
            loss = {"family": loss}
        if loss is None:
            loss = {}
        if isinstance(loss, dict) and "family" not in loss:
            loss = {**loss, "family": ALGORITHM_LOSSES[algorithm][0]}
        data["loss"] = loss
        if data.get("minibatch_size") is None:
            data["minibatch_size"] = 1 if algorithm in PER_OBSERVATION_ALGORITHMS else DEFAULT_MINIBATCH_SIZE
        return data

    @field_validator("eval_cutoffs", mode="before")
    @classmethod
    def _split_cutoffs(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value

    @model_validator(mode="after")
    def _check_combination(self) -> "TrainConfig":
        if self.loss.family not in ALGORITHM_LOSSES[self.algorithm]:
            raise ToolkitException(
                ConfigError.INVALID_COMBINATION,
                cause=f"algorithm {self.algorithm} does not train with loss {self.loss.family}",
            )
        if any(k < 1 for k in self.eval_cutoffs):
            raise ValueError("eval cutoffs must be >= 1")
        if EARLY_STOP_CUTOFF not in self.eval_cutoffs:
            self.eval_cutoffs = sorted({*self.eval_cutoffs, EARLY_STOP_CUTOFF})
        return self


class EpochRecord(CoreSchema):
    epoch: int
    objective: float
    dev_metric: float
    seconds: float
    mean_trials: float | None = None


class TrainReport(CoreSchema):
    """
    Per-epoch trajectory of a run. `best_epoch` is the epoch with the highest
    dev metric; the trained model holds that epoch's parameters.
    """

    algorithm: Algorithm
    epochs: list[EpochRecord] = Field(default_factory=list)
    best_epoch: int | None = None
    best_dev_metric: float | None = None
    stopped_early: bool = False
    checkpoint: str | None = None
    run_id: str | None = None

    @property
    def objectives(self) -> list[float]:
        return [record.objective for record in self.epochs]

    @property
    def dev_metrics(self) -> list[float]:
        return [record.dev_metric for record in self.epochs]


class EarlyStopDecision(CoreSchema):
    stop: bool
    best_epoch: int | None = None


class TrainingBatch(ArraySchema):
    """
    Sampled mini-batch, fixed before differentiation.

    Row b scores user `users[b]` against every item in `candidates`. `pos_col`
    locates each observation's positive among the candidates. `mask` marks the
    candidates that count as the row's negatives; `neg_col` is a single
    negative column for pairwise algorithms (-1 when the row has none) and
    `weights` scales each row's loss.
    """

    users: np.ndarray
    items: np.ndarray
    candidates: np.ndarray
    pos_col: np.ndarray
    mask: np.ndarray | None = None
    neg_col: np.ndarray | None = None
    weights: np.ndarray | None = None
    scale: float = 1.0
    trials: np.ndarray | None = None
