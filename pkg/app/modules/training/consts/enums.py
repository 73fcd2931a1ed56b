from enum import Enum
from typing import Type

from app.common.consts.enums import StringEnum
from app.modules.loss.consts import LossFamily


class Algorithm(StringEnum):
    """Training algorithms; values are the ``--algo`` strings."""

    BARS = "bars"
    WARP = "warp"
    BPR = "bpr"
    BBPR = "bbpr"
    CE = "ce"
    POP = "pop"


class OptimizerKind(StringEnum):
    SGD = "sgd"
    ADAGRAD = "adagrad"


class TrainFiles(str, Enum):
    """File names written by the train and grid commands."""

    CHECKPOINT = "model.npz"
    REPORT = "train_report.json"
    GRID = "grid.csv"


class TrainingEnums:
    """
    Container of enums used across the training module.
    """

    Algorithm: Type[Algorithm] = Algorithm
    Optimizer: Type[OptimizerKind] = OptimizerKind
    Files: Type[TrainFiles] = TrainFiles


# Loss families each algorithm accepts; the first one is its default
ALGORITHM_LOSSES: dict[Algorithm, tuple[LossFamily, ...]] = {
    Algorithm.BARS: (LossFamily.LOG, LossFamily.POLY, LossFamily.EXP),
    Algorithm.WARP: (LossFamily.OWA,),
    Algorithm.BPR: (LossFamily.BPR_PAIR,),
    Algorithm.BBPR: (LossFamily.BPR_BATCH,),
    Algorithm.CE: (LossFamily.CROSS_ENTROPY,),
    Algorithm.POP: tuple(LossFamily),
}

# Dev metric used for early stopping and model selection
EARLY_STOP_CUTOFF = 30
GRID_DIMS = (10, 16, 32, 48, 64)
GRID_LEARNING_RATES = (0.5, 1.0, 5.0, 10.0)
ADAGRAD_EPSILON = 1e-10

# warp and bpr step once per observation unless a mini-batch size is given
PER_OBSERVATION_ALGORITHMS = (Algorithm.WARP, Algorithm.BPR)
DEFAULT_MINIBATCH_SIZE = 256
