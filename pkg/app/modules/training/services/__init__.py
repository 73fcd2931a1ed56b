from .objectives import (
    BarsObjective,
    BaseObjective,
    BatchBprObjective,
    BprObjective,
    CrossEntropyObjective,
    WarpObjective,
)
from .optimizers import AdagradOptimizer, SgdOptimizer
from .trainer import Trainer
