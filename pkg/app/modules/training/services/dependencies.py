from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import get_train_logger
from app.modules.evaluation.services.dependencies import get_evaluator
from app.modules.loss.services.dependencies import get_loss_functions
from app.modules.ranking.services.dependencies import get_rank_estimator
from app.modules.training.consts import Algorithm, OptimizerKind
from app.modules.training.contracts import IObjective, IOptimizer, ITrainer
from app.modules.training.services import (
    AdagradOptimizer,
    BarsObjective,
    BatchBprObjective,
    BprObjective,
    CrossEntropyObjective,
    SgdOptimizer,
    Trainer,
    WarpObjective,
)


def get_objective(algorithm: Algorithm) -> IObjective:
    """
    Dependency provider for the objective of a gradient-trained algorithm.

    :param algorithm: Algorithm tag; POP has no objective.
    :return: IObjective implementation.
    """

    errors, logger, losses = get_error_codes(), get_train_logger(), get_loss_functions()
    if algorithm == Algorithm.WARP:
        return WarpObjective(errors=errors, logger=logger, losses=losses, estimator=get_rank_estimator())

    objectives = {
        Algorithm.BARS: BarsObjective,
        Algorithm.BPR: BprObjective,
        Algorithm.BBPR: BatchBprObjective,
        Algorithm.CE: CrossEntropyObjective,
    }
    return objectives[algorithm](errors=errors, logger=logger, losses=losses)


def get_optimizer(kind: OptimizerKind) -> IOptimizer:
    """
    Dependency provider for a fresh optimizer; Adagrad state lives in the instance.

    :param kind: Optimizer tag.
    :return: IOptimizer implementation.
    """

    return AdagradOptimizer() if kind == OptimizerKind.ADAGRAD else SgdOptimizer()


def get_trainer(workers: int | None = None) -> ITrainer:
    return Trainer(
        errors=get_error_codes(),
        logger=get_train_logger(),
        evaluator=get_evaluator(),
        workers=workers,
    )
