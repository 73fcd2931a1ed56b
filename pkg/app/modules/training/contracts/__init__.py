from .training_services import IObjective, IOptimizer, ITrainer
from .training_usecases import ITrainingUseCase
