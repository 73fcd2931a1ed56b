from .training import TrainingUseCase
