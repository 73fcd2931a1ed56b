from .train import EarlyStopDecision, EpochRecord, TrainConfig, TrainingBatch, TrainReport
