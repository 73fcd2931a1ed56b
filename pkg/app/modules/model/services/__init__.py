from .checkpoint import CheckpointStore
from .model import ModelService
