from .training import grid, train
