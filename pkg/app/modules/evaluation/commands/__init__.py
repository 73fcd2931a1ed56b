from .evaluation import evaluate, simulate
