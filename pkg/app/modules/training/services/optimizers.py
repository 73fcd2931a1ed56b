import numpy as np

from app.modules.model.schemas import FactorModel, ParameterGradient
from app.modules.training.consts import ADAGRAD_EPSILON
from app.modules.training.contracts import IOptimizer


class SgdOptimizer(IOptimizer):
    """Plain SGD on the touched rows: theta <- theta - lr * g."""

    def apply(self, model: FactorModel, grad: ParameterGradient, learning_rate: float) -> None:
        model.user_embeddings[grad.user_rows] -= learning_rate * grad.user_grad
        model.item_embeddings[grad.item_rows] -= learning_rate * grad.item_grad
        model.item_bias[grad.item_rows] -= learning_rate * grad.bias_grad


class AdagradOptimizer(IOptimizer):
    """
    Row-wise Adagrad: one accumulator per embedding row holding the running
    sum of the row's mean squared gradient. Biases keep their own accumulator.
    """

    def __init__(self):
        self._user_state: np.ndarray | None = None
        self._item_state: np.ndarray | None = None
        self._bias_state: np.ndarray | None = None

    def apply(self, model: FactorModel, grad: ParameterGradient, learning_rate: float) -> None:
        if self._user_state is None:
            self._user_state = np.zeros(model.user_embeddings.shape[0])
            self._item_state = np.zeros(model.item_embeddings.shape[0])
            self._bias_state = np.zeros(model.item_bias.shape[0])

        self._user_state[grad.user_rows] += np.mean(grad.user_grad ** 2, axis=1)
        self._item_state[grad.item_rows] += np.mean(grad.item_grad ** 2, axis=1)
        self._bias_state[grad.item_rows] += grad.bias_grad ** 2

        user_step = learning_rate / np.sqrt(self._user_state[grad.user_rows] + ADAGRAD_EPSILON)
        item_step = learning_rate / np.sqrt(self._item_state[grad.item_rows] + ADAGRAD_EPSILON)
        bias_step = learning_rate / np.sqrt(self._bias_state[grad.item_rows] + ADAGRAD_EPSILON)
        model.user_embeddings[grad.user_rows] -= user_step[:, None] * grad.user_grad
        model.item_embeddings[grad.item_rows] -= item_step[:, None] * grad.item_grad
        model.item_bias[grad.item_rows] -= bias_step * grad.bias_grad
