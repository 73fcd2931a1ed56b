import numpy as np
from scipy.special import expit

from app.modules.ranking.consts import ComparatorKind


class Comparator:
    """
    Vectorized comparator terms and their derivatives.

    Arguments broadcast against each other, so one positive score can be
    compared with a whole row of negative scores.
    """

    @staticmethod
    def value(kind: ComparatorKind, f_y: np.ndarray | float, f_neg: np.ndarray | float) -> np.ndarray:
        """
        Contribution of negatives scored `f_neg` to the smooth rank of a positive scored `f_y`.

        :param kind: Comparator form.
        :param f_y: Positive item score(s).
        :param f_neg: Negative item score(s).
        :return: Comparator values, broadcast shape.
        """

        if kind == ComparatorKind.SIGMOID:
            return expit(np.subtract(f_neg, f_y))

        hinge = np.maximum(0.0, 1.0 - np.asarray(f_y) + f_neg)
        if kind == ComparatorKind.MARGIN:
            return hinge
        return 2.0 * expit(hinge) - 1.0

    @staticmethod
    def derivative(kind: ComparatorKind, f_y: np.ndarray | float, f_neg: np.ndarray | float) -> np.ndarray:
        """
        Derivative of `value` with respect to `f_neg`; the derivative with
        respect to `f_y` is its negation. Zero at the hinge kink.

        :param kind: Comparator form.
        :param f_y: Positive item score(s).
        :param f_neg: Negative item score(s).
        :return: d value / d f_neg, broadcast shape.
        """

        if kind == ComparatorKind.SIGMOID:
            s = expit(np.subtract(f_neg, f_y))
            return s * (1.0 - s)

        margin = 1.0 - np.asarray(f_y) + f_neg
        active = (margin > 0).astype(np.float64)
        if kind == ComparatorKind.MARGIN:
            return active
        s = expit(np.maximum(0.0, margin))
        return 2.0 * s * (1.0 - s) * active
