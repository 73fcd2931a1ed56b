from typing import Sequence

import numpy as np
import scipy.sparse as sp
from pydantic import Field

from app.common.consts.error_codes import DataError
from app.common.contracts import IScorer
from app.common.schemas import ArraySchema, CoreSchema
from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.data.schemas import Vocabulary


class ModelConfig(CoreSchema):
    dim: int = Field(32, ge=1)
    # 0 is accepted and yields an all-zero model
    init_scale: float = Field(0.05, ge=0)
    l2_user: float = Field(0.0, ge=0)
    l2_item: float = Field(0.0, ge=0)
    seed: int = 0


class ParameterGradient(ArraySchema):
    """
    Gradient restricted to the feature rows a step touched.

    `user_grad[k]` is the gradient of row `user_rows[k]` of the user feature
    table; item rows carry their bias gradient alongside.
    """

    user_rows: np.ndarray
    user_grad: np.ndarray
    item_rows: np.ndarray
    item_grad: np.ndarray
    bias_grad: np.ndarray


class FactorModel(ArraySchema, IScorer):
    """
    Hybrid matrix factorization.

    Users and items are rows of binary feature matrices whose first columns
    are identity features (one per entity) followed by side attributes. An
    entity's representation is the sum of its features' embeddings; an item's
    bias is the sum of its features' biases.
    """

    config: ModelConfig
    vocabulary: Vocabulary
    user_features: sp.csr_matrix
    item_features: sp.csr_matrix
    user_embeddings: np.ndarray
    item_embeddings: np.ndarray
    item_bias: np.ndarray

    @property
    def num_users(self) -> int:
        return self.user_features.shape[0]

    @property
    def num_items(self) -> int:
        return self.item_features.shape[0]

    @property
    def dim(self) -> int:
        return self.user_embeddings.shape[1]

    def user_repr(self, user: int) -> np.ndarray:
        users = self._indices([user], self.num_users, "user")
        return (self.user_features[users] @ self.user_embeddings)[0]

    def item_repr(self, item: int) -> np.ndarray:
        items = self._indices([item], self.num_items, "item")
        return (self.item_features[items] @ self.item_embeddings)[0]

    def score(self, user: int, item: int) -> float:
        return float(self.score_block([user], [item])[0, 0])

    def score_block(self, users: Sequence[int] | np.ndarray, items: Sequence[int] | np.ndarray) -> np.ndarray:
        """
        Scores of all (user, item) combinations.

        Every entry is reduced over the embedding axis on its own, so the value
        of an entry does not depend on the block it is computed in.

        :param users: User indices.
        :param items: Item indices.
        :return: Matrix of shape (len(users), len(items)).
        """

        users = self._indices(users, self.num_users, "user")
        items = self._indices(items, self.num_items, "item")

        user_vectors = self.user_features[users] @ self.user_embeddings
        item_features = self.item_features[items]
        item_vectors = item_features @ self.item_embeddings
        bias = item_features @ self.item_bias

        out = np.empty((len(users), len(items)), dtype=np.float64)
        budget = settings.runtime.SCORE_CHUNK_ELEMENTS
        col_step = max(1, min(len(items), budget // self.dim)) if len(items) else 1
        row_step = max(1, budget // (col_step * self.dim))
        for r0 in range(0, len(users), row_step):
            u = user_vectors[r0:r0 + row_step, None, :]
            for c0 in range(0, len(items), col_step):
                c1 = c0 + col_step
                out[r0:r0 + row_step, c0:c1] = (u * item_vectors[None, c0:c1, :]).sum(axis=-1) + bias[c0:c1]
        return out

    def backward(
        self,
        users: np.ndarray,
        items: np.ndarray,
        dscores: np.ndarray,
    ) -> ParameterGradient:
        """
        Chain a gradient with respect to a score block back to the parameters.

        :param users: Row users of the block.
        :param items: Column items of the block.
        :param dscores: dL/dS with the block's shape.
        :return: Gradient over the touched feature rows.
        """

        user_features = self.user_features[users]
        item_features = self.item_features[items]
        user_vectors = user_features @ self.user_embeddings
        item_vectors = item_features @ self.item_embeddings

        d_user = dscores @ item_vectors
        d_item = dscores.T @ user_vectors
        d_bias = dscores.sum(axis=0)

        user_rows = np.unique(user_features.indices)
        item_rows = np.unique(item_features.indices)
        user_t = user_features[:, user_rows].T
        item_t = item_features[:, item_rows].T
        return ParameterGradient(
            user_rows=user_rows,
            user_grad=np.asarray(user_t @ d_user),
            item_rows=item_rows,
            item_grad=np.asarray(item_t @ d_item),
            bias_grad=np.asarray(item_t @ d_bias).ravel(),
        )

    def snapshot(self) -> "FactorModel":
        return self.model_copy(update={
            "user_embeddings": self.user_embeddings.copy(),
            "item_embeddings": self.item_embeddings.copy(),
            "item_bias": self.item_bias.copy(),
        })

    def restore(self, other: "FactorModel") -> None:
        """Copy another model's parameters into this one in place."""
        self.user_embeddings[...] = other.user_embeddings
        self.item_embeddings[...] = other.item_embeddings
        self.item_bias[...] = other.item_bias

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.user_embeddings).all()
            and np.isfinite(self.item_embeddings).all()
            and np.isfinite(self.item_bias).all()
        )

    @staticmethod
    def _indices(ids: Sequence[int] | np.ndarray, size: int, kind: str) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64).ravel()
        if len(ids) and (ids.min() < 0 or ids.max() >= size):
            raise ToolkitException(
                DataError.UNKNOWN_ENTITY_INDEX, cause=f"{kind} index outside [0, {size})"
            )
        return ids


def feature_matrix(num_entities: int, num_attributes: int, attributes: dict[int, tuple[int, ...]]) -> sp.csr_matrix:
    """
    Binary entity x (identity + attribute) incidence matrix.

    Column e is entity e's identity feature; column num_entities + a is
    attribute a. Rows hold sorted column indices.
    """

    indptr = [0]
    indices: list[int] = []
    for entity in range(num_entities):
        indices.append(entity)
        indices.extend(num_entities + a for a in sorted(set(attributes.get(entity, ()))))
        indptr.append(len(indices))
    return csr_from_structure(
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        (num_entities, num_entities + num_attributes),
    )


def csr_from_structure(indptr: np.ndarray, indices: np.ndarray, shape: tuple[int, int]) -> sp.csr_matrix:
    return sp.csr_matrix((np.ones(len(indices), dtype=np.float64), indices, indptr), shape=shape)
