from functools import cached_property

import numpy as np
import scipy.sparse as sp
from pydantic import Field, model_validator

from app.common.schemas import ArraySchema, CoreSchema
from app.modules.data.consts import SplitProtocol


class Interaction(CoreSchema):
    user_id: int = Field(ge=0)
    item_id: int = Field(ge=0)
    timestamp: int = 0
    weight: float = Field(1.0, gt=0)


class Vocabulary(CoreSchema):
    """Token lists in index order; index i of `users` is the token of user i."""

    users: list[str]
    items: list[str]
    user_attributes: list[str] = Field(default_factory=list)
    item_attributes: list[str] = Field(default_factory=list)

    def user_index(self) -> dict[str, int]:
        return {token: index for index, token in enumerate(self.users)}

    def item_index(self) -> dict[str, int]:
        return {token: index for index, token in enumerate(self.items)}


class InteractionDataset(ArraySchema):
    """
    Immutable interaction log plus side attributes.

    Interactions are stored column-wise. Duplicate (user, item) events stay in
    the log; `positives` is their deduplicated projection.
    """

    vocabulary: Vocabulary
    user_ids: np.ndarray
    item_ids: np.ndarray
    timestamps: np.ndarray
    weights: np.ndarray
    user_attributes: dict[int, tuple[int, ...]] = Field(default_factory=dict)
    item_attributes: dict[int, tuple[int, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_invariants(self) -> "InteractionDataset":
        n = len(self.user_ids)
        if not (len(self.item_ids) == len(self.timestamps) == len(self.weights) == n):
            raise ValueError("interaction columns differ in length")
        if n:
            if self.user_ids.min() < 0 or self.user_ids.max() >= self.num_users:
                raise ValueError("user id outside the user vocabulary")
            if self.item_ids.min() < 0 or self.item_ids.max() >= self.num_items:
                raise ValueError("item id outside the item vocabulary")
            if not np.all(self.weights > 0):
                raise ValueError("interaction weights must be positive")
        _check_attributes(self.user_attributes, self.num_users, len(self.vocabulary.user_attributes), "user")
        _check_attributes(self.item_attributes, self.num_items, len(self.vocabulary.item_attributes), "item")
        return self

    @property
    def num_users(self) -> int:
        return len(self.vocabulary.users)

    @property
    def num_items(self) -> int:
        return len(self.vocabulary.items)

    def __len__(self) -> int:
        return len(self.user_ids)

    @property
    def interactions(self) -> list[Interaction]:
        return [
            Interaction(user_id=int(u), item_id=int(i), timestamp=int(t), weight=float(w))
            for u, i, t, w in zip(self.user_ids, self.item_ids, self.timestamps, self.weights)
        ]

    @cached_property
    def positives(self) -> sp.csr_matrix:
        """Binary user x item matrix of deduplicated positives, sorted indices."""
        matrix = sp.csr_matrix(
            (np.ones(len(self), dtype=np.float64), (self.user_ids, self.item_ids)),
            shape=(self.num_users, self.num_items),
        )
        matrix.sum_duplicates()
        matrix.data[:] = 1.0
        return matrix

    @cached_property
    def positives_by_user(self) -> dict[int, frozenset[int]]:
        matrix = self.positives
        return {
            user: frozenset(matrix.indices[matrix.indptr[user]:matrix.indptr[user + 1]].tolist())
            for user in range(self.num_users)
            if matrix.indptr[user + 1] > matrix.indptr[user]
        }

    def user_positives(self, user: int) -> np.ndarray:
        """Sorted positive item ids of one user."""
        matrix = self.positives
        return matrix.indices[matrix.indptr[user]:matrix.indptr[user + 1]]

    def positive_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Deduplicated (user, item) observations in user-major order."""
        coo = self.positives.tocoo()
        return coo.row.astype(np.int64), coo.col.astype(np.int64)

    def subset(self, indices: np.ndarray) -> "InteractionDataset":
        """New dataset holding the interactions at `indices`, same vocabularies."""
        return InteractionDataset(
            vocabulary=self.vocabulary,
            user_ids=self.user_ids[indices],
            item_ids=self.item_ids[indices],
            timestamps=self.timestamps[indices],
            weights=self.weights[indices],
            user_attributes=self.user_attributes,
            item_attributes=self.item_attributes,
        )


class SplitPair(ArraySchema):
    train: InteractionDataset
    test: InteractionDataset
    protocol: SplitProtocol

    @model_validator(mode="after")
    def _check_shared_vocabulary(self) -> "SplitPair":
        if self.train.vocabulary != self.test.vocabulary:
            raise ValueError("train and test splits must share vocabularies")
        return self


class DatasetStats(CoreSchema):
    users: int
    items: int
    interactions: int
    positives: int
    density: float
    mean_attributes_per_pair: float


def _check_attributes(attributes: dict[int, tuple[int, ...]], num_entities: int, vocab_size: int, kind: str) -> None:
    for entity, attribute_ids in attributes.items():
        if not 0 <= entity < num_entities:
            raise ValueError(f"{kind} attribute table references unknown {kind} {entity}")
        for attribute in attribute_ids:
            if not 0 <= attribute < vocab_size:
                raise ValueError(f"{kind} attribute id {attribute} outside vocabulary of size {vocab_size}")
