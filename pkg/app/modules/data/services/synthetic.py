import logging

import numpy as np

from app.common.consts import ErrorCodesEnums
from app.common.decorators.logger import LoggingFunctionInfo
from app.common.logger.dependencies import get_base_logger
from app.config.exception import ToolkitException
from app.modules.data.contracts import ISyntheticDataGenerator
from app.modules.data.schemas import InteractionDataset, Vocabulary


class SyntheticDataGenerator(ISyntheticDataGenerator):
    """
    Implicit-feedback data drawn from a planted preference model.

    Items belong to one genre each and their latent vectors scatter around a
    genre centre. A user's utility for an item is the scaled inner product of
    latent vectors plus a Zipf popularity term; each user keeps the top
    utilities after Gumbel perturbation, which samples items without
    replacement in proportion to exp(utility).
    """

    POPULARITY_EXPONENT = 0.8
    GENRE_SPREAD = 0.5

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        """
        Initialize the generator.

        :param errors: Enum container for application-specific error codes.
        :param logger: Logger for generation summaries.
        """

        self._errors = errors
        self._logger = logger

    @LoggingFunctionInfo(
        logger=get_base_logger(),
        description="Generate a planted low-rank implicit-feedback dataset."
    )
    def make_planted_dataset(
        self,
        num_users: int = 1000,
        num_items: int = 2000,
        interactions_per_user: int = 20,
        latent_dim: int = 8,
        num_genres: int = 12,
        seed: int = 0,
    ) -> InteractionDataset:
        if min(num_users, num_items, interactions_per_user, latent_dim, num_genres) < 1:
            raise ToolkitException(self._errors.Config.INVALID_CONFIG, cause="generator sizes must be positive")
        if interactions_per_user > num_items:
            raise ToolkitException(
                self._errors.Config.INVALID_CONFIG, cause="interactions_per_user exceeds num_items"
            )

        rng = np.random.default_rng(seed)
        genres = rng.integers(0, num_genres, size=num_items)
        centres = rng.normal(size=(num_genres, latent_dim))
        item_vectors = centres[genres] + self.GENRE_SPREAD * rng.normal(size=(num_items, latent_dim))
        user_vectors = rng.normal(size=(num_users, latent_dim))

        popularity_rank = rng.permutation(num_items) + 1
        popularity = -self.POPULARITY_EXPONENT * np.log(popularity_rank)

        user_ids = np.empty(num_users * interactions_per_user, dtype=np.int64)
        item_ids = np.empty_like(user_ids)
        scale = 1.0 / np.sqrt(latent_dim)
        for user in range(num_users):
            utility = scale * (item_vectors @ user_vectors[user]) + popularity
            perturbed = utility + rng.gumbel(size=num_items)
            chosen = np.argpartition(-perturbed, interactions_per_user - 1)[:interactions_per_user]
            rows = slice(user * interactions_per_user, (user + 1) * interactions_per_user)
            user_ids[rows] = user
            item_ids[rows] = chosen

        # one global clock, events shuffled across users
        order = rng.permutation(len(user_ids))
        user_ids, item_ids = user_ids[order], item_ids[order]
        timestamps = np.arange(1, len(user_ids) + 1, dtype=np.int64)

        ds = InteractionDataset(
            vocabulary=Vocabulary(
                users=[f"u{u}" for u in range(num_users)],
                items=[f"i{i}" for i in range(num_items)],
                item_attributes=[f"g{g}" for g in range(num_genres)],
            ),
            user_ids=user_ids,
            item_ids=item_ids,
            timestamps=timestamps,
            weights=np.ones(len(user_ids), dtype=np.float64),
            item_attributes={item: (int(genres[item]),) for item in range(num_items)},
        )
        self._logger.info(
            f"Planted dataset: users={num_users} items={num_items} interactions={len(ds)} seed={seed}"
        )
        return ds
