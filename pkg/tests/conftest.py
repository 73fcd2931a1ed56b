from pathlib import Path
from typing import Callable

import numpy as np
import pytest

from app.common.consts import ErrorCodesEnums
from app.common.consts.dependencies import get_error_codes
from app.common.logger.dependencies import (
    get_base_logger,
    get_data_logger,
    get_eval_logger,
    get_model_logger,
    get_ranking_logger,
    get_train_logger,
)
from app.modules.data.schemas import InteractionDataset, SplitPair, Vocabulary
from app.modules.data.services.dependencies import get_dataset_splitter, get_synthetic_data_generator
from app.modules.model.schemas import FactorModel, ModelConfig
from app.modules.model.services.dependencies import get_model_service

# Handlers bind to the stderr stream at creation; create them all before
# any test swaps the stream out.
for _get_logger in (
    get_base_logger,
    get_data_logger,
    get_model_logger,
    get_ranking_logger,
    get_train_logger,
    get_eval_logger,
):
    _get_logger()


# -------------------------------------------------------------------------------------------------
# Helpers
# -------------------------------------------------------------------------------------------------

def make_dataset(
    pairs: list[tuple[int, int]],
    num_users: int,
    num_items: int,
    timestamps: list[int] | None = None,
    user_attributes: dict[int, tuple[int, ...]] | None = None,
    item_attributes: dict[int, tuple[int, ...]] | None = None,
    num_user_attributes: int = 0,
    num_item_attributes: int = 0,
) -> InteractionDataset:
    """Dataset over tokens u0.., i0.., ua0.., ia0.. from index pairs."""
    users = np.array([u for u, _ in pairs], dtype=np.int64)
    items = np.array([i for _, i in pairs], dtype=np.int64)
    return InteractionDataset(
        vocabulary=Vocabulary(
            users=[f"u{u}" for u in range(num_users)],
            items=[f"i{i}" for i in range(num_items)],
            user_attributes=[f"ua{a}" for a in range(num_user_attributes)],
            item_attributes=[f"ia{a}" for a in range(num_item_attributes)],
        ),
        user_ids=users,
        item_ids=items,
        timestamps=np.asarray(timestamps if timestamps is not None else [0] * len(pairs), dtype=np.int64),
        weights=np.ones(len(pairs), dtype=np.float64),
        user_attributes=user_attributes or {},
        item_attributes=item_attributes or {},
    )


# -------------------------------------------------------------------------------------------------
# Fixtures
# -------------------------------------------------------------------------------------------------

@pytest.fixture
def errors() -> ErrorCodesEnums:
    return get_error_codes()


@pytest.fixture
def write_file(tmp_path: Path) -> Callable[[str, str], Path]:
    """Write text to a file under tmp_path and return its path."""

    def _write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def tiny_dataset() -> InteractionDataset:
    """5 users, 20 items, 3 positives each, one user and one item attribute table."""
    rng = np.random.default_rng(3)
    pairs = [(u, int(i)) for u in range(5) for i in rng.choice(20, size=3, replace=False)]
    return make_dataset(
        pairs,
        num_users=5,
        num_items=20,
        user_attributes={0: (0,), 2: (0, 1)},
        item_attributes={i: (i % 3,) for i in range(20)},
        num_user_attributes=2,
        num_item_attributes=3,
    )


@pytest.fixture
def tiny_model(tiny_dataset: InteractionDataset) -> FactorModel:
    cfg = ModelConfig(dim=8, init_scale=0.5, l2_user=0.01, l2_item=0.02, seed=11)
    return get_model_service().init_model(cfg, tiny_dataset)


@pytest.fixture(scope="session")
def planted_dataset() -> InteractionDataset:
    return get_synthetic_data_generator().make_planted_dataset(
        num_users=80,
        num_items=120,
        interactions_per_user=10,
        latent_dim=4,
        num_genres=6,
        seed=5,
    )


@pytest.fixture(scope="session")
def planted_split(planted_dataset: InteractionDataset) -> SplitPair:
    return get_dataset_splitter().split_random(planted_dataset, 0.2, seed=1)
