from enum import Enum


class CheckpointKeys(str, Enum):
    """Entry names inside a checkpoint ``.npz`` container."""

    METADATA = "metadata"
    USER_EMBEDDINGS = "user_embeddings"
    ITEM_EMBEDDINGS = "item_embeddings"
    ITEM_BIAS = "item_bias"
    USER_FEATURES_INDPTR = "user_features_indptr"
    USER_FEATURES_INDICES = "user_features_indices"
    ITEM_FEATURES_INDPTR = "item_features_indptr"
    ITEM_FEATURES_INDICES = "item_features_indices"


CHECKPOINT_SUFFIX = ".npz"
