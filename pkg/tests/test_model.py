'''
Tests for the hybrid factorization model, its construction and checkpoints.
'''

import numpy as np
import pytest

from app.config.exception import ToolkitException
from app.config.settings import settings
from app.modules.model.schemas import FactorModel, ModelConfig, feature_matrix
from app.modules.model.services.dependencies import get_checkpoint_store, get_model_service
from tests.conftest import make_dataset


def hand_model(user_embeddings, item_embeddings, item_bias, user_attributes=None, num_user_attributes=0) -> FactorModel:
    user_embeddings = np.asarray(user_embeddings, dtype=np.float64)
    item_embeddings = np.asarray(item_embeddings, dtype=np.float64)
    item_bias = np.asarray(item_bias, dtype=np.float64)
    ds = make_dataset(
        [(0, 0)],
        num_users=1,
        num_items=item_bias.shape[0],
        user_attributes=user_attributes,
        num_user_attributes=num_user_attributes,
    )
    return FactorModel(
        config=ModelConfig(dim=user_embeddings.shape[1]),
        vocabulary=ds.vocabulary,
        user_features=feature_matrix(1, num_user_attributes, user_attributes or {}),
        item_features=feature_matrix(item_bias.shape[0], 0, {}),
        user_embeddings=user_embeddings,
        item_embeddings=item_embeddings,
        item_bias=item_bias,
    )


# -------------------------------------------------------------------------------------------------
# ModelService
# -------------------------------------------------------------------------------------------------

class TestInitModel:

    def test_deterministic(self, tiny_dataset):
        cfg = ModelConfig(dim=4, seed=9)
        first = get_model_service().init_model(cfg, tiny_dataset)
        second = get_model_service().init_model(cfg, tiny_dataset)

        np.testing.assert_array_equal(first.user_embeddings, second.user_embeddings)
        np.testing.assert_array_equal(first.item_embeddings, second.item_embeddings)

    def test_zero_scale_gives_zero_scores(self, tiny_dataset):
        model = get_model_service().init_model(ModelConfig(dim=4, init_scale=0.0), tiny_dataset)

        assert not model.user_embeddings.any()
        np.testing.assert_array_equal(model.score_block(range(5), range(20)), np.zeros((5, 20)))

    def test_table_shapes(self):
        ds = make_dataset([(0, 0)], num_users=100, num_items=100)

        model = get_model_service().init_model(ModelConfig(dim=16), ds)

        assert model.item_embeddings.shape == (100, 16)
        assert model.user_embeddings.shape == (100, 16)

    def test_attribute_rows_follow_identity_rows(self, tiny_dataset, tiny_model):
        assert tiny_model.user_embeddings.shape[0] == 5 + 2
        assert tiny_model.item_embeddings.shape[0] == 20 + 3
        assert tiny_model.item_bias.shape == (23,)

    def test_parameter_count(self, tiny_model):
        assert get_model_service().parameter_count(tiny_model) == 7 * 8 + 23 * 8 + 23


class TestRepresentations:

    def test_identity_only_user_is_its_row(self, tiny_model):
        np.testing.assert_allclose(tiny_model.user_repr(1), tiny_model.user_embeddings[1])

    def test_attributes_add_up(self):
        v = np.array([0.5, -1.0])
        model = hand_model(
            user_embeddings=np.tile(v, (3, 1)),
            item_embeddings=np.zeros((1, 2)),
            item_bias=np.zeros(1),
            user_attributes={0: (0, 1)},
            num_user_attributes=2,
        )

        np.testing.assert_allclose(model.user_repr(0), 3 * v)

    def test_unknown_index(self, tiny_model, errors):
        with pytest.raises(ToolkitException) as exc:
            tiny_model.item_repr(20)

        assert exc.value.error == errors.Data.UNKNOWN_ENTITY_INDEX


class TestScoring:

    def test_hand_score(self):
        model = hand_model(
            user_embeddings=[[1.0, 2.0]],
            item_embeddings=[[3.0, -1.0]],
            item_bias=np.array([0.5]),
        )

        assert model.score(0, 0) == pytest.approx(1.5)

    def test_block_matches_single_scores_exactly(self, tiny_model):
        block = tiny_model.score_block([4, 0, 2], [19, 3, 7, 0])

        for r, user in enumerate([4, 0, 2]):
            for c, item in enumerate([19, 3, 7, 0]):
                assert block[r, c] == tiny_model.score(user, item)

    def test_chunking_does_not_change_scores(self, tiny_model, monkeypatch):
        full = tiny_model.score_block(range(5), range(20))
        monkeypatch.setattr(settings.runtime, "SCORE_CHUNK_ELEMENTS", 17)

        np.testing.assert_array_equal(tiny_model.score_block(range(5), range(20)), full)

    def test_backward_matches_dense_gradient(self, tiny_model):
        rng = np.random.default_rng(0)
        users, items = np.array([0, 2, 2]), np.array([1, 5, 7, 19])
        dscores = rng.normal(size=(3, 4))

        grad = tiny_model.backward(users, items, dscores)

        uf = tiny_model.user_features[users].toarray()
        itf = tiny_model.item_features[items].toarray()
        dense_user = uf.T @ dscores @ (itf @ tiny_model.item_embeddings)
        dense_item = itf.T @ dscores.T @ (uf @ tiny_model.user_embeddings)
        np.testing.assert_allclose(grad.user_grad, dense_user[grad.user_rows])
        np.testing.assert_allclose(grad.item_grad, dense_item[grad.item_rows])
        np.testing.assert_allclose(grad.bias_grad, (itf.T @ dscores.sum(axis=0))[grad.item_rows])
        assert not np.delete(dense_user, grad.user_rows, axis=0).any()


class TestSnapshot:

    def test_snapshot_is_independent_and_restorable(self, tiny_model):
        saved = tiny_model.snapshot()
        before = tiny_model.item_embeddings.copy()
        tiny_model.item_embeddings[...] += 1.0

        assert not np.array_equal(saved.item_embeddings, tiny_model.item_embeddings)
        tiny_model.restore(saved)
        np.testing.assert_array_equal(tiny_model.item_embeddings, before)

    def test_is_finite(self, tiny_model):
        assert tiny_model.is_finite()
        tiny_model.item_bias[0] = np.nan
        assert not tiny_model.is_finite()


class TestRegPenalty:

    def test_zero_model(self, tiny_dataset):
        model = get_model_service().init_model(ModelConfig(dim=3, init_scale=0.0, l2_user=1.0), tiny_dataset)

        assert get_model_service().reg_penalty(model) == 0.0

    def test_single_row(self):
        model = hand_model(
            user_embeddings=[[3.0, 4.0]],
            item_embeddings=[[0.0, 0.0]],
            item_bias=np.array([7.0]),
        )

        assert get_model_service().reg_penalty(model, ModelConfig(dim=2, l2_user=0.1)) == pytest.approx(2.5)

    def test_zero_coefficients(self, tiny_model):
        assert get_model_service().reg_penalty(tiny_model, ModelConfig(dim=8)) == 0.0


class TestPopularityModel:

    def test_scores_are_training_counts(self):
        ds = make_dataset([(0, 1), (1, 1), (2, 1), (0, 2), (0, 2)], num_users=3, num_items=4)

        model = get_model_service().popularity_model(ds)

        np.testing.assert_array_equal(model.score_block([0, 2], range(4)), [[0, 3, 1, 0], [0, 3, 1, 0]])


# -------------------------------------------------------------------------------------------------
# CheckpointStore
# -------------------------------------------------------------------------------------------------

class TestCheckpointStore:

    def test_bitwise_round_trip(self, tiny_model, tmp_path):
        store = get_checkpoint_store()

        path = store.save(tiny_model, tmp_path / "model")
        loaded = store.load(path)

        assert path.suffix == ".npz"
        assert loaded.config == tiny_model.config
        assert loaded.vocabulary == tiny_model.vocabulary
        np.testing.assert_array_equal(loaded.user_embeddings, tiny_model.user_embeddings)
        np.testing.assert_array_equal(loaded.item_embeddings, tiny_model.item_embeddings)
        np.testing.assert_array_equal(loaded.item_bias, tiny_model.item_bias)
        assert (loaded.item_features != tiny_model.item_features).nnz == 0
        np.testing.assert_array_equal(loaded.score_block(range(5), range(20)), tiny_model.score_block(range(5), range(20)))

    def test_missing_checkpoint(self, tmp_path, errors):
        with pytest.raises(ToolkitException) as exc:
            get_checkpoint_store().load(tmp_path / "missing.npz")

        assert exc.value.error == errors.Model.CHECKPOINT_NOT_FOUND
        assert exc.value.exit_code == 3

    def test_version_mismatch(self, tiny_model, tmp_path, monkeypatch, errors):
        store = get_checkpoint_store()
        path = store.save(tiny_model, tmp_path / "model.npz")
        monkeypatch.setattr(settings.project, "CHECKPOINT_FORMAT_VERSION", 99)

        with pytest.raises(ToolkitException) as exc:
            store.load(path)

        assert exc.value.error == errors.Model.CHECKPOINT_VERSION
