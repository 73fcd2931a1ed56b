'''
Tests for the shared layer: config files, fingerprints, manifests, click types and the command exception handler.
'''

import json

import click
import numpy as np
import pytest
from click.testing import CliRunner
from pydantic import BaseModel, ValidationError

from app.common.schemas import CliState
from app.common.utils import ConfigFileReader, RandomStreams
from app.common.utils.click_types import FLOAT_LIST, INT_LIST
from app.common.utils.dependencies import get_config_file_reader, get_fingerprinter, get_manifest_builder
from app.config.dependencies.exception import get_exception_handler
from app.config.exception import ToolkitException
from tests.conftest import make_dataset


# -------------------------------------------------------------------------------------------------
# ConfigFileReader
# -------------------------------------------------------------------------------------------------

class TestConfigFileReader:

    def test_nested_keys(self, write_file):
        path = write_file("run.env", "# comment\nALGO=bars\nloss=poly\nloss.p=0.3\nbatch-size=64\nempty=\n")

        values = get_config_file_reader().read(path)

        assert values == {"algo": "bars", "loss": {"family": "poly", "p": "0.3"}, "batch_size": "64"}

    def test_family_after_nested_key(self, write_file):
        values = get_config_file_reader().read(write_file("run.env", "loss.lambda=3\nloss=exp\n"))

        assert values == {"loss": {"lambda": "3", "family": "exp"}}

    def test_no_path(self):
        assert get_config_file_reader().read(None) == {}

    def test_missing_file(self, tmp_path, errors):
        with pytest.raises(ToolkitException) as exc:
            get_config_file_reader().read(tmp_path / "absent.env")

        assert exc.value.error == errors.Config.CONFIG_FILE_NOT_FOUND
        assert exc.value.exit_code == 2

    def test_merge(self):
        merged = ConfigFileReader.merge(
            {"lr": "0.5", "loss": "poly", "model": {"dim": "8"}},
            {"lr": 0.1, "loss": {"p": 0.2}, "model": {"seed": 3}, "q": None},
        )

        assert merged == {"lr": 0.1, "loss": {"family": "poly", "p": 0.2}, "model": {"dim": "8", "seed": 3}}

    def test_merge_scalar_over_nested(self):
        merged = ConfigFileReader.merge({"loss": {"family": "poly", "p": "0.3"}}, {"loss": "log"})

        assert merged == {"loss": {"family": "log", "p": "0.3"}}


# -------------------------------------------------------------------------------------------------
# Fingerprints and random streams
# -------------------------------------------------------------------------------------------------

class TestFingerprinter:

    def test_json_digest_ignores_key_order(self):
        fingerprinter = get_fingerprinter()

        assert fingerprinter.json_digest({"a": 1, "b": [1, 2]}) == fingerprinter.json_digest({"b": [1, 2], "a": 1})

    def test_arrays_digest_sees_dtype(self):
        fingerprinter = get_fingerprinter()

        assert fingerprinter.arrays_digest(np.arange(3)) != fingerprinter.arrays_digest(np.arange(3.0))

    def test_file_digest(self, write_file):
        first = get_fingerprinter().file_digest(write_file("a.txt", "same"))
        second = get_fingerprinter().file_digest(write_file("b.txt", "same"))

        assert first == second
        assert len(first) == 64


class TestRandomStreams:

    def test_reproducible(self):
        first = RandomStreams(5).generator().integers(0, 1000, size=5)
        second = RandomStreams(5).generator().integers(0, 1000, size=5)

        np.testing.assert_array_equal(first, second)

    def test_spawned_streams_differ(self):
        a, b = RandomStreams(5).spawn(2)

        assert not np.array_equal(a.integers(0, 1 << 30, size=4), b.integers(0, 1 << 30, size=4))


# -------------------------------------------------------------------------------------------------
# ManifestBuilder
# -------------------------------------------------------------------------------------------------

class TestManifestBuilder:

    @pytest.fixture
    def dataset(self):
        return make_dataset([(0, 1), (1, 0), (1, 2)], num_users=2, num_items=3)

    def test_run_id_depends_on_inputs_only(self, dataset):
        builder = get_manifest_builder()

        first = builder.build("train", {"lr": 0.1}, seed=1, datasets=[builder.dataset("train", dataset)])
        second = builder.build("train", {"lr": 0.1}, seed=1, datasets=[builder.dataset("train", dataset)])
        other = builder.build("train", {"lr": 0.2}, seed=1, datasets=[builder.dataset("train", dataset)])

        assert first.run_id == second.run_id
        assert first.run_id != other.run_id
        assert len(first.run_id) == 16

    def test_dataset_fingerprint(self, dataset):
        fingerprint = get_manifest_builder().dataset("test", dataset)

        assert (fingerprint.users, fingerprint.items, fingerprint.interactions) == (2, 3, 3)

    def test_write(self, dataset, write_file, tmp_path):
        builder = get_manifest_builder()
        output = write_file("out.txt", "payload")
        manifest = builder.build("ingest", {"split": "random_holdout"}, seed=0)

        written = builder.write(manifest, [output], tmp_path / "run" / "manifest.json")
        payload = json.loads((tmp_path / "run" / "manifest.json").read_text(encoding="utf-8"))

        assert payload["run_id"] == manifest.run_id
        assert payload["outputs"] == {str(output): get_fingerprinter().file_digest(output)}
        assert written.outputs == payload["outputs"]


# -------------------------------------------------------------------------------------------------
# Click surface helpers
# -------------------------------------------------------------------------------------------------

class TestCommaSeparated:

    def test_ints(self):
        assert INT_LIST.convert("5, 10,30", None, None) == (5, 10, 30)

    def test_floats(self):
        assert FLOAT_LIST.convert("0.05,0.1", None, None) == (0.05, 0.1)

    def test_passthrough(self):
        assert INT_LIST.convert((1, 2), None, None) == (1, 2)

    @pytest.mark.parametrize("value", ["a,b", ","])
    def test_rejects(self, value):
        with pytest.raises(click.BadParameter):
            INT_LIST.convert(value, None, None)


class _Strict(BaseModel):
    value: int


class TestCommandExceptionHandler:

    @staticmethod
    def _run(error: Exception | None):
        handler = get_exception_handler()

        @click.command()
        @handler
        def command():
            if error is not None:
                raise error
            click.echo("ok")

        return CliRunner().invoke(command, [])

    def test_success(self):
        result = self._run(None)

        assert result.exit_code == 0
        assert result.output == "ok\n"

    def test_toolkit_exception_keeps_its_code(self, errors):
        assert self._run(ToolkitException(errors.Data.NO_TIMESTAMPS)).exit_code == 3
        assert self._run(ToolkitException(errors.Numeric.DIVERGENCE)).exit_code == 4

    def test_validation_error_is_a_config_error(self):
        try:
            _Strict(value="x")
        except ValidationError as e:
            error = e

        assert self._run(error).exit_code == 2

    def test_anything_else_is_undefined(self):
        assert self._run(RuntimeError("boom")).exit_code == 1

    def test_message_goes_to_stderr(self, errors):
        handler = get_exception_handler()

        @click.command()
        @handler
        def command():
            raise ToolkitException(errors.Data.NO_TIMESTAMPS, cause="ts column")

        result = CliRunner(mix_stderr=False).invoke(command, [])

        assert result.stdout == ""
        assert result.stderr == "error 204: chronological split requires timestamps: ts column\n"


class TestCliState:

    def test_json_echo(self, capsys):
        CliState(json_output=True).echo({"b": 1, "a": 2}, "text")

        assert capsys.readouterr().out == '{"a": 2, "b": 1}\n'

    def test_text_echo(self, capsys):
        CliState().echo({"a": 1}, "plain")

        assert capsys.readouterr().out == "plain\n"

    def test_workers_must_be_positive(self):
        with pytest.raises(ValidationError):
            CliState(workers=0)
