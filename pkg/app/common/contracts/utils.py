from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from app.common.schemas import DatasetFingerprint, RunManifest


class IConfigFileReader(ABC):
    """
    Interface for reading flat ``key=value`` run configuration files.
    """

    @abstractmethod
    def read(self, path: str | Path | None) -> dict[str, Any]:
        """
        Read a config file into a nested dictionary.

        Dotted keys (``loss.p``) become nested mappings (``{"loss": {"p": ...}}``).

        :param path: Path of the config file, or None for an empty config.
        :return: Nested dictionary of raw string values.
        :raises ToolkitException: If the file does not exist.
        """
        ...

    @staticmethod
    @abstractmethod
    def merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
        """
        Recursively merge overrides into base; None override values are ignored.

        :param base: Lower-precedence values.
        :param overrides: Higher-precedence values.
        :return: Merged dictionary.
        """
        ...


class IFingerprinter(ABC):
    """
    Interface for content fingerprints used in run manifests.
    """

    @abstractmethod
    def file_digest(self, path: str | Path) -> str:
        """
        SHA-256 hex digest of a file's bytes.

        :param path: File to hash.
        :return: Hex digest.
        """
        ...

    @abstractmethod
    def json_digest(self, payload: Any) -> str:
        """
        SHA-256 hex digest of a JSON-serializable payload with sorted keys.

        :param payload: Configuration or summary data.
        :return: Hex digest.
        """
        ...

    @abstractmethod
    def arrays_digest(self, *arrays: np.ndarray) -> str:
        """
        SHA-256 hex digest over the raw bytes of several arrays.

        :param arrays: Arrays to hash, in order.
        :return: Hex digest.
        """
        ...


class IRandomStreams(ABC):
    """
    Interface for seeded, splittable random number generators.
    """

    @abstractmethod
    def generator(self) -> np.random.Generator:
        """
        Return the root generator for this seed.

        :return: numpy Generator.
        """
        ...

    @abstractmethod
    def spawn(self, n: int) -> list[np.random.Generator]:
        """
        Return n statistically independent child generators.

        :param n: Number of streams.
        :return: List of numpy Generators.
        """
        ...


class IManifestBuilder(ABC):
    """
    Interface for building and persisting run manifests.
    """

    @abstractmethod
    def dataset(self, name: str, ds: Any) -> "DatasetFingerprint":
        """
        Fingerprint an interaction dataset.

        :param name: Role of the dataset in the run.
        :param ds: Interaction dataset.
        :return: DatasetFingerprint.
        """
        ...

    @abstractmethod
    def build(
        self,
        command: str,
        config: dict[str, Any],
        seed: int,
        datasets: list["DatasetFingerprint"] | None = None,
    ) -> "RunManifest":
        """
        Build a manifest whose run id is a digest of its inputs.

        :param command: Command name.
        :param config: Resolved configuration snapshot.
        :param seed: Root seed of the run.
        :param datasets: Fingerprints of the datasets read or written.
        :return: RunManifest with `run_id` set and no outputs.
        """
        ...

    @abstractmethod
    def write(self, manifest: "RunManifest", outputs: list[str | Path], path: str | Path) -> "RunManifest":
        """
        Record output digests and write the manifest as JSON.

        :param manifest: Manifest from `build`.
        :param outputs: Files written by the run.
        :param path: Manifest file.
        :return: Manifest including outputs.
        """
        ...
