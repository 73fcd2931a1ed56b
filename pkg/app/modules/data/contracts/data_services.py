from abc import ABC, abstractmethod
from pathlib import Path

from app.modules.data.consts import InputFormat
from app.modules.data.schemas import DatasetStats, InteractionDataset, SplitPair, Vocabulary


class IInteractionLoader(ABC):
    """
    Abstract interface for reading interaction and attribute files.
    """

    @abstractmethod
    def load(
        self,
        path: str | Path,
        fmt: InputFormat = InputFormat.TSV_TRIPLES,
        user_attr_path: str | Path | None = None,
        item_attr_path: str | Path | None = None,
        vocabulary: Vocabulary | None = None,
    ) -> InteractionDataset:
        """
        Parse an interaction TSV (and optional attribute TSVs) into a dataset.

        Tokens map to dense indices in first-seen order unless a vocabulary is
        supplied, in which case its indices are reused.

        :param path: Interaction file.
        :param fmt: Row layout.
        :param user_attr_path: Optional ``user_token<TAB>attr_token`` file.
        :param item_attr_path: Optional ``item_token<TAB>attr_token`` file.
        :param vocabulary: Fixed token-to-index assignment.
        :return: The dataset.
        :raises ToolkitException: On missing files, malformed rows, unknown entities or an empty file.
        """
        ...

    @abstractmethod
    def load_vocabulary(self, path: str | Path) -> Vocabulary:
        """
        Read a persisted vocabulary.

        :param path: JSON file written by the interaction writer.
        :return: Vocabulary.
        """
        ...

    @abstractmethod
    def load_split(self, directory: str | Path) -> SplitPair:
        """
        Read a persisted train/test split directory.

        :param directory: Directory written by ``IInteractionWriter.write_split``.
        :return: SplitPair with shared vocabulary.
        """
        ...


class IInteractionWriter(ABC):
    """
    Abstract interface for persisting datasets and splits as TSV.
    """

    @abstractmethod
    def write(self, ds: InteractionDataset, path: str | Path) -> None:
        """
        Write interactions as ``user, item, timestamp, weight`` rows.

        :param ds: Dataset to write.
        :param path: Output file.
        """
        ...

    @abstractmethod
    def write_attributes(self, ds: InteractionDataset, user_path: str | Path, item_path: str | Path) -> None:
        """
        Write attribute tables as ``entity_token<TAB>attr_token`` rows.

        :param ds: Dataset whose attribute tables are written.
        :param user_path: Output file for user attributes.
        :param item_path: Output file for item attributes.
        """
        ...

    @abstractmethod
    def write_vocabulary(self, vocabulary: Vocabulary, path: str | Path) -> None:
        """
        Persist the token-to-index assignment as JSON.

        :param vocabulary: Vocabulary to write.
        :param path: Output file.
        """
        ...

    @abstractmethod
    def write_split(self, split: SplitPair, directory: str | Path) -> dict[str, Path]:
        """
        Persist a split: train/test TSVs, attribute TSVs and the vocabulary.

        :param split: Split to write.
        :param directory: Output directory (created if missing).
        :return: Mapping of role to written path.
        """
        ...


class IDatasetSplitter(ABC):
    """
    Abstract interface for the train/test split protocols.
    """

    @abstractmethod
    def split_random(self, ds: InteractionDataset, test_fraction: float, seed: int) -> SplitPair:
        """
        Assign every interaction to test independently with probability `test_fraction`.

        :param ds: Non-empty dataset.
        :param test_fraction: Probability in (0, 1).
        :param seed: RNG seed; equal seeds give identical splits.
        :return: SplitPair with protocol random_holdout.
        :raises ToolkitException: If the fraction is outside (0, 1) or the dataset is empty.
        """
        ...

    @abstractmethod
    def split_chronological(self, ds: InteractionDataset, test_fraction: float) -> SplitPair:
        """
        Sort by timestamp (stable) and move the last ceil(test_fraction * N) interactions to test.

        :param ds: Dataset with timestamps.
        :param test_fraction: Fraction in (0, 1).
        :return: SplitPair with protocol chronological.
        :raises ToolkitException: If all timestamps are zero or the fraction is invalid.
        """
        ...

    @abstractmethod
    def carve_dev(self, train: InteractionDataset, seed: int) -> SplitPair:
        """
        Split the early-stopping dev set off a training split.

        :param train: Training split.
        :param seed: RNG seed.
        :return: SplitPair whose `test` member is the dev set.
        """
        ...


class IDatasetStatistics(ABC):
    """
    Abstract interface for dataset summaries.
    """

    @abstractmethod
    def dataset_stats(self, ds: InteractionDataset) -> DatasetStats:
        """
        Counts and density |interactions| / (users * items).

        :param ds: Dataset to describe.
        :return: DatasetStats.
        :raises ToolkitException: If the dataset has no items.
        """
        ...


class ISyntheticDataGenerator(ABC):
    """
    Abstract interface for synthetic implicit-feedback data.
    """

    @abstractmethod
    def make_planted_dataset(
        self,
        num_users: int,
        num_items: int,
        interactions_per_user: int,
        latent_dim: int,
        num_genres: int,
        seed: int,
    ) -> InteractionDataset:
        """
        Generate interactions from a planted low-rank preference model.

        :param num_users: Number of users.
        :param num_items: Number of items.
        :param interactions_per_user: Distinct items drawn per user.
        :param latent_dim: Rank of the planted preference model.
        :param num_genres: Size of the item attribute vocabulary.
        :param seed: RNG seed.
        :return: Dataset with item genre attributes and timestamps.
        """
        ...
