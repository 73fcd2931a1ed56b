from .loader import InteractionLoader
from .splitter import DatasetSplitter
from .stats import DatasetStatistics
from .synthetic import SyntheticDataGenerator
from .writer import InteractionWriter
