from .config_file import ConfigFileReader
from .fingerprint import Fingerprinter
from .manifest import ManifestBuilder
from .random_streams import RandomStreams
