from .logger import ILoggerManager
from .utils import IConfigFileReader, IFingerprinter, IManifestBuilder, IRandomStreams
from .scorer import IScorer
