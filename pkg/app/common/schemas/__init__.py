from .core_schema import ArraySchema, CoreSchema
from .cli import CliState
from .manifest import DatasetFingerprint, RunManifest
