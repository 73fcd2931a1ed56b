from app.common.consts.dependencies import get_error_codes
from app.common.contracts import IConfigFileReader, IFingerprinter, IManifestBuilder, IRandomStreams
from app.common.logger.dependencies import get_base_logger
from app.common.utils import ConfigFileReader, Fingerprinter, ManifestBuilder, RandomStreams


def get_config_file_reader() -> IConfigFileReader:
    """
    Dependency provider for the ``key=value`` config file reader.

    :return: Instance of ConfigFileReader implementing IConfigFileReader.
    """

    return ConfigFileReader(errors=get_error_codes())


def get_fingerprinter() -> IFingerprinter:
    """
    Dependency provider for content fingerprints.

    :return: Instance of Fingerprinter implementing IFingerprinter.
    """

    return Fingerprinter()


def get_random_streams(seed: int) -> IRandomStreams:
    """
    Dependency provider for seeded random streams.

    :param seed: Root seed.
    :return: Instance of RandomStreams implementing IRandomStreams.
    """

    return RandomStreams(seed)


def get_manifest_builder() -> IManifestBuilder:
    """
    Dependency provider for run manifests.

    :return: Instance of ManifestBuilder implementing IManifestBuilder.
    """

    return ManifestBuilder(fingerprinter=get_fingerprinter(), logger=get_base_logger())
