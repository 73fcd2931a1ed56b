import json
import logging
from pathlib import Path
from typing import Any

from app.common.contracts import IFingerprinter, IManifestBuilder
from app.common.schemas import DatasetFingerprint, RunManifest
from app.config.settings import settings


class ManifestBuilder(IManifestBuilder):
    """
    Builds and writes run manifests.
    """

    RUN_ID_LENGTH = 16

    def __init__(
        self,
        fingerprinter: IFingerprinter,
        logger: logging.Logger,
    ):
        """
        Initialize the builder.

        :param fingerprinter: Content digests for datasets, configs and files.
        :param logger: Logger for written manifests.
        """

        self._fingerprinter = fingerprinter
        self._logger = logger

    def dataset(self, name: str, ds: Any) -> DatasetFingerprint:
        """
        Fingerprint an interaction dataset by its counts and column contents.

        :param name: Role of the dataset in the run (``train``, ``test``, ...).
        :param ds: Interaction dataset.
        :return: DatasetFingerprint.
        """

        digest = self._fingerprinter.arrays_digest(ds.user_ids, ds.item_ids, ds.timestamps, ds.weights)
        return DatasetFingerprint(
            name=name,
            users=ds.num_users,
            items=ds.num_items,
            interactions=len(ds),
            digest=digest,
        )

    def build(
        self,
        command: str,
        config: dict[str, Any],
        seed: int,
        datasets: list[DatasetFingerprint] | None = None,
    ) -> RunManifest:
        datasets = datasets or []
        manifest = RunManifest(
            command=command,
            config=config,
            seed=seed,
            version=settings.project.PROJECT_VERSION,
            datasets=datasets,
        )
        payload = manifest.model_dump(mode="json", exclude={"outputs", "run_id"})
        run_id = self._fingerprinter.json_digest(payload)[:self.RUN_ID_LENGTH]
        return manifest.model_copy(update={"run_id": run_id})

    def write(self, manifest: RunManifest, outputs: list[str | Path], path: str | Path) -> RunManifest:
        path = Path(path)
        digests = {str(Path(output)): self._fingerprinter.file_digest(output) for output in outputs}
        manifest = manifest.model_copy(update={"outputs": digests})
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True), encoding="utf-8")
        self._logger.info(f"Run {manifest.run_id}: manifest written to {path}")
        return manifest
