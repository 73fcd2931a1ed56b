from typing import Any

from pydantic import Field

from app.common.schemas.core_schema import CoreSchema


class DatasetFingerprint(CoreSchema):
    name: str
    users: int = Field(ge=0)
    items: int = Field(ge=0)
    interactions: int = Field(ge=0)
    digest: str


class RunManifest(CoreSchema):
    """
    Everything needed to reproduce one command invocation.

    `run_id` is derived from the inputs only (command, config, seed, version
    and dataset fingerprints), so reruns with the same arguments get the same
    id. `outputs` maps each written file to its content digest.
    """

    command: str
    config: dict[str, Any]
    seed: int
    version: str
    datasets: list[DatasetFingerprint] = Field(default_factory=list)
    outputs: dict[str, str] = Field(default_factory=dict)
    run_id: str = ""
