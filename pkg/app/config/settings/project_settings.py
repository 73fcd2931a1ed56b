from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ProjectSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="BARS_", extra="allow"
    )

    # Service Info
    PROJECT_VERSION: str = "0.3.0"  # bump manually
    PROJECT_NAME: str = "BARS Ranking Toolkit"

    # Checkpoint container layout version
    CHECKPOINT_FORMAT_VERSION: int = Field(1)
