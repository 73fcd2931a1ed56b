from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.common.consts.enums import LoggerLevelEnum


class RuntimeSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", env_prefix="BARS_", extra="allow"
    )

    LOG_LEVEL: LoggerLevelEnum = Field(LoggerLevelEnum.INFO)

    # Upper bound on worker threads for evaluation and studies
    WORKERS: int = Field(4, ge=1)

    # Max number of elements in one (rows x items x dim) scoring buffer
    SCORE_CHUNK_ELEMENTS: int = Field(1 << 22, ge=1)

    OUTPUT_DIR: str = Field("runs")
