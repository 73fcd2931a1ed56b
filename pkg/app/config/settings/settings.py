from .project_settings import ProjectSettings
from .runtime_settings import RuntimeSettings


class Settings:
    project: ProjectSettings = ProjectSettings()
    runtime: RuntimeSettings = RuntimeSettings()


settings: Settings = Settings()
