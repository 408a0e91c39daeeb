"""Конфигурация приложения."""
import os
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки приложения."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    # Logging
    log_level: str = Field(default="INFO", alias="NBODY_LOG")

    # Worker pool (0 — по числу доступных ядер)
    jobs: int = Field(default=0, ge=0, alias="NBODY_JOBS")

    # Numerics
    integrator_tol: float = Field(default=1e-12, gt=0, alias="NBODY_TOL")
    unit_circle_tol: float = Field(default=1e-6, gt=0, alias="NBODY_UNIT_CIRCLE_TOL")
    kappa: float = Field(default=1.0, gt=0, alias="NBODY_KAPPA")

    # Storage paths
    output_dir: Path = Field(default=Path("./storage/reports"), alias="NBODY_OUTPUT_DIR")

    def resolved_jobs(self) -> int:
        """Размер пула процессов."""
        return self.jobs or os.cpu_count() or 1

    def resolve_output(self, path: Path) -> Path:
        """Относительные пути отчётов отсчитываются от output_dir."""
        path = Path(path)
        return path if path.is_absolute() else self.output_dir / path

    def ensure_dirs(self) -> None:
        """Создаёт необходимые директории."""
        self.output_dir.mkdir(parents=True, exist_ok=True)


# Глобальный экземпляр настроек
settings = Settings()
