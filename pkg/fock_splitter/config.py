from typing import Tuple, Type

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Library limits and tolerances, optionally overridden from a .env file."""

    # Photon-count limits
    MAX_TOTAL_PHOTONS: int = 512
    MAX_SINGLE_INPUT_PHOTONS: int = 10_000
    ORACLE_MAX_PHOTONS: int = 64
    MAX_CELL_COUNT: int = 10 ** 8

    # Sparse state storage
    PRUNE_THRESHOLD: float = 1e-15

    # Tolerances
    CONSTRUCTION_TOL: float = 1e-10
    IDENTITY_TOL: float = 1e-12
    NORMALIZATION_TOL: float = 1e-10

    # Diagnostics go to stderr at this level
    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Process environment variables are not a source; only explicit
        # arguments and the .env file are.
        return init_settings, dotenv_settings


# Create a global instance
config = Settings()
