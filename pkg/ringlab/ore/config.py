"""Configuration management for the Ore extension workbench"""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings"""

    # Ring construction
    enumerable_size_cap: int = 4096
    sampler_height: int = 8

    # Scan budgets
    scan_cap: int = 1_000_000
    law_samples: int = 500
    sample_pairs: int = 2000
    default_seed: int = 0

    # Maps
    endo_enum_cap: int = 8
    oracle_cap: int = 12

    # Annihilators
    closure_cap: int = 4096

    # Theorem lab
    lemma_j_max: int = 6
    compat_j_max: int = 4
    claim1_random_phi: int = 200
    armendariz_small_ring: int = 8
    ore_idempotent_degree: int = 4
    ore_idempotent_height: int = 4

    # Logging
    log_level: str = "INFO"

    model_config = SettingsConfigDict(
        env_prefix="RINGLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
