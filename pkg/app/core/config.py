from functools import lru_cache
from typing import Literal, Optional
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):

    # Solver
    counting_mode: Literal["exact", "modular"] = "exact"
    modulus_bits: int = 62
    dp_width_threshold: int = 4
    max_width: Optional[int] = None
    bruteforce_max_n: int = 16

    # Runtime
    threads: int = 1
    seed: int = 0
    log_level: str = "WARNING"

    # Bench storage
    database_url: str = "sqlite:///cfvs_bench.db"

    model_config = SettingsConfigDict(
        env_prefix="CFVS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra='ignore'
    )

    @field_validator('threads')
    @classmethod
    def validate_threads(cls, v: int) -> int:
        if v < 1:
            raise ValueError('threads must be at least 1')
        return v

    @field_validator('modulus_bits')
    @classmethod
    def validate_modulus_bits(cls, v: int) -> int:
        """A prime modulus below 2^8 makes false negatives likely"""
        if v < 8:
            raise ValueError('modulus_bits must be at least 8')
        return v

    @field_validator('log_level')
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        return v.upper()


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
