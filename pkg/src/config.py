from pathlib import Path
from typing import List

from pydantic_settings import BaseSettings

PACKAGE_DIR = Path(__file__).resolve().parent


class Settings(BaseSettings):
    sporadic_data: str = str(PACKAGE_DIR / "data" / "sporadic.json")
    fixture_path: str = str(PACKAGE_DIR.parent / "fixtures" / "tables.jsonl")
    log_level: str = "INFO"
    sieve_primes: List[int] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]
    factor_prime_trials: int = 25
    factor_prime_patience: int = 6
    factor_degree_guard: int = 200
    max_class_size: int = 8
    verify_workers: int = 4

    model_config = {
        "env_prefix": "ISOGENY_ATLAS_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
    }


settings = Settings()
