from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # === App ===
    app_name: str = "AMP Chain Graph Learner"
    debug: bool = False
    log_level: str = "WARNING"
    # === Statistical defaults ===
    default_alpha: float = 0.01
    default_seed: int = 0
    default_sample_size: int = 1000
    # === Combinatorial guards ===
    bruteforce_max_nodes: int = 8
    independence_model_max_nodes: int = 7
    markov_check_max_nodes: int = 6
    enumeration_max_nodes: int = 4

    model_config = SettingsConfigDict(env_prefix="AMPCG_", env_file=".env", extra="ignore")


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
