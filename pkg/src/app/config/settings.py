from __future__ import annotations

from dataclasses import dataclass, replace
import os

try:
    from dotenv import load_dotenv  # type: ignore
    load_dotenv()
except Exception:
    # dotenv is optional in some environments
    pass


@dataclass(frozen=True)
class Settings:
    field_prime: int
    node_cap: int

    positivity_bound: int
    search_cap: int
    box_cap: int

    retry_budget: int
    workers: int
    validate_nodes: bool

    cache_dir: str
    log_level: str

    def with_overrides(self, **overrides) -> "Settings":
        """Copy with the non-None overrides applied (CLI flags)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_settings: Settings | None = None


def _env(name: str, default: str = "") -> str:
    return os.getenv(name, default)


def _env_int(name: str, default: int) -> int:
    raw = _env(name, str(default)).strip()
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def get_settings() -> Settings:
    global _settings
    if _settings is not None:
        return _settings

    _settings = Settings(
        field_prime=_env_int("TAU_FIELD_PRIME", 32003),
        node_cap=_env_int("TAU_NODE_CAP", 1_000_000),
        positivity_bound=_env_int("TAU_POSITIVITY_BOUND", 6),
        search_cap=_env_int("TAU_SEARCH_CAP", 16),
        box_cap=_env_int("TAU_BOX_CAP", 100_000_000),
        retry_budget=_env_int("TAU_RETRY_BUDGET", 64),
        workers=_env_int("TAU_WORKERS", 1),
        validate_nodes=_env("TAU_VALIDATE_NODES", "true").lower() in ("true", "1", "yes"),
        cache_dir=_env("TAU_CACHE_DIR", "data"),
        log_level=_env("TAU_LOG_LEVEL", "INFO").upper(),
    )

    return _settings


def reset_settings() -> None:
    global _settings
    _settings = None
