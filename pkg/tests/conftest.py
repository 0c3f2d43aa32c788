from __future__ import annotations

import pytest

from src.app.config.settings import reset_settings


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Fresh settings per test with the result cache under ``tmp_path``."""
    monkeypatch.setenv("TAU_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("TAU_LOG_LEVEL", "WARNING")
    reset_settings()
    yield
    reset_settings()
