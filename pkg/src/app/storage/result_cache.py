from __future__ import annotations

from contextlib import closing, contextmanager
from datetime import datetime, timezone
import hashlib
import logging
import os
import sqlite3
from typing import Iterator, Optional

from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.quiver.quiver_format import emit_quiver_text


logger = logging.getLogger(__name__)


def cache_key(algebra: BoundQuiverAlgebra, prime: int, operation: str) -> str:
    """SHA-256 over the canonical quiver text, the prime and the operation name."""
    digest = hashlib.sha256()
    digest.update(emit_quiver_text(algebra).encode("utf-8"))
    digest.update(f"\nprime {prime}\nop {operation}\n".encode("utf-8"))
    return digest.hexdigest()


class ResultCache:
    """Stores rendered results keyed by algebra content hash"""

    def __init__(self, db_dir: str) -> None:
        os.makedirs(db_dir, exist_ok=True)
        self.db_path = os.path.join(db_dir, "results.db")
        self._ensure_schema()

    @contextmanager
    def _connection(self) -> Iterator[sqlite3.Connection]:
        # commit on success, always close
        with closing(sqlite3.connect(self.db_path)) as conn, conn:
            yield conn

    def _ensure_schema(self) -> None:
        with self._connection() as conn:
            conn.execute(
                """
                CREATE TABLE IF NOT EXISTS results (
                    key TEXT PRIMARY KEY,
                    payload TEXT NOT NULL,
                    created_at TEXT NOT NULL
                )
                """
            )

    def get(self, key: str) -> Optional[str]:
        """Get the stored payload for a key"""
        with self._connection() as conn:
            cur = conn.execute("SELECT payload FROM results WHERE key = ?", (key,))
            row = cur.fetchone()
        if row:
            logger.debug("cache hit %s", key[:12])
        return row[0] if row else None

    def set(self, key: str, payload: str) -> None:
        """Set the payload for a key"""
        created = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        with self._connection() as conn:
            conn.execute(
                "INSERT INTO results(key, payload, created_at) VALUES(?, ?, ?) "
                "ON CONFLICT(key) DO UPDATE SET payload=excluded.payload, created_at=excluded.created_at",
                (key, payload, created),
            )
        logger.debug("cached %s (%d chars)", key[:12], len(payload))

    def __len__(self) -> int:
        with self._connection() as conn:
            return conn.execute("SELECT COUNT(*) FROM results").fetchone()[0]
