from __future__ import annotations

import json
import os
from typing import Any


def _ensure_dir(path: str) -> None:
    if path:
        os.makedirs(path, exist_ok=True)


def write_text(path: str, text: str) -> str:
    _ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def write_json(path: str, document: Any) -> str:
    """Write ``document`` as sorted, indented JSON; returns the path written."""
    return write_text(path, json.dumps(document, sort_keys=True, indent=2) + "\n")
