"""On-disk cache of scan rows: one small file per (model, J, lambda, L, method, version)."""

from __future__ import annotations

import hashlib
import logging
import os
from pathlib import Path

log = logging.getLogger(__name__)


def cache_key(kind: str, J: int, lam: float, L: int, method: str, version: str) -> str:
    raw = f"{kind}|{J:+d}|{float(lam)!r}|{L}|{method}|{version}"
    return hashlib.sha256(raw.encode()).hexdigest()[:32]


def _checksum(line: str) -> str:
    return hashlib.sha256(line.encode()).hexdigest()


class RowCache:
    """Stores one CSV row per key with a trailing sha256 line.

    Entries whose checksum does not match are treated as misses; the code
    version is part of the key, so a version bump orphans old entries.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.row"

    def get(self, key: str) -> str | None:
        path = self._path(key)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        lines = text.split("\n")
        if len(lines) < 2 or lines[1] != f"sha256:{_checksum(lines[0])}":
            log.warning("discarding corrupt cache entry %s", path.name)
            return None
        return lines[0]

    def put(self, key: str, row: str) -> None:
        if "\n" in row:
            raise ValueError("cache rows must be single lines")
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(f"{row}\nsha256:{_checksum(row)}\n", encoding="utf-8")
        os.replace(tmp, self._path(key))
