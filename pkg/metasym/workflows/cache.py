"""Workspace cache — JSON payloads keyed by a content hash of their construction.

The key is the SHA-256 of the canonical JSON of ``(kind, params, version)``;
payloads live in ``<workspace>/<kind>-<digest>.json``. Unreadable entries are
logged and rebuilt.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Callable, TypeVar

from metasym import __version__
from metasym.core.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


class WorkspaceCache:
    def __init__(self, root: str | Path | None) -> None:
        self.root = Path(root) if root is not None else None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    @staticmethod
    def key(kind: str, params: dict[str, Any]) -> str:
        canonical = json.dumps(
            {"kind": kind, "params": params, "version": __version__},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def path_for(self, kind: str, params: dict[str, Any]) -> Path:
        assert self.root is not None
        return self.root / f"{kind}-{self.key(kind, params)[:16]}.json"

    def load(self, kind: str, params: dict[str, Any]) -> Any | None:
        if self.root is None:
            return None
        path = self.path_for(kind, params)
        if not path.exists():
            return None
        try:
            with path.open("r", encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning("Ignoring unreadable cache entry %s: %s", path, exc)
            return None

    def store(self, kind: str, params: dict[str, Any], payload: Any) -> None:
        if self.root is None:
            return
        path = self.path_for(kind, params)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8") as fh:
                json.dump(payload, fh, default=str)
            logger.info("Cached %s at %s", kind, path)
        except OSError as exc:
            logger.error("Failed to write cache entry %s: %s", path, exc)

    def get_or_build(
        self,
        kind: str,
        params: dict[str, Any],
        build: Callable[[], T],
        encode: Callable[[T], Any],
        decode: Callable[[Any], T],
    ) -> T:
        payload = self.load(kind, params)
        if payload is not None:
            try:
                value = decode(payload)
                logger.info("Loaded %s from the workspace cache.", kind)
                return value
            except Exception as exc:
                logger.warning("Rebuilding %s: cached payload is corrupt (%s)", kind, exc)
        value = build()
        self.store(kind, params, encode(value))
        return value
