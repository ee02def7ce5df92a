"""On-disk cache of iso-class tables.

Each table is one JSON file named by its ``CacheKey``; the point -> class
index, which is expensive to rebuild, rides along as a ``.npy`` sidecar.
Writes go to a temporary file in the same directory and are renamed into
place, so a reader never sees a half-written entry.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .quiver import DimVector, Quiver
from .reps import DEFAULT_BUDGET, IsoClassTable, build_iso_table

log = logging.getLogger(__name__)

ENV_VAR = "HALL_CACHE_DIR"


class CacheWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CacheKey:
    quiver_hash: str
    q: int
    dim: tuple[int, ...]

    @classmethod
    def of(cls, Q: Quiver, q: int, dim) -> "CacheKey":
        return cls(Q.content_hash(), int(q), tuple(int(d) for d in dim))

    @property
    def stem(self) -> str:
        return f"{self.quiver_hash}_q{self.q}_d{'-'.join(map(str, self.dim))}"


def _atomic_write(path: Path, write) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


class TableCache:
    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, override=None) -> "TableCache | None":
        root = override or os.environ.get(ENV_VAR)
        return cls(root) if root else None

    def _json_path(self, key: CacheKey) -> Path:
        return self.root / f"{key.stem}.json"

    def _labels_path(self, key: CacheKey) -> Path:
        return self.root / f"{key.stem}.labels.npy"

    def store(self, key: CacheKey, table: IsoClassTable) -> None:
        blob = json.dumps(table.to_json(), sort_keys=True, separators=(",", ":")).encode()
        _atomic_write(self._json_path(key), lambda fh: fh.write(blob))
        if table.labels is not None:
            _atomic_write(self._labels_path(key), lambda fh: np.save(fh, table.labels, allow_pickle=False))

    def load(self, key: CacheKey) -> IsoClassTable | None:
        """The cached table, or None if absent. Raises ValueError on a corrupt entry."""
        path = self._json_path(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            table = IsoClassTable.from_json(data)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValueError(f"unreadable cache entry {path.name}: {exc}") from exc
        if CacheKey.of(table.quiver, table.q, table.dim) != key:
            raise ValueError(f"cache entry {path.name} holds a different table")
        table.validate()
        lp = self._labels_path(key)
        if lp.exists():
            try:
                labels = np.load(lp, allow_pickle=False)
            except (ValueError, OSError):
                labels = None
            if labels is not None and labels.shape == (table.n_points,) and \
                    (labels.size == 0 or labels.max() < len(table)):
                table.labels = labels
            else:
                log.debug("ignoring bad label sidecar %s", lp.name)
        return table

    def clear(self) -> None:
        for p in self.root.glob("*"):
            if p.suffix in (".json", ".npy"):
                p.unlink()

    def load_or_build(self, Q: Quiver, q: int, dim, budget: int = DEFAULT_BUDGET) -> IsoClassTable:
        key = CacheKey.of(Q, q, dim)
        try:
            table = self.load(key)
        except ValueError as exc:
            warnings.warn(f"rebuilding corrupt cache entry: {exc}", CacheWarning, stacklevel=2)
            table = None
        if table is not None:
            table.quiver = Q
            return table
        table = build_iso_table(Q, q, DimVector(dim), budget)
        self.store(key, table)
        return table


def cache_store(cache: TableCache, key: CacheKey, table: IsoClassTable) -> None:
    cache.store(key, table)


def cache_load(cache: TableCache, key: CacheKey) -> IsoClassTable | None:
    return cache.load(key)
