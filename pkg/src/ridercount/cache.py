"""Persistent count cache: a CSV file with header ``piece,q,n,count``.

Keys are ``(canonical piece text, q, n)``. A value that disagrees with a
fresh computation, or two rows with the same key and different counts, mark
the file as corrupt.
"""

from __future__ import annotations

import csv
import os
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable

from .enumerator import CountRecord, count_nonattacking
from .errors import CacheCorruption
from .model import Piece

__all__ = ["CacheStore", "resolve_cache_path", "CACHE_ENV", "HEADER", "bundled_counts"]

CACHE_ENV = "RIDERCOUNT_CACHE"
HEADER = ("piece", "q", "n", "count")

Key = tuple[str, int, int]


def resolve_cache_path(flag: str | os.PathLike | None = None) -> Path:
    """``--cache`` flag, then the environment, then ``./counts.csv``."""
    if flag:
        return Path(flag)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path("counts.csv")


def _read_rows(path: Path) -> dict[Key, int]:
    index: dict[Key, int] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return index
        if tuple(h.strip() for h in header) != HEADER:
            raise CacheCorruption(f"{path}: bad header {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise CacheCorruption(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            try:
                key = (row[0], int(row[1]), int(row[2]))
                count = int(row[3])
            except ValueError as exc:
                raise CacheCorruption(f"{path}:{lineno}: {exc}") from None
            if count < 0:
                raise CacheCorruption(f"{path}:{lineno}: negative count")
            if key in index and index[key] != count:
                raise CacheCorruption(f"{path}:{lineno}: conflicting counts for {key}")
            index[key] = count
    return index


class CacheStore:
    """Read-through, write-back cache of brute-force counts.

    The file is created on the first write; reading a missing file yields an
    empty store.
    """

    def __init__(self, path: str | os.PathLike, *, read_only: bool = False):
        self.path = Path(path)
        self.read_only = read_only
        self._index: dict[Key, int] = {}
        self._pending: list[CountRecord] = []
        if self.path.exists():
            self._index = _read_rows(self.path)

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, key: Key) -> bool:
        return key in self._index

    def get(self, piece: Piece | str, q: int, n: int) -> int | None:
        label = piece if isinstance(piece, str) else piece.canonical()
        return self._index.get((label, q, n))

    def records(self) -> list[CountRecord]:
        return [CountRecord(p, q, n, c) for (p, q, n), c in sorted(self._index.items())]

    def put(self, record: CountRecord) -> None:
        old = self._index.get(record.key)
        if old is not None:
            if old != record.count:
                raise CacheCorruption(
                    f"{self.path}: cached {record.key} = {old}, recomputed {record.count}"
                )
            return
        self._index[record.key] = record.count
        self._pending.append(record)

    def verify(self, record: CountRecord) -> None:
        """Raise if ``record`` contradicts a stored value."""
        old = self._index.get(record.key)
        if old is not None and old != record.count:
            raise CacheCorruption(
                f"{self.path}: cached {record.key} = {old}, recomputed {record.count}"
            )

    def count(
        self,
        piece: Piece,
        q: int,
        n: int,
        compute: Callable[..., CountRecord] | None = None,
        **kwargs,
    ) -> CountRecord:
        hit = self.get(piece, q, n)
        if hit is not None:
            return CountRecord(piece.canonical(), q, n, hit)
        rec = (compute or count_nonattacking)(piece, q, n, **kwargs)
        self.put(rec)
        return rec

    def flush(self) -> None:
        if self.read_only or not self._pending:
            return
        new = not self.path.exists() or self.path.stat().st_size == 0
        if self.path.parent and not self.path.parent.exists():
            self.path.parent.mkdir(parents=True)
        with open(self.path, "a", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if new:
                w.writerow(HEADER)
            for r in self._pending:
                w.writerow([r.piece, r.q, r.n, r.count])
        self._pending.clear()

    def __enter__(self) -> CacheStore:
        return self

    def __exit__(self, *exc) -> None:
        self.flush()

    @classmethod
    def from_records(cls, path, records: Iterable[CountRecord]) -> CacheStore:
        store = cls(path)
        for r in records:
            store.put(r)
        return store


def bundled_counts() -> CacheStore:
    """Counts shipped with the package (queen, q <= 4, n <= 47), read-only.

    They were produced by :func:`count_nonattacking`; tests recompute a sample.
    """
    ref = resources.files("ridercount") / "data" / "queen_counts.csv"
    with resources.as_file(ref) as p:
        return CacheStore(p, read_only=True)
