"""Append-only persistent store for recursion values.

Format: a text file whose first line is a version header, followed by one
record per line: "key<TAB>payload". Records are only ever appended; a torn
final record (interrupted write) is detected on open and truncated away.
A version mismatch is refused, never migrated silently.
"""
from __future__ import annotations

import os

MAGIC = "refsev-cache v1"


class CacheVersionError(RuntimeError):
    pass


class CacheStore:
    def __init__(self, path: str):
        self.path = path
        self._data: dict = {}
        self._fh = None
        self._open()

    def _open(self):
        if not os.path.exists(self.path):
            with open(self.path, "w") as fh:
                fh.write(MAGIC + "\n")
            self._fh = open(self.path, "a")
            return
        good = 0
        with open(self.path, "r", newline="") as fh:
            header = fh.readline()
            if header.rstrip("\n") != MAGIC:
                raise CacheVersionError(
                    f"cache {self.path} has header {header!r}, expected {MAGIC!r}"
                )
            good = fh.tell()
            while True:
                line = fh.readline()
                if not line:
                    break
                if not line.endswith("\n"):
                    break  # torn final record
                key, sep, payload = line.rstrip("\n").partition("\t")
                if sep != "\t" or not key:
                    break
                self._data[key] = payload
                good = fh.tell()
        size = os.path.getsize(self.path)
        if size != good:
            with open(self.path, "r+") as fh:
                fh.truncate(good)
        self._fh = open(self.path, "a")

    def __len__(self):
        return len(self._data)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def get(self, key: str):
        return self._data.get(key)

    def put(self, key: str, payload: str):
        if "\t" in key or "\n" in key or "\n" in payload:
            raise ValueError("keys and payloads must be single-line, tab-free")
        if key in self._data:
            return
        self._data[key] = payload
        self._fh.write(f"{key}\t{payload}\n")

    def flush(self):
        if self._fh:
            self._fh.flush()
            os.fsync(self._fh.fileno())

    def close(self):
        if self._fh:
            self._fh.flush()
            self._fh.close()
            self._fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
