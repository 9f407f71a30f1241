"""On-disk cache of per-field computation results.

One JSON file per discriminant, schema-versioned; a version mismatch is a
miss.  Writes are atomic (temp file then rename).  The cache only stores
derived values (tensor entries, witnesses), so hits reproduce reports
bit-identically and misses just recompute.
"""

from __future__ import annotations

import json
import os
import tempfile

SCHEMA_VERSION = 1


class CacheStore:
    def __init__(self, directory: str, d: int, primes: tuple[int, ...]):
        self.directory = directory
        self.d = d
        self.primes = list(primes)
        self.path = os.path.join(directory, f"dw_{'m' if d < 0 else ''}{abs(d)}.json")
        self._data = self._load()

    def _load(self) -> dict:
        fresh = {
            "schema": SCHEMA_VERSION,
            "d": self.d,
            "primes": self.primes,
            "tensor": {},
            "witnesses": {},
        }
        try:
            with open(self.path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return fresh
        if data.get("schema") != SCHEMA_VERSION or data.get("primes") != self.primes:
            return fresh
        return data

    def _flush(self) -> None:
        os.makedirs(self.directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(self._data, fh, indent=0, sort_keys=True)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def tensor_entries(self) -> dict[tuple[int, int, int], int]:
        out = {}
        for key, val in self._data["tensor"].items():
            i, j, k = (int(t) for t in key.split(","))
            out[(i, j, k)] = int(val)
        return out

    def store_tensor_entry(self, key: tuple[int, int, int], value: int) -> None:
        skey = ",".join(str(t) for t in key)
        if self._data["tensor"].get(skey) != value:
            self._data["tensor"][skey] = value
            self._flush()

    def witness(self, key: str):
        return self._data["witnesses"].get(key)

    def store_witness(self, key: str, record) -> None:
        if self._data["witnesses"].get(key) != record:
            self._data["witnesses"][key] = record
            self._flush()


def cache_dir_from_env(flag_value: str | None) -> str | None:
    """Flag wins over the DW_CACHE_DIR environment variable."""
    if flag_value:
        return flag_value
    return os.environ.get("DW_CACHE_DIR") or None
