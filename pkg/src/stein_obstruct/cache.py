"""On-disk cache for Sq^2 matrices.

One file per key.  Layout: 4-byte magic, 1 version byte, then a JSON body.
Files whose header does not match are treated as misses and rewritten.  The
cache never changes results, it only skips recomputation.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional, Sequence

from .linalg import BitMatrix

log = logging.getLogger(__name__)

MAGIC = b"SOSQ"
VERSION = 1
ENV_VAR = "STEIN_OBSTRUCT_CACHE"


class MatrixCache:
    def __init__(self, directory: os.PathLike | str):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls, default: Optional[os.PathLike | str] = None) -> Optional["MatrixCache"]:
        path = os.environ.get(ENV_VAR) or default
        return cls(path) if path else None

    def _path(self, r: int, w2: Sequence[int], degree: int) -> Path:
        key = f"r{r}-w{''.join(map(str, w2)) or 'e'}-d{degree}"
        digest = hashlib.sha1(key.encode()).hexdigest()[:8]
        return self.directory / f"sq2-{key}-{digest}.bin"

    def get(self, r: int, w2: Sequence[int], degree: int) -> Optional[BitMatrix]:
        path = self._path(r, w2, degree)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            self.misses += 1
            return None
        if raw[:4] != MAGIC or raw[4:5] != bytes([VERSION]):
            log.info("cache entry %s has a stale header; ignoring", path.name)
            self.misses += 1
            return None
        try:
            body = json.loads(raw[5:].decode())
            m = BitMatrix(body["nrows"], body["ncols"], tuple(int(x, 16) for x in body["rows"]))
        except (ValueError, KeyError, TypeError):
            log.warning("cache entry %s is corrupt; ignoring", path.name)
            self.misses += 1
            return None
        self.hits += 1
        return m

    def put(self, r: int, w2: Sequence[int], degree: int, m: BitMatrix) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        body = {"nrows": m.nrows, "ncols": m.ncols, "rows": [format(x, "x") for x in m.rows]}
        path = self._path(r, w2, degree)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(MAGIC + bytes([VERSION]) + json.dumps(body).encode())
        os.replace(tmp, path)
