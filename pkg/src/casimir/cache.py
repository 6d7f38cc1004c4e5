"""Content-addressed result cache for sweep outputs.

Serialized sweep results are stored as whole files keyed by a sha256
hash of the effective run configuration (canonical JSON: sorted keys,
compact separators), so a repeated invocation with an unchanged config
is served back byte-for-byte.  The location is ~/.cache/casimir unless
the CASIMIR_CACHE_DIR environment variable points elsewhere.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

CACHE_ENV = "CASIMIR_CACHE_DIR"


def cache_dir() -> Path:
    override = os.environ.get(CACHE_ENV)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "casimir"


def config_key(config: dict) -> str:
    """sha256 hex digest of the canonical JSON form of a config."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _path_for(key: str, ext: str, root: Optional[Path] = None) -> Path:
    return (root or cache_dir()) / f"{key}.{ext}"


def load(key: str, ext: str, root: Optional[Path] = None) -> Optional[bytes]:
    """Stored bytes for a key, or None on a miss (or unreadable entry)."""
    path = _path_for(key, ext, root)
    try:
        return path.read_bytes()
    except OSError:
        return None


def store(key: str, ext: str, data: bytes, root: Optional[Path] = None) -> Path:
    """Write bytes under a key; atomic within the cache directory."""
    path = _path_for(key, ext, root)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=f".{ext}")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path
