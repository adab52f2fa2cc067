"""On-disk cache of full weight tables.

File layout (little endian)::

    b"FWLW"  magic
    u32      format version (1)
    u32 p, u32 t, u32 m
    u32 * (m + 1)   polynomial coefficients c_0 .. c_m
    u32 * p^(2m)    weights, flat index a + q*b

Writes go to a temporary file in the same directory and are renamed into
place, so concurrent writers never expose a partial table.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .field import Field

MAGIC = b"FWLW"
VERSION = 1


def poly_hash(poly) -> str:
    return hashlib.sha256(",".join(map(str, poly)).encode()).hexdigest()[:16]


def cache_path(cache_dir: str | Path, field: Field) -> Path:
    return Path(cache_dir) / f"weights_p{field.p}_t{field.t}_{poly_hash(field.poly)}.bin"


def _header(field: Field) -> bytes:
    return MAGIC + struct.pack(f"<4I{field.m + 1}I", VERSION, field.p, field.t, field.m, *field.poly)


def write_table(path: str | Path, field: Field, weights: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(_header(field))
            fh.write(np.asarray(weights, dtype="<u4").tobytes())
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_table(path: str | Path, field: Field) -> np.ndarray | None:
    """The cached table, or None if absent or written for another field."""
    path = Path(path)
    if not path.exists():
        return None
    raw = path.read_bytes()
    head = _header(field)
    if not raw.startswith(head):
        return None
    body = raw[len(head):]
    if len(body) != 4 * field.q * field.q:
        return None
    return np.frombuffer(body, dtype="<u4").astype(np.int64)
