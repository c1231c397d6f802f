"""File formats for order-3 tensors.

Binary MRT3: 4-byte magic ``MRT3``, one version byte (=1), three little-endian
uint32 dims, then ``p1*p2*p3`` little-endian float64 values in row-major
layout.  CSV interchange uses 1-based ``i,j,l,value`` triplet rows.
"""

from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .tensor import Tensor3

__all__ = ["write_mrt3", "read_mrt3", "write_csv_triplets", "read_csv_triplets"]

MAGIC = b"MRT3"
VERSION = 1
_HEADER = struct.Struct("<4sBIII")


def write_mrt3(t: Tensor3, path: str | Path) -> None:
    """Write a tensor to the binary MRT3 format."""
    p1, p2, p3 = t.dims
    payload = t.data.astype("<f8", copy=False).tobytes(order="C")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, p1, p2, p3))
        fh.write(payload)


def read_mrt3(path: str | Path) -> Tensor3:
    """Read a tensor from the binary MRT3 format. Flags are not stored."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) < _HEADER.size:
            raise ValueError(f"{path}: truncated MRT3 header")
        magic, version, p1, p2, p3 = _HEADER.unpack(header)
        if magic != MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise ValueError(f"{path}: unsupported MRT3 version {version}")
        count = p1 * p2 * p3
        raw = fh.read(8 * count)
        if len(raw) != 8 * count:
            raise ValueError(f"{path}: expected {count} float64 values, file truncated")
    values = np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(p1, p2, p3)
    return Tensor3(values)


def write_csv_triplets(t: Tensor3, path: str | Path) -> None:
    """Write all entries as 1-based ``i,j,l,value`` rows (with header)."""
    p1, p2, p3 = t.dims
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["i", "j", "l", "value"])
        for i in range(p1):
            for j in range(p2):
                for l in range(p3):
                    writer.writerow([i + 1, j + 1, l + 1, repr(t.data[i, j, l])])


def read_csv_triplets(path: str | Path, dims: tuple[int, int, int] | None = None) -> Tensor3:
    """Read 1-based ``i,j,l,value`` rows; absent entries default to zero."""
    rows: list[tuple[int, int, int, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader):
            if not row:
                continue
            if lineno == 0 and row[0].strip().lower() == "i":
                continue
            if len(row) != 4:
                raise ValueError(f"{path}:{lineno + 1}: expected 4 columns, got {len(row)}")
            i, j, l = (int(row[0]), int(row[1]), int(row[2]))
            if min(i, j, l) < 1:
                raise ValueError(f"{path}:{lineno + 1}: indices are 1-based, got {(i, j, l)}")
            rows.append((i, j, l, float(row[3])))
    if dims is None:
        if not rows:
            raise ValueError(f"{path}: empty triplet file and no dims given")
        dims = (
            max(r[0] for r in rows),
            max(r[1] for r in rows),
            max(r[2] for r in rows),
        )
    values = np.zeros(dims)
    for i, j, l, v in rows:
        if i > dims[0] or j > dims[1] or l > dims[2]:
            raise ValueError(f"{path}: index {(i, j, l)} outside dims {dims}")
        values[i - 1, j - 1, l - 1] = v
    return Tensor3(values)
