"""
Versioned little-endian index files.

Layout: header (magic, u16 version, u8 kind), then length-prefixed sections:
text, requested tau (-1 for default), suffix array, and per kind the boundary
node ids with their tables. On load the suffix array is recomputed from the
text and must match the stored one; trees, partitions and decompositions are
rebuilt.
"""
import logging
import struct
from pathlib import Path
from typing import BinaryIO, List, Union

import numpy as np

from errors import GapIndexError, IndexFormatError
from indexes import GapIndex, get_index_class
from indexes.count import CountIndex
from indexes.zero_beta import ZbIndex
from models import IndexHeader
from text_core import build_text_index

logger = logging.getLogger(__name__)

MAGIC = b"GAPIDX"
VERSION = 1
HEADER = struct.Struct("<6sHB")
LENGTH = struct.Struct("<Q")
SCALAR = struct.Struct("<q")
INT64 = np.dtype("<i8")

KIND_CODES = {"count": 0, "report": 1, "zero-beta": 2, "baseline": 3, "quadratic": 4}
CODE_KINDS = {code: kind for kind, code in KIND_CODES.items()}


def _write_blob(out: BinaryIO, data: bytes) -> None:
    out.write(LENGTH.pack(len(data)))
    out.write(data)


def _write_array(out: BinaryIO, values) -> None:
    _write_blob(out, np.ascontiguousarray(values, dtype=INT64).tobytes())


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise IndexFormatError(f"Truncated index file at byte {self.pos}")
        chunk = self.data[self.pos: self.pos + size]
        self.pos += size
        return chunk

    def blob(self) -> bytes:
        (size,) = LENGTH.unpack(self.take(LENGTH.size))
        return self.take(size)

    def scalar(self) -> int:
        return SCALAR.unpack(self.take(SCALAR.size))[0]

    def array(self) -> np.ndarray:
        raw = self.blob()
        if len(raw) % INT64.itemsize:
            raise IndexFormatError("Integer section length is not a multiple of 8")
        return np.frombuffer(raw, dtype=INT64).astype(np.int64)


def dump_index(index: GapIndex, out: BinaryIO) -> None:
    header = IndexHeader(magic=MAGIC, version=VERSION, kind=index.kind)
    out.write(HEADER.pack(header.magic, header.version, KIND_CODES[header.kind]))
    _write_blob(out, index.text_index.text)
    out.write(SCALAR.pack(-1 if index.requested_tau is None else index.requested_tau))
    _write_array(out, index.text_index.sa)
    if isinstance(index, CountIndex):
        out.write(SCALAR.pack(index.counter.cap))
        _write_array(out, index.counter.partition.boundary)
        _write_array(out, index.counter.tables.reshape(-1))
    elif isinstance(index, ZbIndex):
        _write_array(out, index.layer.partition.boundary)
        _write_array(out, index.layer.min_dist_table.reshape(-1))


def load_index_bytes(data: bytes) -> GapIndex:
    reader = _Reader(data)
    magic, version, code = HEADER.unpack(reader.take(HEADER.size))
    if magic != MAGIC:
        raise IndexFormatError(f"Bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise IndexFormatError(f"Unsupported index version {version}, expected {VERSION}")
    if code not in CODE_KINDS:
        raise IndexFormatError(f"Unknown index kind code {code}")
    kind = CODE_KINDS[code]
    text = reader.blob()
    stored_tau = reader.scalar()
    tau = None if stored_tau < 0 else stored_tau
    sa = reader.array()
    if sa.size != len(text) + 1:
        raise IndexFormatError(f"Suffix array holds {sa.size} entries for a text of length {len(text)}")
    try:
        text_index = build_text_index(text)
        if not np.array_equal(text_index.sa, sa):
            raise IndexFormatError("Stored suffix array does not match the text")
        if kind == "count":
            cap = reader.scalar()
            boundary = reader.array().tolist()
            k = len(boundary)
            tables = reader.array()
            if tables.size != k * k * (cap + 1):
                raise IndexFormatError(f"Table section holds {tables.size} entries, expected {k * k * (cap + 1)}")
            index = CountIndex(text_index, tau=tau, tables=tables.reshape(k, k, cap + 1))
            _check_boundary(index.counter.partition.boundary, boundary)
        elif kind == "zero-beta":
            boundary = reader.array().tolist()
            k = len(boundary)
            table = reader.array()
            if table.size != k * k:
                raise IndexFormatError(f"Min-distance section holds {table.size} entries, expected {k * k}")
            index = ZbIndex(text_index, tau=tau, min_dist=table.reshape(k, k))
            _check_boundary(index.layer.partition.boundary, boundary)
        else:
            index = get_index_class(kind)(text_index, tau=tau)
    except IndexFormatError:
        raise
    except (GapIndexError, ValueError) as exc:
        raise IndexFormatError(f"Index payload does not rebuild: {exc}") from exc
    if reader.pos != len(data):
        raise IndexFormatError(f"{len(data) - reader.pos} trailing bytes after index payload")
    return index


def _check_boundary(rebuilt: List[int], stored: List[int]) -> None:
    if rebuilt != stored:
        raise IndexFormatError("Stored boundary nodes differ from the rebuilt cluster partition")


def save_index(index: GapIndex, path: Union[str, Path]) -> int:
    """Write the index file; returns its size in bytes."""
    with open(path, "wb") as out:
        dump_index(index, out)
        size = out.tell()
    logger.info(f"Saved {index.kind} index to {path} ({size} bytes)")
    return size


def load_index(path: Union[str, Path]) -> GapIndex:
    data = Path(path).read_bytes()
    index = load_index_bytes(data)
    logger.info(f"Loaded {index.kind} index from {path}: n={index.n}")
    return index
