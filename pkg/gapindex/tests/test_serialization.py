"""Tests for index files."""
import io
import struct

import numpy as np
import pytest

from errors import IndexFormatError
from indexes import build_index
from serialization import HEADER, MAGIC, VERSION, dump_index, load_index, load_index_bytes, save_index
from workload import random_text, sample_queries


def dumped(kind: str, text: bytes = b"NANANANABATMAN", tau=None) -> bytes:
    out = io.BytesIO()
    dump_index(build_index(kind, text, tau=tau), out)
    return out.getvalue()


class TestRoundTrip:
    """Test save and load."""

    @pytest.mark.parametrize("kind", ["count", "report", "zero-beta", "baseline", "quadratic"])
    def test_answers_survive(self, kind, tmp_path):
        """A loaded index answers like the one that was saved."""
        rng = np.random.default_rng(81)
        text = random_text(300, 3, rng)
        index = build_index(kind, text)
        path = tmp_path / f"{kind}.idx"
        size = save_index(index, path)
        assert size == path.stat().st_size
        loaded = load_index(path)
        assert loaded.kind == kind
        assert loaded.text_index.text == text
        for line in sample_queries(text, 40, rng):
            assert loaded.answer(line) == index.answer(line)

    def test_count_tables_stored(self, tmp_path):
        """Tables and requested tau come back unchanged."""
        index = build_index("count", b"NANANANABATMAN", tau=3)
        save_index(index, tmp_path / "c.idx")
        loaded = load_index(tmp_path / "c.idx")
        assert loaded.requested_tau == 3
        assert np.array_equal(loaded.counter.tables, index.counter.tables)

    def test_header_layout(self):
        """Magic, version and kind code open the file."""
        data = dumped("zero-beta")
        assert HEADER.unpack(data[:HEADER.size]) == (MAGIC, VERSION, 2)


class TestCorruption:
    """Test rejection of malformed files."""

    def test_bad_magic(self):
        """Files from elsewhere are rejected."""
        data = dumped("count")
        with pytest.raises(IndexFormatError, match="magic"):
            load_index_bytes(b"NOTIDX" + data[6:])

    def test_version_mismatch(self):
        """Other versions are rejected."""
        data = dumped("count")
        bumped = HEADER.pack(MAGIC, VERSION + 1, 0) + data[HEADER.size:]
        with pytest.raises(IndexFormatError, match="version"):
            load_index_bytes(bumped)

    def test_unknown_kind(self):
        """Kind codes outside the table are rejected."""
        data = dumped("count")
        with pytest.raises(IndexFormatError, match="kind"):
            load_index_bytes(HEADER.pack(MAGIC, VERSION, 9) + data[HEADER.size:])

    @pytest.mark.parametrize("kind", ["count", "zero-beta", "baseline"])
    def test_truncated(self, kind):
        """Every proper prefix fails to load."""
        data = dumped(kind, b"abab")
        for cut in (0, 3, HEADER.size, HEADER.size + 5, len(data) - 1):
            with pytest.raises(IndexFormatError):
                load_index_bytes(data[:cut])

    def test_trailing_bytes(self):
        """Data after the payload is rejected."""
        with pytest.raises(IndexFormatError, match="trailing"):
            load_index_bytes(dumped("report") + b"\x00")

    def test_table_size_mismatch(self):
        """A table section of the wrong size is rejected."""
        data = dumped("zero-beta", b"abab")
        head, table_len = _last_section(data)
        broken = head + struct.pack("<Q", table_len - 8) + data[len(head) + 8: len(data) - 8]
        with pytest.raises(IndexFormatError):
            load_index_bytes(broken)


    @pytest.mark.parametrize("kind", ["baseline", "report", "count", "quadratic"])
    def test_suffix_array_out_of_range(self, kind):
        """An entry past the text end is a format error, not a crash."""
        data = bytearray(dumped(kind))
        offset = _sa_offset(bytes(data))
        struct.pack_into("<q", data, offset + 3 * 8, 99)
        with pytest.raises(IndexFormatError, match="suffix array"):
            load_index_bytes(bytes(data))

    def test_suffix_array_reordered(self):
        """A permutation in the wrong order is rejected."""
        data = bytearray(dumped("count"))
        offset = _sa_offset(bytes(data))
        sa = list(struct.unpack_from("<15q", data, offset))
        sa[3], sa[4] = sa[4], sa[3]
        struct.pack_into("<15q", data, offset, *sa)
        with pytest.raises(IndexFormatError, match="suffix array"):
            load_index_bytes(bytes(data))

    def test_sentinel_in_stored_text(self):
        """A stored text holding the sentinel byte is rejected."""
        data = bytearray(dumped("baseline", b"abab"))
        data[HEADER.size + 8 + 1] = 0
        with pytest.raises(IndexFormatError):
            load_index_bytes(bytes(data))


def _sa_offset(data: bytes) -> int:
    """Offset of the first suffix array entry."""
    (text_len,) = struct.unpack_from("<Q", data, HEADER.size)
    return HEADER.size + 8 + text_len + 8 + 8


def _last_section(data: bytes):
    """Bytes before the min-distance section and that section's length word."""
    pos = HEADER.size
    (text_len,) = struct.unpack_from("<Q", data, pos)
    pos += 8 + text_len + 8
    # suffix array, boundary ids, then the table
    for _ in range(2):
        (length,) = struct.unpack_from("<Q", data, pos)
        pos += 8 + length
    (length,) = struct.unpack_from("<Q", data, pos)
    return data[:pos], length
