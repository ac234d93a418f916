"""Bit-level syntax coding: bit reader/writer, order-0 exp-Golomb codes, and
zigzag-scanned coefficient blocks.

Signed levels map 0 -> 0, +k -> 2k-1, -k -> 2k before unsigned exp-Golomb
coding, so level_bits() is the exact emitted length and the RDOQ rate term
is truthful for this bitstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DecodeError, EncodeError

LEVEL_LIMIT = 1 << 15


class BitWriter:
    """Accumulates bits MSB-first; the final byte is zero-padded."""

    def __init__(self):
        self._chunks = bytearray()
        self._acc = 0
        self._nacc = 0
        self._nbits = 0

    def tell(self) -> int:
        return self._nbits

    def write_uint(self, value: int, nbits: int) -> None:
        if value < 0 or value >> nbits:
            raise EncodeError(f"value {value} does not fit in {nbits} bits")
        self._acc = (self._acc << nbits) | value
        self._nacc += nbits
        self._nbits += nbits
        if self._nacc >= 8:
            rem = self._nacc & 7
            self._chunks += (self._acc >> rem).to_bytes((self._nacc - rem) // 8, "big")
            self._acc &= (1 << rem) - 1
            self._nacc = rem

    def write_ue(self, value: int) -> None:
        if value < 0:
            raise EncodeError(f"unsigned exp-Golomb value must be >= 0, got {value}")
        width = (value + 1).bit_length()
        self.write_uint(value + 1, 2 * width - 1)

    def write_se(self, value: int) -> None:
        self.write_ue(2 * value - 1 if value > 0 else -2 * value)

    def getvalue(self) -> bytes:
        out = bytes(self._chunks)
        if self._nacc:
            out += bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return out


class BitReader:
    """Reads bits MSB-first from a byte string."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self._total = 8 * len(data)

    def tell(self) -> int:
        return self._pos

    def read_uint(self, nbits: int) -> int:
        end = self._pos + nbits
        if end > self._total:
            raise DecodeError(
                f"bitstream truncated: need {nbits} bits at bit offset {self._pos}, "
                f"stream has {self._total}"
            )
        first, last = self._pos >> 3, (end + 7) >> 3
        word = int.from_bytes(self._data[first:last], "big")
        word >>= 8 * (last - first) - (end - 8 * first)
        self._pos = end
        return word & ((1 << nbits) - 1)

    def read_ue(self) -> int:
        # One 9-byte window covers any prefix up to 32 zeros plus its payload.
        pos = self._pos
        if pos >= self._total:
            raise DecodeError(f"bitstream truncated at bit offset {pos}")
        byte0 = pos >> 3
        tail = self._data[byte0 : byte0 + 9]
        avail = min(8 * len(tail), self._total - 8 * byte0) - (pos & 7)
        window = int.from_bytes(tail, "big") >> (8 * len(tail) - (pos & 7) - avail)
        window &= (1 << avail) - 1
        if window == 0:
            raise DecodeError(f"invalid exp-Golomb prefix at bit offset {pos}")
        zeros = avail - window.bit_length()
        need = 2 * zeros + 1
        if need > avail:
            if 8 * byte0 + (pos & 7) + avail < self._total:
                raise DecodeError(f"exp-Golomb value too large at bit offset {pos}")
            raise DecodeError(f"bitstream truncated at bit offset {pos}")
        self._pos = pos + need
        return (window >> (avail - need)) - 1

    def read_se(self) -> int:
        v = self.read_ue()
        return (v + 1) >> 1 if v & 1 else -(v >> 1)


def level_bits(level: int) -> int:
    """Exact signed exp-Golomb code length for a level."""
    mapped = 2 * abs(level) - (1 if level > 0 else 0) if level else 0
    return 2 * (mapped + 1).bit_length() - 1


@lru_cache(maxsize=None)
def zigzag_order(n: int) -> tuple[tuple[int, int], ...]:
    """Classic diagonal scan from DC: even diagonals run up-right, odd down-left."""
    order = []
    for d in range(2 * n - 1):
        lo = max(0, d - n + 1)
        hi = min(d, n - 1)
        rows = range(hi, lo - 1, -1) if d % 2 == 0 else range(lo, hi + 1)
        order.extend((i, d - i) for i in rows)
    return tuple(order)


@lru_cache(maxsize=None)
def _zigzag_flat(n: int) -> np.ndarray:
    idx = np.array([i * n + j for i, j in zigzag_order(n)], dtype=np.int64)
    idx.setflags(write=False)
    return idx


@dataclass
class CodedBlock:
    """Zigzag-scanned levels with the index of the last nonzero one (-1 if none)."""

    scan: np.ndarray
    last_significant: int


def scan_block(levels: np.ndarray) -> CodedBlock:
    n = levels.shape[0]
    scan = levels.reshape(-1)[_zigzag_flat(n)].astype(np.int64)
    nz = np.nonzero(scan)[0]
    return CodedBlock(scan, int(nz[-1]) if nz.size else -1)


def _token_bits(n: int) -> int:
    # last-significant token ranges over [0, n*n]; 0 is the all-zero sentinel
    return (n * n).bit_length()


def encode_block(levels: np.ndarray, writer: BitWriter) -> int:
    """Append one coefficient block to the stream; returns the bits written."""
    n = levels.shape[0]
    if levels.shape != (n, n):
        raise EncodeError(f"level block must be square, got {levels.shape}")
    if np.any(np.abs(levels) > LEVEL_LIMIT):
        bad = int(np.max(np.abs(levels)))
        raise EncodeError(f"level magnitude {bad} exceeds limit {LEVEL_LIMIT}")
    start = writer.tell()
    coded = scan_block(levels)
    writer.write_uint(coded.last_significant + 1, _token_bits(n))
    if coded.last_significant >= 0:
        vals = coded.scan[: coded.last_significant + 1]
        # signed map then +1: the value written for each (2*width-1)-bit code
        plus1 = np.where(vals > 0, 2 * vals - 1, -2 * vals) + 1
        nbits = 2 * (np.floor(np.log2(plus1)).astype(np.int64) + 1) - 1
        acc = 0
        for v, nb in zip(plus1.tolist(), nbits.tolist()):
            acc = (acc << nb) | v
        writer.write_uint(acc, int(nbits.sum()))
    return writer.tell() - start


def decode_block(reader: BitReader, n: int) -> np.ndarray:
    """Exact inverse of encode_block."""
    token = reader.read_uint(_token_bits(n))
    if token > n * n:
        raise DecodeError(
            f"last-significant token {token} exceeds {n * n} at bit offset {reader.tell()}"
        )
    levels = np.zeros((n, n), dtype=np.int64)
    order = zigzag_order(n)
    for idx in range(token):
        level = reader.read_se()
        if abs(level) > LEVEL_LIMIT:
            raise DecodeError(
                f"level magnitude {abs(level)} exceeds limit at bit offset {reader.tell()}"
            )
        i, j = order[idx]
        levels[i, j] = level
    return levels


def block_bits(levels: np.ndarray) -> int:
    """Size of encode_block's output without writing it."""
    coded = scan_block(levels)
    bits = _token_bits(levels.shape[0])
    for level in coded.scan[: coded.last_significant + 1]:
        bits += level_bits(int(level))
    return bits
