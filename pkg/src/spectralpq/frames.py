"""Raw RGB 4:4:4 sequence I/O and block partitioning.

Sequences are header-less planar files: frames concatenated, each frame
stored as its G plane, then B, then R, row-major.  8-bit samples take one
byte; 10-bit samples take two bytes little-endian with the low 10 bits
significant.

A frame is partitioned into a fixed grid of coding units (CUs).  Each CU is
one co-located 2Nx2N block in all three channel planes; the three blocks
share geometry and one motion vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import ConfigurationError, IngestionError, StructuralError

PLANE_ORDER = ("G", "B", "R")
DEFAULT_CTU_SIZE = 64


@dataclass
class Frame:
    """One RGB 4:4:4 picture: equal-sized G, B, R planes."""

    width: int
    height: int
    bit_depth: int
    planes: tuple[np.ndarray, np.ndarray, np.ndarray]

    def __post_init__(self):
        if self.bit_depth not in (8, 10):
            raise ConfigurationError(f"bit depth must be 8 or 10, got {self.bit_depth}")
        for name, plane in zip(PLANE_ORDER, self.planes):
            if plane.shape != (self.height, self.width):
                raise StructuralError(
                    f"plane {name} has shape {plane.shape}, "
                    f"expected {(self.height, self.width)}"
                )

    @property
    def max_sample(self) -> int:
        return (1 << self.bit_depth) - 1

    def plane(self, channel: str) -> np.ndarray:
        return self.planes[PLANE_ORDER.index(channel)]


@dataclass
class CodingUnit:
    """Geometry of one CU plus the per-CB/per-PU data attached during encode."""

    x: int
    y: int
    size: int
    activity: dict = field(default_factory=dict)
    mv: Optional[tuple[int, int]] = None


@dataclass
class BlockTree:
    """Fixed-depth CU grid over a padded frame."""

    ctu_size: int
    cu_size: int
    width: int            # padded
    height: int           # padded
    orig_width: int
    orig_height: int
    cus: list[CodingUnit]

    @property
    def grid_shape(self) -> tuple[int, int]:
        return self.height // self.cu_size, self.width // self.cu_size

    def __iter__(self) -> Iterator[CodingUnit]:
        return iter(self.cus)


def _sample_dtype(bit_depth: int) -> np.dtype:
    return np.dtype("u1") if bit_depth == 8 else np.dtype("<u2")


def frame_size_bytes(width: int, height: int, bit_depth: int) -> int:
    return 3 * width * height * _sample_dtype(bit_depth).itemsize


def load_sequence(
    path,
    width: int,
    height: int,
    bit_depth: int = 8,
    frame_count: Optional[int] = None,
) -> list[Frame]:
    """Read a raw planar sequence file.

    frame_count=None reads every complete frame in the file.  Short files and
    out-of-range 10-bit samples raise IngestionError naming the frame, plane,
    and byte offset of the first offending sample.
    """
    data = np.fromfile(path, dtype=np.uint8)
    fsize = frame_size_bytes(width, height, bit_depth)
    if frame_count is None:
        frame_count = data.size // fsize
    if data.size < frame_count * fsize:
        raise IngestionError(
            f"{path}: need {frame_count * fsize} bytes for {frame_count} "
            f"frame(s) of {width}x{height}@{bit_depth}bit, file has {data.size}"
        )

    dtype = _sample_dtype(bit_depth)
    plane_bytes = width * height * dtype.itemsize
    frames = []
    for f in range(frame_count):
        planes = []
        for p, name in enumerate(PLANE_ORDER):
            off = f * fsize + p * plane_bytes
            plane = data[off : off + plane_bytes].view(dtype).reshape(height, width)
            if bit_depth == 10:
                bad = np.argwhere(plane > 1023)
                if bad.size:
                    r, c = bad[0]
                    raise IngestionError(
                        f"{path}: 10-bit sample {int(plane[r, c])} > 1023 in frame {f}"
                        f" plane {name} at byte offset {off + 2 * (r * width + c)}"
                    )
            planes.append(plane.copy())
        frames.append(Frame(width, height, bit_depth, tuple(planes)))
    return frames


def save_sequence(path, frames: list[Frame]) -> None:
    """Write frames back to the raw planar format (bit-exact with load)."""
    with open(path, "wb") as fh:
        for frame in frames:
            for plane in frame.planes:
                fh.write(np.ascontiguousarray(plane).tobytes())


def pad_plane(plane: np.ndarray, multiple: int) -> np.ndarray:
    """Edge-replicate a plane up to the next multiple of `multiple`."""
    h, w = plane.shape
    ph = (-h) % multiple
    pw = (-w) % multiple
    if ph == 0 and pw == 0:
        return plane
    return np.pad(plane, ((0, ph), (0, pw)), mode="edge")


def pad_frame(frame: Frame, multiple: int = DEFAULT_CTU_SIZE) -> Frame:
    planes = tuple(pad_plane(p, multiple) for p in frame.planes)
    h, w = planes[0].shape
    return Frame(w, h, frame.bit_depth, planes)


def partition(
    frame: Frame,
    ctu_size: int = DEFAULT_CTU_SIZE,
    cu_size: int = 32,
) -> BlockTree:
    """Tile the (padded) frame with a fixed grid of cu_size CUs."""
    for name, val in (("ctu_size", ctu_size), ("cu_size", cu_size)):
        if val < 1 or val & (val - 1):
            raise ConfigurationError(f"{name} must be a power of two, got {val}")
    if cu_size > ctu_size:
        raise ConfigurationError(f"cu_size {cu_size} exceeds ctu_size {ctu_size}")
    if cu_size < 8:
        raise ConfigurationError(
            f"cu_size must be >= 8 so each channel block splits into four "
            f"quadrants of at least 4x4, got {cu_size}"
        )

    pw = frame.width + (-frame.width) % ctu_size
    ph = frame.height + (-frame.height) % ctu_size
    cus = [
        CodingUnit(x, y, cu_size)
        for y in range(0, ph, cu_size)
        for x in range(0, pw, cu_size)
    ]
    return BlockTree(ctu_size, cu_size, pw, ph, frame.width, frame.height, cus)


def subblocks(cb: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four NxN quadrants of a 2Nx2N channel block, raster order."""
    h, w = cb.shape
    if h != w or h % 2 or h < 8:
        raise StructuralError(f"channel block must be square, even, >= 8; got {cb.shape}")
    n = h // 2
    return cb[:n, :n], cb[:n, n:], cb[n:, :n], cb[n:, n:]
