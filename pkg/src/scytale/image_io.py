"""Grayscale rendering of ciphertext chunks and the SCYI image container.

Each chunk becomes a ``1 x B`` row image (0 black, 255 white) that is
replicated into a ``B x B`` square. Replication keeps the mapping lossless.

SCYI layout, little-endian::

    "SCYI" | version 0x01 | block_size (1) | reserved 0x0000 (2) | chunk_count (4)
    chunk_count * B * B raster bytes, row-major
"""
from __future__ import annotations

import struct
from pathlib import Path
from typing import BinaryIO, Iterable, Sequence

import numpy as np

from .cipher import Ciphertext
from .errors import (
    BadMagicError,
    CorruptImageError,
    MalformedContainerError,
    TruncatedContainerError,
    UnsupportedVersionError,
)

MAGIC = b"SCYI"
VERSION = 1
HEADER = struct.Struct("<4sBBHI")


class PixelSquare:
    __slots__ = ("pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise CorruptImageError(f"image must be a non-empty square, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if arr.min() < 0 or arr.max() > 255:
                raise CorruptImageError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        self.pixels = np.ascontiguousarray(arr)

    @property
    def side(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PixelSquare):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self) -> str:
        return f"PixelSquare(side={self.side}, row={self.pixels[0].tolist()})"


def chunk_to_square(chunk) -> PixelSquare:
    row = np.frombuffer(bytes(chunk), dtype=np.uint8) if isinstance(chunk, (bytes, bytearray)) else np.asarray(chunk, dtype=np.uint8)
    return PixelSquare(np.tile(row, (row.shape[0], 1)))


def square_to_chunk(square: PixelSquare) -> bytes:
    px = square.pixels
    if not (px == px[0]).all():
        raise CorruptImageError("square rows differ; not a replicated row image")
    return px[0].tobytes()


def ciphertext_to_squares(ciphertext: Ciphertext) -> list[PixelSquare]:
    return [chunk_to_square(row) for row in ciphertext.chunks]


def squares_to_ciphertext(squares: Sequence[PixelSquare], block_size: int | None = None) -> Ciphertext:
    if not squares:
        if block_size is None:
            raise CorruptImageError("block size unknown for an empty image list")
        return Ciphertext(block_size)
    sides = {s.side for s in squares}
    if len(sides) != 1:
        raise CorruptImageError(f"images have mixed sides {sorted(sides)}")
    side = sides.pop()
    if block_size is not None and side != block_size:
        raise CorruptImageError(f"image side {side} does not match block size {block_size}")
    rows = [np.frombuffer(square_to_chunk(s), dtype=np.uint8) for s in squares]
    return Ciphertext(side, np.stack(rows))


def dumps_image_container(squares: Sequence[PixelSquare], block_size: int | None = None) -> bytes:
    sides = {s.side for s in squares}
    if len(sides) > 1:
        raise CorruptImageError(f"images have mixed sides {sorted(sides)}")
    side = sides.pop() if sides else block_size
    if side is None:
        raise CorruptImageError("block size unknown for an empty image list")
    if block_size is not None and side != block_size:
        raise CorruptImageError(f"image side {side} does not match block size {block_size}")
    header = HEADER.pack(MAGIC, VERSION, side, 0, len(squares))
    return header + b"".join(s.pixels.tobytes() for s in squares)


def loads_image_container(data: bytes) -> tuple[int, list[PixelSquare]]:
    """Return ``(block_size, squares)``."""
    if len(data) < HEADER.size:
        raise TruncatedContainerError(f"container shorter than {HEADER.size}-byte header")
    magic, version, side, _reserved, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, got {magic!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported container version {version}")
    if side == 0:
        raise MalformedContainerError("block size 0 in header")
    area = side * side
    need = HEADER.size + count * area
    if len(data) < need:
        raise TruncatedContainerError(f"payload truncated: need {need} bytes, have {len(data)}")
    if len(data) > need:
        raise MalformedContainerError(f"{len(data) - need} trailing bytes after payload")
    raster = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size).reshape(count, side, side)
    return side, [PixelSquare(raster[i].copy()) for i in range(count)]


def write_image_container(squares: Sequence[PixelSquare], sink: BinaryIO, block_size: int | None = None) -> None:
    sink.write(dumps_image_container(squares, block_size))


def read_image_container(source: BinaryIO) -> list[PixelSquare]:
    return loads_image_container(source.read())[1]


def pgm_bytes(square: PixelSquare) -> bytes:
    b = square.side
    return f"P5\n{b} {b}\n255\n".encode("ascii") + square.pixels.tobytes()


def export_pgm(square: PixelSquare, sink: BinaryIO) -> None:
    sink.write(pgm_bytes(square))


def read_pgm(data: bytes) -> PixelSquare:
    """Parse a binary P5 file as written by :func:`export_pgm`."""
    parts = data.split(maxsplit=4)
    if len(parts) < 4 or parts[0] != b"P5":
        raise CorruptImageError("not a binary PGM (P5) file")
    try:
        width, height, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    except ValueError as exc:
        raise CorruptImageError("bad PGM header") from exc
    if maxval != 255 or width != height:
        raise CorruptImageError("expected a square 8-bit PGM")
    header_len = len(f"P5\n{width} {height}\n255\n")
    raster = data[header_len:]
    if len(raster) != width * height:
        raise CorruptImageError(f"PGM raster has {len(raster)} bytes, expected {width * height}")
    return PixelSquare(np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy())


def export_pgm_dir(squares: Iterable[PixelSquare], directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, square in enumerate(squares):
        path = directory / f"chunk_{i:06d}.pgm"
        with open(path, "wb") as fh:
            export_pgm(square, fh)
        paths.append(path)
    return paths
