"""Encryption and decryption pipelines plus the SCYT ciphertext container.

This is a research cipher. It offers no authentication and no security
guarantee and must not protect real data.

SCYT layout, little-endian::

    magic  "SCYT"       4 bytes
    version 0x01        1 byte
    block_size          1 byte
    reserved 0x0000     2 bytes
    chunk_count         4 bytes
    payload             chunk_count * block_size bytes

The key is never written.
"""
from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from typing import BinaryIO

import numpy as np

from . import kernels
from .codec import CipherParams, pad_and_chunk_array, unchunk_and_strip
from .errors import (
    BadMagicError,
    MalformedCiphertextError,
    TruncatedContainerError,
    UnsupportedVersionError,
)
from .lattice import check_block_size
from .rules import FORWARD_PAIRS

MAGIC = b"SCYT"
VERSION = 1
HEADER = struct.Struct("<4sBBHI")


class Ciphertext:
    """Ordered chunks of ``block_size`` bytes, held as an ``(n, B)`` uint8 array."""

    __slots__ = ("block_size", "chunks")

    def __init__(self, block_size: int, chunks=None):
        check_block_size(block_size)
        if chunks is None:
            arr = np.zeros((0, block_size), dtype=np.uint8)
        else:
            arr = np.asarray(chunks)
            if arr.size == 0:
                arr = np.zeros((0, block_size), dtype=np.uint8)
            if arr.ndim != 2 or arr.shape[1] != block_size:
                raise MalformedCiphertextError(
                    f"chunks must have shape (n, {block_size}), got {arr.shape}"
                )
            if arr.dtype != np.uint8:
                if arr.min() < 0 or arr.max() > 255:
                    raise MalformedCiphertextError("chunk values must lie in [0, 255]")
                arr = arr.astype(np.uint8)
        self.block_size = block_size
        self.chunks = np.ascontiguousarray(arr)

    def __len__(self) -> int:
        return self.chunks.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ciphertext):
            return NotImplemented
        return self.block_size == other.block_size and np.array_equal(self.chunks, other.chunks)

    def __repr__(self) -> str:
        return f"Ciphertext(block_size={self.block_size}, chunks={self.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.chunks.tolist()


def _map_chunks(fn, chunks: np.ndarray, workers: int | None) -> np.ndarray:
    if not workers or workers <= 1 or len(chunks) < 2:
        return fn(chunks)
    parts = np.array_split(chunks, min(workers, len(chunks)))
    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        return np.concatenate(list(pool.map(fn, parts)), axis=0)


def default_workers() -> int:
    return os.cpu_count() or 1


def encrypt(
    plaintext: bytes,
    params: CipherParams,
    *,
    workers: int | None = None,
    backend: str | None = None,
) -> Ciphertext:
    """Pad, split into ``B``-byte lattices, and evolve each ``params.key`` steps.

    ``workers > 1`` spreads chunks over threads; the output is identical to
    the sequential result.
    """
    chunks = pad_and_chunk_array(plaintext, params)
    out = _map_chunks(lambda c: kernels.evolve_packed(c, params.key, backend), chunks, workers)
    return Ciphertext(params.block_size, out)


def decrypt(
    ciphertext: Ciphertext,
    params: CipherParams,
    *,
    workers: int | None = None,
    backend: str | None = None,
) -> bytes:
    if ciphertext.block_size != params.block_size:
        raise MalformedCiphertextError(
            f"ciphertext block size {ciphertext.block_size} does not match "
            f"parameter block size {params.block_size}"
        )
    out = _map_chunks(
        lambda c: kernels.devolve_packed(c, params.key, backend), ciphertext.chunks, workers
    )
    return unchunk_and_strip(out, params)


def _step_trace(plaintext: bytes, params: CipherParams) -> list[np.ndarray]:
    """Packed chunks before step 0 and after every forward step (testing hook)."""
    state = pad_and_chunk_array(plaintext, params)
    trace = [state]
    for t in range(params.key):
        state = kernels.step_numpy(state, FORWARD_PAIRS, bool(t & 1))
        trace.append(state)
    return trace


def dumps_ciphertext(ciphertext: Ciphertext) -> bytes:
    header = HEADER.pack(MAGIC, VERSION, ciphertext.block_size, 0, len(ciphertext))
    return header + ciphertext.chunks.tobytes()


def loads_ciphertext(data: bytes) -> Ciphertext:
    if len(data) < HEADER.size:
        raise TruncatedContainerError(f"container shorter than {HEADER.size}-byte header")
    magic, version, block_size, _reserved, count = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, got {magic!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported container version {version}")
    if block_size < 2 or block_size % 2:
        raise MalformedCiphertextError(f"invalid block size {block_size} in header")
    need = HEADER.size + count * block_size
    if len(data) < need:
        raise TruncatedContainerError(f"payload truncated: need {need} bytes, have {len(data)}")
    if len(data) > need:
        raise MalformedCiphertextError(f"{len(data) - need} trailing bytes after payload")
    payload = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
    return Ciphertext(block_size, payload.reshape(count, block_size).copy())


def write_ciphertext(ciphertext: Ciphertext, sink: BinaryIO) -> None:
    sink.write(dumps_ciphertext(ciphertext))


def read_ciphertext(source: BinaryIO) -> Ciphertext:
    return loads_ciphertext(source.read())
