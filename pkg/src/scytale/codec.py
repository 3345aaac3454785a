"""Plaintext chunking, padding, and chunk <-> lattice conversion."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lattice as _lattice
from .errors import ConfigurationError, MalformedCiphertextError
from .lattice import BitLattice

DEFAULT_BLOCK_SIZE = 8
DEFAULT_PAD_BYTE = 0x00


@dataclass(frozen=True)
class CipherParams:
    """Block size ``B`` (public), iteration count ``key`` (private), pad byte."""

    key: int
    block_size: int = DEFAULT_BLOCK_SIZE
    pad_byte: int = DEFAULT_PAD_BYTE

    def __post_init__(self):
        if isinstance(self.block_size, bool) or not isinstance(self.block_size, int):
            raise ConfigurationError("block_size must be an int")
        if not 2 <= self.block_size <= 255 or self.block_size % 2:
            raise ConfigurationError(
                f"block_size must be even and in [2, 255], got {self.block_size}"
            )
        if isinstance(self.key, bool) or not isinstance(self.key, int) or self.key < 0:
            raise ConfigurationError(f"key must be a non-negative int, got {self.key!r}")
        if not isinstance(self.pad_byte, int) or not 0 <= self.pad_byte <= 255:
            raise ConfigurationError(f"pad_byte must be in [0, 255], got {self.pad_byte!r}")


def pad_and_chunk_array(plaintext: bytes, params: CipherParams) -> np.ndarray:
    """Padded plaintext as a ``(n_chunks, B)`` uint8 array."""
    data = bytes(plaintext)
    b = params.block_size
    n = -(-len(data) // b)
    buf = np.full(n * b, params.pad_byte, dtype=np.uint8)
    buf[: len(data)] = np.frombuffer(data, dtype=np.uint8)
    return buf.reshape(n, b)


def pad_and_chunk(plaintext: bytes, params: CipherParams) -> list[bytes]:
    return [row.tobytes() for row in pad_and_chunk_array(plaintext, params)]


def strip_padding(data: bytes, pad_byte: int) -> bytes:
    return data.rstrip(bytes([pad_byte]))


def unchunk_and_strip(chunks, params: CipherParams) -> bytes:
    """Concatenate chunks and drop the trailing pad run of the last one.

    Plaintexts that themselves end in ``pad_byte`` lose those bytes; the
    fixed-character padding scheme cannot tell them apart.
    """
    if isinstance(chunks, np.ndarray):
        if chunks.size == 0:
            return b""
        if chunks.ndim != 2 or chunks.shape[1] != params.block_size:
            raise MalformedCiphertextError(
                f"expected chunks of {params.block_size} bytes, got shape {chunks.shape}"
            )
        flat = np.ascontiguousarray(chunks, dtype=np.uint8).tobytes()
    else:
        chunks = [bytes(c) for c in chunks]
        if not chunks:
            return b""
        bad = [len(c) for c in chunks if len(c) != params.block_size]
        if bad:
            raise MalformedCiphertextError(
                f"expected chunks of {params.block_size} bytes, found lengths {sorted(set(bad))}"
            )
        flat = b"".join(chunks)
    b = params.block_size
    head, last = flat[:-b], flat[-b:]
    return head + strip_padding(last, params.pad_byte)


def chunk_to_lattice(chunk) -> BitLattice:
    return _lattice.from_bytes(chunk)


def lattice_to_chunk(lat: BitLattice) -> bytes:
    return _lattice.to_bytes(lat)
