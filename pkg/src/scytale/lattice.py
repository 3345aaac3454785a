"""Toroidal bit lattice with byte-row packing and Margolus 2x2 block addressing.

A lattice holds one plaintext byte per row, most significant bit in column 0.
Blocks are addressed under one of two partitions: offset ``(0, 0)`` pairs rows
``2i, 2i+1`` and columns ``2j, 2j+1``; offset ``(1, 1)`` shifts both by one and
wraps around the lattice edges.

Block states pack the four cells as ``TL TR BL BR`` into bits ``3 2 1 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidBlockSizeError

COLS = 8
OFFSETS = ((0, 0), (1, 1))


def check_block_size(block_size: int) -> None:
    if block_size < 2 or block_size % 2:
        raise InvalidBlockSizeError(
            f"block size must be even and >= 2, got {block_size}"
        )


@dataclass(frozen=True)
class BlockCoord:
    block_row: int
    block_col: int
    offset: tuple[int, int] = (0, 0)

    def cells(self, rows: int, cols: int = COLS) -> tuple[tuple[int, int], ...]:
        """Lattice coordinates of (TL, TR, BL, BR), wrapped toroidally."""
        if self.offset not in OFFSETS:
            raise IndexError(f"offset must be (0, 0) or (1, 1), got {self.offset}")
        if not (0 <= self.block_row < rows // 2 and 0 <= self.block_col < cols // 2):
            raise IndexError(
                f"block ({self.block_row}, {self.block_col}) outside "
                f"{rows // 2}x{cols // 2} block grid"
            )
        dr, dc = self.offset
        r0 = (2 * self.block_row + dr) % rows
        r1 = (r0 + 1) % rows
        c0 = (2 * self.block_col + dc) % cols
        c1 = (c0 + 1) % cols
        return (r0, c0), (r0, c1), (r1, c0), (r1, c1)


class BitLattice:
    """A ``rows x 8`` grid of 0/1 cells with periodic boundaries.

    Instances behave as values: every operation returns a new lattice.
    """

    __slots__ = ("_cells",)

    def __init__(self, cells: np.ndarray | Sequence[Sequence[int]]):
        arr = np.array(cells, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[1] != COLS:
            raise InvalidBlockSizeError(f"lattice must be rows x {COLS}, got {arr.shape}")
        check_block_size(arr.shape[0])
        if arr.size and arr.max() > 1:
            raise ValueError("lattice cells must be 0 or 1")
        arr.flags.writeable = False
        self._cells = arr

    @classmethod
    def zeros(cls, rows: int) -> "BitLattice":
        return cls(np.zeros((rows, COLS), dtype=np.uint8))

    @classmethod
    def ones(cls, rows: int) -> "BitLattice":
        return cls(np.ones((rows, COLS), dtype=np.uint8))

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> int:
        return self._cells.shape[0]

    @property
    def cols(self) -> int:
        return COLS

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitLattice):
            return NotImplemented
        return np.array_equal(self._cells, other._cells)

    def __hash__(self) -> int:
        return hash((self.rows, self._cells.tobytes()))

    def __repr__(self) -> str:
        body = "\n".join("".join(map(str, row)) for row in self._cells)
        return f"BitLattice({self.rows}x{COLS}\n{body})"


def from_bytes(chunk: bytes | Sequence[int] | np.ndarray) -> BitLattice:
    """Unpack ``B`` bytes into a ``B x 8`` lattice, MSB first."""
    data = np.asarray(bytearray(chunk) if isinstance(chunk, (bytes, bytearray)) else chunk)
    if data.ndim != 1:
        raise InvalidBlockSizeError("chunk must be one-dimensional")
    check_block_size(len(data))
    if data.size and (data.min() < 0 or data.max() > 255):
        raise ValueError("chunk values must lie in [0, 255]")
    return BitLattice(np.unpackbits(data.astype(np.uint8)[:, None], axis=1))


def to_bytes(lattice: BitLattice) -> bytes:
    return np.packbits(lattice.cells, axis=1)[:, 0].tobytes()


def live_count(lattice: BitLattice) -> int:
    return int(lattice.cells.sum(dtype=np.int64))


def block_coords(rows: int, offset: tuple[int, int]) -> Iterator[BlockCoord]:
    for i in range(rows // 2):
        for j in range(COLS // 2):
            yield BlockCoord(i, j, offset)


def read_block(lattice: BitLattice, coord: BlockCoord) -> int:
    cells = lattice.cells
    state = 0
    for r, c in coord.cells(lattice.rows):
        state = (state << 1) | int(cells[r, c])
    return state


def write_block(lattice: BitLattice, coord: BlockCoord, state: int) -> BitLattice:
    if not 0 <= state < 16:
        raise ValueError(f"block state must be in [0, 15], got {state}")
    out = lattice.cells.copy()
    for shift, (r, c) in zip((3, 2, 1, 0), coord.cells(lattice.rows)):
        out[r, c] = (state >> shift) & 1
    return BitLattice(out)
