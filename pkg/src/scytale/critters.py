"""Critters rule applied to whole lattices under the alternating Margolus schedule.

``forward_step`` / ``inverse_step`` work cell by cell through
:func:`~scytale.lattice.read_block` and are the reference semantics.
``evolve`` / ``devolve`` run the packed kernels from :mod:`scytale.kernels`.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .lattice import OFFSETS, BitLattice, block_coords, from_bytes, to_bytes
from .rules import (
    FORWARD_TABLE,
    INVERSE_TABLE,
    forward_block,
    inverse_block,
)

__all__ = [
    "FORWARD_TABLE",
    "INVERSE_TABLE",
    "devolve",
    "evolve",
    "forward_block",
    "forward_step",
    "inverse_block",
    "inverse_step",
    "offset_for_step",
]


def offset_for_step(t: int) -> tuple[int, int]:
    return OFFSETS[t & 1]


def _apply(lattice: BitLattice, offset: tuple[int, int], table: np.ndarray) -> BitLattice:
    if tuple(offset) not in OFFSETS:
        raise ValueError(f"offset must be (0, 0) or (1, 1), got {offset}")
    src = lattice.cells
    out = np.empty_like(src)
    for coord in block_coords(lattice.rows, tuple(offset)):
        cells = coord.cells(lattice.rows)
        state = 0
        for r, c in cells:
            state = (state << 1) | int(src[r, c])
        image = int(table[state])
        for shift, (r, c) in zip((3, 2, 1, 0), cells):
            out[r, c] = (image >> shift) & 1
    return BitLattice(out)


def forward_step(lattice: BitLattice, offset: tuple[int, int]) -> BitLattice:
    return _apply(lattice, offset, FORWARD_TABLE)


def inverse_step(lattice: BitLattice, offset: tuple[int, int]) -> BitLattice:
    return _apply(lattice, offset, INVERSE_TABLE)


def evolve(lattice: BitLattice, key: int, backend: str | None = None) -> BitLattice:
    if key < 0:
        raise ValueError(f"iteration count must be >= 0, got {key}")
    packed = np.frombuffer(to_bytes(lattice), dtype=np.uint8)[None, :]
    return from_bytes(kernels.evolve_packed(packed, key, backend)[0])


def devolve(lattice: BitLattice, key: int, backend: str | None = None) -> BitLattice:
    if key < 0:
        raise ValueError(f"iteration count must be >= 0, got {key}")
    packed = np.frombuffer(to_bytes(lattice), dtype=np.uint8)[None, :]
    return from_bytes(kernels.devolve_packed(packed, key, backend)[0])
