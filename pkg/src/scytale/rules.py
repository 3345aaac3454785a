"""Critters block rule on 4-bit block states and the tables derived from it."""
from __future__ import annotations

import numpy as np

STATES = range(16)


def popcount4(state: int) -> int:
    return bin(state & 0xF).count("1")


def rotate180(state: int) -> int:
    # TL<->BR and TR<->BL: reverse the four bits
    return ((state & 1) << 3) | ((state & 2) << 1) | ((state & 4) >> 1) | ((state & 8) >> 3)


def rotate90(state: int) -> int:
    """Quarter turn clockwise: TL->TR, TR->BR, BR->BL, BL->TL."""
    tl, tr, bl, br = (state >> 3) & 1, (state >> 2) & 1, (state >> 1) & 1, state & 1
    # new TL is old BL, new TR is old TL, new BL is old BR, new BR is old TR
    return (bl << 3) | (tl << 2) | (br << 1) | tr


def complement4(state: int) -> int:
    return ~state & 0xF


def forward_block(state: int) -> int:
    if not 0 <= state < 16:
        raise ValueError(f"block state must be in [0, 15], got {state}")
    n = popcount4(state)
    if n == 2:
        return state
    if n == 3:
        return complement4(rotate180(state))
    return complement4(state)


def inverse_block(state: int) -> int:
    if not 0 <= state < 16:
        raise ValueError(f"block state must be in [0, 15], got {state}")
    n = popcount4(state)
    if n == 2:
        return state
    if n == 1:
        return complement4(rotate180(state))
    return complement4(state)


def _build_tables() -> tuple[np.ndarray, np.ndarray]:
    forward = np.array([forward_block(s) for s in STATES], dtype=np.uint8)
    closed_inverse = np.array([inverse_block(s) for s in STATES], dtype=np.uint8)
    inverted = np.empty(16, dtype=np.uint8)
    inverted[forward] = np.arange(16, dtype=np.uint8)
    if len(set(forward.tolist())) != 16:
        raise AssertionError("forward Critters rule is not a permutation")
    if not np.array_equal(inverted, closed_inverse):
        raise AssertionError("closed-form inverse disagrees with inverted forward table")
    return forward, closed_inverse


FORWARD_TABLE, INVERSE_TABLE = _build_tables()


def pair_table(block_table: np.ndarray) -> np.ndarray:
    """Map a packed row pair ``top << 8 | bottom`` to its image under one aligned step.

    The four column blocks of a row pair are independent, so a 16-bit lookup
    covers a whole pair of byte rows at once.
    """
    idx = np.arange(1 << 16, dtype=np.uint32)
    top = idx >> 8
    bottom = idx & 0xFF
    new_top = np.zeros_like(idx)
    new_bottom = np.zeros_like(idx)
    for j in range(4):
        shift = 6 - 2 * j
        state = (((top >> shift) & 3) << 2) | ((bottom >> shift) & 3)
        image = block_table[state].astype(np.uint32)
        new_top |= (image >> 2) << shift
        new_bottom |= (image & 3) << shift
    return ((new_top << 8) | new_bottom).astype(np.uint16)


FORWARD_PAIRS = pair_table(FORWARD_TABLE)
INVERSE_PAIRS = pair_table(INVERSE_TABLE)
