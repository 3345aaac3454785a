"""Hot loops: K-step Margolus evolution of many packed lattices at once.

Lattices travel here as a ``(n_chunks, B)`` uint8 array, one byte per row.
Two interchangeable backends exist:

* ``numba``: a compiled per-chunk loop over row pairs.
* ``numpy``: vectorized over all chunks, one array pass per time step.

The numba backend is used when numba imports cleanly and the environment
variable ``SCYTALE_DISABLE_NUMBA`` is unset (or ``0``). Both must return
bit-identical results.
"""
from __future__ import annotations

import os

import numpy as np

from .rules import FORWARD_PAIRS, INVERSE_PAIRS

_DISABLE = os.environ.get("SCYTALE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

BACKENDS = ("numba", "numpy") if HAVE_NUMBA else ("numpy",)
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not _DISABLE else "numpy"


def _rotl(x: np.ndarray) -> np.ndarray:
    return (x << 1) | (x >> 7)


def _rotr(x: np.ndarray) -> np.ndarray:
    return (x >> 1) | (x << 7)


def step_numpy(chunks: np.ndarray, pairs: np.ndarray, odd: bool) -> np.ndarray:
    """One Margolus step on every chunk. ``odd`` selects the (1, 1) partition.

    The odd partition is reduced to the aligned one by shifting rows up by one
    and rotating each byte left by one bit, then undoing both afterwards.
    """
    x = chunks
    if odd:
        x = _rotl(np.roll(x, -1, axis=1))
    idx = (x[:, 0::2].astype(np.uint16) << 8) | x[:, 1::2]
    image = pairs[idx]
    y = np.empty_like(chunks)
    y[:, 0::2] = image >> 8
    y[:, 1::2] = image & 0xFF
    if odd:
        y = np.roll(_rotr(y), 1, axis=1)
    return y


def _run_numpy(chunks: np.ndarray, key: int, pairs: np.ndarray, reverse: bool) -> np.ndarray:
    out = chunks.copy()
    for s in range(key):
        t = key - 1 - s if reverse else s
        out = step_numpy(out, pairs, bool(t & 1))
    return out


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _run_numba(chunks, key, pairs, reverse):  # pragma: no cover - compiled
        out = chunks.copy()
        n, rows = out.shape
        half = rows // 2
        for c in range(n):
            for s in range(key):
                t = key - 1 - s if reverse else s
                odd = t & 1
                for i in range(half):
                    r0 = (2 * i + odd) % rows
                    r1 = (r0 + 1) % rows
                    top = np.int64(out[c, r0])
                    bot = np.int64(out[c, r1])
                    if odd:
                        top = ((top << 1) | (top >> 7)) & 0xFF
                        bot = ((bot << 1) | (bot >> 7)) & 0xFF
                    v = np.int64(pairs[(top << 8) | bot])
                    top = v >> 8
                    bot = v & 0xFF
                    if odd:
                        top = ((top >> 1) | (top << 7)) & 0xFF
                        bot = ((bot >> 1) | (bot << 7)) & 0xFF
                    out[c, r0] = top
                    out[c, r1] = bot
        return out

else:  # pragma: no cover
    _run_numba = None


def _run(chunks: np.ndarray, key: int, pairs: np.ndarray, reverse: bool, backend: str | None) -> np.ndarray:
    backend = backend or DEFAULT_BACKEND
    if key < 0:
        raise ValueError(f"iteration count must be >= 0, got {key}")
    chunks = np.ascontiguousarray(chunks, dtype=np.uint8)
    if chunks.ndim != 2:
        raise ValueError("expected a (n_chunks, block_size) array")
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _run_numba(chunks, key, pairs, reverse)
    if backend == "numpy":
        return _run_numpy(chunks, key, pairs, reverse)
    raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")


def evolve_packed(chunks: np.ndarray, key: int, backend: str | None = None) -> np.ndarray:
    """Forward steps at t = 0..key-1; offsets alternate (0,0), (1,1), ..."""
    return _run(chunks, key, FORWARD_PAIRS, False, backend)


def devolve_packed(chunks: np.ndarray, key: int, backend: str | None = None) -> np.ndarray:
    """Inverse steps at t = key-1..0, undoing :func:`evolve_packed`."""
    return _run(chunks, key, INVERSE_PAIRS, True, backend)


def warmup() -> None:
    """Trigger JIT compilation so timings exclude it."""
    if HAVE_NUMBA:
        probe = np.zeros((1, 2), dtype=np.uint8)
        _run_numba(probe, 2, FORWARD_PAIRS, False)
