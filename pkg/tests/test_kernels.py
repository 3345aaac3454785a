import os
import subprocess
import sys

import numpy as np
import pytest

from scytale import kernels
from scytale.critters import forward_step, offset_for_step
from scytale.lattice import from_bytes, to_bytes


@pytest.mark.parametrize("block_size", [2, 4, 8, 16, 32])
def test_backends_agree(block_size, rng):
    chunks = rng.integers(0, 256, (64, block_size), dtype=np.uint8)
    for key in (0, 1, 2, 3, 7, 16, 33):
        outs = [kernels.evolve_packed(chunks, key, b) for b in kernels.BACKENDS]
        for other in outs[1:]:
            assert np.array_equal(outs[0], other)


def test_kernel_matches_cell_reference(backend, rng):
    chunks = rng.integers(0, 256, (8, 8), dtype=np.uint8)
    out = kernels.evolve_packed(chunks, 5, backend)
    for row, got in zip(chunks, out):
        lat = from_bytes(row)
        for t in range(5):
            lat = forward_step(lat, offset_for_step(t))
        assert to_bytes(lat) == got.tobytes()


def test_round_trip(backend, rng):
    chunks = rng.integers(0, 256, (100, 8), dtype=np.uint8)
    for key in (1, 4, 9, 64):
        assert np.array_equal(kernels.devolve_packed(kernels.evolve_packed(chunks, key, backend), key, backend), chunks)


def test_input_not_mutated(backend):
    chunks = np.arange(16, dtype=np.uint8).reshape(2, 8)
    before = chunks.copy()
    kernels.evolve_packed(chunks, 3, backend)
    assert np.array_equal(chunks, before)


def test_empty_batch(backend):
    out = kernels.evolve_packed(np.zeros((0, 8), dtype=np.uint8), 4, backend)
    assert out.shape == (0, 8)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.evolve_packed(np.zeros((1, 2), dtype=np.uint8), 1, "cuda")


def test_env_flag_selects_numpy():
    env = dict(os.environ, SCYTALE_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from scytale import kernels; print(kernels.DEFAULT_BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
