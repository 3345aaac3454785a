"""Encrypt+decrypt runtime sweeps over plaintext length and iteration count."""
from __future__ import annotations

import csv
import random
import string
import time
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from . import kernels
from .cipher import decrypt, encrypt
from .codec import CipherParams
from .errors import IntegrityError

DEFAULT_LENGTHS = (10, 100, 1_000, 10_000, 100_000)
DEFAULT_LENGTH_KEYS = (8, 32, 64)
DEFAULT_SWEEP_LENGTH = 100_000
DEFAULT_ITERATIONS = (1, 2, 4, 8, 16, 32, 64)
CSV_HEADER = ("string_length", "iterations", "runtime_seconds", "repetitions")

_ALPHABET = (string.ascii_letters + string.digits).encode()


@dataclass(frozen=True)
class BenchRecord:
    string_length: int
    iterations: int
    runtime: float
    repetitions: int
    mode: str = "sequential"
    backend: str = kernels.DEFAULT_BACKEND


def make_plaintext(length: int, rng_seed: int | None = 0) -> bytes:
    """Seeded alphanumeric text; never ends in the default pad byte."""
    rng = random.Random(rng_seed)
    return bytes(rng.choices(_ALPHABET, k=length))


def time_cycle(
    plaintext: bytes,
    params: CipherParams,
    repetitions: int = 1,
    *,
    workers: int | None = None,
    backend: str | None = None,
) -> float:
    """Mean wall time of encrypt-then-decrypt; every run must round-trip."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    total = 0.0
    for _ in range(repetitions):
        start = time.perf_counter()
        ct = encrypt(plaintext, params, workers=workers, backend=backend)
        recovered = decrypt(ct, params, workers=workers, backend=backend)
        total += time.perf_counter() - start
        if recovered != plaintext:
            raise IntegrityError(
                f"round trip failed for length={len(plaintext)} key={params.key}"
            )
    return total / repetitions


def _mode(workers: int | None) -> str:
    return "parallel" if workers and workers > 1 else "sequential"


def length_sweep(
    lengths: Sequence[int] = DEFAULT_LENGTHS,
    iteration_set: Sequence[int] = DEFAULT_LENGTH_KEYS,
    block_size: int = 8,
    repetitions: int = 3,
    rng_seed: int | None = 0,
    *,
    workers: int | None = None,
    backend: str | None = None,
) -> list[BenchRecord]:
    lengths = list(lengths)
    if not lengths:
        raise ValueError("lengths must be non-empty")
    if lengths != sorted(lengths):
        raise ValueError("lengths must be ascending")
    if backend in (None, "numba"):
        kernels.warmup()
    records = []
    for length in lengths:
        text = make_plaintext(length, rng_seed)
        for key in iteration_set:
            params = CipherParams(key=key, block_size=block_size)
            runtime = time_cycle(text, params, repetitions, workers=workers, backend=backend)
            records.append(
                BenchRecord(length, key, runtime, repetitions, _mode(workers),
                            backend or kernels.DEFAULT_BACKEND)
            )
    return records


def iteration_sweep(
    length: int = DEFAULT_SWEEP_LENGTH,
    iterations: Sequence[int] = DEFAULT_ITERATIONS,
    block_size: int = 8,
    repetitions: int = 3,
    rng_seed: int | None = 0,
    *,
    workers: int | None = None,
    backend: str | None = None,
) -> list[BenchRecord]:
    if not iterations:
        raise ValueError("iterations must be non-empty")
    if backend in (None, "numba"):
        kernels.warmup()
    text = make_plaintext(length, rng_seed)
    return [
        BenchRecord(
            length,
            key,
            time_cycle(text, CipherParams(key=key, block_size=block_size), repetitions,
                       workers=workers, backend=backend),
            repetitions,
            _mode(workers),
            backend or kernels.DEFAULT_BACKEND,
        )
        for key in iterations
    ]


def emit_csv(records: Iterable[BenchRecord], sink: TextIO) -> None:
    records = sorted(records, key=lambda r: (r.string_length, r.iterations))
    if not records:
        raise ValueError("no records to emit")
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.string_length, r.iterations, f"{r.runtime:.9f}", r.repetitions])


def compare_backends(
    lengths: Sequence[int] = (1_000, 10_000, 100_000),
    key: int = 8,
    repetitions: int = 3,
    rng_seed: int | None = 0,
) -> dict[str, list[BenchRecord]]:
    """Run the same length sweep on every available kernel backend."""
    return {
        name: length_sweep(lengths, (key,), repetitions=repetitions, rng_seed=rng_seed, backend=name)
        for name in kernels.BACKENDS
    }
