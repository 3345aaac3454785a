"""Confusion and diffusion metrics over ciphertext pairs."""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .cipher import Ciphertext, encrypt
from .codec import CipherParams
from .errors import IncompatibleCiphertextError

# popcount of every byte value
_POPCOUNT = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)


def _check_shapes(a: Ciphertext, b: Ciphertext) -> None:
    if a.block_size != b.block_size or a.chunks.shape != b.chunks.shape:
        raise IncompatibleCiphertextError(
            f"cannot compare ciphertexts of shape {a.chunks.shape} (B={a.block_size}) "
            f"and {b.chunks.shape} (B={b.block_size})"
        )
    if a.chunks.size == 0:
        raise IncompatibleCiphertextError("cannot compare empty ciphertexts")


def positional_similarity(a: Ciphertext, b: Ciphertext) -> float:
    """Fraction of byte positions at which the two ciphertexts agree."""
    _check_shapes(a, b)
    return float(np.mean(a.chunks == b.chunks))


def bit_difference_ratio(a: Ciphertext, b: Ciphertext) -> float:
    _check_shapes(a, b)
    diff = _POPCOUNT[a.chunks ^ b.chunks].sum()
    return float(diff) / (a.chunks.size * 8)


@dataclass(frozen=True)
class TrialResult:
    trial: int
    position_flipped: int
    positional_similarity: float
    bit_difference_ratio: float


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    min: float
    max: float


@dataclass(frozen=True)
class SimilarityReport:
    positional_similarity: MetricSummary
    bit_difference_ratio: MetricSummary
    length: int
    trials: list[TrialResult] = field(repr=False)
    rng_seed: int | None = None

    def to_text(self) -> str:
        rows = [
            ("metric", "mean", "min", "max"),
            *(
                (name, f"{m.mean:.6f}", f"{m.min:.6f}", f"{m.max:.6f}")
                for name, m in (
                    ("positional_similarity", self.positional_similarity),
                    ("bit_difference_ratio", self.bit_difference_ratio),
                )
            ),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        lines.append(f"trials={len(self.trials)} compared_bytes={self.length} seed={self.rng_seed}")
        return "\n".join(lines)

    def write_csv(self, sink: TextIO) -> None:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["trial", "position_flipped", "positional_similarity", "bit_difference_ratio"])
        for t in self.trials:
            writer.writerow(
                [t.trial, t.position_flipped, repr(t.positional_similarity), repr(t.bit_difference_ratio)]
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _summary(values: list[float]) -> MetricSummary:
    return MetricSummary(float(np.mean(values)), float(min(values)), float(max(values)))


def avalanche_report(
    plaintext: bytes,
    params: CipherParams,
    trials: int = 100,
    rng_seed: int | None = 0,
    *,
    self_check: bool = False,
) -> SimilarityReport:
    """Flip one random byte of ``plaintext`` per trial and compare ciphertexts.

    With ``self_check`` the plaintext is left unmodified, which must give
    similarity 1 and bit difference 0.
    """
    plaintext = bytes(plaintext)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not plaintext:
        raise ValueError("plaintext must be non-empty")
    rng = random.Random(rng_seed)
    base = encrypt(plaintext, params)
    results = []
    for i in range(trials):
        pos = rng.randrange(len(plaintext))
        mutated = bytearray(plaintext)
        if not self_check:
            mutated[pos] = (plaintext[pos] + rng.randrange(1, 256)) % 256
        other = encrypt(bytes(mutated), params)
        results.append(
            TrialResult(i, pos, positional_similarity(base, other), bit_difference_ratio(base, other))
        )
    return SimilarityReport(
        positional_similarity=_summary([r.positional_similarity for r in results]),
        bit_difference_ratio=_summary([r.bit_difference_ratio for r in results]),
        length=base.chunks.size,
        trials=results,
        rng_seed=rng_seed,
    )


def dispersion_check(plaintext: bytes, params: CipherParams) -> int:
    """Distinct byte values in the ciphertext of a single repeated byte."""
    plaintext = bytes(plaintext)
    if not plaintext:
        raise ValueError("plaintext must be non-empty")
    if len(set(plaintext)) != 1:
        raise ValueError("plaintext must repeat a single byte value")
    return int(np.unique(encrypt(plaintext, params).chunks).size)
