"""Exit criteria for the build, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a pass/fail line per criterion
in the terminal summary.
"""
import io
import random
import time

import numpy as np

from scytale import bench
from scytale.analysis import dispersion_check, positional_similarity
from scytale.cipher import (
    Ciphertext,
    _step_trace,
    decrypt,
    dumps_ciphertext,
    encrypt,
    loads_ciphertext,
)
from scytale.codec import CipherParams
from scytale.critters import forward_step, inverse_step
from scytale.image_io import (
    PixelSquare,
    chunk_to_square,
    ciphertext_to_squares,
    dumps_image_container,
    loads_image_container,
    pgm_bytes,
    read_pgm,
    squares_to_ciphertext,
)
from scytale.lattice import from_bytes
from scytale.rules import FORWARD_TABLE, INVERSE_TABLE, popcount4, rotate90

PRINTABLE = bytes(range(0x20, 0x7F))


def test_c01_block_rule_bijection(criterion):
    fwd, inv = FORWARD_TABLE.tolist(), INVERSE_TABLE.tolist()
    ok = (
        sorted(fwd) == list(range(16))
        and all(inv[fwd[s]] == s for s in range(16))
        and all(popcount4(fwd[s]) == 4 - popcount4(s) for s in range(16))
    )
    criterion(1, "block-rule bijection, inverse and popcount complement", ok)


def test_c02_rotation_invariance(criterion):
    bad = [s for s in range(16) if FORWARD_TABLE[rotate90(s)] != rotate90(int(FORWARD_TABLE[s]))]
    criterion(2, "rotation invariance over all 16 states", not bad, f"violations={bad}")


def test_c03_step_reversibility(criterion):
    rng = random.Random(3)
    cases = failures = 0
    for _ in range(1000):
        b = rng.choice([2, 4, 8, 16, 32])
        lat = from_bytes(rng.randbytes(b))
        for offset in ((0, 0), (1, 1)):
            cases += 1
            failures += inverse_step(forward_step(lat, offset), offset) != lat
    criterion(3, "step reversibility on random lattices", failures == 0, f"{cases} cases, {failures} failures")


def test_c04_end_to_end_round_trip(criterion):
    rng = random.Random(4)
    start = time.perf_counter()
    failures = 0
    n = 1000
    for _ in range(n):
        length = rng.randrange(0, 4097)
        p = bytearray(rng.randbytes(length))
        if p and p[-1] == 0:
            p[-1] = rng.randrange(1, 256)
        params = CipherParams(key=rng.randrange(0, 65), block_size=rng.choice([2, 4, 8, 16]))
        failures += decrypt(encrypt(bytes(p), params), params) != bytes(p)
    elapsed = time.perf_counter() - start
    criterion(4, "end-to-end round trip", failures == 0 and elapsed < 30,
              f"{n} cases, {failures} failures, {elapsed:.2f}s")


def test_c05_live_count_alternation(criterion):
    rng = random.Random(5)
    failures = 0
    n = 500
    for _ in range(n):
        b = rng.choice([2, 4, 8, 16])
        params = CipherParams(key=rng.randrange(1, 33), block_size=b)
        trace = _step_trace(rng.randbytes(rng.randrange(1, 65)), params)
        total = b * 8
        for prev, cur in zip(trace, trace[1:]):
            prev_live = np.unpackbits(prev, axis=1).sum(axis=1)
            cur_live = np.unpackbits(cur, axis=1).sum(axis=1)
            failures += int((cur_live != total - prev_live).any())
    criterion(5, "live count complements after every step", failures == 0, f"{n} cases")


def test_c06_diffusion_similarity(criterion):
    rng = random.Random(6)
    params = CipherParams(key=4, block_size=8)
    start = time.perf_counter()
    sims = []
    for _ in range(100):
        msg = bytes(rng.choices(PRINTABLE, k=4))
        pos = rng.randrange(4)
        other = bytearray(msg)
        other[pos] = rng.choice([c for c in PRINTABLE if c != msg[pos]])
        sims.append(positional_similarity(encrypt(msg, params), encrypt(bytes(other), params)))
    elapsed = time.perf_counter() - start
    mean = float(np.mean(sims))
    criterion(6, "mean positional similarity <= 0.125 (B=8, K=4)", mean <= 0.125 and elapsed < 1,
              f"mean={mean:.4f}, {elapsed:.3f}s")


def test_c07_dispersion(criterion):
    distinct = dispersion_check(b"aaaaa", CipherParams(key=12, block_size=8))
    criterion(7, "repeated byte disperses to >= 6 distinct values", distinct >= 6, f"distinct={distinct}")


def test_c08_table1_shape(criterion):
    recs = bench.length_sweep([1_000, 10_000, 100_000], [8], block_size=8, repetitions=20, rng_seed=8)
    t = [r.runtime for r in recs]
    ratio = t[2] / t[1]
    ok = t[0] < t[1] < t[2] and 5 <= ratio <= 15
    criterion(8, "runtime vs length shape (K=8)", ok,
              "runtimes=" + ",".join(f"{x:.2e}" for x in t) + f", ratio(1e5/1e4)={ratio:.2f}")


def test_c09_table2_shape(criterion):
    recs = bench.iteration_sweep(100_000, [1, 2, 4, 8, 16, 32, 64], block_size=8, repetitions=5, rng_seed=9)
    t = [r.runtime for r in recs]
    ratio = t[-1] / t[3]
    ok = all(a <= b for a, b in zip(t, t[1:])) and 3 <= ratio <= 16
    criterion(9, "runtime vs iterations shape (1e5 chars)", ok, f"ratio(K64/K8)={ratio:.2f}")


def test_c10_format_round_trips(criterion):
    rng = random.Random(10)
    failures = 0
    for _ in range(200):
        b = rng.choice([2, 4, 8, 16, 32])
        n = rng.randrange(0, 20)
        ct = Ciphertext(b, np.frombuffer(rng.randbytes(n * b), dtype=np.uint8).reshape(n, b))
        failures += loads_ciphertext(dumps_ciphertext(ct)) != ct
        squares = ciphertext_to_squares(ct)
        raw = dumps_image_container(squares, b)
        side, back = loads_image_container(raw)
        failures += side != b or back != squares or dumps_image_container(back, b) != raw
        px = PixelSquare(np.frombuffer(rng.randbytes(b * b), dtype=np.uint8).reshape(b, b))
        failures += read_pgm(pgm_bytes(px)) != px
        p = bytes(rng.choices(PRINTABLE, k=rng.randrange(1, 300)))
        params = CipherParams(key=rng.randrange(1, 65), block_size=b)
        enc = encrypt(p, params)
        side, sq = loads_image_container(dumps_image_container(ciphertext_to_squares(enc), b))
        failures += decrypt(squares_to_ciphertext(sq, side), params) != p
    criterion(10, "SCYT/SCYI/PGM round trips and image-path decryption", failures == 0, "200 cases")


def test_c11_parallel_bit_identical(criterion):
    rng = random.Random(11)
    failures = 0
    for _ in range(100):
        params = CipherParams(key=rng.randrange(0, 65), block_size=rng.choice([2, 4, 8, 16]))
        p = bytes(rng.choices(PRINTABLE, k=rng.randrange(0, 2048)))
        seq = encrypt(p, params)
        par = encrypt(p, params, workers=4)
        failures += seq != par or decrypt(par, params, workers=4) != p
    criterion(11, "parallel-chunk mode bit-identical to sequential", failures == 0, "100 cases")
