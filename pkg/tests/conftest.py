import numpy as np
import pytest
from hypothesis import settings

from scytale import kernels

# first calls may include JIT compilation
settings.register_profile("scytale", deadline=None)
settings.load_profile("scytale")


def oracle_block(block):
    """Critters image of a 2x2 cell array, computed directly on cells."""
    block = np.asarray(block)
    n = int(block.sum())
    if n == 2:
        return block.copy()
    if n == 3:
        return 1 - np.rot90(block, 2)
    return 1 - block


def oracle_step(cells, offset, rule=oracle_block):
    """Apply ``rule`` to every 2x2 block of a toroidal cell grid."""
    cells = np.asarray(cells)
    rows, cols = cells.shape
    out = np.empty_like(cells)
    d = offset[0]
    for r in range(d, rows + d, 2):
        for c in range(d, cols + d, 2):
            rr = [r % rows, (r + 1) % rows]
            cc = [c % cols, (c + 1) % cols]
            out[np.ix_(rr, cc)] = rule(cells[np.ix_(rr, cc)])
    return out


def state_to_block(s):
    return np.array([[(s >> 3) & 1, (s >> 2) & 1], [(s >> 1) & 1, s & 1]])


def block_to_state(b):
    return int(b[0, 0]) << 3 | int(b[0, 1]) << 2 | int(b[1, 0]) << 1 | int(b[1, 1])


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line and assert it."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def check(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        lines.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
