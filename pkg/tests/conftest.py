"""Shared fixtures: a session grid store and the acceptance scoreboard."""

from contextlib import contextmanager

import pytest

from blockwyt.analysis import extract_pairs
from blockwyt.rules import BlockingSpec, Flavor, Mode
from blockwyt.solver import solve_grid


class GridStore:
    """Memoizes solved grids and extracted pair lists across tests."""

    def __init__(self):
        self._grids = {}
        self._pairs = {}
        solve_grid(BlockingSpec(Mode.ALL, Flavor.BLOCKING, 1), 64)  # jit warmup

    def blocking(self, mode: Mode, k: int, n: int):
        key = (mode, k, n)
        if key not in self._grids:
            self._grids[key] = solve_grid(BlockingSpec(mode, Flavor.BLOCKING, k), n)
        return self._grids[key]

    def pairs(self, k: int, n: int):
        key = (k, n)
        if key not in self._pairs:
            self._pairs[key] = extract_pairs(self.blocking(Mode.ALL, k, n))
        return self._pairs[key]


@pytest.fixture(scope="session")
def grids():
    return GridStore()


_SCOREBOARD: dict[int, tuple[str, str]] = {}


class _Criterion:
    @contextmanager
    def __call__(self, cid: int, desc: str):
        try:
            yield
        except BaseException:
            _SCOREBOARD[cid] = (desc, "FAIL")
            raise
        _SCOREBOARD[cid] = (desc, "PASS")


@pytest.fixture
def criterion():
    return _Criterion()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _SCOREBOARD:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid in sorted(_SCOREBOARD):
        desc, status = _SCOREBOARD[cid]
        terminalreporter.write_line(f"[PRIMARY {cid:2d}] {status}  {desc}")
