"""Comply-flavor games and the blocking/comply duality check.

In a comply game the previous player must propose a sufficiently large set
of the mover's options, and the proposal becomes the mover's entire menu.
A cell is P exactly when some valid proposal consists of N cells only:
at least k options N in ALL mode; at least k diagonal N options or one
nim-type N option in DIAG_ONLY mode; the mirror in NIM_ONLY mode.  A
player who cannot propose (no options, as at the origin) loses, so (0, 0)
is N here.

The values come from the same sweep kernel as the blocking solver but
counting N cells, so the duality against the blocking game stays a
checked theorem instead of a built-in identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rules import BlockingSpec, Flavor, Mode, Position
from .solver import PGrid, _solve_any


@dataclass(frozen=True)
class ComplyRule:
    mode: Mode
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")


@dataclass(frozen=True)
class DualityResult:
    mode: Mode
    k: int
    n: int
    ok: bool
    first_mismatch: Position | None


def solve_comply(rule: ComplyRule, n: int) -> PGrid:
    spec = BlockingSpec(rule.mode, Flavor.COMPLY, rule.k)
    return _solve_any(spec, n)


def first_complement_mismatch(a: PGrid, b: PGrid) -> Position | None:
    """Lowest-index cell where b fails to be the complement of a."""
    if a.n != b.n:
        raise ValueError("grids must share the board side")
    n = a.n
    abits = np.frombuffer(a.bit_payload(), dtype=np.uint8)
    bbits = np.frombuffer(b.bit_payload(), dtype=np.uint8)
    expected = np.full(abits.shape, 0xFF, dtype=np.uint8)
    tail_bits = (n * n) % 8
    if tail_bits:
        expected[-1] = (1 << tail_bits) - 1  # padding bits stay zero on both sides
    diff = (abits ^ bbits) ^ expected
    bad = np.nonzero(diff)[0]
    if bad.size == 0:
        return None
    byte = int(bad[0])
    bit = (int(diff[byte]) & -int(diff[byte])).bit_length() - 1
    idx = byte * 8 + bit
    return Position(idx % n, idx // n)


def check_duality(mode: Mode, k: int, n: int) -> DualityResult:
    """Verify that the comply P-set is the cellwise complement of the
    blocking P-set for the same mode and k."""
    blocking = _solve_any(BlockingSpec(mode, Flavor.BLOCKING, k), n)
    comply = solve_comply(ComplyRule(mode, k), n)
    witness = first_complement_mismatch(blocking, comply)
    return DualityResult(mode, k, n, witness is None, witness)
