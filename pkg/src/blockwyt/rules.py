"""Move geometry and rule settings for blocking/comply Wythoff Nim.

A position is a pair of pile sizes laid out on the quarter-plane board
N0 x N0.  A move removes tokens from one pile (vertical or horizontal on
the board) or the same amount from both (diagonal).  The blocking flavor
lets the previous player forbid up to k-1 options before each move; the
comply flavor makes the previous player propose the option set instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple


class Position(NamedTuple):
    x: int
    y: int


class MoveClass(enum.IntEnum):
    VERTICAL = 0    # (x, y) -> (x, y - j), reduces the second pile
    HORIZONTAL = 1  # (x, y) -> (x - i, y), reduces the first pile
    DIAGONAL = 2    # (x, y) -> (x - i, y - i), reduces both equally


class Mode(enum.Enum):
    """Which move classes the blocking (or comply) constraint applies to."""

    ALL = "all"
    DIAG_ONLY = "diag"
    NIM_ONLY = "nim"

    @classmethod
    def from_string(cls, s: str) -> "Mode":
        for mode in cls:
            if mode.value == s:
                return mode
        raise ValueError(f"unknown mode {s!r}, expected one of: all, diag, nim")


class Flavor(enum.Enum):
    BLOCKING = "blocking"
    COMPLY = "comply"

    @classmethod
    def from_string(cls, s: str) -> "Flavor":
        for flavor in cls:
            if flavor.value == s:
                return flavor
        raise ValueError(f"unknown flavor {s!r}, expected blocking or comply")


@dataclass(frozen=True)
class BlockingSpec:
    """Game parameters: constrained move classes, flavor, and the bound k.

    BLOCKING/ALL with k=1 is plain Wythoff Nim (no blocking at all, since
    the budget k-1 is zero).
    """

    mode: Mode
    flavor: Flavor
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")

    def blockable(self, cls: MoveClass) -> bool:
        """Whether the constraint (block or proposal count) touches cls."""
        if self.mode is Mode.ALL:
            return True
        if self.mode is Mode.DIAG_ONLY:
            return cls is MoveClass.DIAGONAL
        return cls is not MoveClass.DIAGONAL


class Move(NamedTuple):
    to: Position
    cls: MoveClass


def mirror(p: Position) -> Position:
    return Position(p[1], p[0])


def options(p: Position) -> list[Move]:
    """All moves from p, ordered by class then by decreasing removal size.

    The fixed order makes downstream tie-breaking deterministic.
    """
    x, y = p
    out = []
    for j in range(y, 0, -1):
        out.append(Move(Position(x, y - j), MoveClass.VERTICAL))
    for i in range(x, 0, -1):
        out.append(Move(Position(x - i, y), MoveClass.HORIZONTAL))
    for i in range(min(x, y), 0, -1):
        out.append(Move(Position(x - i, y - i), MoveClass.DIAGONAL))
    return out


def option_count(p: Position) -> int:
    """len(options(p)) without building the list."""
    x, y = p
    return x + y + min(x, y)


def is_option(p: Position, q: Position) -> MoveClass | None:
    """Classify q as a move target of p, or None if unreachable."""
    x, y = p
    qx, qy = q
    if qx < 0 or qy < 0:
        return None
    if qx == x and qy < y:
        return MoveClass.VERTICAL
    if qy == y and qx < x:
        return MoveClass.HORIZONTAL
    if x - qx == y - qy and qx < x:
        return MoveClass.DIAGONAL
    return None


@dataclass(frozen=True)
class TerminalSet:
    """Positions from which every option can be forbidden under blocking-k.

    Moving to one of these wins: the opponent is left with fewer than k
    options, all of which fit inside the block budget k-1.
    """

    k: int
    cells: frozenset[Position]


def terminal_set(k: int) -> TerminalSet:
    """Symmetric closure of {x <= y < k - 2x}; equals {p : |options(p)| < k}."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    cells = set()
    for x in range((k - 1) // 3 + 1):
        for y in range(x, k - 2 * x):
            cells.add(Position(x, y))
            cells.add(Position(y, x))
    return TerminalSet(k, frozenset(cells))


def terminal_count(k: int) -> int:
    """Closed-form size of terminal_set(k), counting ordered cells.

    Three cases by k mod 3; the k=3(m+1) case reads as 3(m+1)^2 + 2(m+1),
    validated against enumeration for k up to 50.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    m, r = divmod(k - 1, 3)
    if r == 0:  # k = 3m + 1
        return 3 * (m + 1) ** 2 - 2 * (m + 1)
    if r == 1:  # k = 3m + 2
        return 3 * (m + 1) ** 2
    return 3 * (m + 1) ** 2 + 2 * (m + 1)  # k = 3(m + 1)
