"""Solver, verifier and play engine for blocking and comply Wythoff Nim."""

from .rules import (
    BlockingSpec,
    Flavor,
    Mode,
    Move,
    MoveClass,
    Position,
    options,
    terminal_count,
    terminal_set,
)
from .solver import PGrid, brute_force_value, solve_grid

__all__ = [
    "BlockingSpec",
    "Flavor",
    "Mode",
    "Move",
    "MoveClass",
    "PGrid",
    "Position",
    "brute_force_value",
    "options",
    "solve_grid",
    "terminal_count",
    "terminal_set",
]

__version__ = "0.1.0"
