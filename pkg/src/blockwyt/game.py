"""Live play sessions: state machine, rule enforcement, and the engine.

Each round has two halves: the previous player (the blocker) forbids up to
k-1 blockable options, then the other side moves to an unblocked option.
Whoever moves becomes the next blocker, and the block set is cleared after
every move.  A mover whose options are all forbidden loses on the spot,
which is resolved as soon as the block is placed.

The engine plays the value-perfect policy: as blocker at a P position it
forbids exactly the P options (there are at most k-1 of them, all in
blockable classes), as mover it takes the lexicographically smallest
unblocked P option.  From lost seats it still acts deterministically
rather than resigning.
"""

from __future__ import annotations

import enum
import uuid
from dataclasses import dataclass, field

import numpy as np

from .rules import (
    BlockingSpec,
    Flavor,
    MoveClass,
    Position,
    is_option,
    option_count,
)
from .solver import PGrid, solve_grid

PLAY_MAX_SIDE = 8192  # engine scans need the unpacked board


class Role(enum.Enum):
    HUMAN = "human"
    ENGINE = "engine"


class Seat(enum.Enum):
    NEXT = "next"          # first to move
    PREVIOUS = "previous"  # first to block


class Phase(enum.Enum):
    AWAIT_BLOCK = "await_block"
    AWAIT_MOVE = "await_move"


class Status(enum.Enum):
    ONGOING = "ongoing"
    HUMAN_WON = "human_won"
    ENGINE_WON = "engine_won"


def other(role: Role) -> Role:
    return Role.ENGINE if role is Role.HUMAN else Role.HUMAN


def _won(role: Role) -> Status:
    return Status.HUMAN_WON if role is Role.HUMAN else Status.ENGINE_WON


class GameError(Exception):
    code = "game-error"


class WrongPhaseError(GameError):
    code = "wrong-phase"


class OverBudgetError(GameError):
    code = "block-budget"


class IllegalBlockError(GameError):
    code = "illegal-block"


class IllegalMoveError(GameError):
    code = "illegal-move"


class GameOverError(GameError):
    code = "game-over"


@dataclass
class HistoryEntry:
    blocks: tuple[Position, ...]
    mover: Role
    move: Position | None  # None when the mover was blocked out


@dataclass
class GameState:
    id: str
    spec: BlockingSpec
    n: int
    grid: PGrid
    position: Position
    phase: Phase
    blocker: Role
    blocked: set[Position] = field(default_factory=set)
    status: Status = Status.ONGOING
    history: list[HistoryEntry] = field(default_factory=list)

    @property
    def mover(self) -> Role:
        return other(self.blocker)

    @property
    def to_act(self) -> Role | None:
        if self.status is not Status.ONGOING:
            return None
        return self.blocker if self.phase is Phase.AWAIT_BLOCK else self.mover


def new_game(
    spec: BlockingSpec,
    n: int,
    start: Position,
    human_seat: Seat,
    grid: PGrid | None = None,
) -> GameState:
    """Create a session; the engine takes any actions it owes immediately."""
    if spec.flavor is not Flavor.BLOCKING:
        raise ValueError("play sessions support the blocking flavor only")
    if n < 1 or n > PLAY_MAX_SIDE:
        raise ValueError(f"board side must be in 1..{PLAY_MAX_SIDE}")
    start = Position(*start)
    if not (0 <= start.x < n and 0 <= start.y < n):
        raise ValueError(f"start {tuple(start)} outside the {n} x {n} board")
    if grid is None:
        grid = solve_grid(spec, n)
    elif grid.spec != spec or grid.n != n:
        raise ValueError("supplied grid does not match the requested game")
    state = GameState(
        id=uuid.uuid4().hex,
        spec=spec,
        n=n,
        grid=grid,
        position=start,
        phase=Phase.AWAIT_BLOCK,
        blocker=Role.ENGINE if human_seat is Seat.NEXT else Role.HUMAN,
    )
    if start == (0, 0):
        # nothing to move with; the configured previous player wins outright
        state.status = _won(state.blocker)
        return state
    _run_engine(state)
    return state


def legal_moves(state: GameState) -> list[Position]:
    """Unblocked options of the current position, lexicographically sorted."""
    if state.status is not Status.ONGOING:
        return []
    x, y = state.position
    targets = [Position(x, z) for z in range(y)]
    targets += [Position(w, y) for w in range(x)]
    targets += [Position(x - i, y - i) for i in range(1, min(x, y) + 1)]
    return sorted(t for t in targets if t not in state.blocked)


def blockable_options(state: GameState) -> list[Position]:
    """Options the current spec allows to be forbidden, sorted."""
    x, y = state.position
    out = []
    if state.spec.blockable(MoveClass.VERTICAL):
        out += [Position(x, z) for z in range(y)]
    if state.spec.blockable(MoveClass.HORIZONTAL):
        out += [Position(w, y) for w in range(x)]
    if state.spec.blockable(MoveClass.DIAGONAL):
        out += [Position(x - i, y - i) for i in range(1, min(x, y) + 1)]
    return sorted(out)


def apply_block(state: GameState, cells) -> GameState:
    """Record the blocker's choice and advance; engine replies if due."""
    _do_block(state, cells)
    _run_engine(state)
    return state


def apply_move(state: GameState, to) -> GameState:
    """Apply the mover's choice and advance; engine replies if due."""
    _do_move(state, to)
    _run_engine(state)
    return state


def _do_block(state: GameState, cells) -> None:
    if state.status is not Status.ONGOING:
        raise GameOverError("the game is over")
    if state.phase is not Phase.AWAIT_BLOCK:
        raise WrongPhaseError("a move, not a block, is expected now")
    chosen = {Position(*c) for c in cells}
    budget = state.spec.k - 1
    if len(chosen) > budget:
        raise OverBudgetError(f"{len(chosen)} cells exceed the block budget {budget}")
    for cell in chosen:
        cls = is_option(state.position, cell)
        if cls is None:
            raise IllegalBlockError(
                f"{tuple(cell)} is not an option of {tuple(state.position)}"
            )
        if not state.spec.blockable(cls):
            raise IllegalBlockError(f"{cls.name.lower()} options cannot be blocked here")
    state.blocked = chosen
    state.phase = Phase.AWAIT_MOVE
    if len(chosen) >= option_count(state.position):
        # every option forbidden: the mover loses at block time
        state.history.append(HistoryEntry(tuple(sorted(chosen)), state.mover, None))
        state.status = _won(state.blocker)


def _do_move(state: GameState, to) -> None:
    if state.status is not Status.ONGOING:
        raise GameOverError("the game is over")
    if state.phase is not Phase.AWAIT_MOVE:
        raise WrongPhaseError("a block, not a move, is expected now")
    to = Position(*to)
    if is_option(state.position, to) is None:
        raise IllegalMoveError(
            f"{tuple(to)} is not reachable from {tuple(state.position)}"
        )
    if to in state.blocked:
        raise IllegalMoveError(f"{tuple(to)} is blocked this turn")
    mover = state.mover
    state.history.append(HistoryEntry(tuple(sorted(state.blocked)), mover, to))
    state.position = to
    state.blocked = set()
    if to == (0, 0):
        state.status = _won(mover)
        return
    state.blocker = mover  # the side that just moved blocks next
    state.phase = Phase.AWAIT_BLOCK


def _p_options(state: GameState, blockable_only: bool = False) -> list[Position]:
    """P-valued options of the current position, lex sorted."""
    x, y = state.position
    dense = state.grid.dense()
    parts: list[Position] = []
    spec = state.spec
    if not blockable_only or spec.blockable(MoveClass.VERTICAL):
        for z in np.nonzero(dense[:y, x])[0]:
            parts.append(Position(x, int(z)))
    if not blockable_only or spec.blockable(MoveClass.HORIZONTAL):
        for w in np.nonzero(dense[y, :x])[0]:
            parts.append(Position(int(w), y))
    if not blockable_only or spec.blockable(MoveClass.DIAGONAL):
        m = min(x, y)
        if m:
            stripe = dense[y - m : y, x - m : x].diagonal()
            for j in np.nonzero(stripe)[0]:
                parts.append(Position(x - m + int(j), y - m + int(j)))
    return sorted(parts)


def _engine_block_choice(state: GameState) -> list[Position]:
    budget = state.spec.k - 1
    if state.grid.value(*state.position):
        # at a P position the P options all sit in blockable classes and
        # number at most k-1; forbidding them leaves an all-N menu
        choice = _p_options(state)
        assert len(choice) <= budget, "value table contradicts the block budget"
        return choice
    return _p_options(state, blockable_only=True)[:budget]


def _engine_move_choice(state: GameState) -> Position:
    for cand in _p_options(state):
        if cand not in state.blocked:
            return cand
    moves = legal_moves(state)
    assert moves, "blocked-out positions are resolved at block time"
    return moves[0]


def _run_engine(state: GameState) -> None:
    while state.status is Status.ONGOING and state.to_act is Role.ENGINE:
        if state.phase is Phase.AWAIT_BLOCK:
            _do_block(state, _engine_block_choice(state))
        else:
            _do_move(state, _engine_move_choice(state))
