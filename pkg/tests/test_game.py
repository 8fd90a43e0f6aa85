"""Session state machine and engine policy."""

import random

import pytest

from blockwyt.game import (
    GameOverError,
    IllegalBlockError,
    IllegalMoveError,
    OverBudgetError,
    Phase,
    Role,
    Seat,
    Status,
    WrongPhaseError,
    apply_block,
    apply_move,
    blockable_options,
    legal_moves,
    new_game,
)
from blockwyt.rules import BlockingSpec, Flavor, Mode, Position
from blockwyt.solver import solve_grid


def spec_all(k):
    return BlockingSpec(Mode.ALL, Flavor.BLOCKING, k)


@pytest.fixture(scope="module")
def grid_k2():
    return solve_grid(spec_all(2), 64)


@pytest.fixture(scope="module")
def grid_k3():
    return solve_grid(spec_all(3), 64)


def test_engine_blocks_single_p_option(grid_k2):
    state = new_game(spec_all(2), 64, Position(8, 12), Seat.NEXT, grid_k2)
    assert state.phase is Phase.AWAIT_MOVE
    assert state.blocked == {Position(3, 7)}
    assert state.to_act is Role.HUMAN
    assert state.status is Status.ONGOING


def test_origin_start_previous_player_wins(grid_k2):
    state = new_game(spec_all(2), 64, Position(0, 0), Seat.PREVIOUS, grid_k2)
    assert state.status is Status.HUMAN_WON
    state = new_game(spec_all(2), 64, Position(0, 0), Seat.NEXT, grid_k2)
    assert state.status is Status.ENGINE_WON


def test_engine_wins_at_block_time(grid_k3):
    # (0, 2) has two options and a block budget of two
    state = new_game(spec_all(3), 64, Position(0, 2), Seat.NEXT, grid_k3)
    assert state.status is Status.ENGINE_WON
    entry = state.history[-1]
    assert entry.blocks == (Position(0, 0), Position(0, 1))
    assert entry.mover is Role.HUMAN
    assert entry.move is None


def test_human_first_block_engine_replies(grid_k2):
    state = new_game(spec_all(2), 64, Position(1, 1), Seat.PREVIOUS, grid_k2)
    assert state.to_act is Role.HUMAN
    assert state.phase is Phase.AWAIT_BLOCK
    apply_block(state, [Position(0, 0)])
    # engine dodges the block to (0, 1), then blocks the human out there
    assert state.history[0].move == Position(0, 1)
    assert state.history[0].mover is Role.ENGINE
    assert state.status is Status.ENGINE_WON


def test_human_winning_line(grid_k2):
    state = new_game(spec_all(2), 64, Position(1, 2), Seat.NEXT, grid_k2)
    assert state.blocked == {Position(0, 1)}
    apply_move(state, Position(1, 0))
    assert state.to_act is Role.HUMAN
    assert state.phase is Phase.AWAIT_BLOCK
    apply_block(state, [Position(0, 0)])
    assert state.status is Status.HUMAN_WON
    assert state.history[-1].move is None


def test_block_budget_enforced(grid_k2):
    state = new_game(spec_all(2), 64, Position(5, 9), Seat.PREVIOUS, grid_k2)
    with pytest.raises(OverBudgetError) as err:
        apply_block(state, [Position(5, 0), Position(5, 1)])
    assert err.value.code == "block-budget"


def test_block_must_be_an_option(grid_k2):
    state = new_game(spec_all(2), 64, Position(5, 9), Seat.PREVIOUS, grid_k2)
    with pytest.raises(IllegalBlockError):
        apply_block(state, [Position(4, 7)])


def test_block_respects_mode_classes():
    spec = BlockingSpec(Mode.DIAG_ONLY, Flavor.BLOCKING, 2)
    grid = solve_grid(spec, 32)
    state = new_game(spec, 32, Position(5, 9), Seat.PREVIOUS, grid)
    with pytest.raises(IllegalBlockError):
        apply_block(state, [Position(5, 3)])  # vertical, not blockable here
    assert all(cell.x == cell.y - 4 for cell in blockable_options(state))


def test_phase_errors(grid_k2):
    state = new_game(spec_all(2), 64, Position(5, 9), Seat.PREVIOUS, grid_k2)
    with pytest.raises(WrongPhaseError):
        apply_move(state, Position(5, 0))
    apply_block(state, [])
    with pytest.raises(WrongPhaseError):
        apply_block(state, [])


def test_move_validation(grid_k2):
    state = new_game(spec_all(2), 64, Position(5, 9), Seat.PREVIOUS, grid_k2)
    apply_block(state, [Position(5, 2)])
    with pytest.raises(IllegalMoveError):
        apply_move(state, Position(4, 8))  # not a queen-of-nim removal
    with pytest.raises(IllegalMoveError):
        apply_move(state, Position(5, 2))  # just blocked


def test_acting_after_game_over(grid_k2):
    state = new_game(spec_all(2), 64, Position(0, 0), Seat.NEXT, grid_k2)
    with pytest.raises(GameOverError):
        apply_block(state, [])
    with pytest.raises(GameOverError):
        apply_move(state, Position(0, 0))
    assert legal_moves(state) == []


def test_blocks_cleared_after_each_move(grid_k2):
    state = new_game(spec_all(2), 64, Position(20, 33), Seat.NEXT, grid_k2)
    assert len(state.blocked) <= 1
    target = next(m for m in legal_moves(state) if m != (0, 0))
    apply_move(state, target)
    if state.status is Status.ONGOING and state.to_act is Role.HUMAN:
        # engine moved and blocked again; earlier blocks must not linger
        assert all(len(e.blocks) <= 1 for e in state.history)


def test_legal_moves_sorted_and_complete(grid_k2):
    state = new_game(spec_all(2), 64, Position(3, 2), Seat.PREVIOUS, grid_k2)
    moves = legal_moves(state)
    assert moves == sorted(moves)
    assert len(moves) == 3 + 2 + 2
    apply_block(state, [Position(3, 0)])
    assert Position(3, 0) not in legal_moves(state)


def test_engine_policy_is_deterministic(grid_k2):
    runs = []
    for _ in range(2):
        state = new_game(spec_all(2), 64, Position(9, 14), Seat.NEXT, grid_k2)
        apply_move(state, legal_moves(state)[0])
        runs.append((state.position, tuple(state.blocked), state.phase))
    assert runs[0] == runs[1]


def test_engine_never_loses_small_playouts(grid_k2):
    spec = spec_all(2)
    rng = random.Random(11)
    wins = 0
    for start in [Position(4, 7), Position(9, 9), Position(12, 5), Position(2, 11)]:
        p_start = grid_k2.value(*start)
        seat = Seat.NEXT if p_start else Seat.PREVIOUS
        for _ in range(12):
            state = new_game(spec, 64, start, seat, grid_k2)
            while state.status is Status.ONGOING:
                if state.phase is Phase.AWAIT_BLOCK:
                    pool = blockable_options(state)
                    take = rng.randint(0, min(spec.k - 1, len(pool)))
                    apply_block(state, rng.sample(pool, take))
                else:
                    apply_move(state, rng.choice(legal_moves(state)))
            assert state.status is Status.ENGINE_WON
            wins += 1
    assert wins == 48
