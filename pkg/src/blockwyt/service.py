"""HTTP facade: P/N grid export plus live game sessions.

Grids are solved on demand, cached under a byte budget, and shared
read-only across sessions.  Each session is serialized behind its own
lock; the engine's reply happens inside the request that triggered it.
Errors use a flat {code, message} body.
"""

from __future__ import annotations

import base64
import threading
from collections import OrderedDict
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .game import (
    PLAY_MAX_SIDE,
    GameError,
    GameState,
    Seat,
    apply_block,
    apply_move,
    legal_moves,
    new_game,
)
from .rules import BlockingSpec, Flavor, Mode, Position
from .solver import PGrid, solve_grid

GRID_MAX_SIDE = 16384  # keeps a single response payload at 32 MiB


class NotFoundError(GameError):
    code = "not-found"


class BadRequestError(GameError):
    code = "bad-request"


class _GridCache:
    """LRU keyed by (mode, k, n), bounded by packed payload bytes."""

    def __init__(self, budget_mb: int):
        self._budget = max(1, budget_mb) * 2**20
        self._grids: OrderedDict[tuple[Mode, int, int], PGrid] = OrderedDict()
        self._bytes = 0
        self._lock = threading.Lock()

    @staticmethod
    def _size(n: int) -> int:
        return (n * n + 7) // 8

    def get(self, mode: Mode, k: int, n: int) -> PGrid:
        key = (mode, k, n)
        with self._lock:
            hit = self._grids.get(key)
            if hit is not None:
                self._grids.move_to_end(key)
                return hit
            grid = solve_grid(BlockingSpec(mode, Flavor.BLOCKING, k), n)
            self._grids[key] = grid
            self._bytes += self._size(n)
            while self._bytes > self._budget and len(self._grids) > 1:
                _, old = self._grids.popitem(last=False)
                self._bytes -= self._size(old.n)
            return grid


class _Session:
    def __init__(self, state: GameState):
        self.state = state
        self.lock = threading.Lock()


class NewGameRequest(BaseModel):
    mode: Literal["all", "diag", "nim"] = "all"
    k: int = Field(ge=1)
    n: int = Field(ge=1, le=PLAY_MAX_SIDE)
    start: tuple[int, int]
    human: Literal["next", "previous"]


class BlockRequest(BaseModel):
    cells: list[tuple[int, int]] = Field(default_factory=list)


class MoveRequest(BaseModel):
    to: tuple[int, int]


def state_payload(state: GameState) -> dict:
    return {
        "id": state.id,
        "mode": state.spec.mode.value,
        "k": state.spec.k,
        "n": state.n,
        "position": list(state.position),
        "phase": state.phase.value,
        "blocker": state.blocker.value,
        "to_act": state.to_act.value if state.to_act else None,
        "blocked": [list(c) for c in sorted(state.blocked)],
        "status": state.status.value,
        "legal_moves": [list(m) for m in legal_moves(state)],
        "history": [
            {
                "blocks": [list(b) for b in entry.blocks],
                "mover": entry.mover.value,
                "move": list(entry.move) if entry.move else None,
            }
            for entry in state.history
        ],
    }


def create_app(grid_cache_mb: int = 256) -> FastAPI:
    app = FastAPI(title="blockwyt")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    cache = _GridCache(grid_cache_mb)
    sessions: dict[str, _Session] = {}
    sessions_lock = threading.Lock()

    @app.exception_handler(GameError)
    async def game_error(request: Request, exc: GameError):
        status = 404 if isinstance(exc, NotFoundError) else 400
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": str(exc)}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        )
        return JSONResponse(
            status_code=400, content={"code": "bad-request", "message": detail}
        )

    def pick_session(game_id: str) -> _Session:
        with sessions_lock:
            session = sessions.get(game_id)
        if session is None:
            raise NotFoundError(f"no session {game_id}")
        return session

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    @app.get("/api/grid")
    async def grid(mode: str = "all", k: int = 1, n: int = 256):
        try:
            mode_val = Mode.from_string(mode)
        except ValueError as exc:
            raise BadRequestError(str(exc)) from exc
        if k < 1:
            raise BadRequestError("k must be at least 1")
        if not 1 <= n <= GRID_MAX_SIDE:
            raise BadRequestError(f"n must be in 1..{GRID_MAX_SIDE}")
        payload = cache.get(mode_val, k, n).bit_payload()
        return {
            "mode": mode_val.value,
            "k": k,
            "n": n,
            "bits": base64.b64encode(payload).decode("ascii"),
        }

    @app.post("/api/game")
    async def game_new(req: NewGameRequest):
        mode_val = Mode.from_string(req.mode)
        x, y = req.start
        if not (0 <= x < req.n and 0 <= y < req.n):
            raise BadRequestError(f"start {req.start} outside the {req.n} x {req.n} board")
        grid = cache.get(mode_val, req.k, req.n)
        state = new_game(
            BlockingSpec(mode_val, Flavor.BLOCKING, req.k),
            req.n,
            Position(x, y),
            Seat(req.human),
            grid,
        )
        with sessions_lock:
            sessions[state.id] = _Session(state)
        return state_payload(state)

    @app.get("/api/game/{game_id}")
    async def game_get(game_id: str):
        session = pick_session(game_id)
        with session.lock:
            return state_payload(session.state)

    @app.post("/api/game/{game_id}/block")
    async def game_block(game_id: str, req: BlockRequest):
        session = pick_session(game_id)
        with session.lock:
            apply_block(session.state, [Position(*c) for c in req.cells])
            return state_payload(session.state)

    @app.post("/api/game/{game_id}/move")
    async def game_move(game_id: str, req: MoveRequest):
        session = pick_session(game_id)
        with session.lock:
            apply_move(session.state, Position(*req.to))
            return state_payload(session.state)

    return app
