/**
 * Thin fetch client for the game service. No game logic lives here:
 * requests go out, JSON comes back, and service rejections become
 * ApiError with the code and message passed through verbatim.
 */

export type Pair = [number, number];
export type Phase = "await_block" | "await_move";
export type RoleName = "human" | "engine";
export type StatusName = "ongoing" | "human_won" | "engine_won";

export interface GridResponse {
  mode: string;
  k: number;
  n: number;
  bits: string;
}

export interface HistoryEntryJson {
  blocks: Pair[];
  mover: RoleName;
  move: Pair | null;
}

export interface GameStateJson {
  id: string;
  mode: string;
  k: number;
  n: number;
  position: Pair;
  phase: Phase;
  blocker: RoleName;
  to_act: RoleName | null;
  blocked: Pair[];
  status: StatusName;
  legal_moves: Pair[];
  history: HistoryEntryJson[];
}

export interface NewGameRequest {
  mode: string;
  k: number;
  n: number;
  start: Pair;
  human: "next" | "previous";
}

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseOrThrow<T>(res: Response): Promise<T> {
  let body: unknown = null;
  try {
    body = await res.json();
  } catch {
    // fall through to the status-based error below
  }
  if (!res.ok) {
    const err = body as { code?: string; message?: string } | null;
    throw new ApiError(
      err?.code ?? "http-error",
      err?.message ?? `HTTP ${res.status}`,
      res.status,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(public readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await fetch(this.url(path), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return parseOrThrow<T>(res);
  }

  async health(): Promise<boolean> {
    try {
      const res = await fetch(this.url("/api/health"));
      return res.ok;
    } catch {
      return false;
    }
  }

  async grid(mode: string, k: number, n: number): Promise<GridResponse> {
    const query = `mode=${encodeURIComponent(mode)}&k=${k}&n=${n}`;
    return parseOrThrow<GridResponse>(await fetch(this.url(`/api/grid?${query}`)));
  }

  async newGame(req: NewGameRequest): Promise<GameStateJson> {
    return this.post<GameStateJson>("/api/game", req);
  }

  async getGame(id: string): Promise<GameStateJson> {
    return parseOrThrow<GameStateJson>(await fetch(this.url(`/api/game/${id}`)));
  }

  async block(id: string, cells: Pair[]): Promise<GameStateJson> {
    return this.post<GameStateJson>(`/api/game/${id}/block`, { cells });
  }

  async move(id: string, to: Pair): Promise<GameStateJson> {
    return this.post<GameStateJson>(`/api/game/${id}/move`, { to });
  }
}
