/**
 * DOM-free session controller. It relays clicks to the service and
 * republishes whatever state comes back; the only local bookkeeping is
 * the pending block selection. Legality filtering here is advisory
 * (click hygiene): the service remains authoritative and its rejections
 * are surfaced verbatim.
 */

import { ApiClient, ApiError } from "./api.js";
import type { GameStateJson, NewGameRequest, Pair } from "./api.js";

export interface PlayEvents {
  onState: (state: GameStateJson) => void;
  onError: (code: string, message: string) => void;
}

const key = (cell: Pair) => `${cell[0]},${cell[1]}`;

export class PlayController {
  state: GameStateJson | null = null;
  private selection = new Map<string, Pair>();

  constructor(
    private readonly api: ApiClient,
    private readonly events: PlayEvents,
  ) {}

  get blockBudget(): number {
    return this.state ? this.state.k - 1 : 0;
  }

  get selectedBlocks(): Pair[] {
    return [...this.selection.values()].sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  }

  private async relay(action: () => Promise<GameStateJson>): Promise<void> {
    try {
      this.state = await action();
      this.events.onState(this.state);
    } catch (err) {
      if (err instanceof ApiError) {
        this.events.onError(err.code, err.message);
      } else {
        this.events.onError("network", String(err));
      }
    }
  }

  async start(req: NewGameRequest): Promise<void> {
    this.selection.clear();
    await this.relay(() => this.api.newGame(req));
  }

  async refresh(): Promise<void> {
    if (this.state) {
      const id = this.state.id;
      await this.relay(() => this.api.getGame(id));
    }
  }

  private humanTurn(phase: "await_block" | "await_move"): boolean {
    return (
      this.state !== null &&
      this.state.status === "ongoing" &&
      this.state.phase === phase &&
      this.state.to_act === "human"
    );
  }

  private isLegalTarget(cell: Pair): boolean {
    return this.state!.legal_moves.some(
      (m) => m[0] === cell[0] && m[1] === cell[1],
    );
  }

  /** Toggle a cell in the pending block selection (advisory limits). */
  toggleBlock(cell: Pair): boolean {
    if (!this.humanTurn("await_block")) return false;
    const k = key(cell);
    if (this.selection.has(k)) {
      this.selection.delete(k);
      return true;
    }
    if (this.selection.size >= this.blockBudget) return false;
    if (!this.isLegalTarget(cell)) return false;
    this.selection.set(k, cell);
    return true;
  }

  /** Send the pending selection; the engine's reply rides the response. */
  async commitBlocks(): Promise<void> {
    if (!this.humanTurn("await_block")) return;
    const id = this.state!.id;
    const cells = this.selectedBlocks;
    this.selection.clear();
    await this.relay(() => this.api.block(id, cells));
  }

  async move(cell: Pair): Promise<void> {
    if (!this.humanTurn("await_move")) return;
    const id = this.state!.id;
    await this.relay(() => this.api.move(id, cell));
  }

  /** Route a board click by phase: select blocks or play a move. */
  async clickCell(cell: Pair): Promise<void> {
    if (this.humanTurn("await_block")) {
      this.toggleBlock(cell);
    } else if (this.humanTurn("await_move")) {
      if (this.isLegalTarget(cell)) await this.move(cell);
    }
  }
}
