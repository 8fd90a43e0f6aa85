/**
 * Board presentation. `buildCellStates` is a pure function from fetched
 * data to per-cell display flags so tests can check fidelity without a
 * DOM; `renderBoard` paints those flags onto a canvas. Two-tone P/N
 * fill, a cross for blocked cells, a dot for legal moves.
 */

import type { GameStateJson, Pair } from "./api.js";
import { cellValue } from "./decode.js";

export interface CellState {
  p: boolean;
  current: boolean;
  blocked: boolean;
  legal: boolean;
  lastMove: boolean;
}

export interface BoardView {
  n: number;
  k: number;
  mode: string;
  cells: CellState[]; // index y*n + x
}

const COLORS = {
  p: "#2e6f63",
  nEven: "#f2ede2",
  nOdd: "#e7e1d3",
  gridLine: "#b9b2a2",
  current: "#d8a200",
  blocked: "#c0392b",
  legal: "#2c3e90",
};

function lastMoveOf(state: GameStateJson | null): Pair | null {
  if (!state) return null;
  for (let i = state.history.length - 1; i >= 0; i--) {
    const move = state.history[i].move;
    if (move) return move;
  }
  return null;
}

export function buildCellStates(
  bits: Uint8Array,
  n: number,
  k: number,
  mode: string,
  state: GameStateJson | null,
): BoardView {
  const legal = new Set<number>();
  const blocked = new Set<number>();
  if (state) {
    for (const [x, y] of state.legal_moves) legal.add(y * n + x);
    for (const [x, y] of state.blocked) blocked.add(y * n + x);
  }
  const last = lastMoveOf(state);
  const lastIdx = last ? last[1] * n + last[0] : -1;
  const curIdx = state ? state.position[1] * n + state.position[0] : -1;
  const cells: CellState[] = new Array(n * n);
  for (let y = 0; y < n; y++) {
    for (let x = 0; x < n; x++) {
      const idx = y * n + x;
      cells[idx] = {
        p: cellValue(bits, n, x, y),
        current: idx === curIdx,
        blocked: blocked.has(idx),
        legal: legal.has(idx),
        lastMove: idx === lastIdx,
      };
    }
  }
  return { n, k, mode, cells };
}

/** Canvas pixel size per cell, at least 6, fitting the requested extent. */
export function cellSize(n: number, extent: number): number {
  return Math.max(6, Math.floor(extent / n));
}

export function renderBoard(
  canvas: HTMLCanvasElement,
  view: BoardView,
  extent = 640,
): void {
  const n = view.n;
  const size = cellSize(n, extent);
  canvas.width = n * size + 1;
  canvas.height = n * size + 1;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let y = 0; y < n; y++) {
    for (let x = 0; x < n; x++) {
      const cell = view.cells[y * n + x];
      // y axis points up: row 0 sits at the bottom of the canvas
      const px = x * size;
      const py = (n - 1 - y) * size;
      ctx.fillStyle = cell.p ? COLORS.p : (x + y) % 2 ? COLORS.nOdd : COLORS.nEven;
      ctx.fillRect(px, py, size, size);
      if (cell.current) {
        ctx.fillStyle = COLORS.current;
        ctx.fillRect(px + 1, py + 1, size - 2, size - 2);
      }
      if (cell.legal && !cell.blocked) {
        ctx.fillStyle = COLORS.legal;
        ctx.beginPath();
        ctx.arc(px + size / 2, py + size / 2, Math.max(1.5, size / 7), 0, 2 * Math.PI);
        ctx.fill();
      }
      if (cell.blocked) {
        ctx.strokeStyle = COLORS.blocked;
        ctx.lineWidth = Math.max(1, size / 10);
        ctx.beginPath();
        ctx.moveTo(px + 2, py + 2);
        ctx.lineTo(px + size - 2, py + size - 2);
        ctx.moveTo(px + size - 2, py + 2);
        ctx.lineTo(px + 2, py + size - 2);
        ctx.stroke();
      }
      if (cell.lastMove && !cell.current) {
        ctx.strokeStyle = COLORS.current;
        ctx.lineWidth = 1;
        ctx.strokeRect(px + 1.5, py + 1.5, size - 3, size - 3);
      }
    }
  }
  ctx.strokeStyle = COLORS.gridLine;
  ctx.lineWidth = 1;
  for (let i = 0; i <= n; i++) {
    ctx.beginPath();
    ctx.moveTo(i * size + 0.5, 0);
    ctx.lineTo(i * size + 0.5, n * size);
    ctx.moveTo(0, i * size + 0.5);
    ctx.lineTo(n * size, i * size + 0.5);
    ctx.stroke();
  }
}

/** Map a canvas click back to board coordinates, or null when outside. */
export function cellAt(
  n: number,
  size: number,
  offsetX: number,
  offsetY: number,
): Pair | null {
  const x = Math.floor(offsetX / size);
  const row = Math.floor(offsetY / size);
  if (x < 0 || x >= n || row < 0 || row >= n) return null;
  return [x, n - 1 - row];
}
