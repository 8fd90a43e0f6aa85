/**
 * DOM wiring for the play page. All game state comes from the service;
 * this file only moves values between form controls, the session
 * controller, and the canvas.
 */

import { ApiClient } from "./api.js";
import type { GameStateJson } from "./api.js";
import { buildCellStates, cellAt, cellSize, renderBoard } from "./board.js";
import { decodeGrid } from "./decode.js";
import { PlayController } from "./play.js";

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const canvas = $<HTMLCanvasElement>("board");
const statusLine = $<HTMLElement>("status");
const errorLine = $<HTMLElement>("error");
const commitButton = $<HTMLButtonElement>("commit");

let api = new ApiClient(readBaseUrl());
let bits: Uint8Array | null = null;
let bitsKey = "";
let controller: PlayController | null = null;

function readBaseUrl(): string {
  return ($<HTMLInputElement>("base-url").value || "http://127.0.0.1:8000").trim();
}

function readSettings() {
  return {
    mode: $<HTMLSelectElement>("mode").value,
    k: Number($<HTMLInputElement>("k").value),
    n: Number($<HTMLInputElement>("n").value),
  };
}

function showError(code: string, message: string): void {
  errorLine.textContent = `${code}: ${message}`;
  errorLine.hidden = false;
}

function clearError(): void {
  errorLine.hidden = true;
  errorLine.textContent = "";
}

function describe(state: GameStateJson | null): string {
  if (!state) return "no session; load a board or start a game";
  const [x, y] = state.position;
  if (state.status !== "ongoing") {
    return `game over at (${x}, ${y}): ${state.status.replace("_", " ")}`;
  }
  const actor = state.to_act === "human" ? "you" : "engine";
  const what = state.phase === "await_block"
    ? `block up to ${state.k - 1} cells, then commit`
    : "pick a move";
  return `position (${x}, ${y}); ${actor} to act: ${what}`;
}

function redraw(): void {
  const { mode, k, n } = readSettings();
  if (!bits) return;
  const state = controller?.state ?? null;
  const view = buildCellStates(bits, n, k, mode, state);
  if (controller && state?.phase === "await_block") {
    for (const [x, y] of controller.selectedBlocks) {
      view.cells[y * n + x].blocked = true;
    }
  }
  renderBoard(canvas, view);
  statusLine.textContent = describe(state);
  commitButton.hidden = !(
    state?.status === "ongoing" &&
    state.phase === "await_block" &&
    state.to_act === "human"
  );
}

async function ensureBits(): Promise<void> {
  const { mode, k, n } = readSettings();
  const wanted = `${mode}/${k}/${n}/${api.baseUrl}`;
  if (bitsKey === wanted && bits) return;
  const res = await api.grid(mode, k, n);
  bits = decodeGrid(res.bits, res.n);
  bitsKey = wanted;
}

async function loadBoard(): Promise<void> {
  clearError();
  api = new ApiClient(readBaseUrl());
  bitsKey = "";
  try {
    await ensureBits();
  } catch (err) {
    showError("network", String(err));
    return;
  }
  controller = null;
  redraw();
}

async function startGame(): Promise<void> {
  clearError();
  api = new ApiClient(readBaseUrl());
  bitsKey = "";
  const { mode, k, n } = readSettings();
  try {
    await ensureBits();
  } catch (err) {
    showError("network", String(err));
    return;
  }
  controller = new PlayController(api, {
    onState: () => {
      clearError();
      redraw();
    },
    onError: showError,
  });
  await controller.start({
    mode,
    k,
    n,
    start: [
      Number($<HTMLInputElement>("start-x").value),
      Number($<HTMLInputElement>("start-y").value),
    ],
    human: $<HTMLSelectElement>("human").value as "next" | "previous",
  });
  redraw();
}

canvas.addEventListener("click", async (ev) => {
  if (!controller?.state) return;
  const n = controller.state.n;
  const size = cellSize(n, 640);
  const cell = cellAt(n, size, ev.offsetX, ev.offsetY);
  if (!cell) return;
  await controller.clickCell(cell);
  redraw();
});

commitButton.addEventListener("click", async () => {
  await controller?.commitBlocks();
  redraw();
});

$<HTMLButtonElement>("load").addEventListener("click", loadBoard);
$<HTMLButtonElement>("new-game").addEventListener("click", startGame);

redraw();
