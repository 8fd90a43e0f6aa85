import { describe, expect, it } from "vitest";

import {
  cellValue,
  decodeBase64,
  decodeGrid,
  encodeBase64,
  packBits,
  unpackBits,
} from "../src/decode.js";

describe("payload codec", () => {
  it("decodes a hand-built 4x4 payload", () => {
    // single P bit at (1, 2): index 2*4 + 1 = 9 -> byte 1, bit 1
    const payload = new Uint8Array([0x00, 0x02]);
    const cells = unpackBits(payload, 4);
    expect(cells.length).toBe(16);
    expect(cellValue(cells, 4, 1, 2)).toBe(true);
    expect([...cells].reduce((a, b) => a + b, 0)).toBe(1);
  });

  it("is LSB-first within each byte", () => {
    const cells = unpackBits(new Uint8Array([0b0000_0101]), 2);
    // bits 0 and 2 set -> cells (0,0) and (0,1) on a 2x2 board
    expect([...cells]).toEqual([1, 0, 1, 0]);
  });

  it("round-trips pack -> base64 -> decode", () => {
    const n = 13;
    const cells = new Uint8Array(n * n);
    let seed = 41;
    for (let i = 0; i < cells.length; i++) {
      seed = (seed * 75 + 74) % 65537;
      cells[i] = seed & 1;
    }
    const b64 = encodeBase64(packBits(cells, n));
    expect(decodeGrid(b64, n)).toEqual(cells);
  });

  it("re-encoding the decoded payload is the identity", () => {
    const payload = new Uint8Array([0x3a, 0x91, 0x00, 0xff, 0x07]);
    const b64 = encodeBase64(payload);
    const cells = unpackBits(decodeBase64(b64), 6);
    expect(encodeBase64(packBits(cells, 6))).toBe(b64);
  });

  it("rejects a payload of the wrong length", () => {
    expect(() => unpackBits(new Uint8Array(3), 4)).toThrow(/needs 2/);
    expect(() => packBits(new Uint8Array(9), 4)).toThrow(/16 cells/);
  });
});
