/**
 * Grid payload codec.
 *
 * The service ships P/N values as base64 over a row-major bit array:
 * bit index y*n + x, least significant bit first within each byte,
 * 1 = P. Decoding and re-encoding must round-trip exactly; the board
 * renderer trusts these bits and nothing else.
 */

export function decodeBase64(b64: string): Uint8Array {
  const raw = atob(b64);
  const out = new Uint8Array(raw.length);
  for (let i = 0; i < raw.length; i++) out[i] = raw.charCodeAt(i);
  return out;
}

export function encodeBase64(bytes: Uint8Array): string {
  let raw = "";
  for (let i = 0; i < bytes.length; i++) raw += String.fromCharCode(bytes[i]);
  return btoa(raw);
}

/** Unpack the payload into one byte per cell (index y*n + x, 1 = P). */
export function unpackBits(payload: Uint8Array, n: number): Uint8Array {
  const total = n * n;
  if (payload.length !== Math.ceil(total / 8)) {
    throw new Error(
      `payload is ${payload.length} bytes; a ${n} x ${n} board needs ${Math.ceil(total / 8)}`,
    );
  }
  const cells = new Uint8Array(total);
  for (let i = 0; i < total; i++) {
    cells[i] = (payload[i >> 3] >> (i & 7)) & 1;
  }
  return cells;
}

/** Pack one-byte-per-cell values back into the wire format. */
export function packBits(cells: Uint8Array, n: number): Uint8Array {
  const total = n * n;
  if (cells.length !== total) {
    throw new Error(`expected ${total} cells, got ${cells.length}`);
  }
  const payload = new Uint8Array(Math.ceil(total / 8));
  for (let i = 0; i < total; i++) {
    if (cells[i]) payload[i >> 3] |= 1 << (i & 7);
  }
  return payload;
}

export function decodeGrid(bitsB64: string, n: number): Uint8Array {
  return unpackBits(decodeBase64(bitsB64), n);
}

export function cellValue(cells: Uint8Array, n: number, x: number, y: number): boolean {
  return cells[y * n + x] === 1;
}
