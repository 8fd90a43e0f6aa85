"""Exact P/N values for an n x n board via a single row-major sweep.

Every option of (x, y) lies at a smaller y, or at the same y and smaller x,
so one pass in row-major order sees each cell only after all of its
options.  Per-column, per-diagonal and running per-row counters then give
the number of P (or N) options in O(1) per cell: O(n^2) work and O(n)
auxiliary memory overall.  Results are packed one bit per cell.
"""

from __future__ import annotations

import functools
import struct
from typing import NamedTuple

import numpy as np

from .rules import BlockingSpec, Flavor, Mode, MoveClass, Position, options

MAX_BOARD_SIDE = 65536
_MAGIC = b"BWNG"
_VERSION = 1

_MODE_CODE = {
    (Mode.ALL, Flavor.BLOCKING): 0,
    (Mode.DIAG_ONLY, Flavor.BLOCKING): 1,
    (Mode.NIM_ONLY, Flavor.BLOCKING): 2,
    (Mode.ALL, Flavor.COMPLY): 3,
    (Mode.DIAG_ONLY, Flavor.COMPLY): 4,
    (Mode.NIM_ONLY, Flavor.COMPLY): 5,
}
_CODE_MODE = {v: k for k, v in _MODE_CODE.items()}


class BoardTooLargeError(ValueError):
    """Requested side exceeds the bit-store capacity bound."""


class OptionCounts(NamedTuple):
    """Per-move-class P-option counts at one cell.

    v counts vertical targets (x, z) with z < y, h counts horizontal
    targets (w, y) with w < x, d counts diagonal targets.
    """

    v: int
    h: int
    d: int

    @property
    def f(self) -> int:
        return self.v + self.h + self.d


class PGrid:
    """Immutable bit-packed P/N table for one spec: bit 1 means P.

    Bits are row-major with cell (x, y) at index y*n + x, least significant
    bit first within each byte.
    """

    def __init__(self, spec: BlockingSpec, n: int, bits: np.ndarray):
        if bits.dtype != np.uint8 or bits.shape != ((n * n + 7) // 8,):
            raise ValueError("bits must be uint8 of length ceil(n*n/8)")
        bits.flags.writeable = False
        self.spec = spec
        self.n = n
        self._bits = bits
        self._dense: np.ndarray | None = None

    def value(self, x: int, y: int) -> bool:
        """True iff cell (x, y) is P."""
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise IndexError(f"({x}, {y}) outside {self.n} x {self.n} board")
        idx = y * self.n + x
        return bool((self._bits[idx >> 3] >> (idx & 7)) & 1)

    def bit_payload(self) -> bytes:
        return self._bits.tobytes()

    def dense(self) -> np.ndarray:
        """Unpacked (n, n) bool array indexed [y][x].  Cached."""
        if self.n > 8192:
            raise BoardTooLargeError(
                f"dense() on n={self.n} would need {self.n * self.n} bytes; "
                "read bits or row chunks instead"
            )
        if self._dense is None:
            arr = np.unpackbits(self._bits, count=self.n * self.n, bitorder="little")
            self._dense = arr.reshape(self.n, self.n).view(np.bool_)
            self._dense.flags.writeable = False
        return self._dense

    def row_block(self, y0: int, rows: int) -> np.ndarray:
        """Rows y0 .. y0+rows-1 as a (rows, n) bool array.

        y0 * n must be a byte-aligned bit index; y0 and rows multiples of 8
        always satisfy that regardless of n.
        """
        start = y0 * self.n
        if start % 8:
            raise ValueError("row block must start on a byte boundary")
        count = rows * self.n
        chunk = self._bits[start // 8 : (start + count + 7) // 8]
        arr = np.unpackbits(chunk, count=count, bitorder="little")
        return arr.reshape(rows, self.n).view(np.bool_)

    def p_count(self) -> int:
        count = self.n * self.n
        return int(np.unpackbits(self._bits, count=count, bitorder="little").sum())

    def to_bytes(self) -> bytes:
        code = _MODE_CODE[(self.spec.mode, self.spec.flavor)]
        header = struct.pack("<4sBBII", _MAGIC, _VERSION, code, self.spec.k, self.n)
        return header + self.bit_payload()

    @classmethod
    def from_bytes(cls, data: bytes) -> "PGrid":
        magic, version, code, k, n = struct.unpack_from("<4sBBII", data)
        if magic != _MAGIC:
            raise ValueError("not a grid snapshot (bad magic)")
        if version != _VERSION:
            raise ValueError(f"unsupported snapshot version {version}")
        if code not in _CODE_MODE:
            raise ValueError(f"unknown mode byte {code}")
        mode, flavor = _CODE_MODE[code]
        nbytes = (n * n + 7) // 8
        payload = data[14 : 14 + nbytes]
        if len(payload) != nbytes:
            raise ValueError("truncated snapshot payload")
        bits = np.frombuffer(payload, dtype=np.uint8).copy()
        return cls(BlockingSpec(mode, flavor, k), n, bits)

    def save(self, path) -> None:
        with open(path, "wb") as f:
            f.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "PGrid":
        with open(path, "rb") as f:
            return cls.from_bytes(f.read())


_kernel = None


def _get_kernel():
    """Compile (or load from cache) the sweep kernel on first use."""
    global _kernel
    if _kernel is None:
        import numba

        @numba.njit(cache=True, nogil=True)
        def sweep(bits, n, k, mode, flavor):
            # mode: 0 all, 1 diag-only, 2 nim-only; flavor: 0 blocking, 1 comply
            col_p = np.zeros(n, np.int64)
            diag_p = np.zeros(2 * n - 1, np.int64)
            col_n = np.zeros(n, np.int64)
            diag_n = np.zeros(2 * n - 1, np.int64)
            for y in range(n):
                row_p = 0
                row_n = 0
                for x in range(n):
                    di = x - y + n - 1
                    if flavor == 0:
                        # blocking: the next player wins iff some P option
                        # survives every legal block
                        v = col_p[x]
                        h = row_p
                        d = diag_p[di]
                        if mode == 0:
                            is_p = v + h + d < k
                        elif mode == 1:
                            is_p = d < k and v + h == 0
                        else:
                            is_p = v + h < k and d == 0
                    else:
                        # comply: the previous player wins iff a valid
                        # all-N proposal exists
                        vn = col_n[x]
                        hn = row_n
                        dn = diag_n[di]
                        if mode == 0:
                            is_p = vn + hn + dn >= k
                        elif mode == 1:
                            is_p = dn >= k or vn + hn >= 1
                        else:
                            is_p = vn + hn >= k or dn >= 1
                    if is_p:
                        col_p[x] += 1
                        diag_p[di] += 1
                        row_p += 1
                        idx = y * n + x
                        bits[idx >> 3] |= np.uint8(1 << (idx & 7))
                    else:
                        col_n[x] += 1
                        diag_n[di] += 1
                        row_n += 1
            return bits

        _kernel = sweep
    return _kernel


def _solve_any(spec: BlockingSpec, n: int) -> PGrid:
    if n < 1:
        raise ValueError(f"board side must be positive, got {n}")
    if n > MAX_BOARD_SIDE:
        raise BoardTooLargeError(
            f"n={n} exceeds the supported side {MAX_BOARD_SIDE} "
            f"({MAX_BOARD_SIDE**2 // 8 // 2**20} MiB of bits)"
        )
    bits = np.zeros((n * n + 7) // 8, dtype=np.uint8)
    mode_idx = list(Mode).index(spec.mode)
    flavor_idx = 0 if spec.flavor is Flavor.BLOCKING else 1
    _get_kernel()(bits, n, spec.k, mode_idx, flavor_idx)
    return PGrid(spec, n, bits)


def solve_grid(spec: BlockingSpec, n: int) -> PGrid:
    """Solve the full n x n board for a blocking-flavor spec.

    ALL: cell is P iff it has fewer than k P options.  DIAG_ONLY: P iff no
    vertical or horizontal P option and fewer than k diagonal ones.
    NIM_ONLY: the mirror condition.
    """
    if spec.flavor is not Flavor.BLOCKING:
        raise ValueError("solve_grid takes blocking flavor; use comply.solve_comply")
    return _solve_any(spec, n)


def count_p_options(grid: PGrid, p: Position) -> OptionCounts:
    """Recount the P options of p per move class, straight off the grid."""
    x, y = p
    if not (0 <= x < grid.n and 0 <= y < grid.n):
        raise IndexError(f"({x}, {y}) outside {grid.n} x {grid.n} board")
    v = sum(1 for z in range(y) if grid.value(x, z))
    h = sum(1 for w in range(x) if grid.value(w, y))
    d = sum(1 for i in range(1, min(x, y) + 1) if grid.value(x - i, y - i))
    return OptionCounts(v, h, d)


@functools.cache
def _bf(spec: BlockingSpec, p: Position) -> bool:
    opts = options(p)
    if spec.flavor is Flavor.BLOCKING:
        # The previous player must cover every P option with at most k-1
        # blocks drawn from the blockable classes; P options elsewhere
        # cannot be covered at all.
        free_p = 0
        blockable_p = 0
        for mv in opts:
            if _bf(spec, mv.to):
                if spec.blockable(mv.cls):
                    blockable_p += 1
                else:
                    free_p += 1
        return free_p == 0 and blockable_p <= spec.k - 1
    # Comply: a proposal is valid with >= k constrained-class options, or
    # (in the one-sided modes) with at least one option of the other kind;
    # the previous player wins iff some valid proposal is all N.
    nim_n = 0
    diag_n = 0
    for mv in opts:
        if not _bf(spec, mv.to):
            if mv.cls is MoveClass.DIAGONAL:
                diag_n += 1
            else:
                nim_n += 1
    if spec.mode is Mode.ALL:
        return nim_n + diag_n >= spec.k
    if spec.mode is Mode.DIAG_ONLY:
        return diag_n >= spec.k or nim_n >= 1
    return nim_n >= spec.k or diag_n >= 1


def brute_force_value(spec: BlockingSpec, p: Position) -> bool:
    """Independent memoized oracle; True iff p is P.

    Shares no counters or sweep order with solve_grid.  Recursion depth
    grows with x + y, so the combined size is capped.
    """
    p = Position(*p)
    if p.x + p.y > 256:
        raise ValueError("oracle is limited to x + y <= 256")
    if p.x < 0 or p.y < 0:
        raise ValueError("coordinates must be non-negative")
    return _bf(spec, p)
