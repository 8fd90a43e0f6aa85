"""P-pair extraction, structural column checks, and ratio asymptotics.

P cells with x <= y, listed in lexicographic order, form the pair list
(a_i, b_i).  On ALL-mode blocking grids every column holds exactly k P
cells once the board is tall enough to show all of them, ratios b_i/a_i
aggregate around a small set of limits, and for k=4 the differences
delta_i track i/2 with bounded error.  Everything here reads immutable
grids and is safe to run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, TextIO

import numpy as np

from .rules import Flavor, Mode
from .solver import PGrid

CSV_HEADER = "n,a_n,b_n,delta_n"


class InsufficientSampleError(ValueError):
    """Tail slice too small for a meaningful estimate."""


@dataclass
class PPairList:
    """Sorted P-pairs of one grid: a[i] <= b[i], ordered by (a, b)."""

    k: int
    n: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        if self.a.shape != self.b.shape:
            raise ValueError("coordinate arrays must align")

    def __len__(self) -> int:
        return len(self.a)

    @property
    def deltas(self) -> np.ndarray:
        return self.b - self.a

    def pair(self, i: int) -> tuple[int, int]:
        return (int(self.a[i]), int(self.b[i]))

    def to_csv(self, out: TextIO, limit: int | None = None) -> None:
        m = len(self) if limit is None else min(limit, len(self))
        out.write(CSV_HEADER + "\n")
        d = self.deltas
        for i in range(m):
            out.write(f"{i},{self.a[i]},{self.b[i]},{d[i]}\n")


def extract_pairs(grid: PGrid) -> PPairList:
    """All P cells with x <= y, in lexicographic (a, b) order."""
    if grid.spec.flavor is not Flavor.BLOCKING:
        raise ValueError("pair lists are defined for blocking-flavor grids")
    n = grid.n
    xs_parts = []
    ys_parts = []
    for y0 in range(0, n, 8):
        rows = min(8, n - y0)
        block = grid.row_block(y0, rows)
        for r in range(rows):
            y = y0 + r
            xs = np.nonzero(block[r, : y + 1])[0]
            if xs.size:
                xs_parts.append(xs.astype(np.int64))
                ys_parts.append(np.full(xs.size, y, dtype=np.int64))
    if not xs_parts:
        return PPairList(grid.spec.k, n, np.empty(0, np.int64), np.empty(0, np.int64))
    a = np.concatenate(xs_parts)
    b = np.concatenate(ys_parts)
    order = np.lexsort((b, a))
    return PPairList(grid.spec.k, n, a[order], b[order])


@dataclass
class PropReport:
    """Column-count and difference-multiplicity findings for one grid.

    column_counts_ok_through is the largest x such that every column up to
    x holds exactly k P cells; columns beyond it may only be undercounted
    by board truncation, so an overfull column anywhere is a hard failure.
    prefix_cell_count is the total over the verified prefix, which equals
    k times the prefix width (one more column's worth than k times the
    last verified index).
    """

    k: int
    n: int
    column0_count: int
    column_counts_ok_through: int
    overfull_columns: list[int] = field(default_factory=list)
    difference_violations: list[tuple[int, int]] = field(default_factory=list)
    prefix_cell_count: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.column0_count == self.k
            and not self.overfull_columns
            and not self.difference_violations
        )


def check_prop2(grid: PGrid, k: int | None = None) -> PropReport:
    """Verify per-column P counts and difference multiplicities."""
    if grid.spec.mode is not Mode.ALL or grid.spec.flavor is not Flavor.BLOCKING:
        raise ValueError("column structure is defined for ALL-mode blocking grids")
    if k is None:
        k = grid.spec.k
    elif k != grid.spec.k:
        raise ValueError(f"grid was solved with k={grid.spec.k}, not {k}")
    n = grid.n
    col_counts = np.zeros(n, dtype=np.int64)
    for y0 in range(0, n, 8):
        rows = min(8, n - y0)
        col_counts += grid.row_block(y0, rows).sum(axis=0)
    overfull = [int(x) for x in np.nonzero(col_counts > k)[0]]
    exact = col_counts == k
    if exact.all():
        ok_through = n - 1
    else:
        ok_through = int(np.argmin(exact)) - 1  # first non-exact column, minus one
    prefix_cells = int(col_counts[: ok_through + 1].sum()) if ok_through >= 0 else 0

    pairs = extract_pairs(grid)
    counts = np.bincount(pairs.deltas) if len(pairs) else np.empty(0, np.int64)
    diff_violations = [(int(d), int(c)) for d, c in enumerate(counts) if c > k]
    return PropReport(
        k=k,
        n=n,
        column0_count=int(col_counts[0]),
        column_counts_ok_through=ok_through,
        overfull_columns=overfull,
        difference_violations=diff_violations,
        prefix_cell_count=prefix_cells,
    )


class Cluster(NamedTuple):
    center: float
    weight: int


@dataclass
class SplitEstimate:
    k: int
    n: int
    tail_fraction: float
    gap: float
    clusters: list[Cluster]
    alpha_hat: float | None
    beta_hat: float | None

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "tail_fraction": self.tail_fraction,
            "gap": self.gap,
            "clusters": [{"center": c.center, "weight": c.weight} for c in self.clusters],
            "alpha_hat": self.alpha_hat,
            "beta_hat": self.beta_hat,
        }


def estimate_splits(
    pairs: PPairList, tail_fraction: float = 0.25, gap: float = 0.15
) -> SplitEstimate:
    """Cluster the tail ratios b_i/a_i by 1-D gap splitting.

    Ratios from the last tail_fraction of indices (pairs with a_i = 0
    dropped) are sorted and split wherever consecutive values differ by
    more than gap.  With a single cluster the per-coordinate growth rates
    alpha_hat = mean(a_i/i) and beta_hat = mean(b_i/i) are fitted too.
    """
    if not 0 < tail_fraction < 1:
        raise ValueError("tail_fraction must be in (0, 1)")
    if gap <= 0:
        raise ValueError("gap must be positive")
    m = len(pairs)
    lo = math.ceil((1 - tail_fraction) * m)
    idx = np.arange(m)[lo:]
    a = pairs.a[lo:]
    b = pairs.b[lo:]
    keep = a > 0
    idx, a, b = idx[keep], a[keep], b[keep]
    if len(a) < 100:
        raise InsufficientSampleError(
            f"tail holds {len(a)} usable pairs, need at least 100"
        )
    ratios = np.sort(b / a)
    splits = np.nonzero(np.diff(ratios) > gap)[0] + 1
    groups = np.split(ratios, splits)
    clusters = [Cluster(float(g.mean()), int(g.size)) for g in groups]
    alpha_hat = beta_hat = None
    if len(clusters) == 1:
        alpha_hat = float(np.mean(a / idx))
        beta_hat = float(np.mean(b / idx))
    return SplitEstimate(
        k=pairs.k,
        n=pairs.n,
        tail_fraction=tail_fraction,
        gap=gap,
        clusters=clusters,
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
    )


def delta_trend(pairs: PPairList) -> tuple[float, float]:
    """Max |delta_i - i/2| over the first and second halves of the list."""
    m = len(pairs)
    if m < 2:
        raise ValueError("need at least two pairs")
    dev = np.abs(pairs.deltas - np.arange(m) / 2.0)
    half = m // 2
    return float(dev[:half].max()), float(dev[half:].max())


def harmonic_density_check(
    pairs: PPairList, tail_fraction: float = 0.25, gap: float = 0.15
) -> float:
    """alpha_hat^-1 + beta_hat^-1 from a single-cluster fit; expected
    close to the k the list was solved with."""
    est = estimate_splits(pairs, tail_fraction, gap)
    if est.alpha_hat is None or est.beta_hat is None:
        raise ValueError(
            f"ratio tail splits into {len(est.clusters)} clusters; "
            "growth rates are only fitted for a single cluster"
        )
    return 1.0 / est.alpha_hat + 1.0 / est.beta_hat
