"""Occurrence counting and exact p-cover checks for integer sequences.

A family of nondecreasing sequences is an exact p-cover of a range when
every integer in the range occurs exactly p times across all members.
Checks here are finite-prefix verifications: the report states the tested
range and never claims anything beyond it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple

from .closedforms import floor_phi, floor_phi2


class Sequence(NamedTuple):
    name: str
    fn: Callable[[int], int]
    start: int


@dataclass(frozen=True)
class SequenceFamily:
    members: tuple[Sequence, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("family needs at least one sequence")


class IncompleteRangeError(RuntimeError):
    """A generator did not pass the target value within the index budget.

    Treated as an error rather than a zero count: a missing tail would
    masquerade as a cover violation.
    """


class MonotonicityError(ValueError):
    """A generator decreased; occurrence counts would be unreliable."""


@dataclass
class CoverReport:
    p: int
    lo: int
    hi: int
    violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _walk(seq: Sequence, ceiling: int, index_cap: int) -> Iterator[int]:
    """Yield seq values up to ceiling, verifying monotone progress."""
    prev = None
    n = seq.start
    while n <= index_cap:
        v = seq.fn(n)
        if prev is not None and v < prev:
            raise MonotonicityError(f"{seq.name} decreases at index {n}: {prev} -> {v}")
        if v > ceiling:
            return
        yield v
        prev = v
        n += 1
    raise IncompleteRangeError(
        f"{seq.name} still at {prev} <= {ceiling} after index {index_cap}"
    )


def _default_cap(seq: Sequence, ceiling: int) -> int:
    # generous for any nondecreasing integer sequence that grows at all
    return seq.start + 4 * max(ceiling, 0) + 64


def xi(family: SequenceFamily, x: int, index_bound: int | None = None) -> int:
    """Total occurrences of x across the family."""
    total = 0
    for seq in family.members:
        cap = index_bound if index_bound is not None else _default_cap(seq, x)
        total += sum(1 for v in _walk(seq, x, cap) if v == x)
    return total


def check_exact_cover(
    family: SequenceFamily,
    lo: int,
    hi: int,
    p: int,
    index_bound: int | None = None,
) -> CoverReport:
    """List every x in [lo, hi] whose occurrence count differs from p.

    Merged iteration over the monotone generators; one pass, O(1) memory
    per sequence plus the violation list.
    """
    if lo > hi:
        raise ValueError("empty range")
    streams = []
    for seq in family.members:
        cap = index_bound if index_bound is not None else _default_cap(seq, hi)
        streams.append(v for v in _walk(seq, hi, cap) if v >= lo)
    report = CoverReport(p, lo, hi)
    run_value: int | None = None
    run_count = 0
    expected = lo

    def close_run(nxt: int) -> None:
        nonlocal expected
        if run_value is not None:
            for missing in range(expected, run_value):
                report.violations.append((missing, 0))
            if run_count != p:
                report.violations.append((run_value, run_count))
            expected = run_value + 1
        for missing in range(expected, nxt):
            report.violations.append((missing, 0))
        expected = nxt

    for v in heapq.merge(*streams):
        if v == run_value:
            run_count += 1
            continue
        close_run(v)
        run_value = v
        run_count = 1
    close_run(hi + 1)
    return report


def complementary_beatty_family() -> SequenceFamily:
    """floor(phi n) and floor(phi^2 n) for n >= 1: together they hit every
    positive integer exactly once."""
    return SequenceFamily(
        (
            Sequence("floor_phi", floor_phi, 1),
            Sequence("floor_phi2", floor_phi2, 1),
        )
    )


def double_cover_family() -> SequenceFamily:
    """Four sequences covering every positive integer exactly twice.

    Both shifted-and-doubled Beatty copies emit 2 at index 0; the second
    copy starts at index 1 so that 2 keeps multiplicity two (identity plus
    the first copy) instead of three.
    """
    return SequenceFamily(
        (
            Sequence("identity", lambda n: n, 1),
            Sequence("odd", lambda n: 2 * n + 1, 0),
            Sequence("even_phi", lambda n: 2 * floor_phi(n) + 2, 0),
            Sequence("even_phi2", lambda n: 2 * floor_phi2(n) + 2, 1),
        )
    )


def tail_cover_family() -> SequenceFamily:
    """Three sequences covering {3, 4, 5, ...} exactly once: odd numbers
    from 3 plus the two doubled-and-shifted Beatty sequences, which split
    the even numbers from 4 between them."""
    return SequenceFamily(
        (
            Sequence("even_phi", lambda n: 2 * floor_phi(n) + 2, 1),
            Sequence("even_phi2", lambda n: 2 * floor_phi2(n) + 2, 1),
            Sequence("odd", lambda n: 2 * n + 1, 1),
        )
    )
