"""Command line front end: solve, pairs, verify, analyze, serve, play."""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import check_prop2, estimate_splits, extract_pairs
from .closedforms import CANDIDATE_SETS, check_theorem1_cases
from .comply import ComplyRule, check_duality, solve_comply
from .covers import (
    check_exact_cover,
    complementary_beatty_family,
    double_cover_family,
    tail_cover_family,
)
from .game import Seat, Status, apply_block, apply_move, legal_moves, new_game
from .rules import BlockingSpec, Flavor, Mode, Position, option_count, terminal_count, terminal_set
from .solver import solve_grid


def _spec(args) -> BlockingSpec:
    return BlockingSpec(
        Mode.from_string(args.mode),
        Flavor.from_string(getattr(args, "flavor", "blocking")),
        args.k,
    )


def cmd_solve(args) -> int:
    spec = _spec(args)
    if spec.flavor is Flavor.COMPLY:
        grid = solve_comply(ComplyRule(spec.mode, spec.k), args.n)
    else:
        grid = solve_grid(spec, args.n)
    grid.save(args.out)
    print(f"wrote {args.out}: {args.flavor} {args.mode} k={args.k} n={args.n}, "
          f"{grid.p_count()} P cells")
    return 0


def cmd_pairs(args) -> int:
    grid = solve_grid(BlockingSpec(Mode.ALL, Flavor.BLOCKING, args.k), args.n)
    extract_pairs(grid).to_csv(sys.stdout, limit=args.limit)
    return 0


def _report(ok: bool, payload: dict) -> int:
    payload["ok"] = bool(ok)
    print(json.dumps(payload, indent=2))
    return 0 if ok else 1


def _verify_theorem1(k: int, n: int) -> int:
    cset = CANDIDATE_SETS[k]
    pairs = extract_pairs(solve_grid(BlockingSpec(Mode.ALL, Flavor.BLOCKING, k), n))
    got = list(zip(pairs.a, pairs.b))
    want = [tuple(p) for p in cset.enumerate_pairs(n)]
    mismatch = next(
        (list(g) + list(w) for g, w in zip(got, want) if g != w), None
    )
    ok = got == want
    return _report(ok, {
        "target": "theorem1",
        "k": k,
        "n": n,
        "candidate_set": cset.id,
        "solver_pairs": len(got),
        "candidate_pairs": len(want),
        "first_mismatch": mismatch if not ok else None,
    })


def _verify_prop2(k: int, n: int) -> int:
    report = check_prop2(solve_grid(BlockingSpec(Mode.ALL, Flavor.BLOCKING, k), n))
    return _report(report.ok, {
        "target": "prop2",
        "k": k,
        "n": n,
        "column0_count": report.column0_count,
        "columns_exact_through": report.column_counts_ok_through,
        "prefix_cell_count": report.prefix_cell_count,
        "overfull_columns": report.overfull_columns[:10],
        "difference_violations": report.difference_violations[:10],
    })


def _verify_terminal(k_max: int) -> int:
    bad = []
    for k in range(1, k_max + 1):
        cells = terminal_set(k).cells
        stuck = sum(
            1
            for x in range(k)
            for y in range(k)
            if option_count(Position(x, y)) < k
        )
        if not (terminal_count(k) == len(cells) == stuck):
            bad.append({"k": k, "formula": terminal_count(k),
                        "enumerated": len(cells), "stuck_cells": stuck})
    return _report(not bad, {"target": "terminal", "k_max": k_max, "mismatches": bad})


def _verify_duality(k: int, n: int) -> int:
    results = []
    for mode in Mode:
        res = check_duality(mode, k, n)
        results.append({
            "mode": mode.value,
            "ok": res.ok,
            "first_mismatch": list(res.first_mismatch) if res.first_mismatch else None,
        })
    return _report(all(r["ok"] for r in results),
                   {"target": "duality", "k": k, "n": n, "results": results})


def _verify_covers(bound: int) -> int:
    checks = [
        ("complementary_beatty", complementary_beatty_family(), 1, bound, 1),
        ("double_cover", double_cover_family(), 1, bound, 2),
        ("tail_cover", tail_cover_family(), 3, max(bound, 3), 1),
    ]
    results = []
    for name, family, lo, hi, p in checks:
        rep = check_exact_cover(family, lo, hi, p)
        results.append({
            "family": name,
            "range": [lo, hi],
            "multiplicity": p,
            "ok": rep.ok,
            "violations": [list(v) for v in rep.violations[:10]],
        })
    return _report(all(r["ok"] for r in results),
                   {"target": "covers", "bound": bound, "results": results})


def _verify_cases(bound: int) -> int:
    report = check_theorem1_cases(bound)
    return _report(report.all_ok, {
        "target": "cases",
        "bound": bound,
        "cases": [
            {
                "name": c.name,
                "claim": c.claim,
                "checked": c.checked,
                "ok": c.ok,
                "counterexample": (
                    [list(c.counterexample[0]), list(c.counterexample[1])]
                    if c.counterexample
                    else None
                ),
            }
            for c in report.cases
        ],
    })


def cmd_verify(args) -> int:
    target = args.target
    if target == "theorem1":
        k = args.k if args.k is not None else 2
        if k not in CANDIDATE_SETS:
            print(json.dumps({"target": target, "ok": False,
                              "error": f"no candidate set for k={k}; use 1, 2 or 3"}))
            return 1
        return _verify_theorem1(k, args.n or 1024)
    if target == "prop2":
        return _verify_prop2(args.k or 2, args.n or 1024)
    if target == "terminal":
        return _verify_terminal(args.k or 50)
    if target == "duality":
        return _verify_duality(args.k or 2, args.n or 256)
    if target == "covers":
        return _verify_covers(args.bound or 100_000)
    return _verify_cases(args.bound or 512)


def cmd_analyze(args) -> int:
    grid = solve_grid(BlockingSpec(Mode.ALL, Flavor.BLOCKING, args.k), args.n)
    est = estimate_splits(extract_pairs(grid), tail_fraction=args.tail, gap=args.gap)
    print(json.dumps(est.as_dict(), indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(grid_cache_mb=args.grid_cache_mb),
        host=args.host,
        port=args.port,
        log_level="warning",
    )
    return 0


def _render_board(state) -> str:
    n = state.n
    if n > 40:
        x, y = state.position
        return f"position ({x}, {y}); board too large to draw"
    moves = set(legal_moves(state))
    rows = []
    for y in range(n - 1, -1, -1):
        cells = []
        for x in range(n):
            cell = Position(x, y)
            if cell == state.position:
                ch = "@"
            elif cell in state.blocked:
                ch = "x"
            elif cell in moves:
                ch = "o"
            else:
                ch = "P" if state.grid.value(x, y) else "."
            cells.append(ch)
        rows.append(f"{y:3d} " + " ".join(cells))
    rows.append("    " + " ".join(f"{x % 10}" for x in range(n)))
    return "\n".join(rows)


def _parse_cells(text: str) -> list[Position]:
    out = []
    for part in text.replace(";", ",").split(","):
        part = part.strip()
        if part:
            x, y = part.split()
            out.append(Position(int(x), int(y)))
    return out


def cmd_play(args) -> int:
    spec = BlockingSpec(Mode.ALL, Flavor.BLOCKING, args.k)
    grid = solve_grid(spec, args.n)
    try:
        raw = input(f"start position 'x y' (each 0..{args.n - 1}): ")
        start = _parse_cells(raw)[0]
        seat_raw = input("play as (n)ext to move or (p)revious blocker? ").strip().lower()
        seat = Seat.NEXT if seat_raw.startswith("n") else Seat.PREVIOUS
        state = new_game(spec, args.n, start, seat, grid)
        while state.status is Status.ONGOING:
            print(_render_board(state))
            print(f"blocked: {sorted(tuple(c) for c in state.blocked)}")
            try:
                if state.phase.value == "await_block":
                    raw = input(f"block up to {spec.k - 1} cells 'x y, x y' (empty for none): ")
                    apply_block(state, _parse_cells(raw))
                else:
                    raw = input("move to 'x y': ")
                    apply_move(state, _parse_cells(raw)[0])
            except Exception as exc:  # noqa: BLE001 - loop keeps the session alive
                print(f"rejected: {exc}")
    except (EOFError, KeyboardInterrupt):
        print("\naborted")
        return 1
    print(_render_board(state))
    print(f"result: {state.status.value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockwyt",
        description="Blocking-k Wythoff Nim: solver, verifiers, game service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute a P/N grid and write it in the binary format")
    s.add_argument("--k", type=int, required=True, help="block budget plus one")
    s.add_argument("--n", type=int, required=True, help="board side")
    s.add_argument("--mode", choices=["all", "diag", "nim"], default="all")
    s.add_argument("--flavor", choices=["blocking", "comply"], default="blocking")
    s.add_argument("--out", required=True, help="output file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("pairs", help="emit the sorted P-pair table as CSV")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--limit", type=int, default=None, help="emit only the first M rows")
    s.add_argument("--format", choices=["csv"], default="csv")
    s.set_defaults(func=cmd_pairs)

    s = sub.add_parser("verify", help="run a named check; JSON report, exit 0/1")
    s.add_argument(
        "target",
        choices=["theorem1", "prop2", "terminal", "duality", "covers", "cases"],
    )
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--bound", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="numeric diagnostics")
    asub = s.add_subparsers(dest="analysis", required=True)
    sp = asub.add_parser("splits", help="cluster a_n/n ratios and estimate densities")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tail", type=float, default=0.25)
    sp.add_argument("--gap", type=float, default=0.15)
    sp.add_argument("--format", choices=["json"], default="json")
    sp.set_defaults(func=cmd_analyze)

    s = sub.add_parser("serve", help="run the HTTP game service")
    s.add_argument("--port", type=int, default=8000)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--grid-cache-mb", type=int, default=256)
    s.set_defaults(func=cmd_serve)

    s = sub.add_parser("play", help="text-mode game against the engine")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_play)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
