"""Command line interface: ``rankgames <command> --game FILE ...``.

Every command prints one JSON document.  Exit codes: 0 when Player 0
achieves the query, 1 when Player 1 does, 2 on errors.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys

from .checking import verify_claim
from .gamefile import (GameFileError, dumps, ranked_game_file, read_game, strategy_from_dict,
                       strategy_to_dict)
from .muller import MullerGame, build_muller_reduction, solve_muller
from .oracle import TooLarge, oracle_value_positional
from .ranked import NotPrefixIndependent, VertexRankedGame, optimize_bound, solve_bound, vertex_values
from .reduction import identity_reduction
from .reqres import RRCostGame, build_rr_reduction, solve_rr
from .resilience import solve_resilient
from .strategies import simulate
from .values import INF, decode, encode


class CommandError(Exception):
    pass


def _bound(text):
    try:
        b = decode(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a bound: {text!r}") from None
    if b != INF and b < 0:
        raise argparse.ArgumentTypeError("bounds are natural numbers or inf")
    return b


def _ids(mask, ids):
    return [ids[v] for v, x in enumerate(mask) if x]


def _listing(gf, strategy):
    return None if strategy is None else strategy_to_dict(gf.arena, strategy, gf.ids)


def _reroot(game, v):
    a = game.arena.with_initial(v)
    if isinstance(game, RRCostGame):
        return RRCostGame(a, game.spec)
    return MullerGame(a, game.spec)


def _decide(game, bound):
    """(Player-0 wins from the initial vertex, regions, strategy listing source)."""
    if isinstance(game, VertexRankedGame):
        b = max(game.distinct_ranks()) if bound == INF else bound
        r = solve_bound(game, b)
        v = game.arena.initial
        return bool(r.w0[v]), r.w0, r.strategy_0 if r.w0[v] else r.strategy_1
    solver = solve_rr if isinstance(game, RRCostGame) else solve_muller
    w0 = [solver(_reroot(game, v), bound).wins for v in range(game.arena.n)]
    sol = solver(game, bound)
    return sol.wins, w0, sol.strategy


def cmd_solve(gf, args):
    bound = INF if args.bound is None else args.bound
    wins, w0, strat = _decide(gf.game, bound)
    out = {"command": "solve", "bound": encode(bound), "winner": 0 if wins else 1,
           "regions": {"0": _ids(w0, gf.ids), "1": [i for i, x in zip(gf.ids, w0) if not x]},
           "strategy": _listing(gf, strat)}
    return (0 if wins else 1), out


def cmd_optimize(gf, args):
    game = gf.game
    out = {"command": "optimize"}
    if isinstance(game, VertexRankedGame):
        value = optimize_bound(game)
        strat = solve_bound(game, value).strategy_0 if value != INF else None
        values, _ = vertex_values(game)
        out["values"] = {str(i): encode(x) for i, x in zip(gf.ids, values)}
    else:
        sol = solve_rr(game) if isinstance(game, RRCostGame) else solve_muller(game)
        value, strat = sol.value, sol.strategy
    out["value"] = encode(value)
    out["winner"] = 0 if value != INF else 1
    out["strategy"] = _listing(gf, strat)
    return (0 if value != INF else 1), out


def _witness(game):
    if isinstance(game, RRCostGame):
        return build_rr_reduction(game)
    if isinstance(game, MullerGame):
        return build_muller_reduction(game)
    return identity_reduction(game)


def cmd_reduce(gf, args):
    R = _witness(gf.game)
    T = R.target
    P = R.product
    out = {"command": "reduce", "reduction": R.name, "threshold": encode(R.b),
           "correction": repr(R.f), "memory_states": int(R.memory.size),
           "target_vertices": int(T.arena.n),
           "origin": [[gf.ids[v], int(m)] for v, m in P.pairs]}
    if args.emit_target:
        out["target"] = ranked_game_file(T)
    return 0, out


def _read_strategy(gf, path, player, what):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise GameFileError(f"syntax error: {e.msg}", line=e.lineno) from e
    s = strategy_from_dict(gf.arena, data, gf.ids)
    if s.player != player:
        raise CommandError(f"{what} must be a Player-{player} strategy")
    return s


def cmd_simulate(gf, args):
    s0 = _read_strategy(gf, args.strategy, 0, "--strategy")
    s1 = _read_strategy(gf, args.adversary, 1, "--adversary")
    play = simulate(gf.arena, s0, s1)
    cost = gf.game.cost(play)
    out = {"command": "simulate", "play": {"prefix": [gf.ids[v] for v in play.prefix],
                                           "cycle": [gf.ids[v] for v in play.cycle]},
           "cost": encode(cost)}
    return (0 if cost != INF else 1), out


def cmd_verify(gf, args):
    s = _read_strategy(gf, args.strategy, 0, "--strategy")
    ok = verify_claim(gf.game, s, args.claim)
    return (0 if ok else 1), {"command": "verify-strategy", "claim": encode(args.claim),
                              "verified": ok}


def cmd_resilience(gf, args):
    if gf.faults is None:
        raise CommandError("the game file has no faults block")
    r = solve_resilient(gf.faults, "lim" if args.eventual else "sup")
    out = {"command": "resilience", "mode": "lim" if args.eventual else "sup",
           "resilience": r.value, "bound": encode(r.bound),
           "val": {str(i): encode(x) for i, x in zip(gf.ids, r.val)},
           "strategy": _listing(gf, r.strategy)}
    return (1 if r.value == "none" else 0), out


def cmd_oracle(gf, args):
    game = gf.game
    out = {"command": "oracle"}
    if not isinstance(game, VertexRankedGame):
        game = _witness(game).target
        out["evaluated_on"] = "reduced target"
    res = oracle_value_positional(game.arena, game.cost, limit=args.limit)
    v = game.arena.initial
    out.update({"upper": encode(res.upper[v]), "lower": encode(res.lower[v]),
                "coincide": res.coincide()})
    return (0 if res.upper[v] != INF else 1), out


def build_parser():
    p = argparse.ArgumentParser(prog="rankgames", description="Vertex-ranked and quantitative games.",
                                allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        q = sub.add_parser(name, help=help, allow_abbrev=False)
        q.add_argument("--game", required=True, help="JSON game file")
        q.set_defaults(fn=fn)
        return q

    add("solve", cmd_solve, "decide 'cost at most B'").add_argument("--bound", type=_bound)
    add("optimize", cmd_optimize, "optimal cost and strategy")
    add("reduce", cmd_reduce, "build the reduction witness").add_argument(
        "--emit-target", action="store_true", help="include the target game file")
    q = add("simulate", cmd_simulate, "play two strategy listings against each other")
    q.add_argument("--strategy", required=True)
    q.add_argument("--adversary", required=True)
    q = add("verify-strategy", cmd_verify, "check a claimed cost of a Player-0 strategy")
    q.add_argument("--strategy", required=True)
    q.add_argument("--claim", required=True, type=_bound)
    add("resilience", cmd_resilience, "fault resilience of a safety game").add_argument(
        "--eventual", action="store_true", help="eventual resilience (lim-sup ranks)")
    add("oracle", cmd_oracle, "brute-force value by strategy enumeration").add_argument(
        "--limit", type=int, default=10 ** 7, help="maximal number of strategy pairs")
    return p


def run_command(argv):
    """Run one command; returns (exit code, stdout text, stderr text)."""
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = build_parser().parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), "", err.getvalue()
    try:
        gf = read_game(args.game)
        code, out = args.fn(gf, args)
    except (GameFileError, CommandError, NotPrefixIndependent, TooLarge) as e:
        return 2, "", f"error: {e}\n"
    except OSError as e:
        return 2, "", f"error: {e.filename}: {e.strerror}\n"
    return code, dumps(out), ""


def main(argv=None):
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
