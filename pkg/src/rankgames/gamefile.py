"""JSON game files.

A file is one JSON object::

    {"arena": {"vertices": [{"id": 0, "owner": 0}, ...],
               "edges": [[0, 1], ...], "initial": 0},
     "condition": {"type": "buchi", "target": [1]},
     "faults": {"edges": [[0, 2]], "safe": [0, 1]}}

Vertex ids are integers and need not be contiguous; internally vertices
are numbered in the order they are listed.  Condition types:
safetyAvoid (avoid), safetySafe (safe), buchi (target), cobuchi
(forbidden), requestResponse (pairs of request/response),
requestResponseCosts (pairs with an extra ``costs`` list of [u, v, w]),
quantMuller (family of vertex sets) and vertexRanked (mode, underlying
qualitative condition, ranks as an id-to-rank object, missing ranks 0).
The faults block is optional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .arena import Arena, ArenaError
from .muller import MullerGame, MullerSpec
from .qualitative import Buchi, CoBuchi, RequestResponse, SafetyAvoid
from .ranked import VertexRankedGame
from .reqres import RRCostGame, RRCostSpec
from .resilience import FaultArena
from .values import encode

QUALITATIVE = ("safetyAvoid", "safetySafe", "buchi", "cobuchi", "requestResponse")
CONDITIONS = QUALITATIVE + ("requestResponseCosts", "quantMuller", "vertexRanked")


class GameFileError(ValueError):
    """Diagnostic with the JSON line (syntax errors) or field path."""

    def __init__(self, message, field=None, line=None):
        self.field, self.line = field, line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        super().__init__(f"{': '.join(where)}: {message}" if where else message)


@dataclass
class GameFile:
    """Parsed game.

    ``game`` is a VertexRankedGame (qualitative conditions become rank-0
    sup games, so their cost is 0 or infinity), an RRCostGame or a
    MullerGame.  ``condition`` keeps the parsed block for serialization.
    """
    arena: Arena
    ids: list
    condition: dict
    game: object
    faults: FaultArena = None

    @property
    def kind(self):
        return self.condition["type"]

    def vid(self, v):
        return self.ids[int(v)]

    def index_of(self, i):
        return self.ids.index(i)


def _expect(cond, msg, field):
    if not cond:
        raise GameFileError(msg, field)


def _int(x, field):
    _expect(isinstance(x, int) and not isinstance(x, bool), "integer expected", field)
    return x


def _list(x, field):
    _expect(isinstance(x, list), "list expected", field)
    return x


def _parse_arena(block):
    _expect(isinstance(block, dict), "object expected", "arena")
    verts = _list(block.get("vertices"), "arena.vertices")
    _expect(len(verts) > 0, "at least one vertex required", "arena.vertices")
    ids, owner = [], []
    for i, v in enumerate(verts):
        f = f"arena.vertices[{i}]"
        _expect(isinstance(v, dict), "object expected", f)
        vid = _int(v.get("id"), f + ".id")
        _expect(vid not in ids, f"duplicate vertex id {vid}", f + ".id")
        own = _int(v.get("owner"), f + ".owner")
        _expect(own in (0, 1), "owner must be 0 or 1", f + ".owner")
        ids.append(vid)
        owner.append(own)
    index = {vid: k for k, vid in enumerate(ids)}
    succ = [[] for _ in ids]
    for i, e in enumerate(_list(block.get("edges"), "arena.edges")):
        f = f"arena.edges[{i}]"
        _expect(isinstance(e, list) and len(e) == 2, "edge must be [source, target]", f)
        u, w = (_int(x, f) for x in e)
        _expect(u in index, f"dangling vertex id {u}", f)
        _expect(w in index, f"dangling vertex id {w}", f)
        _expect(index[w] not in succ[index[u]], f"duplicate edge {[u, w]}", f)
        succ[index[u]].append(index[w])
    for k, s in enumerate(succ):
        _expect(s, f"terminal vertex {ids[k]} (no successor)", "arena.edges")
    init = _int(block.get("initial"), "arena.initial")
    _expect(init in index, f"dangling vertex id {init}", "arena.initial")
    try:
        arena = Arena(owner, succ, index[init])
    except ArenaError as e:
        raise GameFileError(str(e), "arena") from e
    return arena, ids, index


def _mask(n, index, ids, field):
    m = np.zeros(n, dtype=bool)
    for i, x in enumerate(_list(ids, field)):
        x = _int(x, f"{field}[{i}]")
        _expect(x in index, f"dangling vertex id {x}", f"{field}[{i}]")
        m[index[x]] = True
    return m


def _qualitative(block, n, index, field):
    t = block.get("type")
    if t == "safetyAvoid":
        return SafetyAvoid(_mask(n, index, block.get("avoid"), field + ".avoid"))
    if t == "safetySafe":
        return SafetyAvoid(~_mask(n, index, block.get("safe"), field + ".safe"))
    if t == "buchi":
        return Buchi(_mask(n, index, block.get("target"), field + ".target"))
    if t == "cobuchi":
        return CoBuchi(_mask(n, index, block.get("forbidden"), field + ".forbidden"))
    if t == "requestResponse":
        Q, P, _ = _pairs(block, n, index, field, costs=False)
        return RequestResponse(Q, P)
    raise GameFileError(f"unknown or non-qualitative condition type {t!r}", field + ".type")


def _pairs(block, n, index, field, costs):
    Q, P, C = [], [], []
    for i, pair in enumerate(_list(block.get("pairs"), field + ".pairs")):
        f = f"{field}.pairs[{i}]"
        _expect(isinstance(pair, dict), "object expected", f)
        Q.append(_mask(n, index, pair.get("request"), f + ".request"))
        P.append(_mask(n, index, pair.get("response"), f + ".response"))
        tab = {}
        if costs:
            for j, e in enumerate(_list(pair.get("costs", []), f + ".costs")):
                g = f"{f}.costs[{j}]"
                _expect(isinstance(e, list) and len(e) == 3, "cost must be [source, target, weight]", g)
                u, w, c = (_int(x, g) for x in e)
                _expect(u in index and w in index, "dangling vertex id", g)
                _expect(c >= 0, "costs must be non-negative", g)
                tab[(index[u], index[w])] = c
        C.append(tab)
    return Q, P, C


def _build(arena, ids, index, block):
    _expect(isinstance(block, dict), "object expected", "condition")
    t = block.get("type")
    _expect(t in CONDITIONS, f"unknown condition type {t!r}", "condition.type")
    n = arena.n
    if t in QUALITATIVE:
        return VertexRankedGame(arena, _qualitative(block, n, index, "condition"), np.zeros(n))
    if t == "vertexRanked":
        mode = block.get("mode", "sup")
        _expect(mode in ("sup", "lim"), "mode must be sup or lim", "condition.mode")
        under = block.get("underlying")
        _expect(isinstance(under, dict), "object expected", "condition.underlying")
        cond = _qualitative(under, n, index, "condition.underlying")
        ranks = np.zeros(n, dtype=np.int64)
        rk = block.get("ranks", {})
        _expect(isinstance(rk, dict), "object expected", "condition.ranks")
        for key, r in rk.items():
            f = f"condition.ranks.{key}"
            try:
                vid = int(key)
            except ValueError:
                raise GameFileError("vertex id expected as key", f) from None
            _expect(vid in index, f"dangling vertex id {vid}", f)
            r = _int(r, f)
            _expect(r >= 0, "ranks must be natural numbers", f)
            ranks[index[vid]] = r
        return VertexRankedGame(arena, cond, ranks, mode)
    if t == "requestResponseCosts":
        Q, P, C = _pairs(block, n, index, "condition", costs=True)
        for c, tab in enumerate(C):
            for (u, w) in tab:
                _expect(arena.has_edge(u, w), f"cost on a missing edge {[ids[u], ids[w]]}",
                        f"condition.pairs[{c}].costs")
        return RRCostGame(arena, RRCostSpec(Q, P, C))
    fam = []
    for i, F in enumerate(_list(block.get("family"), "condition.family")):
        f = f"condition.family[{i}]"
        _expect(len(_list(F, f)) > 0, "sets in the family must be nonempty", f)
        fam.append(np.flatnonzero(_mask(n, index, F, f)).tolist())
    try:
        spec = MullerSpec(fam, n)
    except ValueError as e:
        raise GameFileError(str(e), "condition.family") from e
    return MullerGame(arena, spec)


def _faults(arena, index, block):
    _expect(isinstance(block, dict), "object expected", "faults")
    edges = []
    for i, e in enumerate(_list(block.get("edges"), "faults.edges")):
        f = f"faults.edges[{i}]"
        _expect(isinstance(e, list) and len(e) == 2, "edge must be [source, target]", f)
        u, w = (_int(x, f) for x in e)
        _expect(u in index and w in index, "dangling vertex id", f)
        _expect(arena.owner[index[u]] == 0, f"fault from Player-1 vertex {u}", f)
        edges.append((index[u], index[w]))
    safe = _mask(arena.n, index, block.get("safe"), "faults.safe")
    return FaultArena(arena, edges, safe)


def parse_game(data) -> GameFile:
    """Parse and validate a game file given as bytes, text or a decoded object."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GameFileError(f"not UTF-8 text ({e.reason})") from e
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise GameFileError(f"syntax error: {e.msg} (column {e.colno})", line=e.lineno) from e
    _expect(isinstance(data, dict), "a game file is a JSON object", "(root)")
    extra = set(data) - {"arena", "condition", "faults"}
    _expect(not extra, f"unknown blocks {sorted(extra)}", "(root)")
    _expect("condition" in data, "exactly one condition block required", "condition")
    arena, ids, index = _parse_arena(data.get("arena"))
    game = _build(arena, ids, index, data["condition"])
    faults = _faults(arena, index, data["faults"]) if "faults" in data else None
    return GameFile(arena, ids, data["condition"], game, faults)


def read_game(path) -> GameFile:
    with open(path, "rb") as fh:
        return parse_game(fh.read())


# serialization -----------------------------------------------------------

def _ids_of(mask, ids):
    return [ids[v] for v in np.flatnonzero(mask)]


def _cond_block(cond, ids):
    if isinstance(cond, SafetyAvoid):
        return {"type": "safetyAvoid", "avoid": _ids_of(cond.avoid, ids)}
    if isinstance(cond, Buchi):
        return {"type": "buchi", "target": _ids_of(cond.target, ids)}
    if isinstance(cond, CoBuchi):
        return {"type": "cobuchi", "forbidden": _ids_of(cond.forbidden, ids)}
    if isinstance(cond, RequestResponse):
        return {"type": "requestResponse",
                "pairs": [{"request": _ids_of(Q, ids), "response": _ids_of(P, ids)}
                          for Q, P in zip(cond.requests, cond.responses)]}
    raise TypeError(f"unsupported condition {type(cond).__name__}")


def game_to_dict(gf: GameFile) -> dict:
    """Canonical JSON object for a parsed game."""
    ids, arena, game = gf.ids, gf.arena, gf.game
    out = {"arena": {"vertices": [{"id": ids[v], "owner": int(arena.owner[v])} for v in range(arena.n)],
                     "edges": [[ids[u], ids[w]] for u, w in arena.edges()],
                     "initial": ids[arena.initial]}}
    kind = gf.kind
    if kind == "safetySafe":
        out["condition"] = {"type": kind, "safe": _ids_of(~game.condition.avoid, ids)}
    elif kind in QUALITATIVE:
        out["condition"] = _cond_block(game.condition, ids)
    elif kind == "vertexRanked":
        under = _cond_block(game.condition, ids)
        if gf.condition["underlying"].get("type") == "safetySafe":
            under = {"type": "safetySafe", "safe": _ids_of(~game.condition.avoid, ids)}
        out["condition"] = {"type": kind, "mode": game.mode, "underlying": under,
                            "ranks": {str(ids[v]): int(r) for v, r in enumerate(game.ranks)}}
    elif kind == "requestResponseCosts":
        spec = game.spec
        out["condition"] = {"type": kind, "pairs": [
            {"request": _ids_of(Q, ids), "response": _ids_of(P, ids),
             "costs": [[ids[u], ids[w], c] for (u, w), c in sorted(tab.items())]}
            for Q, P, tab in zip(spec.requests, spec.responses, spec.costs)]}
    else:
        out["condition"] = {"type": kind,
                            "family": [[ids[v] for v in sorted(F)] for F in game.spec.family]}
    if gf.faults is not None:
        out["faults"] = {"edges": [[ids[u], ids[w]] for u, w in gf.faults.faults],
                         "safe": _ids_of(gf.faults.safe, ids)}
    return out


def dumps(obj) -> str:
    """Deterministic JSON text used for every output of the tool."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_game(gf: GameFile) -> str:
    return dumps(game_to_dict(gf))


def ranked_game_file(game: VertexRankedGame, ids=None) -> dict:
    """Game file object for a vertex-ranked game (for instance a reduction target)."""
    ids = list(range(game.arena.n)) if ids is None else ids
    gf = GameFile(game.arena, ids, {"type": "vertexRanked", "underlying": {}}, game)
    return game_to_dict(gf)


# strategy listings -------------------------------------------------------

def strategy_to_dict(arena, strategy, ids) -> dict:
    """Mealy listing of a tabulated strategy.

    ``initial`` is the memory state after reading the initial vertex;
    ``update`` lists [state, vertex, next state]; ``move`` lists
    [state, vertex, successor] for the owned vertices reachable in that
    state.
    """
    from .strategies import tabulate

    t = tabulate(arena, strategy)
    M = t.memory
    k = M.size
    update = [[s, ids[v], int(M.table[s, v])] for s in range(k) for v in range(arena.n)]
    moves = []
    for s in range(k):
        for v in range(arena.n):
            if arena.owner[v] == strategy.player:
                w = t.move(v, s)
                if w >= 0:
                    moves.append([s, ids[v], ids[w]])
    return {"player": int(strategy.player), "states": int(k), "initial": int(M.initial),
            "update": update, "move": moves}


def strategy_from_dict(arena, data, ids):
    """Inverse of :func:`strategy_to_dict`; unlisted moves take the lowest successor."""
    from .memory import TableMemory
    from .strategies import FiniteStateStrategy

    index = {vid: k for k, vid in enumerate(ids)}
    try:
        player = int(data["player"])
        k = int(data["states"])
        init = int(data["initial"])
        _expect(player in (0, 1), "player must be 0 or 1", "strategy.player")
        _expect(k >= 1 and 0 <= init < k, "bad state count or initial state", "strategy")
        table = np.zeros((k, arena.n), dtype=np.int64)
        for i, (s, v, s2) in enumerate(data["update"]):
            _expect(0 <= s < k and 0 <= s2 < k and v in index, "bad update entry",
                    f"strategy.update[{i}]")
            table[s, index[v]] = s2
        nxt = np.tile(arena.lowest_successor, (k, 1))
        for i, (s, v, w) in enumerate(data["move"]):
            f = f"strategy.move[{i}]"
            _expect(0 <= s < k and v in index and w in index, "bad move entry", f)
            _expect(arena.has_edge(index[v], index[w]), f"move {[v, w]} is not an edge", f)
            nxt[s, index[v]] = index[w]
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, GameFileError):
            raise
        raise GameFileError(f"malformed strategy listing ({e})", "strategy") from e
    starts = np.full(arena.n, init, dtype=np.int64)
    return FiniteStateStrategy(player, TableMemory(table, init, starts), lambda v, m: nxt[m, v])


def encode_values(values):
    return [encode(x) for x in values]
