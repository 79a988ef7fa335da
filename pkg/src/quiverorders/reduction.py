"""The reduction game on marked quiver settings.

Three moves are available.  Vertex removal deletes a loop-free vertex and
composes every arrow through it; small loop removal drops one loop at a
vertex of dimension 1; big loop removal drops the only loop at a vertex of
dimension at least 2 whose single leaving (Left) or arriving (Right) arrow
connects it to a vertex of dimension 1, replacing that arrow by ``alpha_v``
parallel copies.  ``z`` counts the polynomial variables split off along the
way.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import IllegalMoveError, ValidationError
from .quiver_core import MarkedQuiver, MarkedQuiverSetting, euler_form, unit_vector


class MoveKind(str, Enum):
    VERTEX = "vertex_removal"
    SMALL_LOOP = "small_loop_removal"
    BIG_LOOP = "big_loop_removal"


class Player(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"


_KIND_ORDER = {MoveKind.VERTEX: 0, MoveKind.SMALL_LOOP: 1, MoveKind.BIG_LOOP: 2}
_PLAYER_ORDER = {Player.LEFT: 0, Player.RIGHT: 1, Player.BOTH: 2}


@dataclass(frozen=True)
class ReductionMove:
    kind: MoveKind
    vertex: int
    player: Player
    loop_marked: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", MoveKind(self.kind))
        object.__setattr__(self, "player", Player(self.player))
        if self.kind is MoveKind.SMALL_LOOP and self.player is not Player.BOTH:
            raise ValidationError("small loop removal is a move for both players")
        if self.kind is not MoveKind.SMALL_LOOP and self.player is Player.BOTH:
            raise ValidationError(f"{self.kind.value} belongs to Left or Right, not both")
        if self.kind is MoveKind.VERTEX and self.loop_marked:
            raise ValidationError("vertex removal involves no loop")

    def sort_key(self):
        return (self.vertex, _KIND_ORDER[self.kind], _PLAYER_ORDER[self.player], self.loop_marked)


@dataclass(frozen=True)
class ReductionTrace:
    moves: tuple[ReductionMove, ...]
    z: int
    deltas: tuple[int, ...] = ()


def _z_delta(setting: MarkedQuiverSetting, move: ReductionMove) -> int:
    if move.kind is MoveKind.VERTEX:
        return 0
    if move.kind is MoveKind.SMALL_LOOP:
        return 0 if move.loop_marked else 1
    a = setting.alpha[move.vertex]
    return a - 1 if move.loop_marked else a


def _violation(setting: MarkedQuiverSetting, move: ReductionMove) -> str | None:
    """Name of the first legality condition that fails, or None when the move is legal."""
    v = move.vertex
    k = setting.k
    if not 0 <= v < k:
        return f"vertex {v} does not exist"
    alpha = setting.alpha
    q = setting.quiver
    if move.kind is MoveKind.VERTEX:
        if k < 2:
            return "vertex removal needs at least two vertices"
        if q.loops(v):
            return "vertex removal needs a vertex without loops"
        eps = unit_vector(k, v)
        if move.player is Player.LEFT and euler_form(setting, alpha, eps) < 0:
            return "Left vertex removal needs chi(alpha, eps_v) >= 0"
        if move.player is Player.RIGHT and euler_form(setting, eps, alpha) < 0:
            return "Right vertex removal needs chi(eps_v, alpha) >= 0"
        return None
    if move.kind is MoveKind.SMALL_LOOP:
        if alpha[v] != 1:
            return "small loop removal needs alpha_v = 1"
        have = q.marked[v] if move.loop_marked else q.plain[v]
        if have < 1:
            return f"no {'marked' if move.loop_marked else 'plain'} loop at vertex {v}"
        return None
    # big loop removal
    if q.loops(v) != 1:
        return "big loop removal needs exactly one loop"
    if (q.marked[v] == 1) != move.loop_marked:
        return "loop marking does not match the move"
    if alpha[v] < 2:
        return "big loop removal needs alpha_v >= 2"
    if move.player is Player.LEFT:
        if setting.out_arrows(v) != 1:
            return "Left big loop removal needs exactly one leaving arrow"
        w = next(j for j in range(k) if q.arrows[v][j])
        if alpha[w] != 1:
            return "the leaving arrow must end at a vertex of dimension 1"
    else:
        if setting.in_arrows(v) != 1:
            return "Right big loop removal needs exactly one arriving arrow"
        u = next(i for i in range(k) if q.arrows[i][v])
        if alpha[u] != 1:
            return "the arriving arrow must start at a vertex of dimension 1"
    return None


def _candidates(setting: MarkedQuiverSetting):
    for v in range(setting.k):
        for player in (Player.LEFT, Player.RIGHT):
            yield ReductionMove(MoveKind.VERTEX, v, player)
        for marked in (False, True):
            yield ReductionMove(MoveKind.SMALL_LOOP, v, Player.BOTH, marked)
        for player in (Player.LEFT, Player.RIGHT):
            yield ReductionMove(MoveKind.BIG_LOOP, v, player, bool(setting.marked[v]))


def legal_moves(setting: MarkedQuiverSetting, player: Player | str = Player.BOTH) -> list[ReductionMove]:
    """All legal moves for ``player`` in deterministic order; ``both`` means either player."""
    player = Player(player)
    moves = []
    for move in _candidates(setting):
        if player is not Player.BOTH and move.player not in (player, Player.BOTH):
            continue
        if _violation(setting, move) is None:
            moves.append(move)
    return moves


def apply_move(setting: MarkedQuiverSetting, move: ReductionMove) -> tuple[MarkedQuiverSetting, int]:
    reason = _violation(setting, move)
    if reason is not None:
        raise IllegalMoveError(f"{move.kind.value} at vertex {move.vertex + 1}: {reason}")
    k = setting.k
    v = move.vertex
    q = setting.quiver
    mat = [list(r) for r in q.arrows]
    plain = list(q.plain)
    marked = list(q.marked)
    alpha = list(setting.alpha)
    if move.kind is MoveKind.VERTEX:
        for u in range(k):
            if u == v or not mat[u][v]:
                continue
            for w in range(k):
                if w == v or not mat[v][w]:
                    continue
                n = mat[u][v] * mat[v][w]
                if u == w:
                    plain[u] += n
                else:
                    mat[u][w] += n
        keep = [i for i in range(k) if i != v]
        mat = [[mat[i][j] for j in keep] for i in keep]
        plain = [plain[i] for i in keep]
        marked = [marked[i] for i in keep]
        alpha = [alpha[i] for i in keep]
    elif move.kind is MoveKind.SMALL_LOOP:
        if move.loop_marked:
            marked[v] -= 1
        else:
            plain[v] -= 1
    else:
        plain[v] = marked[v] = 0
        if move.player is Player.LEFT:
            w = next(j for j in range(k) if mat[v][j])
            mat[v][w] = alpha[v]
        else:
            u = next(i for i in range(k) if mat[i][v])
            mat[u][v] = alpha[v]
    new = MarkedQuiverSetting(MarkedQuiver(tuple(map(tuple, mat)), tuple(plain), tuple(marked)), tuple(alpha))
    return new, _z_delta(setting, move)


def is_zero_setting(setting: MarkedQuiverSetting) -> bool:
    return not legal_moves(setting, Player.BOTH)


Strategy = Union[str, int, random.Random]


def _chooser(strategy: Strategy):
    if isinstance(strategy, random.Random):
        return strategy.choice
    if isinstance(strategy, int):
        return random.Random(strategy).choice
    if strategy in ("det", "deterministic"):
        return lambda moves: moves[0]
    if isinstance(strategy, str) and strategy.startswith("seed:"):
        try:
            seed = int(strategy[5:])
        except ValueError:
            raise ValidationError(f"bad strategy {strategy!r}") from None
        return random.Random(seed).choice
    raise ValidationError(f"unknown strategy {strategy!r}; use 'det' or 'seed:N'")


def reduce_to_zero(setting: MarkedQuiverSetting, strategy: Strategy = "det") -> tuple[MarkedQuiverSetting, ReductionTrace]:
    """Play legal moves until none is left.

    ``"det"`` always takes the first move in (vertex, kind, player) order, a
    seed (``"seed:N"``, an int or a ``random.Random``) picks uniformly.
    Every move lowers (vertex count, loop count) lexicographically, so the loop
    terminates.
    """
    choose = _chooser(strategy)
    moves = []
    deltas = []
    current = setting
    while True:
        options = legal_moves(current, Player.BOTH)
        if not options:
            break
        move = choose(options)
        current, dz = apply_move(current, move)
        moves.append(move)
        deltas.append(dz)
    return current, ReductionTrace(tuple(moves), sum(deltas), tuple(deltas))


def zero_setting(setting: MarkedQuiverSetting) -> MarkedQuiverSetting:
    """Z(Q*, alpha), the normal form reached by the deterministic strategy."""
    return reduce_to_zero(setting)[0]


def verify_confluence(setting: MarkedQuiverSetting, trials: int = 5, seed: int = 0) -> bool:
    """Run ``trials`` random maximal move sequences and compare their outcomes."""
    from .setting_iso import canonical_form

    if trials < 2:
        raise ValidationError("verify_confluence needs at least two trials")
    rng = random.Random(seed)
    outcomes = set()
    for _ in range(trials):
        final, trace = reduce_to_zero(setting, random.Random(rng.getrandbits(64)))
        outcomes.add((canonical_form(final), trace.z))
    return len(outcomes) == 1


def random_simple_setting(rng: random.Random, max_k: int = 5, max_dim: int = 3, max_arrows: int = 8,
                          max_tries: int = 10_000) -> MarkedQuiverSetting:
    """Rejection-sample a connected setting with simple dimension vector.

    The vertex count is drawn first, uniformly from 1..max_k.
    Arrows (loops included) number at most ``max_arrows``; a loop is marked
    with probability 1/3.
    """
    from .quiver_core import is_connected, is_simple_dimvec, make_setting

    k = rng.randint(1, max_k)
    for _ in range(max_tries):
        dims = [rng.randint(1, max_dim) for _ in range(k)]
        n = rng.randint(min(k, max_arrows), max_arrows)
        arrows, loops = [], []
        for _ in range(n):
            i, j = rng.randrange(k), rng.randrange(k)
            if i == j:
                loops.append((i, 0, 1) if rng.random() < 1 / 3 else (i, 1, 0))
            else:
                arrows.append((i, j, 1))
        s = make_setting(dims, arrows, loops)
        if is_connected(s) and is_simple_dimvec(s):
            return s
    raise ValidationError("no simple setting found within the sampling budget")
