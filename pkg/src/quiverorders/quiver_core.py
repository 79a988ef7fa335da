"""Marked quiver settings, the Euler form and the basic numerical criteria.

A marked quiver stores its arrows between distinct vertices in a square count
matrix and its loops in two per-vertex vectors, plain and marked.  Markings can
therefore only ever sit on loops.  Vertex indices are 0-based throughout the
library; documents on disk use 1-based indices (see :mod:`quiverorders.io`).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ValidationError

__all__ = [
    "MarkedQuiver",
    "MarkedQuiverSetting",
    "MoritaSetting",
    "make_setting",
    "unit_vector",
    "euler_matrix",
    "euler_form",
    "is_connected",
    "is_strongly_connected",
    "is_oriented_cycle",
    "is_simple_dimvec",
    "central_dimension",
    "bergman_small_total",
]


def _counts(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(int(v) for v in values)
    if any(v < 0 for v in out):
        raise ValidationError(f"{what} must be nonnegative, got {out}")
    return out


@dataclass(frozen=True)
class MarkedQuiver:
    """Arrow counts of a marked quiver.

    ``arrows[i][j]`` is the number of arrows ``v_i -> v_j`` for ``i != j``; the
    diagonal of ``arrows`` is always zero and loops live in ``plain`` and
    ``marked``.
    """

    arrows: tuple[tuple[int, ...], ...]
    plain: tuple[int, ...]
    marked: tuple[int, ...]

    def __post_init__(self):
        k = len(self.plain)
        if k < 1:
            raise ValidationError("a quiver needs at least one vertex")
        if len(self.marked) != k or len(self.arrows) != k or any(len(r) != k for r in self.arrows):
            raise DimensionError("arrow matrix and loop vectors must all have length k")
        rows = tuple(_counts(r, "arrow counts") for r in self.arrows)
        for i in range(k):
            if rows[i][i]:
                raise ValidationError("loops belong in plain/marked, not on the arrow diagonal")
        object.__setattr__(self, "arrows", rows)
        object.__setattr__(self, "plain", _counts(self.plain, "plain loops"))
        object.__setattr__(self, "marked", _counts(self.marked, "marked loops"))

    @property
    def k(self) -> int:
        return len(self.plain)

    def loops(self, v: int) -> int:
        return self.plain[v] + self.marked[v]

    def count(self, i: int, j: int) -> int:
        """Number of arrows ``v_i -> v_j`` with loops (plain and marked) on the diagonal."""
        if i == j:
            return self.plain[i] + self.marked[i]
        return self.arrows[i][j]

    def erase_markings(self) -> "MarkedQuiver":
        k = self.k
        return MarkedQuiver(self.arrows, tuple(self.plain[v] + self.marked[v] for v in range(k)), (0,) * k)


@dataclass(frozen=True)
class MarkedQuiverSetting:
    """A marked quiver together with a dimension vector.

    Vertices of dimension zero are deleted on construction, so every vertex of
    a setting is in the support of ``alpha``.
    """

    quiver: MarkedQuiver
    alpha: tuple[int, ...]

    def __post_init__(self):
        alpha = _counts(self.alpha, "dimension vector")
        if len(alpha) != self.quiver.k:
            raise DimensionError(f"dimension vector of length {len(alpha)} on a quiver with {self.quiver.k} vertices")
        keep = [v for v in range(len(alpha)) if alpha[v] > 0]
        if not keep:
            raise ValidationError("dimension vector must have total at least 1")
        if len(keep) < len(alpha):
            q = self.quiver
            quiver = MarkedQuiver(
                tuple(tuple(q.arrows[i][j] for j in keep) for i in keep),
                tuple(q.plain[v] for v in keep),
                tuple(q.marked[v] for v in keep),
            )
            object.__setattr__(self, "quiver", quiver)
            alpha = tuple(alpha[v] for v in keep)
        object.__setattr__(self, "alpha", alpha)

    @property
    def k(self) -> int:
        return self.quiver.k

    @property
    def arrows(self):
        return self.quiver.arrows

    @property
    def plain(self):
        return self.quiver.plain

    @property
    def marked(self):
        return self.quiver.marked

    def out_arrows(self, v: int) -> int:
        return sum(self.quiver.arrows[v])

    def in_arrows(self, v: int) -> int:
        return sum(row[v] for row in self.quiver.arrows)

    def total_arrows(self) -> int:
        q = self.quiver
        return sum(map(sum, q.arrows)) + sum(q.plain) + sum(q.marked)

    def permuted(self, perm: Sequence[int]) -> "MarkedQuiverSetting":
        """Relabel so that old vertex ``v`` becomes new vertex ``perm[v]``."""
        k = self.k
        if sorted(perm) != list(range(k)):
            raise ValidationError(f"{perm} is not a permutation of range({k})")
        inv = [0] * k
        for old, new in enumerate(perm):
            inv[new] = old
        q = self.quiver
        return MarkedQuiverSetting(
            MarkedQuiver(
                tuple(tuple(q.arrows[inv[i]][inv[j]] for j in range(k)) for i in range(k)),
                tuple(q.plain[inv[v]] for v in range(k)),
                tuple(q.marked[inv[v]] for v in range(k)),
            ),
            tuple(self.alpha[inv[v]] for v in range(k)),
        )

    def __str__(self):
        parts = [f"dims={list(self.alpha)}"]
        arrows = [f"{i + 1}->{j + 1}x{n}" for i, row in enumerate(self.arrows) for j, n in enumerate(row) if n]
        if arrows:
            parts.append("arrows=" + ",".join(arrows))
        loops = [f"{v + 1}:{p}+{m}*" for v, (p, m) in enumerate(zip(self.plain, self.marked)) if p or m]
        if loops:
            parts.append("loops=" + ",".join(loops))
        return "Setting(" + " ".join(parts) + ")"


@dataclass(frozen=True)
class MoritaSetting:
    beta: tuple[int, ...]

    def __post_init__(self):
        beta = tuple(int(b) for b in self.beta)
        if any(b < 1 for b in beta):
            raise ValidationError(f"Morita setting entries must be positive, got {beta}")
        object.__setattr__(self, "beta", beta)


def make_setting(dims: Sequence[int], arrows: Iterable[tuple[int, int, int]] = (),
                 loops: Iterable[tuple[int, int, int]] = ()) -> MarkedQuiverSetting:
    """Build a setting from 0-based ``(from, to, count)`` and ``(vertex, plain, marked)`` triples.

    An arrow triple with ``from == to`` is read as plain loops.
    """
    k = len(dims)
    mat = [[0] * k for _ in range(k)]
    plain = [0] * k
    marked = [0] * k
    for i, j, n in arrows:
        if not (0 <= i < k and 0 <= j < k):
            raise ValidationError(f"arrow ({i}, {j}) references a vertex outside 0..{k - 1}")
        if n < 0:
            raise ValidationError("arrow counts must be nonnegative")
        if i == j:
            plain[i] += n
        else:
            mat[i][j] += n
    for v, p, m in loops:
        if not 0 <= v < k:
            raise ValidationError(f"loop at vertex {v} outside 0..{k - 1}")
        plain[v] += p
        marked[v] += m
    return MarkedQuiverSetting(MarkedQuiver(tuple(map(tuple, mat)), tuple(plain), tuple(marked)), tuple(dims))


def unit_vector(k: int, v: int) -> tuple[int, ...]:
    return tuple(int(i == v) for i in range(k))


def euler_matrix(quiver: MarkedQuiver) -> tuple[tuple[int, ...], ...]:
    """Entry (i, j) is ``delta_ij - #{arrows v_i -> v_j}``, markings forgotten."""
    k = quiver.k
    return tuple(tuple(int(i == j) - quiver.count(i, j) for j in range(k)) for i in range(k))


def euler_form(setting: MarkedQuiverSetting | MarkedQuiver, a: Sequence[int], b: Sequence[int]) -> int:
    quiver = setting.quiver if isinstance(setting, MarkedQuiverSetting) else setting
    k = quiver.k
    if len(a) != k or len(b) != k:
        raise DimensionError(f"euler_form needs vectors of length {k}, got {len(a)} and {len(b)}")
    total = 0
    for i in range(k):
        if not a[i]:
            continue
        for j in range(k):
            if b[j]:
                total += a[i] * (int(i == j) - quiver.count(i, j)) * b[j]
    return total


def _neighbours(setting: MarkedQuiverSetting, reverse: bool = False):
    k = setting.k
    arrows = setting.arrows
    if reverse:
        return [[i for i in range(k) if arrows[i][j]] for j in range(k)]
    return [[j for j in range(k) if arrows[i][j]] for i in range(k)]


def _reach(adj, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_connected(setting: MarkedQuiverSetting) -> bool:
    fwd = _neighbours(setting)
    bwd = _neighbours(setting, reverse=True)
    both = [sorted(set(f) | set(b)) for f, b in zip(fwd, bwd)]
    return len(_reach(both, 0)) == setting.k


def is_strongly_connected(setting: MarkedQuiverSetting) -> bool:
    k = setting.k
    return len(_reach(_neighbours(setting), 0)) == k and len(_reach(_neighbours(setting, True), 0)) == k


def is_oriented_cycle(setting: MarkedQuiverSetting) -> bool:
    """True for the quivers of type A~_{k-1} with k >= 2: one arrow in and out of every vertex."""
    if setting.k < 2 or any(setting.plain) or any(setting.marked):
        return False
    k = setting.k
    if any(setting.in_arrows(v) != 1 or setting.out_arrows(v) != 1 for v in range(k)):
        return False
    return is_strongly_connected(setting)


def is_simple_dimvec(setting: MarkedQuiverSetting) -> bool:
    """Whether ``alpha`` is the dimension vector of a simple representation.

    Besides the Euler-form inequalities at every vertex, a quiver on two or
    more vertices must be strongly connected; a source or sink vertex always
    splits off a proper subrepresentation.
    """
    if not is_connected(setting):
        raise ValidationError("simplicity is undefined on a disconnected support")
    k = setting.k
    alpha = setting.alpha
    if k == 1:
        return alpha[0] == 1 or setting.quiver.loops(0) >= 1
    if is_oriented_cycle(setting):
        return all(a == 1 for a in alpha)
    if not is_strongly_connected(setting):
        return False
    for v in range(k):
        eps = unit_vector(k, v)
        if euler_form(setting, alpha, eps) > 0 or euler_form(setting, eps, alpha) > 0:
            return False
    return True


def central_dimension(setting: MarkedQuiverSetting, warn: bool = True) -> int:
    """``1 - chi(alpha, alpha) - #marked loops``.

    The value is only the dimension of the invariant ring when ``alpha`` is
    simple; with ``warn`` set a :class:`UserWarning` is emitted otherwise.
    """
    if warn:
        try:
            simple = is_simple_dimvec(setting)
        except ValidationError:
            simple = False
        if not simple:
            warnings.warn(f"{setting} does not carry a simple dimension vector", stacklevel=2)
    return 1 - euler_form(setting, setting.alpha, setting.alpha) - sum(setting.marked)


def bergman_small_total(alpha: Sequence[int], beta: MoritaSetting | Sequence[int]) -> int:
    """Matrix size ``n = sum e_i d_i`` of the pair (alpha, beta)."""
    b = beta.beta if isinstance(beta, MoritaSetting) else tuple(beta)
    if len(alpha) != len(b):
        raise DimensionError(f"alpha has length {len(alpha)} but beta has length {len(b)}")
    return sum(e * d for e, d in zip(alpha, b))
