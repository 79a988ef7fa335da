"""Smoothness test, zero-setting enumeration, isolated types and the d <= 4 database."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional

from .errors import ValidationError
from .quiver_core import (
    MarkedQuiver,
    MarkedQuiverSetting,
    central_dimension,
    is_connected,
    is_simple_dimvec,
    make_setting,
)
from .reduction import ReductionTrace, is_zero_setting, reduce_to_zero
from .setting_iso import canonical_form

__all__ = [
    "LocalType",
    "IsolatedType",
    "SingularityRecord",
    "smooth_list_entry",
    "smooth_local_type",
    "vertex_contribution",
    "enumerate_zero_settings",
    "detect_isolated",
    "known_singularity",
    "KNOWN_SINGULARITIES",
]


def smooth_list_entry(setting: MarkedQuiverSetting) -> Optional[str]:
    """Name of the smooth-list member isomorphic to ``setting``, if any."""
    if setting.k != 1:
        return None
    a = setting.alpha[0]
    p, m = setting.plain[0], setting.marked[0]
    if p + m == 0:
        return "point" if a == 1 else None
    if p + m == 1:
        return f"dim-{a} vertex, one {'marked' if m else 'plain'} loop"
    if a == 2 and p + m == 2:
        return {0: "dim-2 vertex, two plain loops",
                1: "dim-2 vertex, plain and marked loop",
                2: "dim-2 vertex, two marked loops"}[m]
    return None


@dataclass(frozen=True)
class LocalType:
    smooth: bool
    zero_setting: MarkedQuiverSetting
    trace: ReductionTrace
    entry: Optional[str] = None

    @property
    def verdict(self) -> str:
        return "smooth" if self.smooth else "singular"


def smooth_local_type(setting: MarkedQuiverSetting) -> LocalType:
    zero, trace = reduce_to_zero(setting)
    entry = smooth_list_entry(zero)
    return LocalType(entry is not None, zero, trace, entry)


def vertex_contribution(a: int, plain: int, marked: int) -> Optional[int]:
    """Lower bound a vertex contributes to ``dim X - 1`` in a zero setting on >= 2 vertices.

    Returns None for loop configurations that cannot occur in such a setting
    (loops at a vertex of dimension 1 are always removable).
    """
    loops = plain + marked
    if loops == 0:
        return a
    if a == 1:
        return None
    if loops == 1:
        return 2 * a - marked
    return (loops - 1) * a * a + a - marked


def _vertex_types(budget: int):
    types = []
    for a in range(1, budget + 1):
        for loops in range(0, budget + 1):
            for marked in range(loops + 1):
                c = vertex_contribution(a, loops - marked, marked)
                if c is not None and c <= budget:
                    types.append((a, loops - marked, marked))
    return sorted(types)


def _type_multisets(types, budget: int, k_max: int):
    contrib = {t: vertex_contribution(*t) for t in types}
    for k in range(2, k_max + 1):
        if k > budget:
            break
        for combo in combinations_with_replacement(types, k):
            if sum(contrib[t] for t in combo) <= budget:
                yield combo


def _arrow_matrices(alpha, min_out, target):
    """Off-diagonal count matrices with sum_{u != w} a_uw alpha_u alpha_w == target.

    Row u must reach an out-weight sum_w a_uw alpha_w of at least ``min_out[u]``.
    """
    k = len(alpha)
    rows: list[list[int]] = [[0] * k for _ in range(k)]
    tail_min = [0] * (k + 1)
    for u in range(k - 1, -1, -1):
        tail_min[u] = tail_min[u + 1] + alpha[u] * min_out[u]

    def fill_row(u, slots, pos, weight, remaining):
        # weight: out-weight of row u so far; remaining: budget left for this and later rows
        if pos == len(slots):
            if weight < min_out[u]:
                return
            yield from fill(u + 1, remaining)
            return
        w = slots[pos]
        step = alpha[u] * alpha[w]
        n = 0
        while n * step <= remaining - tail_min[u + 1]:
            rows[u][w] = n
            yield from fill_row(u, slots, pos + 1, weight + n * alpha[w], remaining - n * step)
            n += 1
        rows[u][w] = 0

    def fill(u, remaining):
        if u == k:
            if remaining == 0:
                yield tuple(tuple(r) for r in rows)
            return
        if remaining < tail_min[u]:
            return
        slots = [w for w in range(k) if w != u]
        yield from fill_row(u, slots, 0, 0, remaining)

    yield from fill(0, target)


def _single_vertex_candidates(d: int):
    out = []
    for a in range(2, d + 2):
        for loops in range(1, d + 3):
            for marked in range(loops + 1):
                if 1 + a * a * (loops - 1) - marked != d:
                    continue
                s = make_setting([a], loops=[(0, loops - marked, marked)])
                if smooth_list_entry(s) is None:
                    out.append(s)
    return out


def enumerate_zero_settings(d: int, k_max: Optional[int] = None) -> list[MarkedQuiverSetting]:
    """All singular zero settings with simple dimension vector and central dimension ``d``.

    Settings on two or more vertices are searched inside the counting bound
    (vertex contributions summing to at most ``d - 1``) with arrow counts
    solved from the dimension equation; one-vertex settings come from a direct
    sweep over (dimension, plain, marked).  Results are deduplicated up to
    isomorphism and sorted by canonical form.  No further identification of
    settings with isomorphic invariant rings is attempted.
    """
    if d < 2:
        raise ValidationError(f"enumerate_zero_settings needs d >= 2, got {d}")
    budget = d - 1
    if k_max is None:
        k_max = budget
    found: dict[tuple, MarkedQuiverSetting] = {}
    if k_max >= 1:
        for s in _single_vertex_candidates(d):
            found.setdefault(canonical_form(s), s)
    for combo in _type_multisets(_vertex_types(budget), budget, k_max):
        alpha = tuple(t[0] for t in combo)
        plain = tuple(t[1] for t in combo)
        marked = tuple(t[2] for t in combo)
        target = d - 1 + sum(marked) + sum(a * a * (1 - p - m) for a, p, m in combo)
        if target < 0:
            continue
        min_out = [a + 1 if p + m == 0 else 1 for a, p, m in combo]
        for rows in _arrow_matrices(alpha, min_out, target):
            k = len(alpha)
            ok = True
            for v in range(k):
                w_in = sum(rows[u][v] * alpha[u] for u in range(k))
                if w_in < (alpha[v] + 1 if plain[v] + marked[v] == 0 else 1):
                    ok = False
                    break
            if not ok:
                continue
            s = MarkedQuiverSetting(MarkedQuiver(rows, plain, marked), alpha)
            if not is_connected(s) or not is_simple_dimvec(s) or not is_zero_setting(s):
                continue
            if central_dimension(s, warn=False) != d:
                continue
            found.setdefault(canonical_form(s), s)
    return [found[key] for key in sorted(found)]


@dataclass(frozen=True)
class IsolatedType:
    """T(k_1, ..., k_l): an oriented cycle of l thin vertices with arrow multiplicities k_i."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(sorted((int(x) for x in self.multiplicities), reverse=True))
        if len(ks) < 2 or any(x < 1 for x in ks):
            raise ValidationError("an isolated type needs l >= 2 multiplicities, each >= 1")
        object.__setattr__(self, "multiplicities", ks)

    @property
    def l(self) -> int:
        return len(self.multiplicities)

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities) - self.l + 1

    def setting(self) -> MarkedQuiverSetting:
        l = self.l
        return make_setting([1] * l, [(i, (i + 1) % l, n) for i, n in enumerate(self.multiplicities)])

    def __str__(self):
        return "T(" + ",".join(map(str, self.multiplicities)) + ")"


def _cycle_type(s: MarkedQuiverSetting) -> Optional[IsolatedType]:
    k = s.k
    if k < 2 or any(a != 1 for a in s.alpha) or any(s.plain) or any(s.marked):
        return None
    succ = []
    for v in range(k):
        outs = [w for w in range(k) if s.arrows[v][w]]
        ins = [u for u in range(k) if s.arrows[u][v]]
        if len(outs) != 1 or len(ins) != 1:
            return None
        succ.append(outs[0])
    seen, v = [], 0
    while v not in seen:
        seen.append(v)
        v = succ[v]
    if len(seen) != k:
        return None
    return IsolatedType(tuple(s.arrows[v][succ[v]] for v in range(k)))


def detect_isolated(setting: MarkedQuiverSetting) -> Optional[IsolatedType]:
    zero, _ = reduce_to_zero(setting)
    return _cycle_type(zero)


@dataclass(frozen=True)
class SingularityRecord:
    name: str
    dimension: int
    setting: MarkedQuiverSetting
    invariant_presentation: Optional[str] = None


KNOWN_SINGULARITIES: tuple[SingularityRecord, ...] = (
    SingularityRecord(
        "conifold", 3,
        make_setting([1, 1], [(0, 1, 2), (1, 0, 2)]),
        "C[x,y,u,v]/(xy-uv)",
    ),
    SingularityRecord(
        "two-vertex 2+3", 4,
        make_setting([1, 1], [(0, 1, 2), (1, 0, 3)]),
        "C[a,b,c,d,e,f]/(ae-bd,af-cd,bf-ce)",
    ),
    SingularityRecord(
        "mixed triangle", 4,
        make_setting([1, 1, 1], [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 0, 1), (0, 2, 1)]),
        "C[x1,x2,x3,x4,x5]/(x4x5-x1x2x3)",
    ),
    SingularityRecord(
        "doubled triangle", 4,
        make_setting([1, 1, 1], [(0, 1, 2), (1, 2, 2), (2, 0, 2)]),
        "C[x1,x2,x3,x4,y1,y2,y3,y4]/(2x2 minors of [[x1,x2,x3,x4],[y1,y2,y3,y4]])",
    ),
)

_KNOWN_BY_FORM = {canonical_form(r.setting): r for r in KNOWN_SINGULARITIES}


def known_singularity(setting: MarkedQuiverSetting) -> Optional[SingularityRecord]:
    zero, _ = reduce_to_zero(setting)
    return _KNOWN_BY_FORM.get(canonical_form(zero))
