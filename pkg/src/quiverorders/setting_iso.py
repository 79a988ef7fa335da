"""Canonical forms and isomorphism testing for marked quiver settings."""
from __future__ import annotations

from itertools import permutations, product
from math import factorial

from .errors import ResourceError
from .quiver_core import MarkedQuiver, MarkedQuiverSetting

DEFAULT_MAX_K = 10

CanonicalForm = tuple


def _base_invariant(s: MarkedQuiverSetting, v: int) -> tuple:
    return (s.alpha[v], s.in_arrows(v), s.out_arrows(v), s.plain[v], s.marked[v])


def _refined_classes(s: MarkedQuiverSetting) -> list[int]:
    """Colour refinement: label-free ranks that only depend on the isomorphism type."""
    k = s.k
    arrows = s.arrows
    colour = [_base_invariant(s, v) for v in range(k)]
    ranks = _rank(colour)
    for _ in range(k):
        sig = [
            (ranks[v],
             tuple(sorted((ranks[w], arrows[v][w]) for w in range(k) if arrows[v][w])),
             tuple(sorted((ranks[u], arrows[u][v]) for u in range(k) if arrows[u][v])))
            for v in range(k)
        ]
        new = _rank(sig)
        if len(set(new)) == len(set(ranks)):
            break
        ranks = new
    return ranks


def _rank(values: list) -> list[int]:
    order = sorted(set(values))
    index = {val: i for i, val in enumerate(order)}
    return [index[val] for val in values]


def _encode(s: MarkedQuiverSetting, order: tuple[int, ...]) -> tuple:
    arrows = s.arrows
    return (
        tuple(s.alpha[v] for v in order),
        tuple(s.plain[v] for v in order),
        tuple(s.marked[v] for v in order),
        tuple(arrows[u][w] for u in order for w in order),
    )


def canonical_form(setting: MarkedQuiverSetting, max_k: int = DEFAULT_MAX_K) -> CanonicalForm:
    """Lexicographically minimal encoding over all invariant-respecting vertex orders."""
    k = setting.k
    if k > max_k:
        raise ResourceError(f"canonical_form is bounded to {max_k} vertices, setting has {k}")
    ranks = _refined_classes(setting)
    classes: dict[int, list[int]] = {}
    for v, r in enumerate(ranks):
        classes.setdefault(r, []).append(v)
    groups = [classes[r] for r in sorted(classes)]
    budget = 1
    for g in groups:
        budget *= factorial(len(g))
    if budget > 10 ** 7:
        raise ResourceError(f"canonical_form would enumerate {budget} vertex orders")
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        order = tuple(v for part in choice for v in part)
        enc = _encode(setting, order)
        if best is None or enc < best:
            best = enc
    profile = tuple(sorted(_base_invariant(setting, v) for v in range(k)))
    return (k, profile, best)


def settings_isomorphic(s1: MarkedQuiverSetting, s2: MarkedQuiverSetting, max_k: int = DEFAULT_MAX_K) -> bool:
    if s1.k != s2.k or sorted(s1.alpha) != sorted(s2.alpha):
        return False
    return canonical_form(s1, max_k) == canonical_form(s2, max_k)


def canonical_setting(setting: MarkedQuiverSetting, max_k: int = DEFAULT_MAX_K) -> MarkedQuiverSetting:
    """The representative whose vertex order realises the canonical encoding."""
    _, _, (alpha, plain, marked, flat) = canonical_form(setting, max_k)
    k = len(alpha)
    rows = tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))
    return MarkedQuiverSetting(MarkedQuiver(rows, plain, marked), alpha)
