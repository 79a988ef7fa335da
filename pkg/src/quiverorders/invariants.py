"""Oriented cycles, trace generators, randomized relation checks and block-order path generators."""
from __future__ import annotations

import random
import re
import tokenize
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import sympy
from sympy.parsing.sympy_parser import (
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from . import linalg
from .errors import ResourceError, ValidationError
from .paths import LabeledQuiver, Path, Representation, random_representation, written
from .quiver_core import MarkedQuiverSetting, MoritaSetting

__all__ = [
    "CyclicWord",
    "default_max_len",
    "enumerate_cycles",
    "evaluate_trace",
    "VerificationResult",
    "verify_relation",
    "BlockGenerators",
    "block_order_generators",
]

MAX_WALKS = 2_000_000


def _as_quiver(obj: Union[LabeledQuiver, MarkedQuiverSetting]) -> LabeledQuiver:
    return obj if isinstance(obj, LabeledQuiver) else LabeledQuiver.from_setting(obj)


def _rotation_min(word: Sequence[str], order: Mapping[str, int]) -> tuple[str, ...]:
    keyed = [order[a] for a in word]
    best = min(range(len(word)), key=lambda i: keyed[i:] + keyed[:i])
    return tuple(word[best:]) + tuple(word[:best])


def _is_primitive(word: Sequence[str]) -> bool:
    n = len(word)
    return not any(n % d == 0 and tuple(word) == tuple(word[:d]) * (n // d) for d in range(1, n))


@dataclass(frozen=True)
class CyclicWord:
    """A closed path up to rotation, stored in written (matrix product) order.

    ``word = (a_1, ..., a_m)`` stands for ``X_{a_1} ... X_{a_m}``; the stored
    rotation is the smallest one under the quiver's arrow order.
    """

    word: tuple[str, ...]
    primitive: bool = True

    @classmethod
    def make(cls, quiver: LabeledQuiver, word: Sequence[str]) -> "CyclicWord":
        word = tuple(word)
        if not word:
            raise ValidationError("a cycle needs at least one arrow")
        quiver.check_path(tuple(reversed(word)))
        if quiver[word[-1]].source != quiver[word[0]].target:
            raise ValidationError(f"{''.join(word)} is not closed")
        return cls(_rotation_min(word, quiver.arrow_order()), _is_primitive(word))

    def __len__(self):
        return len(self.word)

    def rotate(self, i: int = 1) -> tuple[str, ...]:
        i %= len(self.word)
        return self.word[i:] + self.word[:i]

    def __str__(self):
        return "".join(self.word)


def default_max_len(setting) -> int:
    dims = setting.dims if isinstance(setting, LabeledQuiver) else setting.alpha
    return sum(dims) ** 2 + 1


def enumerate_cycles(setting, max_len: Optional[int] = None,
                     primitive_only: Optional[bool] = None) -> list[CyclicWord]:
    """Oriented cycles of length <= ``max_len`` up to rotation.

    Proper powers are dropped by default for thin settings and kept otherwise.
    Sorted by length, then by arrow order.
    """
    quiver = _as_quiver(setting)
    if max_len is None:
        max_len = default_max_len(quiver)
    if max_len < 1:
        raise ValidationError("max_len must be at least 1")
    if primitive_only is None:
        primitive_only = all(e == 1 for e in quiver.dims)
    order = quiver.arrow_order()
    arrows = quiver.arrows
    # every rotation class is reached by a walk that starts at an occurrence of
    # its smallest arrow and never uses a smaller one
    out_of: dict[int, list] = {}
    for a in arrows:
        out_of.setdefault(a.source, []).append(a)
    found: dict[tuple, CyclicWord] = {}
    walks = 0
    for first in arrows:
        lo = order[first.name]
        stack = [(first.target, (first.name,))]
        while stack:
            v, path = stack.pop()
            walks += 1
            if walks > MAX_WALKS:
                raise ResourceError(f"cycle enumeration exceeded {MAX_WALKS} walks; lower max_len")
            if v == first.source:
                cw = CyclicWord.make(quiver, tuple(reversed(path)))
                if cw.primitive or not primitive_only:
                    found.setdefault(cw.word, cw)
            if len(path) == max_len:
                continue
            for a in out_of.get(v, ()):
                if order[a.name] >= lo:
                    stack.append((a.target, path + (a.name,)))
    return sorted(found.values(), key=lambda c: (len(c.word), [order[a] for a in c.word]))


def evaluate_trace(cycle: Union[CyclicWord, Sequence[str]], rep: Representation) -> Fraction:
    word = cycle.word if isinstance(cycle, CyclicWord) else tuple(cycle)
    q = rep.quiver
    for a in word:
        if a not in q:
            raise ValidationError(f"arrow {a} is not in the representation's quiver")
    traversal = tuple(reversed(word))
    s, t = q.check_path(traversal)
    if s != t:
        raise ValidationError(f"{''.join(word)} is not a closed path")
    return linalg.trace(rep.path_matrix(traversal))


def _read_cycle(quiver: LabeledQuiver, text: str) -> tuple[str, ...]:
    """A written word naming a cycle; words only closed when read as traversals are accepted too."""
    traversal = quiver.parse_word(text)
    for candidate in (tuple(reversed(traversal)), traversal):
        try:
            return CyclicWord.make(quiver, candidate).word
        except ValidationError:
            continue
    raise ValidationError(f"{text!r} is not an oriented cycle in either reading")


@dataclass(frozen=True)
class VerificationResult:
    holds: bool
    trials: int
    counterexample: Optional[dict] = None

    def __bool__(self):
        return self.holds


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def verify_relation(setting, relation: str, names: Optional[Mapping[str, str]] = None,
                    trials: int = 100, seed: int = 0, bound: int = 9) -> VerificationResult:
    """Evaluate a polynomial in cycle traces at ``trials`` random exact representations.

    Symbols are looked up in ``names`` (symbol -> written word) and otherwise
    read as words themselves, so ``"(x1y1)(x2y2) - ..."`` works directly.
    Agreement at every sample is strong evidence, not a proof.
    """
    quiver = _as_quiver(setting)
    names = dict(names or {})
    cycles: dict[str, tuple[str, ...]] = {}

    def resolve(tok: str) -> list[str]:
        if tok in names:
            cycles[tok] = _read_cycle(quiver, names[tok])
            return [tok]
        try:
            cycles[tok] = _read_cycle(quiver, tok)
            return [tok]
        except ValidationError:
            pass
        parts, pos = [], 0
        keys = sorted(names, key=len, reverse=True)
        while pos < len(tok):
            hit = next((nm for nm in keys if tok.startswith(nm, pos)), None)
            if hit is None:
                raise ValidationError(f"unknown cycle {tok!r}")
            parts.append(hit)
            pos += len(hit)
        for nm in parts:
            cycles[nm] = _read_cycle(quiver, names[nm])
        return parts

    text = _NAME.sub(lambda m: "(" + "*".join(resolve(m.group(0))) + ")", relation)
    symbols = {nm: sympy.Symbol(nm) for nm in cycles}
    try:
        expr = parse_expr(text, local_dict=symbols,
                          transformations=standard_transformations + (implicit_multiplication,))
    except (SyntaxError, TypeError, tokenize.TokenError, sympy.SympifyError) as exc:
        raise ValidationError(f"cannot parse relation {relation!r}: {exc}") from None
    rng = random.Random(seed)
    for i in range(trials):
        rep = random_representation(quiver, rng, bound)
        values = {symbols[t]: sympy.Rational(*_pair(evaluate_trace(w, rep))) for t, w in cycles.items()}
        val = expr.subs(values)
        if val != 0:
            sample = {nm: linalg.format_fraction(evaluate_trace(w, rep)) for nm, w in sorted(cycles.items())}
            return VerificationResult(False, i + 1, {"trial": i, "traces": sample, "value": str(val)})
    return VerificationResult(True, trials)


def _pair(x: Fraction) -> tuple[int, int]:
    return x.numerator, x.denominator


@dataclass(frozen=True)
class BlockGenerators:
    """``table[i][j]``: representative paths from v_j to v_i, up to the length bound."""

    dims: tuple[int, ...]
    beta: tuple[int, ...]
    max_len: int
    table: tuple[tuple[tuple[Path, ...], ...], ...]

    def strings(self) -> list[list[list[str]]]:
        return [[[written(p, j) for p in cell] for j, cell in enumerate(row)] for row in self.table]


def _has_removable_loop(quiver: LabeledQuiver, path: Path) -> bool:
    """True when a contiguous piece of the walk is a closed walk at a vertex of dimension 1."""
    visits = [quiver[path[0]].source] + [quiver[a].target for a in path]
    seen: dict[int, int] = {}
    for v in visits:
        if v in seen and quiver.dims[v] == 1:
            return True
        seen[v] = 1
    return False


def block_order_generators(setting, beta: Union[MoritaSetting, Sequence[int]],
                           max_len: int = 2) -> BlockGenerators:
    """Paths v_j -> v_i of length <= ``max_len`` that do not factor through a cycle.

    A path is dropped when it passes twice through the same vertex of
    dimension 1: such a path is a shorter path times a cycle trace there.
    These are representatives up to the bound, not a proven minimal set.
    """
    quiver = _as_quiver(setting)
    beta = tuple(beta.beta) if isinstance(beta, MoritaSetting) else tuple(int(b) for b in beta)
    if len(beta) != quiver.k or any(b < 1 for b in beta):
        raise ValidationError("beta needs one positive entry per vertex")
    if max_len < 0:
        raise ValidationError("max_len must be non-negative")
    k = quiver.k
    order = quiver.arrow_order()
    cells: list[list[list[Path]]] = [[[] for _ in range(k)] for _ in range(k)]
    for v in range(k):
        cells[v][v].append(())
    frontier: list[Path] = [(a.name,) for a in quiver.arrows]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            if _has_removable_loop(quiver, p):
                continue
            s, t = quiver[p[0]].source, quiver[p[-1]].target
            cells[t][s].append(p)
            nxt.extend(p + (a.name,) for a in quiver.arrows if a.source == t)
        frontier = nxt
    for row in cells:
        for cell in row:
            cell.sort(key=lambda p: (len(p), [order[a] for a in reversed(p)]))
    table = tuple(tuple(tuple(cell) for cell in row) for row in cells)
    return BlockGenerators(quiver.dims, beta, max_len, table)
