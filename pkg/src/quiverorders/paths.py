"""Labeled quivers, linear combinations of paths, presentations and representations.

Paths are stored in traversal order (first arrow first).  When printed they
are written in composition order, so the traversal ``(y3, x3)`` prints as
``x3y3``, matching ``X_p = X_{a_l} ... X_{a_1}``.  The empty path at vertex
``v_i`` (its idempotent) prints as ``v{i}`` with 1-based ``i``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from string import ascii_lowercase
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import DimensionError, ValidationError
from .linalg import Matrix
from .quiver_core import MarkedQuiverSetting, make_setting

Path = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    marked: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValidationError("arrows need a non-empty name")
        if self.marked and self.source != self.target:
            raise ValidationError(f"only loops may be marked, {self.name} is not a loop")


@dataclass(frozen=True)
class LabeledQuiver:
    """A marked quiver whose arrows carry names, with a dimension vector."""

    dims: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        dims = tuple(int(e) for e in self.dims)
        if not dims or any(e < 1 for e in dims):
            raise ValidationError(f"labeled quivers need positive vertex dimensions, got {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "arrows", tuple(self.arrows))
        index = {}
        for a in self.arrows:
            if a.name in index:
                raise ValidationError(f"duplicate arrow name {a.name!r}")
            if not (0 <= a.source < len(dims) and 0 <= a.target < len(dims)):
                raise ValidationError(f"arrow {a.name} references a missing vertex")
            index[a.name] = a
        object.__setattr__(self, "_index", index)

    @property
    def k(self) -> int:
        return len(self.dims)

    def __getitem__(self, name: str) -> Arrow:
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError(f"unknown arrow {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def names(self) -> list[str]:
        return [a.name for a in self.arrows]

    def arrow_order(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @classmethod
    def from_setting(cls, setting: MarkedQuiverSetting) -> "LabeledQuiver":
        """Name arrows a, b, c, ... in (from, to) order; plain loops before marked ones."""
        specs = []
        k = setting.k
        for i in range(k):
            for j in range(k):
                if i == j:
                    specs += [(i, i, False)] * setting.plain[i] + [(i, i, True)] * setting.marked[i]
                else:
                    specs += [(i, j, False)] * setting.arrows[i][j]
        if len(specs) <= len(ascii_lowercase):
            names = list(ascii_lowercase[:len(specs)])
        else:
            names = [f"a{n + 1}" for n in range(len(specs))]
        return cls(setting.alpha, tuple(Arrow(nm, s, t, m) for nm, (s, t, m) in zip(names, specs)))

    def to_setting(self) -> MarkedQuiverSetting:
        arrows = [(a.source, a.target, 1) for a in self.arrows if a.source != a.target]
        loops = [(a.source, 0 if a.marked else 1, 1 if a.marked else 0) for a in self.arrows if a.source == a.target]
        return make_setting(self.dims, arrows, loops)

    def extended(self, new: Iterable[Arrow]) -> "LabeledQuiver":
        return LabeledQuiver(self.dims, self.arrows + tuple(new))

    def check_path(self, path: Path, source: Optional[int] = None, target: Optional[int] = None) -> tuple[int, int]:
        """Validate composability; returns the (source, target) of a nonempty path."""
        if not path:
            if source is None or source != target:
                raise ValidationError("the empty path needs equal source and target")
            return source, target
        arrows = [self[n] for n in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise ValidationError(f"arrows {a.name} and {b.name} do not compose")
        s, t = arrows[0].source, arrows[-1].target
        if (source is not None and s != source) or (target is not None and t != target):
            raise ValidationError(f"path {written(path)} runs v{s + 1}->v{t + 1}, "
                                  f"expected v{(source or 0) + 1}->v{(target or 0) + 1}")
        return s, t

    def parse_word(self, text: str) -> Path:
        """Split a written (composition-order) word into arrow names; returns traversal order."""
        names = sorted(self._index, key=len, reverse=True)
        out = []
        pos = 0
        while pos < len(text):
            for nm in names:
                if text.startswith(nm, pos):
                    out.append(nm)
                    pos += len(nm)
                    break
            else:
                raise ValidationError(f"cannot read {text!r} as a word in the arrows {self.names()}")
        return tuple(reversed(out))


def written(path: Path, vertex: Optional[int] = None) -> str:
    if not path:
        return f"v{(vertex or 0) + 1}"
    return "".join(reversed(path))


@dataclass(frozen=True)
class PathLinComb:
    """A rational linear combination of paths ``v_source -> v_target``."""

    source: int
    target: int
    terms: tuple[tuple[Fraction, Path], ...] = ()

    def __post_init__(self):
        merged: dict[Path, Fraction] = {}
        order = []
        for coef, path in self.terms:
            path = tuple(path)
            if path not in merged:
                merged[path] = Fraction(0)
                order.append(path)
            merged[path] += linalg.as_fraction(coef)
        object.__setattr__(self, "terms", tuple((merged[p], p) for p in order if merged[p] != 0))

    @classmethod
    def arrow(cls, quiver: LabeledQuiver, name: str) -> "PathLinComb":
        a = quiver[name]
        return cls(a.source, a.target, ((Fraction(1), (name,)),))

    @classmethod
    def idempotent(cls, v: int) -> "PathLinComb":
        return cls(v, v, ((Fraction(1), ()),))

    def is_zero(self) -> bool:
        return not self.terms

    def validate(self, quiver: LabeledQuiver) -> None:
        for _, path in self.terms:
            quiver.check_path(path, self.source, self.target)

    def __add__(self, other: "PathLinComb") -> "PathLinComb":
        if (self.source, self.target) != (other.source, other.target):
            raise ValidationError("cannot add path combinations with different endpoints")
        return PathLinComb(self.source, self.target, self.terms + other.terms)

    def __neg__(self):
        return PathLinComb(self.source, self.target, tuple((-c, p) for c, p in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def then(self, other: "PathLinComb") -> "PathLinComb":
        """Follow ``self`` by ``other``: written ``other * self``."""
        if self.target != other.source:
            raise ValidationError("path combinations do not compose")
        terms = tuple((c1 * c2, p1 + p2) for c1, p1 in self.terms for c2, p2 in other.terms)
        return PathLinComb(self.source, other.target, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (c, p) in enumerate(self.terms):
            word = written(p, self.source)
            mag = abs(c)
            body = word if mag == 1 else f"{linalg.format_fraction(mag)}*{word}"
            if c < 0:
                parts.append("-" + body)
            else:
                parts.append(body if i == 0 else "+" + body)
        return "".join(parts)


@dataclass(frozen=True)
class QuiverPresentation:
    """A labeled quiver with relations; ``labels[i]`` names the family of relation ``i``."""

    quiver: LabeledQuiver
    relations: tuple[PathLinComb, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        rels = tuple(self.relations)
        labels = tuple(self.labels) or ("I",) * len(rels)
        if len(labels) != len(rels):
            raise DimensionError("one label per relation")
        for r in rels:
            r.validate(self.quiver)
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "labels", labels)

    def strings(self, label: Optional[str] = None) -> list[str]:
        return [str(r) for r, lb in zip(self.relations, self.labels) if label is None or lb == label]


@dataclass(frozen=True)
class Representation:
    """Exact rational matrices on the arrows of a labeled quiver.

    Arrow ``a: v_i -> v_j`` carries an ``e_j x e_i`` matrix; marked loops are
    trace zero.  When ``relations`` are given they must vanish.
    """

    quiver: LabeledQuiver
    matrices: Mapping[str, Matrix]
    relations: tuple[PathLinComb, ...] = ()

    def __post_init__(self):
        q = self.quiver
        mats = {}
        for name, m in self.matrices.items():
            a = q[name]
            mats[name] = linalg.matrix(m, (q.dims[a.target], q.dims[a.source]))
        for a in q.arrows:
            if a.name not in mats:
                mats[a.name] = linalg.zeros(q.dims[a.target], q.dims[a.source])
            if a.marked and linalg.trace(mats[a.name]) != 0:
                raise ValidationError(f"marked loop {a.name} must carry a trace-zero matrix")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            r.validate(q)
            if not linalg.is_zero(self.evaluate(r)):
                raise ValidationError(f"representation does not satisfy the relation {r}")

    @property
    def dims(self):
        return self.quiver.dims

    def is_thin(self) -> bool:
        return all(e <= 1 for e in self.quiver.dims)

    def path_matrix(self, path: Path, vertex: Optional[int] = None) -> Matrix:
        if not path:
            if vertex is None:
                raise ValidationError("the empty path needs a vertex")
            return linalg.identity(self.quiver.dims[vertex])
        s, _ = self.quiver.check_path(path)
        m = linalg.identity(self.quiver.dims[s])
        for name in path:
            m = linalg.matmul(self.matrices[name], m)
        return m

    def evaluate(self, lc: PathLinComb) -> Matrix:
        q = self.quiver
        out = linalg.zeros(q.dims[lc.target], q.dims[lc.source])
        for c, p in lc.terms:
            q.check_path(p, lc.source, lc.target)
            out = linalg.add(out, linalg.scale(c, self.path_matrix(p, lc.source)))
        return out

    def act(self, g: Sequence[Matrix]) -> "Representation":
        """Base change ``X_a -> g_target X_a g_source^{-1}``."""
        q = self.quiver
        if len(g) != q.k:
            raise DimensionError("one group element block per vertex")
        blocks = [linalg.matrix(b, (e, e)) for b, e in zip(g, q.dims)]
        inv = [linalg.inverse(b) for b in blocks]
        mats = {a.name: linalg.matmul(linalg.matmul(blocks[a.target], self.matrices[a.name]), inv[a.source])
                for a in q.arrows}
        return Representation(q, mats, self.relations)

    def restrict(self, quiver: LabeledQuiver) -> "Representation":
        return Representation(quiver, {a.name: self.matrices[a.name] for a in quiver.arrows})


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> Matrix:
    return tuple(tuple(Fraction(rng.randint(-bound, bound)) for _ in range(cols)) for _ in range(rows))


def random_representation(quiver: LabeledQuiver, rng: random.Random, bound: int = 9) -> Representation:
    """Random integer entries; marked loops get their last diagonal entry fixed to trace 0."""
    mats = {}
    for a in quiver.arrows:
        m = [list(r) for r in random_matrix(rng, quiver.dims[a.target], quiver.dims[a.source], bound)]
        if a.marked:
            e = quiver.dims[a.source]
            m[e - 1][e - 1] = -sum(m[i][i] for i in range(e - 1))
        mats[a.name] = m
    return Representation(quiver, mats)


def random_invertible(rng: random.Random, n: int, bound: int = 5) -> Matrix:
    while True:
        m = tuple(tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)) for _ in range(n))
        if linalg.det(m) != 0:
            return m


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z][A-Za-z0-9_]*)?\s*")


def parse_lincomb(quiver: LabeledQuiver, text: str, source: int, target: int) -> PathLinComb:
    """Read ``"n1x1+n3y3-v1"``, ``"2*x1 - 1/2*y3"`` or ``"0"`` as a combination of written words.

    ``v{i}`` stands for the idempotent of vertex ``i`` (1-based).  The word
    reading is greedy on the arrow names, see ``LabeledQuiver.parse_word``.
    """
    text = text.strip()
    if text in ("", "0"):
        return PathLinComb(source, target)
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValidationError(f"cannot parse {text!r} near position {pos}")
        if terms and m.group(1) is None:
            raise ValidationError(f"missing sign between terms in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        word = m.group(3)
        if word is None:
            raise ValidationError(f"bare number in {text!r}; only 0 may stand alone")
        if re.fullmatch(r"v\d+", word) and word not in quiver:
            v = int(word[1:]) - 1
            if v != source or v != target:
                raise ValidationError(f"idempotent {word} does not fit the endpoints")
            path: Path = ()
        else:
            path = quiver.parse_word(word)
        terms.append((sign * coef, path))
        pos = m.end()
    lc = PathLinComb(source, target, tuple(terms))
    lc.validate(quiver)
    return lc
