"""Stability vectors, a thin (semi)stability oracle, determinantal semi-invariants and
the universal localization at a semi-invariant."""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .errors import DimensionError, NotInChartError, SchemeError, UnsupportedError, ValidationError
from .linalg import Matrix
from .paths import (
    Arrow,
    LabeledQuiver,
    PathLinComb,
    QuiverPresentation,
    Representation,
    parse_lincomb,
    random_invertible,
)

__all__ = [
    "Verdict",
    "check_theta",
    "subrepresentation_subsets",
    "thin_stability_oracle",
    "SemiInvariantScheme",
    "scheme_layout",
    "evaluate_L",
    "det_L",
    "chi_theta",
    "semi_invariance_check",
    "extend_representation",
    "localization_presentation",
]


class Verdict(str, Enum):
    STABLE = "stable"
    SEMISTABLE = "semistable_not_stable"
    UNSTABLE = "unstable"


def check_theta(theta: Sequence[int], alpha: Sequence[int]) -> bool:
    if len(theta) != len(alpha):
        raise DimensionError(f"theta has {len(theta)} entries, alpha has {len(alpha)}")
    return sum(int(t) * int(a) for t, a in zip(theta, alpha)) == 0


def _require_theta(theta, alpha):
    if not check_theta(theta, alpha):
        raise ValidationError(f"theta {tuple(theta)} does not satisfy theta.alpha = 0 for alpha {tuple(alpha)}")


def subrepresentation_subsets(rep: Representation) -> list[frozenset[int]]:
    """Proper nonempty arrow-closed vertex subsets of a thin representation."""
    if not rep.is_thin():
        raise UnsupportedError("the stability oracle only handles thin representations")
    q = rep.quiver
    live = [(a.source, a.target) for a in q.arrows
            if a.source != a.target and not linalg.is_zero(rep.matrices[a.name])]
    subs = []
    for size in range(1, q.k):
        for s in combinations(range(q.k), size):
            s = frozenset(s)
            if all(t in s for u, t in live if u in s):
                subs.append(s)
    return subs


def thin_stability_oracle(rep: Representation, theta: Sequence[int]) -> Verdict:
    """Classify a thin representation by the minimum of theta.dim over proper subrepresentations."""
    _require_theta(theta, rep.dims)
    subs = subrepresentation_subsets(rep)
    if not subs:
        return Verdict.STABLE
    low = min(sum(theta[v] for v in s) for s in subs)
    if low > 0:
        return Verdict.STABLE
    return Verdict.SEMISTABLE if low == 0 else Verdict.UNSTABLE


@dataclass(frozen=True)
class SemiInvariantScheme:
    """A matrix L of path combinations of weight ``l * theta``.

    Row copies: each vertex with t_i > 0 repeated ``l * t_i`` times, then each
    vertex with t_i = 0 repeated ``l_mid`` times, both in vertex order.
    Column copies: the zero vertices again (``l_mid`` times), then each vertex
    with t_i < 0 repeated ``-l * t_i`` times.  ``entries[r][c]`` runs from the
    column vertex to the row vertex.
    """

    quiver: LabeledQuiver
    theta: tuple[int, ...]
    entries: tuple[tuple[PathLinComb, ...], ...]
    l: int = 1
    l_mid: tuple[int, ...] = ()

    def __post_init__(self):
        q = self.quiver
        theta = tuple(int(t) for t in self.theta)
        object.__setattr__(self, "theta", theta)
        if len(theta) != q.k:
            raise DimensionError("theta needs one entry per vertex")
        if self.l < 1:
            raise SchemeError("the weight l must be positive")
        zeros = [v for v in range(q.k) if theta[v] == 0]
        mid = tuple(int(m) for m in self.l_mid) or (0,) * len(zeros)
        if len(mid) != len(zeros) or any(m < 0 for m in mid):
            raise SchemeError(f"l_mid needs {len(zeros)} non-negative entries, one per zero of theta")
        object.__setattr__(self, "l_mid", mid)
        rows, cols = self.row_vertices, self.col_vertices
        if sum(q.dims[v] for v in rows) != sum(q.dims[v] for v in cols):
            raise SchemeError("L(V) would not be square; theta.alpha must vanish")
        grid = tuple(tuple(self.entries))
        if len(grid) != len(rows) or any(len(r) != len(cols) for r in grid):
            raise SchemeError(f"L needs {len(rows)} x {len(cols)} entries")
        for r, row in enumerate(grid):
            for c, e in enumerate(row):
                if (e.source, e.target) != (cols[c], rows[r]):
                    raise SchemeError(f"entry ({r + 1}, {c + 1}) must run v{cols[c] + 1} -> v{rows[r] + 1}")
                e.validate(q)
        object.__setattr__(self, "entries", grid)

    def _layout(self) -> "_Layout":
        return _Layout(self.quiver.k, self.theta, self.l, self.l_mid)

    @property
    def row_vertices(self) -> tuple[int, ...]:
        return tuple(self._layout().rows())

    @property
    def col_vertices(self) -> tuple[int, ...]:
        return tuple(self._layout().cols())

    @classmethod
    def from_strings(cls, quiver: LabeledQuiver, theta: Sequence[int], grid: Sequence[Sequence[str]],
                     l: int = 1, l_mid: Sequence[int] = ()) -> "SemiInvariantScheme":
        """Build from written words, e.g. ``[["x1", "0"], ["y3", "y3"]]``."""
        rows, cols = scheme_layout(quiver.k, theta, l, l_mid)
        if len(grid) != len(rows) or any(len(r) != len(cols) for r in grid):
            raise SchemeError(f"L needs {len(rows)} x {len(cols)} entries")
        entries = tuple(tuple(parse_lincomb(quiver, str(text), cols[c], rows[r]) for c, text in enumerate(line))
                        for r, line in enumerate(grid))
        return cls(quiver, tuple(theta), entries, l, tuple(l_mid))

    def new_arrow_names(self) -> list[list[str]]:
        """Names of the arrows of N, numbered n1, n2, ... down the columns."""
        nr, nc = len(self.col_vertices), len(self.row_vertices)
        return [[f"n{c * nr + r + 1}" for c in range(nc)] for r in range(nr)]

    def new_arrows(self) -> list[Arrow]:
        names = self.new_arrow_names()
        rows, cols = self.row_vertices, self.col_vertices
        out = []
        for c in range(len(rows)):
            for r in range(len(cols)):
                out.append(Arrow(names[r][c], rows[c], cols[r]))
        return out

    def extended_quiver(self) -> LabeledQuiver:
        return self.quiver.extended(self.new_arrows())


@dataclass(frozen=True)
class _Layout:
    k: int
    theta: tuple
    l: int
    l_mid: tuple

    def _mid(self):
        zeros = [v for v in range(self.k) if self.theta[v] == 0]
        mid = self.l_mid or (0,) * len(zeros)
        if len(mid) != len(zeros):
            raise SchemeError(f"l_mid needs {len(zeros)} entries")
        return list(zip(zeros, mid))

    def rows(self):
        out = [v for v, t in enumerate(self.theta) if t > 0 for _ in range(self.l * t)]
        return out + [v for v, m in self._mid() for _ in range(m)]

    def cols(self):
        out = [v for v, m in self._mid() for _ in range(m)]
        return out + [v for v, t in enumerate(self.theta) if t < 0 for _ in range(-self.l * t)]


def scheme_layout(k: int, theta: Sequence[int], l: int = 1, l_mid: Sequence[int] = ()) -> tuple[list, list]:
    """Vertices of the row copies and column copies of L (0-based)."""
    lay = _Layout(k, tuple(theta), l, tuple(l_mid))
    return lay.rows(), lay.cols()


def _check_rep(scheme: SemiInvariantScheme, rep: Representation):
    q = scheme.quiver
    if rep.dims != q.dims:
        raise ValidationError("representation and scheme live on different dimension vectors")
    for a in q.arrows:
        if a.name not in rep.quiver or rep.quiver[a.name] != a:
            raise ValidationError(f"representation has no arrow matching {a.name}")


def evaluate_L(scheme: SemiInvariantScheme, rep: Representation) -> Matrix:
    _check_rep(scheme, rep)
    dims = scheme.quiver.dims
    blocks = [[rep.evaluate(e) for e in row] for row in scheme.entries]
    return linalg.assemble(blocks, [dims[v] for v in scheme.row_vertices], [dims[v] for v in scheme.col_vertices])


def det_L(scheme: SemiInvariantScheme, rep: Representation) -> Fraction:
    return linalg.det(evaluate_L(scheme, rep))


def chi_theta(theta: Sequence[int], g: Sequence[Matrix]) -> Fraction:
    """prod_i det(g_i)^{t_i}."""
    out = Fraction(1)
    for t, block in zip(theta, g):
        d = linalg.det(linalg.matrix(block))
        if d == 0:
            raise ValidationError("group element blocks must be invertible")
        out *= d ** int(t)
    return out


def semi_invariance_check(scheme: SemiInvariantScheme, rep: Representation,
                          g: Optional[Sequence[Matrix]] = None, trials: int = 1, seed: int = 0) -> bool:
    """Check ``det L(g.V) = chi_theta(g)^l det L(V)`` for ``g`` or for ``trials`` random ones."""
    base = det_L(scheme, rep)
    if g is not None:
        elements = [g]
    else:
        rng = random.Random(seed)
        elements = [[random_invertible(rng, e) for e in scheme.quiver.dims] for _ in range(trials)]
    for h in elements:
        factor = chi_theta(scheme.theta, h) ** scheme.l
        if det_L(scheme, rep.act(h)) != factor * base:
            return False
    return True


def extend_representation(scheme: SemiInvariantScheme, rep: Representation) -> Representation:
    """The unique extension to the localized quiver: N(V) = L(V)^{-1}, cut into blocks."""
    lv = evaluate_L(scheme, rep)
    if linalg.det(lv) == 0:
        raise NotInChartError("det L(V) = 0, the representation lies outside this chart")
    nv = linalg.inverse(lv)
    dims = scheme.quiver.dims
    grid = linalg.slice_blocks(nv, [dims[v] for v in scheme.col_vertices], [dims[v] for v in scheme.row_vertices])
    names = scheme.new_arrow_names()
    mats = {a.name: rep.matrices[a.name] for a in scheme.quiver.arrows}
    for r, line in enumerate(names):
        for c, nm in enumerate(line):
            mats[nm] = grid[r][c]
    return Representation(scheme.extended_quiver(), mats)


def _product_relations(left_first: Sequence[Sequence[PathLinComb]], then: Sequence[Sequence[PathLinComb]],
                       diag: Sequence[int]) -> list[PathLinComb]:
    """Entries of (then . left_first) minus the idempotent diagonal, row by row."""
    out = []
    for r in range(len(then)):
        for c in range(len(left_first[0])):
            acc: Optional[PathLinComb] = None
            for m in range(len(left_first)):
                term = left_first[m][c].then(then[r][m])
                acc = term if acc is None else acc + term
            if r == c:
                acc = acc - PathLinComb.idempotent(diag[r])
            out.append(acc)
    return out


def localization_presentation(base, scheme: SemiInvariantScheme) -> QuiverPresentation:
    """Presentation (I, I1, I2) of the algebra with L made invertible by the new arrows N.

    I1 lists the entries of N.L minus the identity, I2 those of L.N; each
    diagonal entry subtracts the idempotent of its vertex.
    """
    base_rels = tuple(base.relations) if isinstance(base, QuiverPresentation) else ()
    ext = scheme.extended_quiver()
    names = scheme.new_arrow_names()
    rows, cols = scheme.row_vertices, scheme.col_vertices
    n_entries = [[PathLinComb.arrow(ext, nm) for nm in line] for line in names]
    i1 = _product_relations(scheme.entries, n_entries, cols)
    i2 = _product_relations(n_entries, scheme.entries, rows)
    rels = base_rels + tuple(i1) + tuple(i2)
    labels = ("I",) * len(base_rels) + ("I1",) * len(i1) + ("I2",) * len(i2)
    return QuiverPresentation(ext, rels, labels)
