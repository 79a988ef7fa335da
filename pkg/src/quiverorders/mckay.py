"""McKay quivers from character tables, moment relations and abelian skew-group relations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Mapping, Optional, Sequence, Union

from .cyclotomic import Cyclotomic, as_cyclotomic, total
from .errors import CharacterDataError, PairingError, UnsupportedError, ValidationError
from .paths import Arrow, LabeledQuiver, PathLinComb, QuiverPresentation
from .quiver_core import MarkedQuiverSetting, make_setting

__all__ = [
    "CharacterTable",
    "cyclic_table",
    "abelian_table",
    "mckay_quiver",
    "character_from_weights",
    "moment_relations",
    "abelian_skew_relations",
]


@dataclass(frozen=True)
class CharacterTable:
    """Exact character table; class 0 is the identity, row 0 the trivial character."""

    group_order: int
    class_sizes: tuple[int, ...]
    chars: tuple[tuple[Cyclotomic, ...], ...]
    labels: tuple[str, ...] = ()
    elements: tuple = ()  # optional group elements per class (abelian tables)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.class_sizes)
        chars = tuple(tuple(as_cyclotomic(x) for x in row) for row in self.chars)
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "chars", chars)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"c{i + 1}" for i in range(len(sizes))))
        if sum(sizes) != self.group_order or not sizes or sizes[0] != 1:
            raise CharacterDataError("class sizes must sum to the group order, identity class first")
        if len(chars) != len(sizes) or any(len(r) != len(sizes) for r in chars):
            raise CharacterDataError("a character table is square: one value per class and one row per class")
        if any(x != 1 for x in chars[0]):
            raise CharacterDataError("row 1 must be the trivial character")
        for i, ri in enumerate(chars):
            deg = ri[0]
            if not deg.is_rational() or deg.to_fraction().denominator != 1 or deg.to_fraction() < 1:
                raise CharacterDataError(f"character {i + 1} has degree {deg}")
            for j in range(i, len(chars)):
                ip = self._inner(ri, chars[j])
                if ip != int(i == j):
                    raise CharacterDataError(f"rows {i + 1} and {j + 1} violate orthogonality")

    @property
    def k(self) -> int:
        return len(self.chars)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(int(r[0].to_fraction()) for r in self.chars)

    @property
    def is_abelian(self) -> bool:
        return all(d == 1 for d in self.degrees)

    def _inner(self, a: Sequence[Cyclotomic], b: Sequence[Cyclotomic]) -> Cyclotomic:
        s = total([Cyclotomic.rational(n) * x * y.conj() for n, x, y in zip(self.class_sizes, a, b)])
        return s * Cyclotomic.rational(Fraction(1, self.group_order))

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        """Exact <a, b>; must be rational."""
        val = self._inner([as_cyclotomic(x) for x in a], [as_cyclotomic(x) for x in b])
        if not val.is_rational():
            raise CharacterDataError(f"inner product {val} is not rational")
        return val.to_fraction()

    def multiplicity(self, a: Sequence, b: Sequence) -> int:
        val = self.inner(a, b)
        if val.denominator != 1 or val < 0:
            raise CharacterDataError(f"multiplicity {val} is not a non-negative integer")
        return int(val)

    def to_doc(self) -> dict:
        return {"order": self.group_order, "classes": list(self.class_sizes),
                "chars": [[x.to_doc() for x in row] for row in self.chars]}

    @classmethod
    def from_doc(cls, doc: Mapping) -> "CharacterTable":
        try:
            return cls(int(doc["order"]), tuple(doc["classes"]),
                       tuple(tuple(Cyclotomic.from_doc(x) for x in row) for row in doc["chars"]))
        except (KeyError, TypeError) as exc:
            raise CharacterDataError(f"malformed character table document: {exc}") from exc


def abelian_table(orders: Union[int, Sequence[int]]) -> CharacterTable:
    """Table of Z_{n_1} x ... x Z_{n_r}; elements and characters in lexicographic order."""
    orders = (orders,) if isinstance(orders, int) else tuple(orders)
    if not orders or any(n < 1 for n in orders):
        raise CharacterDataError(f"bad group orders {orders}")
    m = lcm(*orders)
    elems = list(product(*(range(n) for n in orders)))
    chars = tuple(
        tuple(Cyclotomic.zeta(m, sum(j * g * (m // n) for j, g, n in zip(js, gs, orders))) for gs in elems)
        for js in elems
    )
    order = len(elems)
    return CharacterTable(order, (1,) * order, chars, elements=tuple(elems))


def cyclic_table(n: int) -> CharacterTable:
    return abelian_table((n,))


def character_from_weights(table: CharacterTable, weights: Sequence[int]) -> tuple[Cyclotomic, ...]:
    """chi_V as the sum of the rows with the given 0-based indices."""
    row = [Cyclotomic.rational(0)] * table.k
    for w in weights:
        if not 0 <= w < table.k:
            raise CharacterDataError(f"no character with index {w}")
        row = [a + b for a, b in zip(row, table.chars[w])]
    return tuple(row)


def mckay_quiver(table: CharacterTable, chi_v: Sequence) -> MarkedQuiverSetting:
    """``#(v_i -> v_j) = <chi_V chi_j, chi_i>`` and ``alpha_i = chi_i(1)``."""
    chi_v = tuple(as_cyclotomic(x) for x in chi_v)
    if len(chi_v) != len(table.class_sizes):
        raise CharacterDataError("chi_V needs one value per conjugacy class")
    k = table.k
    arrows = []
    loops = []
    for j in range(k):
        prod_row = [a * b for a, b in zip(chi_v, table.chars[j])]
        for i in range(k):
            n = table.multiplicity(prod_row, table.chars[i])
            if not n:
                continue
            if i == j:
                loops.append((i, n, 0))
            else:
                arrows.append((i, j, n))
    return make_setting(table.degrees, arrows, loops)


def _relation(quiver: LabeledQuiver, v: int, terms) -> PathLinComb:
    return PathLinComb(v, v, tuple((Fraction(c), tuple(p)) for c, p in terms))


def moment_relations(quiver: LabeledQuiver, pairing: Union[Mapping[str, str], Sequence[tuple[str, str]]]) -> QuiverPresentation:
    """One relation per vertex: the ``e_v`` component of ``sum_x [x, x*]``.

    ``pairing`` lists (x, x*) pairs, or maps each x to x*.  At ``v`` the
    relation is ``sum_{t(x)=v} x x* - sum_{s(x)=v} x* x`` in written order.
    """
    pairs = list(pairing.items()) if isinstance(pairing, Mapping) else [tuple(p) for p in pairing]
    seen: set[str] = set()
    for x, xs in pairs:
        a, b = quiver[x], quiver[xs]
        if (a.source, a.target) != (b.target, b.source):
            raise PairingError(f"{xs} does not reverse {x}")
        if a.marked or b.marked:
            raise PairingError("marked loops cannot take part in a double")
        for nm in (x, xs):
            if nm in seen:
                raise PairingError(f"arrow {nm} is paired twice")
            seen.add(nm)
    missing = [n for n in quiver.names() if n not in seen]
    if missing:
        raise PairingError(f"unpaired arrows: {', '.join(missing)}")
    rels = []
    for v in range(quiver.k):
        plus = [(1, (xs, x)) for x, xs in pairs if quiver[x].target == v]    # x x*
        minus = [(-1, (x, xs)) for x, xs in pairs if quiver[x].source == v]  # x* x
        rels.append(_relation(quiver, v, plus + minus))
    return QuiverPresentation(quiver, tuple(rels), ("moment",) * quiver.k)


_LETTERS = "xyzwuvstpqrabcdefghijklmno"


def abelian_skew_relations(weights: Sequence, orders: Union[int, Sequence[int], None] = None,
                           table: Optional[CharacterTable] = None) -> QuiverPresentation:
    """Quiver and commutator relations of the skew group algebra for an abelian action.

    Either ``orders`` (group Z_{n_1} x ...) with one weight vector (or int) per
    coordinate, or a ``table`` with weights given as 0-based character indices.
    The arrow of coordinate ``p`` leaves ``v_j`` for the vertex of
    ``chi_{w_p} chi_j``.  Arrows are lettered x, y, z, ... per coordinate and
    indexed by their 1-based source, except that a coordinate whose weight
    inverts an earlier unpaired one is indexed by target, so that ``y_i`` is
    the reverse of ``x_i``.  For every pair ``p < q`` and every vertex the
    relation is the entry ``x_p x_q - x_q x_p`` of the commutator.
    """
    if table is None:
        if orders is None:
            raise ValidationError("abelian_skew_relations needs group orders or a character table")
        table = abelian_table(orders)
        ords = tuple(orders) if not isinstance(orders, int) else (orders,)
        index = {e: i for i, e in enumerate(table.elements)}
        idx = []
        for w in weights:
            vec = (w,) if isinstance(w, int) else tuple(w)
            if len(vec) != len(ords):
                raise ValidationError(f"weight {w} does not match the group {ords}")
            idx.append(index[tuple(x % n for x, n in zip(vec, ords))])
    else:
        if not table.is_abelian:
            raise UnsupportedError("skew-group relations are only generated for abelian groups")
        idx = [int(w) for w in weights]
    if not idx:
        raise ValidationError("at least one acting coordinate is needed")
    if len(idx) > len(_LETTERS):
        raise UnsupportedError(f"at most {len(_LETTERS)} coordinates are supported")
    k = table.k
    def find(row) -> int:
        for i, r in enumerate(table.chars):
            if r == row:
                return i
        raise CharacterDataError("product of linear characters is not in the table")

    def shift(w: int, j: int) -> int:
        return find(tuple(a * b for a, b in zip(table.chars[w], table.chars[j])))

    inverse_of = {w: find(tuple(x.conj() for x in table.chars[w])) for w in set(idx)}
    by_target = []
    unpaired: list[int] = []
    for p, w in enumerate(idx):
        partner = next((q for q in unpaired if inverse_of[idx[q]] == w), None)
        if partner is None:
            unpaired.append(p)
        else:
            unpaired.remove(partner)
        by_target.append(partner is not None)

    arrows = []
    names: dict[tuple[int, int], str] = {}
    for p, w in enumerate(idx):
        for j in range(k):
            t = shift(w, j)
            name = f"{_LETTERS[p]}{(t if by_target[p] else j) + 1}"
            names[(p, j)] = name
            arrows.append(((p, int(name[1:])), Arrow(name, j, t)))
    quiver = LabeledQuiver(table.degrees, tuple(a for _, a in sorted(arrows, key=lambda x: x[0])))
    rels = []
    for p in range(len(idx)):
        for q in range(p + 1, len(idx)):
            for s in range(k):
                mid_q, mid_p = shift(idx[q], s), shift(idx[p], s)
                t = shift(idx[p], mid_q)
                xp_xq = (names[(q, s)], names[(p, mid_q)])
                xq_xp = (names[(p, s)], names[(q, mid_p)])
                rels.append(PathLinComb(s, t, ((Fraction(1), xp_xq), (Fraction(-1), xq_xp))))
    return QuiverPresentation(quiver, tuple(rels), ("commutator",) * len(rels))
