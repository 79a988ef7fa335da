"""Exact arithmetic in Q(zeta_N), elements kept reduced modulo the N-th cyclotomic polynomial."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from sympy import Poly, cyclotomic_poly, symbols

from .errors import CharacterDataError
from .linalg import as_fraction, format_fraction

_t = symbols("t")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    if n < 1:
        raise CharacterDataError(f"cyclotomic order must be positive, got {n}")
    coeffs = Poly(cyclotomic_poly(n, _t), _t).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _reduce(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_coeffs(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead:
            # Phi_n is monic: subtract lead * t^(top-deg) * Phi_n
            for i, p in enumerate(phi):
                c[top - deg + i] -= lead * p
    c = c[:deg] + [Fraction(0)] * (deg - len(c))
    return tuple(c)


@dataclass(frozen=True)
class Cyclotomic:
    """``sum coeffs[i] * zeta_N**i`` with ``len(coeffs) == phi(N)``."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise CharacterDataError(f"cyclotomic order must be positive, got {self.order}")
        object.__setattr__(self, "coeffs", _reduce([as_fraction(c) for c in self.coeffs], self.order))

    @classmethod
    def rational(cls, q, order: int = 1) -> "Cyclotomic":
        return cls(order, (as_fraction(q),))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        e = power % order
        return cls(order, tuple(Fraction(int(i == e)) for i in range(e + 1)))

    def lift(self, m: int) -> "Cyclotomic":
        """Re-express inside Q(zeta_m) for a multiple m of the order."""
        if m % self.order:
            raise CharacterDataError(f"cannot lift from order {self.order} to {m}")
        step = m // self.order
        out = [Fraction(0)] * (step * max(len(self.coeffs) - 1, 0) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] += c
        return Cyclotomic(m, tuple(out))

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.order)
        if other.order == self.order:
            return self, other
        m = self.order * other.order // gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        n = max(len(a.coeffs), len(b.coeffs))
        pa = list(a.coeffs) + [Fraction(0)] * (n - len(a.coeffs))
        pb = list(b.coeffs) + [Fraction(0)] * (n - len(b.coeffs))
        return Cyclotomic(a.order, tuple(x + y for x, y in zip(pa, pb)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -as_fraction(other))

    def __mul__(self, other):
        a, b = self._common(other)
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return Cyclotomic(a.order, tuple(out))

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        n = self.order
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[(-i) % n] += c
        return Cyclotomic(n, tuple(out))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CharacterDataError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other, self.order)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_fraction())
        return hash((self.order, self.coeffs))

    def to_doc(self) -> dict:
        return {"N": self.order, "coeffs": [format_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_doc(cls, doc) -> "Cyclotomic":
        if isinstance(doc, (int, str)):
            return cls.rational(doc)
        try:
            return cls(int(doc["N"]), tuple(as_fraction(c) for c in doc["coeffs"]))
        except (KeyError, TypeError) as exc:
            raise CharacterDataError(f"bad cyclotomic document {doc!r}") from exc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(format_fraction(c) + ("" if i == 0 else f"*z{self.order}^{i}"))
        return " + ".join(terms) or "0"


def as_cyclotomic(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x)


def total(values: Sequence[Cyclotomic]) -> Cyclotomic:
    out = Cyclotomic.rational(0)
    for v in values:
        out = out + v
    return out
