"""Exact rational matrices as tuples of tuples of Fraction."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import DimensionError, NotInChartError, ValidationError

Matrix = tuple[tuple[Fraction, ...], ...]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a rational number: {x!r}") from None
    if isinstance(x, float):
        raise ValidationError("floats are not accepted; pass a string 'p/q' or an int")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix(rows: Sequence[Sequence], shape: tuple[int, int] | None = None) -> Matrix:
    out = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    if shape is not None and (len(out), len(out[0]) if out else shape[1]) != shape:
        raise DimensionError(f"expected a {shape[0]}x{shape[1]} matrix, got {len(out)} rows")
    return out


def zeros(r: int, c: int) -> Matrix:
    return tuple((Fraction(0),) * c for _ in range(r))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def shape(a: Matrix, cols: int | None = None) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else (cols or 0))


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    """Product of an r x m and an m x c matrix.  ``inner`` is only needed when r == 0."""
    m = len(b)
    if a and len(a[0]) != m:
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {m}x?")
    c = len(b[0]) if b else 0
    cols = list(zip(*b)) if b else [() for _ in range(c)]
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise DimensionError("matrix shapes differ")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c: Fraction, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def trace(a: Matrix) -> Fraction:
    if len(a) != (len(a[0]) if a else 0):
        raise DimensionError("trace of a non-square matrix")
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def det(a: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination on the denominator-cleared matrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scales = [lcm(*(x.denominator for x in row)) for row in a]
    m = [[int(x * s) for x in row] for row, s in zip(a, scales)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * m[n - 1][n - 1], denom)


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises NotInChartError for singular input."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("inverse of a non-square matrix")
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise NotInChartError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(map(tuple, out))


def assemble(blocks: Sequence[Sequence[Matrix]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    """Glue a grid of blocks; block (r, c) must be row_sizes[r] x col_sizes[c]."""
    out = []
    for r, brow in enumerate(blocks):
        for i in range(row_sizes[r]):
            line = []
            for c, blk in enumerate(brow):
                if len(blk) != row_sizes[r] or (row_sizes[r] and len(blk[0]) != col_sizes[c]):
                    raise DimensionError(f"block ({r}, {c}) has the wrong shape")
                line.extend(blk[i])
            out.append(tuple(line))
    return tuple(out)


def slice_blocks(a: Matrix, row_sizes: Sequence[int], col_sizes: Sequence[int]) -> list[list[Matrix]]:
    grid = []
    r0 = 0
    for rs in row_sizes:
        line = []
        c0 = 0
        for cs in col_sizes:
            line.append(tuple(tuple(a[r0 + i][c0:c0 + cs]) for i in range(rs)))
            c0 += cs
        grid.append(line)
        r0 += rs
    return grid
