"""Independent reference computations used to cross-check the package."""
from fractions import Fraction
from itertools import permutations, product
import cmath

import sympy


def euler_form(setting, a, b):
    """Sum over an explicit arrow list rather than through the Euler matrix."""
    k = setting.k
    arrows = []
    for i in range(k):
        arrows += [(i, i)] * (setting.plain[i] + setting.marked[i])
        for j in range(k):
            arrows += [(i, j)] * setting.arrows[i][j]
    return sum(x * y for x, y in zip(a, b)) - sum(a[i] * b[j] for i, j in arrows)


def isomorphic(s1, s2):
    if s1.k != s2.k:
        return False
    target = (s2.alpha, s2.plain, s2.marked, s2.arrows)
    for perm in permutations(range(s1.k)):
        t = s1.permuted(perm)
        if (t.alpha, t.plain, t.marked, t.arrows) == target:
            return True
    return False


def det(m):
    return Fraction(str(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m]).det()))


def inverse(m):
    inv = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in m]).inv()
    return tuple(tuple(Fraction(str(inv[i, j])) for j in range(inv.cols)) for i in range(inv.rows))


def cycle_classes(quiver, max_len, primitive_only=True):
    """Rotation classes of closed walks, found by brute force over arrow words."""
    arrows = quiver.arrows
    classes = set()
    for n in range(1, max_len + 1):
        for word in product(arrows, repeat=n):
            if any(word[i].target != word[i + 1].source for i in range(n - 1)):
                continue
            if word[-1].target != word[0].source:
                continue
            names = tuple(a.name for a in word)
            if primitive_only and any(n % d == 0 and names == names[:d] * (n // d) for d in range(1, n)):
                continue
            classes.add(frozenset(names[i:] + names[:i] for i in range(n)))
    return classes


def numeric_inner(sizes, a, b, order):
    """Character inner product in floating point, values given as {power: coeff} of zeta_N."""
    def val(x, n):
        return sum(float(c) * cmath.exp(2j * cmath.pi * p / n) for p, c in enumerate(x.coeffs))
    s = sum(sz * val(x, x.order) * val(y, y.order).conjugate() for sz, x, y in zip(sizes, a, b))
    return s / order


def brute_zero_settings(dims_wanted, quiver_core, reduction, classification):
    """Singular zero settings of each dimension d <= 4 by exhaustive search in a box.

    Box: one vertex of dim <= 3 with <= 3 loops; or 2-3 vertices of dim <= 2,
    at most 3 (k=2) or 2 (k=3) arrows per ordered pair, at most one loop at a
    vertex of dim 2.  Loops at dim-1 vertices are skipped (always removable).
    """
    found = {d: [] for d in dims_wanted}
    for a in (1, 2, 3):
        for p in range(4):
            for m in range(4 - p):
                s = quiver_core.make_setting([a], loops=[(0, p, m)])
                _keep(s, found, quiver_core, reduction, classification)
    for k, cap in ((2, 3), (3, 2)):
        pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        for dims in product((1, 2), repeat=k):
            loop_opts = [[(0, 0)] if e == 1 else [(0, 0), (1, 0), (0, 1)] for e in dims]
            for counts in product(range(cap + 1), repeat=len(pairs)):
                arrows = [(i, j, n) for (i, j), n in zip(pairs, counts) if n]
                for lp in product(*loop_opts):
                    s = quiver_core.make_setting(list(dims), arrows, [(v, x, y) for v, (x, y) in enumerate(lp)])
                    _keep(s, found, quiver_core, reduction, classification)
    return found


def _keep(s, found, quiver_core, reduction, classification):
    if not quiver_core.is_connected(s) or not quiver_core.is_simple_dimvec(s):
        return
    d = quiver_core.central_dimension(s, warn=False)
    if d in found and reduction.is_zero_setting(s) and classification.smooth_list_entry(s) is None:
        found[d].append(s)
