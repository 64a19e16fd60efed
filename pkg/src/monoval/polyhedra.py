"""Exact rational polyhedral routines for Newton polyhedra ``conv(S) + R^m_+``.

Everything here works over ``Fraction``; nothing touches floating point.
Two independent routes are provided for membership: facet inequalities
(:func:`newton_facets`) and a primal feasibility LP solved by an exact
two-phase simplex (:func:`in_newton_lp`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .core import dominates


class UnsupportedDimension(ValueError):
    pass


# ---------------------------------------------------------------- linear algebra


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    if n == 0:
        return Fraction(1)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        p = A[col][col]
        result *= p
        for r in range(col + 1, n):
            if A[r][col]:
                f = A[r][col] / p
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return sign * result


def solve(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Solve a square system exactly; ``None`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


def rank(rows: Iterable[Sequence]) -> int:
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return 0
    r = 0
    ncols = len(A[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col] / A[r][col]
                A[i] = [a - f * c for a, c in zip(A[i], A[r])]
        r += 1
        if r == len(A):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points``."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def hyperplane_normal(vectors: Sequence[Sequence]) -> tuple:
    """Normal to ``m - 1`` vectors in ``R^m`` by signed cofactors (zero if dependent)."""
    m = len(vectors) + 1
    out = []
    for i in range(m):
        minor = [[v[j] for j in range(m) if j != i] for v in vectors]
        out.append((-1) ** i * det(minor))
    return tuple(out)


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    fr = [Fraction(x) for x in v]
    den = math.lcm(*[x.denominator for x in fr])
    ints = [int(x * den) for x in fr]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------- 2D hull


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull2d(points: Iterable[Sequence]) -> list[tuple]:
    """Vertices of the convex hull in counter-clockwise order (monotone chain)."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def polygon_area(poly: Sequence[Sequence]) -> Fraction:
    n = len(poly)
    s = Fraction(0)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    """Volume of a full-dimensional simplex given ``d + 1`` points of ``R^d``."""
    d = len(vertices) - 1
    p0 = vertices[0]
    M = [[Fraction(a) - b for a, b in zip(p, p0)] for p in vertices[1:]]
    return abs(det(M)) / math.factorial(d)


# ---------------------------------------------------------------- Newton polyhedra


def minimal_elements(points: Iterable[Sequence]) -> list[tuple]:
    """Points not componentwise-dominated by another point (dedup'd, sorted)."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points), key=lambda p: (sum(p), p))
    # a dominator has a smaller coordinate sum, and by transitivity a minimal one exists
    kept: list[tuple] = []
    for p in pts:
        if not any(dominates(p, q) for q in kept):
            kept.append(p)
    return sorted(kept)


@dataclass(frozen=True)
class Facet:
    normal: tuple  # primitive, nonnegative integer vector
    offset: Fraction  # facet is {<normal, x> = offset}

    @property
    def bounded(self) -> bool:
        return all(n > 0 for n in self.normal)

    def value(self, x: Sequence) -> Fraction:
        return sum((n * Fraction(a) for n, a in zip(self.normal, x)), Fraction(0))


def newton_facets(points: Iterable[Sequence], m: int | None = None) -> list[Facet]:
    """All facets of ``conv(points) + R^m_+``.

    A facet is spanned by ``k`` points of the minimal antichain together with
    ``m - k`` coordinate directions; candidates are enumerated and kept when
    the normal can be oriented nonnegatively and supports every point.
    """
    pts = minimal_elements(points)
    if not pts:
        raise ValueError("empty point set")
    m = m if m is not None else len(pts[0])
    if m == 1:
        return [Facet((1,), min(p[0] for p in pts))]
    units = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
    seen: dict[tuple, Facet] = {}
    for k in range(1, m + 1):
        if k > len(pts):
            break
        for chosen in combinations(pts, k):
            p0 = chosen[0]
            diffs = [tuple(a - b for a, b in zip(p, p0)) for p in chosen[1:]]
            for dirs in combinations(range(m), m - k):
                vecs = diffs + [units[d] for d in dirs]
                n = hyperplane_normal(vecs)
                if all(x == 0 for x in n):
                    continue
                if all(x >= 0 for x in n):
                    pass
                elif all(x <= 0 for x in n):
                    n = tuple(-x for x in n)
                else:
                    continue
                n = primitive(n)
                c = sum((a * b for a, b in zip(n, p0)), Fraction(0))
                if (n, c) in seen:
                    continue
                if all(sum((a * b for a, b in zip(n, q)), Fraction(0)) >= c for q in pts):
                    seen[(n, c)] = Facet(n, c)
    return sorted(seen.values(), key=lambda f: (f.normal, f.offset))


def newton_vertices(points: Iterable[Sequence], m: int | None = None) -> list[tuple]:
    """Extremal points of ``conv(points) + R^m_+``, sorted."""
    pts = minimal_elements(points)
    m = m if m is not None else len(pts[0])
    if m == 1:
        return [min(pts)]
    facets = newton_facets(pts, m)
    out = []
    for p in pts:
        tight = [f.normal for f in facets if f.value(p) == f.offset]
        if rank(tight) == m:
            out.append(p)
    return out


def in_newton(beta: Sequence, facets: Sequence[Facet]) -> bool:
    return all(f.value(beta) >= f.offset for f in facets)


def is_primary(points: Iterable[Sequence], m: int) -> bool:
    """True when every coordinate axis meets the point set (ideal is m_0-primary)."""
    pts = [tuple(p) for p in points]
    return all(any(all(p[j] == 0 for j in range(m) if j != i) for p in pts) for i in range(m))


def covolume(points: Iterable[Sequence], m: int | None = None) -> Fraction:
    """Euclidean volume of ``R^m_+ minus (conv(points) + R^m_+)``.

    Sum over bounded facets of the cone from the origin; needs the point set
    to meet every coordinate axis. Supported for ``m <= 3``.
    """
    pts = minimal_elements(points)
    m = m if m is not None else len(pts[0])
    if not is_primary(pts, m):
        raise ValueError("covolume is infinite: point set misses a coordinate axis")
    if m == 1:
        return pts[0][0]
    if m > 3:
        raise UnsupportedDimension(f"covolume implemented for m <= 3, got {m}")
    total = Fraction(0)
    for f in newton_facets(pts, m):
        if not f.bounded or f.offset == 0:
            continue
        on = [p for p in pts if f.value(p) == f.offset]
        k = max(range(m), key=lambda i: f.normal[i])
        proj = [tuple(p[j] for j in range(m) if j != k) for p in on]
        if m == 2:
            size = max(q[0] for q in proj) - min(q[0] for q in proj)
        else:
            size = polygon_area(hull2d(proj))
        total += f.offset * size / (m * f.normal[k])
    return total


# ---------------------------------------------------------------- exact simplex


def _pivot(T, r, c):
    p = T[r][c]
    T[r] = [x / p for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c]:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]


def _simplex(T, basis, ncols):
    """Minimize the last row of tableau ``T`` (Bland's rule). Returns False if unbounded."""
    while True:
        obj = T[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def lp_minimize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence):
    """Exact ``min <c, x>`` subject to ``A_eq x = b_eq``, ``x >= 0``.

    Returns ``(value, x)``, ``None`` when infeasible; raises on unboundedness.
    """
    rows = len(A_eq)
    n = len(c)
    T = []
    for i in range(rows):
        row = [Fraction(a) for a in A_eq[i]]
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            row, rhs = [-a for a in row], -rhs
        T.append(row + [Fraction(int(i == k)) for k in range(rows)] + [rhs])
    basis = [n + i for i in range(rows)]
    width = n + rows
    phase1 = [Fraction(0)] * (width + 1)
    for i in range(rows):
        for j in range(n):
            phase1[j] -= T[i][j]
        phase1[-1] -= T[i][-1]
    T.append(phase1)
    _simplex(T, basis, width)
    if T[-1][-1] != 0:
        return None
    # drive artificials out of the basis where possible
    for i in range(rows):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    T.pop()
    keep = [i for i in range(rows) if basis[i] < n]
    T = [[row[j] for j in list(range(n)) + [width]] for row in (T[i] for i in keep)]
    basis = [basis[i] for i in keep]
    obj = [Fraction(x) for x in c] + [Fraction(0)]
    for i, bj in enumerate(basis):
        if obj[bj]:
            f = obj[bj]
            obj = [a - f * b for a, b in zip(obj, T[i])]
    T.append(obj)
    if not _simplex(T, basis, n):
        raise ValueError("LP is unbounded")
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    return -T[-1][-1], tuple(x)


def in_newton_lp(beta: Sequence, points: Sequence[Sequence]) -> bool:
    """Primal test: does ``beta`` dominate a convex combination of ``points``?"""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    m = len(beta)
    k = len(pts)
    # variables: lambda_1..lambda_k, slack_1..slack_m
    A = []
    for i in range(m):
        A.append([p[i] for p in pts] + [Fraction(int(i == j)) for j in range(m)])
    A.append([Fraction(1)] * k + [Fraction(0)] * m)
    b = [Fraction(x) for x in beta] + [Fraction(1)]
    return lp_minimize([0] * (k + m), A, b) is not None
