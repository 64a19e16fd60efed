"""Monomial ideals, valuation ideals of monomial valuations and their multiplicities.

Every invariant has an exact polyhedral value (covolumes of Newton
polyhedra) and, where the definition is a limit, a lattice-counting oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .core import INF, ArityError, Norm, SupportSet, dot, dominates, norm_eval, to_fraction
from .polyhedra import covolume, minimal_elements, newton_facets, solve


class IdealError(ValueError):
    pass


# ---------------------------------------------------------------- monomial ideals


@dataclass(frozen=True)
class MonomialIdeal:
    arity: int
    gens: tuple  # minimal generators, sorted

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], arity: int | None = None) -> "MonomialIdeal":
        gens = [tuple(int(x) for x in g) for g in gens]
        if not gens:
            raise IdealError("the zero ideal has no staircase")
        arity = arity if arity is not None else len(gens[0])
        if any(len(g) != arity for g in gens):
            raise ArityError("generators of mixed arity")
        if any(x < 0 for g in gens for x in g):
            raise IdealError("negative exponent")
        mins = minimal_elements(gens)
        return cls(arity, tuple(tuple(int(x) for x in g) for g in mins))

    @classmethod
    def parse(cls, text: str, arity: int | None = None) -> "MonomialIdeal":
        """``"x^2, x*y, y^3"`` (each generator a single monomial)."""
        from .core import parse_support

        polys = [parse_support(t, arity) for t in text.split(",")]
        m = arity if arity is not None else max(p.arity for p in polys)
        gens = []
        for p in polys:
            if len(p) != 1:
                raise IdealError(f"generator {p} is not a monomial")
            (e,) = p.terms
            gens.append(tuple(e) + (0,) * (m - len(e)))
        return cls.from_generators(gens, m)

    @classmethod
    def maximal(cls, m: int) -> "MonomialIdeal":
        return cls.from_generators([tuple(int(i == j) for j in range(m)) for i in range(m)])

    @classmethod
    def unit(cls, m: int) -> "MonomialIdeal":
        return cls(m, ((0,) * m,))

    def contains(self, alpha: Sequence[int]) -> bool:
        return any(dominates(alpha, g) for g in self.gens)

    def contains_poly(self, f: SupportSet) -> bool:
        return all(self.contains(e) for e in f.terms)

    def is_primary(self) -> bool:
        m = self.arity
        return all(any(all(g[j] == 0 for j in range(m) if j != i) for g in self.gens) for i in range(m))

    def __le__(self, other: "MonomialIdeal") -> bool:
        """Inclusion ``self ⊆ other``."""
        return all(other.contains(g) for g in self.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return ideal_product(self, other)

    def __pow__(self, r: int) -> "MonomialIdeal":
        return ideal_power(self, r)

    def serialize(self) -> str:
        from .core import SupportSet as S

        return ", ".join(str(S.monomial(g)) for g in self.gens)

    def to_json(self) -> dict:
        return {"arity": self.arity, "generators": [list(g) for g in self.gens]}


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.arity != J.arity:
        raise ArityError(f"arity mismatch: {I.arity} vs {J.arity}")
    return MonomialIdeal.from_generators(
        [tuple(a + b for a, b in zip(g, h)) for g in I.gens for h in J.gens], I.arity
    )


def ideal_power(I: MonomialIdeal, r: int) -> MonomialIdeal:
    if r < 0:
        raise ValueError("negative power")
    out = MonomialIdeal.unit(I.arity)
    for _ in range(r):
        out = ideal_product(out, I)
    return out


def colength(I: MonomialIdeal) -> int:
    """``dim_k O / I``: lattice points outside the staircase (cumulative-min grid)."""
    if not I.is_primary():
        raise IdealError("colength is infinite: ideal is not m_0-primary")
    m = I.arity
    if m == 1:
        return I.gens[0][0]
    shape = tuple(max(g[i] for g in I.gens) + 1 for i in range(m - 1))
    cap = max(g[-1] for g in I.gens)
    grid = np.full(shape, cap, dtype=np.int64)
    for g in I.gens:
        idx = tuple(g[:-1])
        grid[idx] = min(grid[idx], g[-1])
    for axis in range(m - 1):
        grid = np.minimum.accumulate(grid, axis=axis)
    return int(grid.sum())


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    """Lattice points of the Newton polyhedron, minimised."""
    facets = newton_facets(I.gens, I.arity)
    box = [max(g[i] for g in I.gens) for i in range(I.arity)]
    pts = [
        p
        for p in product(*(range(b + 1) for b in box))
        if all(f.value(p) >= f.offset for f in facets)
    ]
    return MonomialIdeal.from_generators(pts, I.arity)


def rees_valuations(I: MonomialIdeal) -> list[tuple]:
    """Inward normals of the bounded facets, scaled so that ``w(I) = 1``."""
    if not I.is_primary():
        raise IdealError("Rees valuations are computed for m_0-primary ideals")
    out = []
    for f in newton_facets(I.gens, I.arity):
        if f.bounded and f.offset > 0:
            out.append(tuple(Fraction(n) / f.offset for n in f.normal))
    return sorted(out)


def order(I: MonomialIdeal, f: SupportSet) -> int:
    """Largest ``j`` with ``f`` in ``I^j``."""
    if f.is_zero():
        raise ValueError("order of the zero polynomial is infinite")
    if I.gens == ((0,) * I.arity,):
        raise IdealError("order with respect to the unit ideal is infinite")
    j = 0
    power = I
    while power.contains_poly(f):
        j += 1
        power = ideal_product(power, I)
    return j


def hat_order(I: MonomialIdeal, f: SupportSet) -> Fraction:
    """Asymptotic order: min over Rees valuations of ``w(f)``."""
    if f.is_zero():
        raise ValueError("order of the zero polynomial is infinite")
    return min(min(dot(w, e) for e in f.terms) for w in rees_valuations(I))


def closure_power_offset(I: MonomialIdeal, n: int) -> int:
    """Smallest ``N`` with ``closure(I^n) ⊆ I^(n - N)``."""
    cl = integral_closure(ideal_power(I, n))
    for N in range(n + 1):
        if cl <= ideal_power(I, n - N):
            return N
    return n


# ---------------------------------------------------------------- multiplicities


def hilbert_samuel(I: MonomialIdeal) -> Fraction:
    """``e(I) = m! covol(Nw(I))`` (exact, arity <= 3)."""
    if not I.is_primary():
        raise IdealError("multiplicity needs an m_0-primary ideal")
    return math.factorial(I.arity) * covolume(I.gens, I.arity)


def hilbert_samuel_oracle(I: MonomialIdeal, n: int) -> Fraction:
    """``m! / n^m * colength(I^n)``."""
    return Fraction(math.factorial(I.arity) * colength(ideal_power(I, n)), n**I.arity)


def _interpolate(values: Sequence[Fraction], m: int) -> list[Fraction]:
    """Solve ``values[k] = sum_i C(m,i) x_i (m-k)^(m-i) k^i`` for ``x``."""
    A = [[math.comb(m, i) * (m - k) ** (m - i) * k**i for i in range(m + 1)] for k in range(m + 1)]
    x = solve(A, values)
    if x is None:
        raise AssertionError("interpolation system is singular")
    return list(x)


def mixed_multiplicities(I: MonomialIdeal, J: MonomialIdeal) -> list[Fraction]:
    """``e(I^[m-i]; J^[i])`` for ``i = 0..m``, from exact ``e(I^r J^s)``."""
    if I.arity != J.arity:
        raise ArityError("arity mismatch")
    m = I.arity
    vals = [hilbert_samuel(ideal_product(ideal_power(I, m - k), ideal_power(J, k))) for k in range(m + 1)]
    return _interpolate(vals, m)


def mixed_multiplicities_oracle(I: MonomialIdeal, J: MonomialIdeal, n: int) -> list[Fraction]:
    """Same, with each ``e(I^r J^s)`` estimated by colength counting at level ``n``."""
    m = I.arity
    vals = [
        hilbert_samuel_oracle(ideal_product(ideal_power(I, m - k), ideal_power(J, k)), n)
        for k in range(m + 1)
    ]
    return _interpolate(vals, m)


# ---------------------------------------------------------------- monomial valuations


def _check_weights(t) -> tuple:
    t = tuple(to_fraction(x) for x in t)
    if not t:
        raise ArityError("empty weight vector")
    if any(x <= 0 for x in t):
        raise IdealError("valuation ideals need every weight positive (m_0-primary)")
    return t


def _integer_scaling(t, n):
    den = math.lcm(*[x.denominator for x in t], Fraction(n).denominator)
    return [int(x * den) for x in t], int(Fraction(n) * den)


def _staircase_candidates(T: Sequence[int], N: int):
    """For each ``alpha_1..alpha_{m-1}`` in a box, the least ``alpha_m`` with ``<T, alpha> >= N``.

    Every minimal generator of the valuation ideal is among these points.
    """
    m = len(T)
    box = [(N + T[i] - 1) // T[i] + 1 for i in range(m - 1)]
    grids = np.meshgrid(*[np.arange(b, dtype=np.int64) for b in box], indexing="ij")
    partial = sum(T[i] * grids[i] for i in range(m - 1))
    return grids, np.maximum(0, -((partial - N) // T[-1]))


def valuation_ideal(t: Sequence, n) -> MonomialIdeal:
    """``a(v, n) = {f : v(f) >= n}``: minimal lattice points with ``<t, alpha> >= n``."""
    t = _check_weights(t)
    n = to_fraction(n)
    m = len(t)
    if n <= 0:
        return MonomialIdeal.unit(m)
    T, N = _integer_scaling(t, n)
    if m == 1:
        return MonomialIdeal(1, ((-(-N // T[0]),),))
    grids, last = _staircase_candidates(T, N)
    partial = sum(T[i] * grids[i] for i in range(m - 1))
    total = partial + T[-1] * last
    minimal = np.ones(last.shape, dtype=bool)
    for i in range(m - 1):
        minimal &= (grids[i] == 0) | (total - T[i] < N)
    minimal &= (last == 0) | (total - T[-1] < N)
    pts = np.stack([g[minimal] for g in grids] + [last[minimal]], axis=1)
    return MonomialIdeal.from_generators([tuple(int(x) for x in p) for p in pts], m)


def count_below(t: Sequence, n) -> int:
    """``#{alpha in N^m : <t, alpha> < n}``, the colength of ``a(v, n)``."""
    t = _check_weights(t)
    T, N = _integer_scaling(t, n)
    m = len(t)
    if m == 1:
        return -(-N // T[0])
    box = [(N + T[i] - 1) // T[i] + 1 for i in range(m - 1)]
    grids = np.meshgrid(*[np.arange(b, dtype=np.int64) for b in box], indexing="ij")
    partial = sum(T[i] * grids[i] for i in range(m - 1))
    last = np.maximum(0, -((partial - N) // T[-1]))
    return int(last.sum())


def volume(t: Sequence) -> Fraction:
    """``vol(v) = 1 / prod t_i`` via the covolume of ``{<t, alpha> >= 1}``."""
    t = _check_weights(t)
    m = len(t)
    pts = [tuple(Fraction(int(i == j)) / t[i] for j in range(m)) for i in range(m)]
    return math.factorial(m) * covolume(pts, m)


def volume_oracle(t: Sequence, n) -> Fraction:
    m = len(t)
    return Fraction(math.factorial(m) * count_below(t, n)) / Fraction(n) ** m


def _mixed_covolumes(P_pts, Q_pts, m) -> list[Fraction]:
    """Coefficients ``V_i`` of ``covol(r P + s Q) = sum_i C(m,i) V_i r^i s^(m-i)``."""
    vals = []
    for k in range(m + 1):
        r, s = k, m - k
        pts = [tuple(r * a + s * b for a, b in zip(p, q)) for p in P_pts for q in Q_pts]
        vals.append(covolume(pts, m))
    A = [[math.comb(m, i) * k**i * (m - k) ** (m - i) for i in range(m + 1)] for k in range(m + 1)]
    x = solve(A, vals)
    if x is None:
        raise AssertionError("interpolation system is singular")
    return list(x)


@dataclass(frozen=True)
class AlphaVector:
    exact: tuple  # alpha_0..alpha_m
    oracle: dict  # n -> tuple of estimates

    def teissier(self) -> bool:
        a = self.exact
        return all(a[i] ** 2 <= a[i - 1] * a[i + 1] for i in range(1, len(a) - 1))


def alpha(t: Sequence, oracle_levels: Sequence[int] = ()) -> AlphaVector:
    """``alpha_i(v) = lim e(a(v,n)^[i]; m_0^[m-i]) / n^i`` (exact by scaling)."""
    t = _check_weights(t)
    m = len(t)
    P = [tuple(Fraction(int(i == j)) / t[i] for j in range(m)) for i in range(m)]
    S = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
    V = _mixed_covolumes(P, S, m)
    exact = tuple(math.factorial(m) * x for x in V)
    oracle = {}
    mm = MonomialIdeal.maximal(m)
    for n in oracle_levels:
        I = valuation_ideal(t, n)
        mixed = mixed_multiplicities(mm, I)  # e(m^[m-i]; I^[i])
        oracle[n] = tuple(Fraction(mixed[i]) / n**i for i in range(m + 1))
    return AlphaVector(exact, oracle)


def linking_number(t: Sequence, s: Sequence) -> Fraction:
    """``beta(v/w) = sup_f v(f)/w(f) = max_i t_i / s_i`` for monomial ``v = t``, ``w = s``."""
    t, s = _check_weights(t), _check_weights(s)
    if len(t) != len(s):
        raise ArityError("arity mismatch")
    return max(a / b for a, b in zip(t, s))


def linking_number_brute(t: Sequence, s: Sequence, degree: int) -> Fraction:
    """Max of ``<t,alpha>/<s,alpha>`` over nonzero monomials of degree ``<= degree``."""
    t, s = _check_weights(t), _check_weights(s)
    best = Fraction(0)
    for a in product(range(degree + 1), repeat=len(t)):
        if 0 < sum(a) <= degree:
            best = max(best, dot(t, a) / dot(s, a))
    return best


def linking_number_limit(t: Sequence, s: Sequence, n: int) -> Fraction:
    """``n / w(a(v, n))``, converging to ``beta(v/w)``."""
    t, s = _check_weights(t), _check_weights(s)
    if len(t) != len(s):
        raise ArityError("arity mismatch")
    T, N = _integer_scaling(t, n)
    if len(t) == 1:
        return Fraction(n) / (s[0] * -(-N // T[0]))
    # the minimum of w over a(v, n) sits on a generator; candidates dominate generators
    grids, last = _staircase_candidates(T, N)
    S, D = _integer_scaling(s, 1)
    w = sum(S[i] * grids[i] for i in range(len(t) - 1)) + S[-1] * last
    return Fraction(n) / Fraction(int(w.min()), D)


# ---------------------------------------------------------------- Lipschitz experiments


@dataclass(frozen=True)
class PairRowD:
    v: tuple
    w: tuple
    distance: Fraction
    inclusion_ok: bool
    ratios: tuple  # |alpha_i(v) - alpha_i(w)| / distance, i = 0..m
    bounds: tuple  # i * C_i * A
    within: bool


def inclusion_holds(tv, tw, n, A, dist) -> bool:
    """``a(v, n) ⊆ a(w, n (1 - A dist))``, tested on generators."""
    target = Fraction(n) * (1 - A * dist)
    return all(dot(tw, g) >= target for g in valuation_ideal(tv, n).gens)


def lipschitz_experiment_D(
    pairs: Sequence[tuple[tuple, tuple, Fraction]], A, levels: Sequence[int] = (8, 16, 32)
) -> list[PairRowD]:
    """``pairs`` holds ``(x-weights of v, x-weights of w, distance in Delta)``.

    Checks the ideal inclusion at every level and compares the difference
    quotients of ``alpha_i`` with ``i * C * A``, ``C = sup alpha_i`` over the sample.
    """
    A = to_fraction(A)
    alphas = {}
    for tv, tw, _ in pairs:
        for t in (tv, tw):
            if t not in alphas:
                alphas[t] = alpha(t).exact
    m = len(pairs[0][0])
    C = [max(a[i] for a in alphas.values()) for i in range(m + 1)]
    rows = []
    for tv, tw, d in pairs:
        inc = all(inclusion_holds(tv, tw, n, A, d) and inclusion_holds(tw, tv, n, A, d) for n in levels)
        av, aw = alphas[tv], alphas[tw]
        if d == 0:
            ratios = tuple(Fraction(0) for _ in range(m + 1))
        else:
            ratios = tuple(abs(x - y) / d for x, y in zip(av, aw))
        bounds = tuple(i * C[i] * A for i in range(m + 1))
        rows.append(PairRowD(tv, tw, d, inc, ratios, bounds, all(r <= b for r, b in zip(ratios, bounds))))
    return rows


@dataclass(frozen=True)
class QuadRowE:
    v: tuple
    vp: tuple
    w: tuple
    wp: tuple
    submultiplicative: bool
    perturbation_ok: bool
    ratio: Fraction
    bound: Fraction


def lipschitz_experiment_E(quads, A) -> list[QuadRowE]:
    """``quads`` holds ``(v, v', w, w', |v - w|, |v' - w'|)`` as x-weights and Delta distances.

    Checks ``beta(v/v') <= beta(v/w) beta(w/w') beta(w'/v')`` and
    ``beta(v/v') <= beta(w/w') / ((1 - A|v-w|)(1 - A|v'-w'|))``; the Lipschitz
    ratio of ``beta`` is compared with ``4 A sup(beta)`` (valid when ``A |.| <= 1/2``).
    """
    A = to_fraction(A)
    betas = [max(linking_number(v, vp), linking_number(w, wp)) for v, vp, w, wp, _, _ in quads]
    C = max(betas)
    rows = []
    for v, vp, w, wp, d, dp in quads:
        lhs = linking_number(v, vp)
        sub = lhs <= linking_number(v, w) * linking_number(w, wp) * linking_number(wp, vp)
        pert = lhs * (1 - A * d) * (1 - A * dp) <= linking_number(w, wp)
        pert &= linking_number(w, wp) * (1 - A * d) * (1 - A * dp) <= lhs
        tot = d + dp
        ratio = Fraction(0) if tot == 0 else abs(lhs - linking_number(w, wp)) / tot
        rows.append(QuadRowE(v, vp, w, wp, sub, pert, ratio, 4 * A * C))
    return rows
