"""Seeded generators for polynomials, weight points and models used by the experiment suites.

Every function takes an explicit ``random.Random`` (or a seed), so a seed
fully determines a corpus.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import SupportSet

MAX_TERMS = 12
MAX_EXPONENT = 20


def rng_for(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_polynomial(
    rng: random.Random,
    m: int,
    max_terms: int = MAX_TERMS,
    max_exponent: int = MAX_EXPONENT,
    vanishing: bool = False,
    max_degree: int | None = None,
) -> SupportSet:
    """Sparse polynomial with 1..max_terms terms and small integer coefficients.

    ``vanishing`` forces the constant term out (``f`` in ``m_0``);
    ``max_degree`` bounds the total degree instead of each exponent.
    """
    while True:
        k = rng.randint(1, max_terms)
        terms = {}
        for _ in range(k):
            if max_degree is not None:
                d = rng.randint(1 if vanishing else 0, max_degree)
                cuts = sorted(rng.randint(0, d) for _ in range(m - 1))
                e = tuple(b - a for a, b in zip([0] + cuts, cuts + [d]))
            else:
                e = tuple(rng.randint(0, max_exponent) for _ in range(m))
            if vanishing and sum(e) == 0:
                continue
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            terms[e] = terms.get(e, 0) + c
        f = SupportSet(m, terms)
        if not f.is_zero():
            return f


def low_order_polynomial(rng: random.Random, m: int = 2, max_terms: int = 6, max_degree: int = 8) -> SupportSet:
    """Polynomial in ``m_0`` biased towards low order, so ``ord_0`` stays small."""
    return random_polynomial(rng, m, max_terms=max_terms, vanishing=True, max_degree=max_degree)


def random_simplex_point(rng: random.Random, b: Sequence[int], denominator: int = 24, interior: bool = True) -> tuple:
    """Rational point of ``{t >= 0, sum b_j t_j = 1}`` with barycentric denominator ``denominator``."""
    n = len(b)
    while True:
        if interior and denominator < n:
            denominator = n
        cuts = sorted(rng.randint(0, denominator) for _ in range(n - 1))
        parts = [y - x for x, y in zip([0] + cuts, cuts + [denominator])]
        if interior and any(p == 0 for p in parts):
            continue
        return tuple(Fraction(p, denominator) / bj for p, bj in zip(parts, b))


def random_weight_vector(rng: random.Random, m: int, denominator: int = 12, lo: int = 1) -> tuple:
    """Full-support weights on the simplex ``sum t_i = 1`` with each ``t_i >= lo/denominator``."""
    while True:
        t = random_simplex_point(rng, [1] * m, denominator)
        if all(x >= Fraction(lo, denominator) for x in t):
            return t


def split_seeds(seed: int) -> tuple[int, int]:
    """Two derived seeds for the halves of a corpus."""
    r = random.Random(seed)
    return r.randrange(2**31), r.randrange(2**31)
