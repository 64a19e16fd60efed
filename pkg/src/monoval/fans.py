"""Two-dimensional and orthant fans given by primitive rays and simplicial cones."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import ParseError, to_fraction
from .polyhedra import primitive, rank, solve


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple  # primitive integer vectors
    cones: tuple  # tuples of ray indices, sorted

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.cones))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", cones)

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def validate(self, orthant: bool = False) -> list[str]:
        errors = []
        for i, r in enumerate(self.rays):
            if len(r) != self.dim:
                errors.append(f"ray {i} has the wrong length")
            elif math.gcd(*r) != 1:
                errors.append(f"ray {i} = {list(r)} is not primitive")
            if orthant and any(x < 0 for x in r):
                errors.append(f"ray {i} = {list(r)} leaves the nonnegative orthant")
        for c in self.cones:
            if rank([self.rays[i] for i in c]) != len(c):
                errors.append(f"cone {list(c)} is not simplicial")
        return errors

    def cone_coefficients(self, cone: Sequence[int], w: Sequence) -> tuple | None:
        """Coefficients ``c`` with ``w = sum c_j u_j`` over the cone's rays if ``w`` lies in it."""
        gens = [self.rays[i] for i in cone]
        m = self.dim
        w = [to_fraction(x) for x in w]
        if len(gens) == m:
            c = solve([[g[r] for g in gens] for r in range(m)], w)
        else:
            c = _least_coefficients(gens, w)
        if c is None or any(x < 0 for x in c):
            return None
        if any(sum(ci * g[r] for ci, g in zip(c, gens)) != w[r] for r in range(m)):
            return None
        return tuple(c)

    def locate(self, w: Sequence) -> tuple[tuple, tuple]:
        """A maximal cone containing ``w`` and the coefficients of ``w`` in it."""
        for c in sorted(self.cones, key=lambda c: -len(c)):
            coeffs = self.cone_coefficients(c, w)
            if coeffs is not None:
                return c, coeffs
        raise FanError(f"{[str(x) for x in w]} lies outside the support of the fan")

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Fan":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple(map(tuple, data["rays"])), tuple(map(tuple, data["cones"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed fan JSON: {exc}") from None

    @classmethod
    def from_rays_2d(cls, rays: Sequence[Sequence[int]]) -> "Fan":
        """Complete 2D fan with cones between angularly consecutive rays."""
        rays = sorted({primitive(r) for r in rays}, key=lambda r: math.atan2(r[1], r[0]) % (2 * math.pi))
        cones = [(i, (i + 1) % len(rays)) for i in range(len(rays))]
        fan = cls(tuple(rays), tuple(cones))
        for i, j in fan.cones:
            u, v = fan.rays[i], fan.rays[j]
            if u[0] * v[1] - u[1] * v[0] == 0:
                raise FanError("rays too sparse for a complete fan")
        return fan


def _least_coefficients(gens, w):
    """Exact solve of an overdetermined but consistent system via independent rows."""
    m = len(w)
    k = len(gens)
    rows = list(range(m))
    from itertools import combinations

    for sub in combinations(rows, k):
        A = [[g[r] for g in gens] for r in sub]
        c = solve(A, [w[r] for r in sub])
        if c is not None:
            return c
    return None


def is_complete_2d(fan: Fan) -> bool:
    """Consecutive rays span strictly convex cones that go once around the origin."""
    if fan.dim != 2 or len(fan.rays) < 3:
        return False
    order = sorted(range(len(fan.rays)), key=lambda i: math.atan2(fan.rays[i][1], fan.rays[i][0]) % (2 * math.pi))
    want = sorted(tuple(sorted((order[i], order[(i + 1) % len(order)]))) for i in range(len(order)))
    if sorted(fan.cones) != want:
        return False
    for i, j in fan.cones:
        u, v = fan.rays[i], fan.rays[j]
        if u[0] * v[1] - u[1] * v[0] == 0:
            return False
    # consecutive angular gaps below pi
    angles = [math.atan2(fan.rays[i][1], fan.rays[i][0]) % (2 * math.pi) for i in order]
    gaps = [(angles[(i + 1) % len(angles)] - angles[i]) % (2 * math.pi) for i in range(len(angles))]
    return all(0 < g < math.pi for g in gaps)


def orthant_fan(m: int) -> Fan:
    rays = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    return Fan(rays, (tuple(range(m)),))


def star_subdivide(fan: Fan, ray: Sequence[int]) -> Fan:
    """Stellar subdivision of every cone containing ``ray`` in its relative interior-or-face."""
    ray = primitive(ray)
    if ray in fan.rays:
        return fan
    rays = list(fan.rays) + [ray]
    new = len(rays) - 1
    cones = []
    for c in fan.cones:
        coeffs = fan.cone_coefficients(c, ray)
        if coeffs is None:
            cones.append(c)
            continue
        support = [i for i, x in zip(c, coeffs) if x > 0]
        for drop in support:
            cones.append(tuple(sorted([i for i in c if i != drop] + [new])))
    return Fan(tuple(rays), tuple(cones))


def fraction_vector(v) -> tuple:
    return tuple(Fraction(x) for x in v)
