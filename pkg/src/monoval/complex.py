"""Dual complexes with multiplicities and their points as monomial valuations.

A point of the complex is stored in weight coordinates: ``t_i`` is the value
of the valuation on ``E_i`` and the normalization is ``sum_i b_i t_i = 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import ArityError, Norm, ParseError, norm_eval, to_fraction


class ComplexError(ValueError):
    pass


def _closure(faces: Iterable[Iterable[int]]) -> frozenset:
    out = set()
    for f in faces:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, k))
    return frozenset(out)


@dataclass(frozen=True)
class DualComplex:
    """Abstract simplicial complex, one vertex per component ``E_i`` of ``Z = sum b_i E_i``."""

    b: Mapping[int, int]
    faces: frozenset

    def __post_init__(self):
        object.__setattr__(self, "b", {int(i): int(v) for i, v in sorted(self.b.items())})
        object.__setattr__(self, "faces", frozenset(frozenset(f) for f in self.faces))

    @classmethod
    def from_maximal(cls, b: Mapping[int, int], maximal: Iterable[Iterable[int]]) -> "DualComplex":
        return cls(b, _closure(list(maximal) + [[i] for i in b]))

    @classmethod
    def simplex(cls, b: Sequence[int]) -> "DualComplex":
        ids = range(len(b))
        return cls.from_maximal({i: bi for i, bi in zip(ids, b)}, [list(ids)])

    @property
    def vertices(self) -> list[int]:
        return list(self.b)

    def is_face(self, J: Iterable[int]) -> bool:
        return frozenset(J) in self.faces

    def maximal_faces(self) -> list[frozenset]:
        return sorted(
            (f for f in self.faces if not any(f < g for g in self.faces)),
            key=lambda f: (len(f), sorted(f)),
        )

    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == 2)

    def neighbours(self, i: int) -> list[int]:
        return sorted({j for e in self.edges() if i in e for j in e if j != i})

    def validate(self) -> list[str]:
        """Every violated invariant, as human-readable messages; empty means valid."""
        errors = []
        for i, bi in self.b.items():
            if bi < 1:
                errors.append(f"vertex {i}: multiplicity b={bi} must be >= 1")
            if frozenset([i]) not in self.faces:
                errors.append(f"vertex {i}: singleton face missing")
        for f in sorted(self.faces, key=sorted):
            if not f:
                errors.append("empty face listed")
                continue
            unknown = sorted(f - set(self.b))
            if unknown:
                errors.append(f"face {sorted(f)}: unknown vertices {unknown}")
            for k in range(1, len(f)):
                for sub in combinations(sorted(f), k):
                    if frozenset(sub) not in self.faces:
                        errors.append(f"face {sorted(f)}: subface {list(sub)} missing (not downward closed)")
        if self.b and not errors:
            seen = {next(iter(self.b))}
            stack = list(seen)
            while stack:
                i = stack.pop()
                for j in self.neighbours(i):
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            missing = sorted(set(self.b) - seen)
            if missing:
                errors.append(f"1-skeleton disconnected: vertices {missing} unreachable")
        return errors

    def check(self) -> "DualComplex":
        errors = self.validate()
        if errors:
            raise ComplexError("; ".join(errors))
        return self

    def star(self, sigma: Iterable[int]) -> tuple[frozenset, list[frozenset]]:
        """``(L, faces)``: the link-vertex set of ``sigma`` and all faces containing it."""
        sigma = frozenset(sigma)
        if sigma not in self.faces:
            raise ComplexError(f"{sorted(sigma)} is not a face")
        faces = sorted((f for f in self.faces if sigma <= f), key=lambda f: (len(f), sorted(f)))
        L = frozenset().union(*faces)
        return L, faces

    def vertex_point(self, i: int) -> "WeightPoint":
        return WeightPoint({i: Fraction(1, self.b[i])})

    def from_barycentric(self, J: Sequence[int], coords: Sequence) -> "WeightPoint":
        """Point with barycentric coordinates ``coords`` on the face ``J``: ``t_j = c_j / b_j``."""
        J = list(J)
        if len(J) != len(coords):
            raise ArityError("one barycentric coordinate per vertex of J")
        cs = [to_fraction(c) for c in coords]
        if any(c < 0 for c in cs):
            raise ComplexError("barycentric coordinates must be nonnegative")
        if sum(cs) != 1:
            raise ComplexError(f"barycentric coordinates sum to {sum(cs)}, not 1")
        if not self.is_face([j for j, c in zip(J, cs) if c]) or not self.is_face(J):
            raise ComplexError(f"{J} is not a face")
        return WeightPoint({j: c / self.b[j] for j, c in zip(J, cs)})

    def barycentric(self, p: "WeightPoint") -> dict[int, Fraction]:
        return {i: self.b[i] * t for i, t in p.weights.items()}

    def contains(self, p: "WeightPoint") -> bool:
        return (
            all(t >= 0 for t in p.weights.values())
            and self.is_face(p.support)
            and sum(self.b[i] * t for i, t in p.weights.items()) == 1
        )

    def distance(self, p: "WeightPoint", q: "WeightPoint", norm: Norm = Norm.LINF) -> Fraction:
        ids = sorted(set(p.weights) | set(q.weights))
        return norm_eval(norm, [p[i] - q[i] for i in ids])

    def eval_divisor(self, p: "WeightPoint", D: Mapping[int, object]) -> Fraction:
        """``v(D) = sum a_i t_i`` for ``D = sum a_i E_i``."""
        unknown = sorted(set(D) - set(self.b))
        if unknown:
            raise ComplexError(f"divisor mentions unknown vertices {unknown}")
        unknown = sorted(set(p.weights) - set(self.b))
        if unknown:
            raise ComplexError(f"point mentions unknown vertices {unknown}")
        return sum((to_fraction(a) * p[i] for i, a in D.items()), Fraction(0))

    def Z(self) -> dict[int, int]:
        return dict(self.b)

    # serialization
    def to_json(self) -> dict:
        return {
            "vertices": [{"id": i, "b": bi} for i, bi in self.b.items()],
            "faces": sorted((sorted(f) for f in self.faces), key=lambda f: (len(f), f)),
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "DualComplex":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            b = {int(v["id"]): int(v.get("b", 1)) for v in data["vertices"]}
            faces = [frozenset(int(i) for i in f) for f in data.get("faces", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed complex JSON: {exc}") from None
        faces += [frozenset([i]) for i in b]
        return cls(b, frozenset(faces))


@dataclass(frozen=True)
class WeightPoint:
    """Sparse nonnegative weight vector ``t`` over vertex ids (zeros dropped)."""

    weights: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        w = {int(i): to_fraction(t) for i, t in self.weights.items()}
        if any(t < 0 for t in w.values()):
            raise ComplexError("weights must be nonnegative")
        object.__setattr__(self, "weights", {i: t for i, t in sorted(w.items()) if t})

    def __hash__(self):
        return hash(tuple(self.weights.items()))

    def __getitem__(self, i: int) -> Fraction:
        return self.weights.get(i, Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(self.weights)

    def on(self, J: Sequence[int]) -> tuple:
        """Weights restricted to (and ordered by) ``J``; raises if support leaves ``J``."""
        if not self.support <= set(J):
            raise ArityError(f"point supported on {sorted(self.support)} not inside {list(J)}")
        return tuple(self[j] for j in J)

    def combine(self, other: "WeightPoint", lam) -> "WeightPoint":
        """``(1 - lam) * self + lam * other``."""
        lam = to_fraction(lam)
        ids = set(self.weights) | set(other.weights)
        return WeightPoint({i: (1 - lam) * self[i] + lam * other[i] for i in ids})
