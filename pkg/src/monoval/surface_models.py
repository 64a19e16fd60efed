"""Sequences of point blowups over a smooth surface germ, and toric models at infinity.

Each exceptional curve ``E_k`` comes with the chart at its center ``P_k``:
a list of elementary substitutions pulling ``(x, y)`` back to local
coordinates ``(u, v)`` at ``P_k``. A point of ``E_k`` has a coordinate
``c`` in ``Q u {inf}``; the chart at that point is

* ``(u, v) = (a, a (b + c))`` for finite ``c``,
* ``(u, v) = (a b, a)`` for ``c = inf``,

so ``E_k = {a = 0}`` there. The strict transforms of ``{u = 0}`` and
``{v = 0}`` meet ``E_k`` at ``inf`` and ``0``.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .complex import DualComplex, WeightPoint
from .core import INF, Norm, ParseError, SupportSet, dot, fmt, min_total_degree, to_fraction
from .fans import Fan, FanError, is_complete_2d
from .valuation import (
    PiecewiseAffineConcave,
    chi_on_face,
    eval_valuation,
    extremal_points,
    restricted_dual_norm,
)


class TreeError(ValueError):
    pass


# ---------------------------------------------------------------- chart substitutions


def blowup_pullback(f: SupportSet, c) -> SupportSet:
    """Pull ``f(u, v)`` back along one blowup chart centred at coordinate ``c``."""
    out: dict[tuple, Fraction] = {}
    if c == INF:
        for (i, j), coef in f.terms.items():
            e = (i + j, i)
            out[e] = out.get(e, Fraction(0)) + coef
        return SupportSet(2, out)
    c = to_fraction(c)
    for (i, j), coef in f.terms.items():
        # u^i v^j -> a^(i+j) (b + c)^j
        for k in range(j + 1):
            term = coef * math.comb(j, k) * c ** (j - k)
            if term:
                e = (i + j, k)
                out[e] = out.get(e, Fraction(0)) + term
    return SupportSet(2, out)


def pull_back(f: SupportSet, steps: Sequence, cache: dict | None = None) -> SupportSet:
    """Pull ``f`` back through a chart; ``cache`` memoises prefixes for one ``f``."""
    if cache is None:
        for c in steps:
            f = blowup_pullback(f, c)
        return f
    key = tuple(steps)
    if key not in cache:
        cache[key] = f if not key else blowup_pullback(pull_back(f, key[:-1], cache), key[-1])
    return cache[key]


X = SupportSet.monomial((1, 0))
Y = SupportSet.monomial((0, 1))


@dataclass(frozen=True)
class Node:
    parent: int | None
    at: str = "root"  # "root" | "free" | "satellite"
    coord: object = None  # Fraction or INF, for free points
    with_: int | None = None  # other curve, for satellite points


def _parse_coord(c):
    if isinstance(c, str) and c.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    return to_fraction(c if not isinstance(c, float) else str(c))


@dataclass
class BlowupTree:
    """Blowups over the origin of ``A^2``: node 0 blows up the origin, node ``k`` a point of the exceptional locus."""

    nodes: list = field(default_factory=list)

    def __post_init__(self):
        self._build()

    # construction ---------------------------------------------------------
    @classmethod
    def from_json(cls, data: Mapping | str) -> "BlowupTree":
        if isinstance(data, str):
            data = json.loads(data)
        nodes = []
        try:
            for k, raw in enumerate(data["nodes"]):
                parent = raw.get("parent")
                if parent is None:
                    nodes.append(Node(None))
                elif raw.get("at", "free") == "free":
                    nodes.append(Node(int(parent), "free", _parse_coord(str(raw.get("coord", "0")))))
                elif raw["at"] == "satellite":
                    nodes.append(Node(int(parent), "satellite", None, int(raw["with"])))
                else:
                    raise TreeError(f"node {k}: unknown attachment {raw['at']!r}")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed tree JSON: {exc}") from None
        return cls(nodes)

    def to_json(self) -> dict:
        out = []
        for n in self.nodes:
            if n.parent is None:
                out.append({"parent": None})
            elif n.at == "free":
                out.append({"parent": n.parent, "at": "free", "coord": fmt(n.coord)})
            else:
                out.append({"parent": n.parent, "at": "satellite", "with": n.with_})
        return {"nodes": out}

    @classmethod
    def single(cls) -> "BlowupTree":
        return cls([Node(None)])

    @classmethod
    def chain(cls, k: int, coords: Sequence | None = None) -> "BlowupTree":
        """``k`` successive free blowups, each on the newest curve (default coordinate 0)."""
        coords = list(coords) if coords is not None else [0] * (k - 1)
        nodes = [Node(None)] + [Node(i, "free", _parse_coord(c)) for i, c in zip(range(k - 1), coords)]
        return cls(nodes)

    def _build(self):
        if not self.nodes or self.nodes[0].parent is not None:
            raise TreeError("node 0 must be the root blowup of the origin")
        self.steps: list[list] = []  # chart at P_k
        self.meets: list[dict] = []  # coordinate on E_k -> curve id
        for k, node in enumerate(self.nodes):
            if k == 0:
                self.steps.append([])
                self.meets.append({})
                continue
            if node.parent is None or not (0 <= node.parent < k):
                raise TreeError(f"node {k}: parent must be an earlier node")
            p = node.parent
            if node.at == "free":
                c = node.coord
                if c in self.meets[p]:
                    raise TreeError(
                        f"node {k}: coordinate {fmt(c)} on E_{p} is where E_{self.meets[p][c]} meets it, use a satellite"
                    )
                self.steps.append(self.steps[p] + [c])
                self.meets.append({INF: p})
                self.meets[p][c] = k
            elif node.at == "satellite":
                w = node.with_
                if w is None or not (0 <= w < k) or w == p:
                    raise TreeError(f"node {k}: satellite partner must be another earlier node")
                cp = self._coord_of(p, w)
                if cp is None:
                    raise TreeError(f"node {k}: E_{p} and E_{w} do not meet")
                n, o = max(p, w), min(p, w)
                cn = self._coord_of(n, o)
                co = self._coord_of(o, n)
                self.steps.append(self.steps[n] + [cn])
                self.meets.append({INF: n, 0: o})
                self.meets[n][cn] = k
                self.meets[o][co] = k
            else:
                raise TreeError(f"node {k}: unknown attachment {node.at!r}")

    def _coord_of(self, i: int, j: int):
        for c, other in self.meets[i].items():
            if other == j:
                return c
        return None

    # geometry -------------------------------------------------------------
    def __len__(self):
        return len(self.nodes)

    def chart_at_center(self, k: int) -> list:
        return list(self.steps[k])

    def intersection_chart(self, i: int, j: int) -> tuple[list, int, int]:
        """Chart at ``E_i cap E_j`` as ``(steps, id on the a-axis, id on the b-axis)``."""
        n, o = max(i, j), min(i, j)
        c = self._coord_of(n, o)
        if c is None:
            raise TreeError(f"E_{i} and E_{j} do not meet")
        return self.steps[n] + [c], n, o

    def divisorial_order(self, k: int, f: SupportSet):
        """``ord_{E_k}(f)``: multiplicity at ``P_k`` of the pullback of ``f``."""
        return min_total_degree(pull_back(f, self.steps[k]))

    def multiplicities(self) -> list[int]:
        return [min(self.divisorial_order(k, X), self.divisorial_order(k, Y)) for k in range(len(self))]

    def edges(self) -> list[tuple[int, int]]:
        return sorted({tuple(sorted((i, j))) for i, m in enumerate(self.meets) for j in m.values()})

    def blown_up_on(self, i: int) -> int:
        count = 0
        for node in self.nodes[i + 1 :]:
            if node.parent == i or node.with_ == i:
                count += 1
        return count

    def intersection_matrix(self) -> list[list[int]]:
        N = len(self)
        M = [[0] * N for _ in range(N)]
        for i in range(N):
            M[i][i] = -1 - self.blown_up_on(i)
        for i, j in self.edges():
            M[i][j] = M[j][i] = 1
        return M

    def strict_transform_intersections(self, f: SupportSet) -> list[int]:
        """``(f~ . E_i)`` for the strict transform of ``{f = 0}``, from chart multiplicities.

        A fresh ``E_k`` meets the strict transform with multiplicity
        ``mult_{P_k}`` of the strict transform; every later blowup at a point
        of ``E_k`` lowers it by that point's multiplicity.
        """
        N = len(self)
        mult = []
        for k in range(N):
            g = pull_back(f, self.steps[k])
            # divide by the exceptional axes through P_k
            through = self._curves_through_center(k)
            ex = [0, 0]
            for axis in through:
                ex[axis] = min(e[axis] for e in g.terms)
            strict = SupportSet(2, {(e[0] - ex[0], e[1] - ex[1]): c for e, c in g.terms.items()})
            mult.append(min_total_degree(strict))
        out = []
        for i in range(N):
            s = mult[i]
            for k in range(i + 1, N):
                node = self.nodes[k]
                if node.parent == i or node.with_ == i:
                    s -= mult[k]
            out.append(s)
        return out

    def _curves_through_center(self, k: int) -> list[int]:
        """Which local axes at ``P_k`` are exceptional: 0 for ``{u=0}``, 1 for ``{v=0}``."""
        node = self.nodes[k]
        if node.at == "root":
            return []
        if node.at == "free":
            return [0]
        return [0, 1]


@dataclass(frozen=True)
class IntersectionData:
    matrix: tuple  # tuple of tuples
    b: tuple

    def c(self, i: int, j: int) -> int:
        """``c_ij = b_j (E_i . E_j)``."""
        return self.b[j] * self.matrix[i][j]

    def z_dot(self) -> list[int]:
        return [sum(bj * self.matrix[i][j] for j, bj in enumerate(self.b)) for i in range(len(self.b))]

    def is_negative_definite(self) -> bool:
        """Sylvester's criterion on ``-M``."""
        from .polyhedra import det

        n = len(self.b)
        return all(det([[-self.matrix[i][j] for j in range(k)] for i in range(k)]) > 0 for k in range(1, n + 1))


def dual_graph(tree: BlowupTree) -> tuple[DualComplex, IntersectionData]:
    b = tree.multiplicities()
    cx = DualComplex.from_maximal({i: bi for i, bi in enumerate(b)}, [list(e) for e in tree.edges()])
    M = tree.intersection_matrix()
    return cx, IntersectionData(tuple(map(tuple, M)), tuple(b))


# ---------------------------------------------------------------- valuations on the model


def face_expansion(tree: BlowupTree, face: Sequence[int], f: SupportSet, cache: dict | None = None) -> SupportSet:
    """Local expansion of ``f`` at the generic point of ``E_J``, coordinates ordered by sorted ids."""
    face = sorted(face)
    if len(face) == 1:
        (k,) = face
        if f.is_zero():
            return SupportSet.zero(1)
        return SupportSet(1, {(min_total_degree(pull_back(f, tree.steps[k], cache)),): 1})
    if len(face) != 2:
        raise TreeError("faces of a surface dual graph have at most two vertices")
    steps, n, o = tree.intersection_chart(*face)
    g = pull_back(f, steps, cache)
    # a belongs to the newer curve n = face[1]; reorder exponents to (E_face[0], E_face[1])
    return g.permute((1, 0))


def model_face_data(tree: BlowupTree, f: SupportSet) -> dict[tuple, tuple[SupportSet, tuple]]:
    cx, data = dual_graph(tree)
    out = {}
    cache: dict = {}
    for J in sorted(cx.faces, key=lambda s: (len(s), sorted(s))):
        J = tuple(sorted(J))
        out[J] = (face_expansion(tree, J, f, cache), tuple(data.b[j] for j in J))
    return out


def eval_on_model(tree: BlowupTree, f: SupportSet, p: WeightPoint):
    """``v_p(f)`` for the monomial valuation ``p`` on the dual graph."""
    if f.is_zero():
        raise ValueError("value of the zero polynomial is infinite")
    J = sorted(p.support)
    if not J:
        raise ValueError("empty weight point")
    local = face_expansion(tree, J, f)
    return eval_valuation(p.on(J), local)


def chi_on_model_face(tree: BlowupTree, f: SupportSet, face: Sequence[int]) -> PiecewiseAffineConcave:
    _, data = dual_graph(tree)
    J = tuple(sorted(face))
    return chi_on_face(face_expansion(tree, J, f), tuple(data.b[j] for j in J), J)


def vertex_values(tree: BlowupTree, f: SupportSet) -> list[Fraction]:
    b = tree.multiplicities()
    return [Fraction(tree.divisorial_order(k, f), b[k]) for k in range(len(tree))]


# ---------------------------------------------------------------- vertex-bound constants


def theta_G(data: IntersectionData, a: Sequence, strict_dot: Sequence) -> Fraction:
    """``max_i |G . E_i|`` for ``G = sum a_j E_j + G~`` with ``G~ . E_i`` given."""
    if len(strict_dot) != len(data.b):
        raise ValueError("need G~ . E_i for every exceptional curve")
    n = len(data.b)
    vals = [
        sum(to_fraction(a[j]) * data.matrix[i][j] for j in range(n)) + to_fraction(strict_dot[i])
        for i in range(n)
    ]
    return max(abs(v) for v in vals)


def theta_of_polynomial(tree: BlowupTree, f: SupportSet) -> Fraction:
    """theta for ``G = div(pi^* f)``, strict part read off the charts (zero for principal G)."""
    _, data = dual_graph(tree)
    a = [tree.divisorial_order(k, f) for k in range(len(tree))]
    return theta_G(data, a, tree.strict_transform_intersections(f))


def graph_diameter(cx: DualComplex) -> int:
    """Hop diameter of the 1-skeleton."""
    best = 0
    for s in cx.vertices:
        dist = {s: 0}
        q = deque([s])
        while q:
            i = q.popleft()
            for j in cx.neighbours(i):
                if j not in dist:
                    dist[j] = dist[i] + 1
                    q.append(j)
        if len(dist) != len(cx.vertices):
            raise TreeError("dual graph is disconnected")
        best = max(best, max(dist.values()))
    return best


def metric_diameter(cx: DualComplex) -> Fraction:
    """Geodesic diameter over vertices, each edge of LInf length ``max(1/b_i, 1/b_j)``."""
    verts = cx.vertices
    INFD = None
    dist = {(i, j): (Fraction(0) if i == j else INFD) for i in verts for j in verts}
    for i, j in cx.edges():
        w = max(Fraction(1, cx.b[i]), Fraction(1, cx.b[j]))
        dist[(i, j)] = dist[(j, i)] = w
    for k in verts:
        for i in verts:
            for j in verts:
                a, b = dist[(i, k)], dist[(k, j)]
                if a is not None and b is not None and (dist[(i, j)] is None or a + b < dist[(i, j)]):
                    dist[(i, j)] = a + b
    if any(v is None for v in dist.values()):
        raise TreeError("dual graph is disconnected")
    return max(dist.values())


@dataclass(frozen=True)
class VertexBound:
    A0: Fraction
    B0: Fraction
    l: int
    A: Fraction
    B: Fraction


def vertex_bound_constants(cx: DualComplex, data: IntersectionData) -> VertexBound:
    l = graph_diameter(cx)
    A0, B0 = Fraction(1), Fraction(0)
    ids = cx.vertices
    for i, j in cx.edges():
        for p, q in ((i, j), (j, i)):
            ip, iq = ids.index(p), ids.index(q)
            cpq = data.c(ip, iq)
            A0 = max(A0, Fraction(abs(data.c(ip, ip)), cpq))
            B0 = max(B0, Fraction(1, cpq))
    A = A0**l
    B = B0 * sum((A0**k for k in range(l)), Fraction(0))
    return VertexBound(A0, B0, l, A, B)


@dataclass(frozen=True)
class IzumiRow:
    poly: str
    ord0: int
    min_value: Fraction
    max_value: Fraction
    vertex_ratios: tuple  # chi(e_i) / ord0
    min_is_ord0: bool
    vertex_bound_ok: bool  # max <= A * min + B * theta
    izumi_ok: bool  # max <= (1 + A * diam) * min

    @property
    def passed(self) -> bool:
        return self.min_is_ord0 and self.vertex_bound_ok and self.izumi_ok


def izumi_check(tree: BlowupTree, corpus: Sequence[SupportSet]) -> tuple[VertexBound, Fraction, list[IzumiRow]]:
    cx, data = dual_graph(tree)
    vb = vertex_bound_constants(cx, data)
    diam = metric_diameter(cx)
    rows = []
    for f in corpus:
        o = min_total_degree(f)
        if o == 0 or o == INF:
            raise ValueError("Izumi check needs nonzero f vanishing at the origin")
        vals = vertex_values(tree, f)
        lo, hi = min(vals), max(vals)
        theta = theta_of_polynomial(tree, f)
        rows.append(
            IzumiRow(
                f.serialize(),
                o,
                lo,
                hi,
                tuple(v / o for v in vals),
                lo == o,
                hi <= vb.A * lo + vb.B * theta,
                hi <= (1 + vb.A * diam) * lo,
            )
        )
    return vb, diam, rows


# ---------------------------------------------------------------- toric models at infinity


def _angle(r):
    return math.atan2(r[1], r[0]) % (2 * math.pi)


@dataclass(frozen=True)
class InfinityComplex:
    """Dual complex of the boundary of a toric compactification of ``A^2``."""

    fan: Fan
    rays: tuple  # ids of rays at infinity, in angular order
    b: dict
    edges: tuple

    def point(self, w: Sequence) -> dict:
        """Weights ``t_u`` of the Delta-point ``w`` (normalised ``-min(0, w_1, w_2) = 1``)."""
        cone, coeffs = self.fan.locate(w)
        return {i: c for i, c in zip(cone, coeffs) if c}


def infinity_complex(fan: Fan) -> InfinityComplex:
    if fan.dim != 2 or not is_complete_2d(fan):
        raise FanError("fan is not a complete 2D fan")
    for r in ((1, 0), (0, 1), (-1, -1)):
        if r not in fan.rays:
            raise FanError(f"fan does not refine the fan of P^2: ray {r} missing")
    at_inf = [i for i, r in enumerate(fan.rays) if min(r) < 0]
    at_inf.sort(key=lambda i: _angle(fan.rays[i]))
    b = {i: -min(0, *fan.rays[i]) for i in at_inf}
    edges = tuple(sorted(tuple(c) for c in fan.cones if all(i in b for i in c)))
    return InfinityComplex(fan, tuple(at_inf), b, edges)


def chi_at_infinity(ic: InfinityComplex, P: SupportSet, face: Sequence[int]) -> PiecewiseAffineConcave:
    """``chi(w) = min <w, alpha>`` on one face of the complex at infinity, in weight coordinates."""
    face = tuple(sorted(face))
    forms = []
    for alpha in P.terms:
        forms.append((tuple(dot(ic.fan.rays[i], alpha) for i in face), Fraction(0)))
    return PiecewiseAffineConcave(tuple(forms), tuple(ic.b[i] for i in face), face).prune()


@dataclass(frozen=True)
class InfinityReport:
    degree: int
    min_value: Fraction
    min_is_minus_d: bool
    lipschitz: Fraction
    ratio: Fraction


def at_infinity(fan: Fan, P: SupportSet, norm: Norm = Norm.LINF) -> InfinityReport:
    if P.is_zero():
        raise ValueError("zero polynomial")
    d = P.total_degree()
    if d < 1:
        raise ValueError("degree must be positive")
    ic = infinity_complex(fan)
    vals = []
    for i in ic.rays:
        t = Fraction(1, ic.b[i])
        vals.append(min(t * dot(ic.fan.rays[i], a) for a in P.terms))
    lo = min(vals)
    lip = Fraction(0)
    for e in ic.edges:
        lip = max(lip, chi_at_infinity(ic, P, e).lipschitz_constant(norm))
    return InfinityReport(d, lo, lo == -d, lip, lip / d)


def infinity_lipschitz_bound(fan: Fan, norm: Norm = Norm.LINF) -> Fraction:
    """``B`` with ``lip(chi_P) <= B deg P`` for every ``P``.

    Each form is linear in ``alpha``, which ranges over ``d`` times the unit
    simplex, so the restricted dual norm peaks at ``alpha = d e_1`` or ``d e_2``.
    """
    ic = infinity_complex(fan)
    best = Fraction(0)
    for e in ic.edges:
        b = [ic.b[i] for i in e]
        for k in range(2):
            m = [ic.fan.rays[i][k] for i in e]
            best = max(best, restricted_dual_norm(m, b, norm))
    return best


def p2_refinement(extra_rays: Sequence[Sequence[int]] = ()) -> Fan:
    return Fan.from_rays_2d([(1, 0), (0, 1), (-1, -1), *extra_rays])


def extremal_norm_ratio(tree: BlowupTree, f: SupportSet) -> Fraction:
    """max over faces of the max L1 norm of an extremal point, divided by ord_0 f."""
    best = Fraction(0)
    for loc, _ in model_face_data(tree, f).values():
        for a in extremal_points(loc):
            best = max(best, Fraction(sum(a)))
    return best / min_total_degree(f)


def curvette(tree: BlowupTree, k: int) -> SupportSet:
    """Equation of a smooth germ whose strict transform cuts ``E_k`` transversally at a free point."""
    import sympy

    c = 0
    while Fraction(c) in tree.meets[k]:
        c += 1
    steps = tree.steps[k] + [c]
    a, x, y = sympy.symbols("a x y")
    # parametrise the axis {b = 0} of the chart at coordinate c on E_k
    px, py = _param(steps, a)
    res = sympy.Poly(sympy.resultant(x - px, y - py, a), x, y)
    terms = {}
    for (i, j), coef in res.terms():
        terms[(int(i), int(j))] = Fraction(int(sympy.numer(coef)), int(sympy.denom(coef)))
    g = math.gcd(*[abs(v.numerator) for v in terms.values()])
    return SupportSet(2, {e: v / g for e, v in terms.items()})


def _param(steps, a):
    """Image of the curve ``{b = 0}`` under the chart ``steps``, as ``(x(a), y(a))``."""
    import sympy

    b = sympy.Integer(0)
    u, v = a, b
    for c in reversed(steps):
        if c == INF:
            u, v = u * v, u
        else:
            u, v = u, u * (v + sympy.Rational(c.numerator, c.denominator))
    return sympy.expand(u), sympy.expand(v)
