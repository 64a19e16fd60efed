"""Special subdivisions of a dual complex around a point, their support function,
barycentric refinement away from the star, and the toric (monomial) check of
the linearization identity.

Positions are weight vectors over the ordered vertex ids ``coords`` of the
original complex, so vertex ``e_j`` sits at ``(1/b_j) * delta_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .complex import ComplexError, DualComplex, WeightPoint
from .core import INF, SupportSet, dot, fmt, to_fraction
from .fans import Fan, FanError
from .polyhedra import affine_rank, primitive, simplex_volume, solve
from .valuation import PiecewiseAffineConcave, chi_on_face


class SubdivisionError(ValueError):
    pass


@dataclass
class PolyComplex:
    coords: tuple  # ordered ids of the original complex
    b: dict
    positions: dict  # vertex id -> weight vector over coords
    faces: set  # frozensets of vertex ids, downward closed within each cell's face lattice
    provenance: dict = field(default_factory=dict)  # new vertex -> ("eps", j) | ("barycenter", face)
    carrier: dict = field(default_factory=dict)  # face -> original polytope face it lies in

    def copy(self) -> "PolyComplex":
        return PolyComplex(
            self.coords, dict(self.b), dict(self.positions), set(self.faces), dict(self.provenance), dict(self.carrier)
        )

    def points(self, face) -> list[tuple]:
        return [self.positions[i] for i in sorted(face)]

    def dim(self, face) -> int:
        return affine_rank(self.points(face))

    def is_simplex(self, face) -> bool:
        return self.dim(face) == len(face) - 1

    def is_simplicial(self) -> bool:
        return all(self.is_simplex(f) for f in self.faces)

    def maximal_faces(self) -> list[frozenset]:
        return sorted((f for f in self.faces if not any(f < g for g in self.faces)), key=sorted)

    def delta_face(self, face) -> frozenset:
        """Smallest face of the original complex containing ``face``."""
        k = len(self.coords)
        return frozenset(self.coords[c] for c in range(k) if any(self.positions[i][c] for i in face))

    def barycentric(self, pos: Sequence, tau: Sequence[int]) -> tuple:
        idx = {j: c for c, j in enumerate(self.coords)}
        return tuple(self.b[j] * pos[idx[j]] for j in tau)

    def star(self, face) -> list[frozenset]:
        face = frozenset(face)
        return sorted((f for f in self.faces if face <= f), key=lambda f: (len(f), sorted(f)))

    def cell_volume(self, face) -> Fraction:
        """Volume of a cell in barycentric coordinates of its original face (last one dropped)."""
        tau = sorted(self.delta_face(face))
        pts = [self.barycentric(self.positions[i], tau)[:-1] for i in sorted(face)]
        if len(tau) == 1:
            return Fraction(1)
        if self.is_simplex(face):
            if len(pts) != len(tau):
                return Fraction(0)
            return simplex_volume(pts)
        return sum((simplex_volume([self.barycentric(self.positions[i], tau)[:-1] for i in s])
                    for s in self._prism_triangulation(face)), Fraction(0))

    def _prism_triangulation(self, face) -> list[list[int]]:
        """Staircase triangulation of a frustum ``rho u rho^eps`` (needs provenance)."""
        bottom = sorted(i for i in face if i not in self.provenance)
        top_of = {self.provenance[i][1]: i for i in face if i in self.provenance and self.provenance[i][0] == "eps"}
        if sorted(top_of) != bottom:
            raise SubdivisionError(f"cell {sorted(face)} is not a frustum")
        k = len(bottom)
        return [bottom[: i + 1] + [top_of[j] for j in bottom[i:]] for i in range(k)]

    def to_json(self) -> dict:
        return {
            "coords": list(self.coords),
            "vertices": [
                {"id": i, "position": [fmt(x) for x in p], **self._prov_json(i)}
                for i, p in sorted(self.positions.items())
            ],
            "faces": sorted((sorted(f) for f in self.faces), key=lambda f: (len(f), f)),
        }

    def _prov_json(self, i):
        if i not in self.provenance:
            return {}
        kind, data = self.provenance[i]
        return {"provenance": {"kind": kind, "of": data if kind == "eps" else sorted(data)}}


@dataclass(frozen=True)
class SupportFunction:
    """``h = max(max_{j in J} -s'_j / s_j, -(1 - eps))`` with ``s'`` the barycentric coordinates."""

    J: tuple
    s: tuple
    eps: Fraction
    coords: tuple
    b: Mapping

    def pieces(self) -> list[tuple]:
        """Affine pieces as ``(coefficients over coords, constant)``."""
        out = []
        for j, sj in zip(self.J, self.s):
            coeff = tuple(Fraction(-self.b[c], 1) / sj if c == j else Fraction(0) for c in self.coords)
            out.append((coeff, Fraction(0)))
        out.append((tuple(Fraction(0) for _ in self.coords), -(1 - self.eps)))
        return out

    def __call__(self, t) -> Fraction:
        if isinstance(t, WeightPoint):
            t = tuple(t[c] for c in self.coords)
        return max(dot(a, t) + c for a, c in self.pieces())


def _position(coords, weights: Mapping[int, Fraction]) -> tuple:
    return tuple(Fraction(weights.get(c, 0)) for c in coords)


def special_subdivide(cx: DualComplex, sigma: Sequence[int], v: WeightPoint, eps) -> tuple[PolyComplex, SupportFunction, frozenset]:
    """``Delta^eps(v)``: scale the star of ``sigma`` towards ``v`` by ``eps`` and fill the collar.

    Returns the subdivision, its support function and the vertex set of ``sigma^eps``.
    """
    eps = to_fraction(eps)
    if not (0 < eps < 1):
        raise SubdivisionError("eps must lie strictly between 0 and 1")
    sigma = frozenset(sigma)
    if not cx.is_face(sigma):
        raise ComplexError(f"{sorted(sigma)} is not a face")
    if v.support != sigma or not cx.contains(v):
        raise SubdivisionError("v must lie in the relative interior of sigma")
    coords = tuple(cx.vertices)
    L, star_faces = cx.star(sigma)
    positions = {i: _position(coords, {i: Fraction(1, cx.b[i])}) for i in coords}
    vpos = _position(coords, v.weights)
    new_id = max(coords) + 1
    eps_id: dict[int, int] = {}
    provenance = {}
    for j in sorted(L):
        if sigma == {j}:
            eps_id[j] = j
            continue
        eps_id[j] = new_id
        positions[new_id] = tuple(eps * a + (1 - eps) * c for a, c in zip(positions[j], vpos))
        provenance[new_id] = ("eps", j)
        new_id += 1
    closed_star = {frozenset(r) for f in star_faces for k in range(1, len(f) + 1) for r in combinations(sorted(f), k)}
    faces = set()
    for f in cx.faces:
        if not (sigma <= f):
            faces.add(frozenset(f))
    for f in closed_star:
        scaled = frozenset(eps_id[j] for j in f)
        faces.add(scaled)
        if not (sigma <= f):
            faces.add(frozenset(f) | scaled)
    pc = PolyComplex(coords, dict(cx.b), positions, faces, provenance)
    pc.carrier = {f: f for f in faces}
    s = tuple(cx.b[j] * v[j] for j in sorted(sigma))
    h = SupportFunction(tuple(sorted(sigma)), s, eps, coords, dict(cx.b))
    return pc, h, frozenset(eps_id[j] for j in sigma)


def barycentric_outside_star(pc: PolyComplex, sigma_eps) -> PolyComplex:
    """Simplicial refinement by iterated barycenters of every non-simplex, star of ``sigma_eps`` untouched."""
    out = pc.copy()
    if not out.carrier:
        out.carrier = {f: f for f in out.faces}
    sigma_eps = frozenset(sigma_eps)
    originals = sorted((f for f in pc.faces if not pc.is_simplex(f)), key=lambda f: (pc.dim(f), sorted(f)))
    for F in originals:
        if sigma_eps <= F:
            raise SubdivisionError("a face in the star of sigma^eps is not a simplex")
        bary = max(out.positions) + 1
        pts = out.points(F)
        out.positions[bary] = tuple(sum(col, Fraction(0)) / len(pts) for col in zip(*pts))
        out.provenance[bary] = ("barycenter", F)
        boundary = [g for g in out.faces if out.carrier[g] < F]
        out.faces.discard(F)
        del out.carrier[F]
        out.faces.add(frozenset([bary]))
        out.carrier[frozenset([bary])] = F
        for g in boundary:
            cone = g | {bary}
            out.faces.add(cone)
            out.carrier[cone] = F
    return out


def _affine_extension(pc: PolyComplex, cell, values: Mapping[int, Fraction]):
    """Affine function on the span of the cell's original face, fitted at the cell's vertices.

    Returned as a linear form on barycentric coordinates of that face, or
    ``None`` when the vertex values are not affine.
    """
    tau = sorted(pc.delta_face(cell))
    verts = sorted(cell)
    bary = {i: pc.barycentric(pc.positions[i], tau) for i in verts}
    k = len(tau)
    chosen = None
    for sub in combinations(verts, k):
        g = solve([bary[i] for i in sub], [values[i] for i in sub])
        if g is not None:
            chosen = g
            break
    if chosen is None:
        return None
    if any(dot(chosen, bary[i]) != values[i] for i in verts):
        return None
    return tau, chosen


def is_projective(pc: PolyComplex, h, detail: bool = False):
    """Is ``h`` affine on each cell and strictly convex across every wall inside one original face?

    ``h`` is a :class:`SupportFunction` or a mapping vertex id -> value
    (extended affinely on each cell).
    """
    reasons = []
    if isinstance(h, Mapping):
        values = {i: to_fraction(h[i]) for i in pc.positions}
        pieces = None
    else:
        values = {i: h(pc.positions[i]) for i in pc.positions}
        pieces = h.pieces()
    cells = [c for c in pc.maximal_faces() if pc.dim(c) == len(pc.delta_face(c)) - 1]
    ext = {}
    for c in cells:
        if pieces is not None and not any(
            all(dot(a, pc.positions[i]) + k == values[i] for i in c) for a, k in pieces
        ):
            reasons.append(f"h is not affine on cell {sorted(c)}")
            continue
        e = _affine_extension(pc, c, values)
        if e is None:
            reasons.append(f"vertex values are not affine on cell {sorted(c)}")
            continue
        ext[c] = e
    for c1, c2 in combinations(cells, 2):
        if c1 not in ext or c2 not in ext:
            continue
        tau = pc.delta_face(c1)
        if tau != pc.delta_face(c2):
            continue
        wall = c1 & c2
        if not wall or pc.dim(wall) != len(tau) - 2:
            continue
        for a, b in ((c1, c2), (c2, c1)):
            t, g = ext[a]
            for i in sorted(b - wall):
                if not dot(g, pc.barycentric(pc.positions[i], t)) < values[i]:
                    reasons.append(f"not strictly convex across the wall {sorted(wall)} between {sorted(a)} and {sorted(b)}")
                    break
    ok = not reasons
    return (ok, reasons) if detail else ok


def covers_exactly(pc: PolyComplex, cx: DualComplex) -> bool:
    """Cells inside each maximal face of ``cx`` have volumes summing to that face's volume."""
    for tau in cx.maximal_faces():
        total = sum(
            (pc.cell_volume(c) for c in pc.maximal_faces() if pc.delta_face(c) == tau),
            Fraction(0),
        )
        ref = simplex_volume([[Fraction(int(i == j)) for j in range(len(tau) - 1)] for i in range(len(tau))]) if len(tau) > 1 else Fraction(1)
        if total != ref:
            return False
    return True


# ---------------------------------------------------------------- fans of monomial models


def cone_fan(pc: PolyComplex) -> tuple[Fan, dict[int, int]]:
    """Fan of cones over the cells of a simplicial subdivision of the coordinate simplex.

    Returns the fan and the map vertex id -> ray index.
    """
    ids = sorted(pc.positions)
    ray_of = {i: k for k, i in enumerate(ids)}
    rays = tuple(primitive(pc.positions[i]) for i in ids)
    cones = tuple(tuple(sorted(ray_of[i] for i in c)) for c in pc.maximal_faces())
    return Fan(rays, cones), ray_of


def divisor_valuation_fn(fan: Fan, i: int, w: Sequence) -> Fraction:
    """``w(E'_i)``: coefficient of ray ``i`` when ``w`` is written on the generators of its cone."""
    errs = fan.validate()
    if errs:
        raise FanError("; ".join(errs))
    cone, coeffs = fan.locate(w)
    return dict(zip(cone, coeffs)).get(i, Fraction(0))


@dataclass(frozen=True)
class L101Row:
    point: tuple
    lhs: Fraction
    rhs: Fraction
    residual: Fraction  # chi(w) - sum over all vertices of chi(e'_j) b'_j w(E'_j)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class L101Report:
    preconditions: dict  # name -> bool
    rows: tuple
    residual_ok: bool  # residual >= 0 everywhere checked, == 0 on sigma'

    @property
    def precondition_ok(self) -> bool:
        return all(self.preconditions.values())

    @property
    def identity_ok(self) -> bool:
        return all(r.equal for r in self.rows)

    @property
    def status(self) -> str:
        if not self.precondition_ok:
            return "precondition"
        return "pass" if self.identity_ok and self.residual_ok else "fail"


def verify_L101(
    b: Sequence[int],
    sigma: Sequence[int],
    v: WeightPoint,
    eps,
    f: SupportSet,
    extra_points: Sequence[Sequence] = (),
) -> L101Report:
    """Check ``chi(v) w(Z) + sum_j D_v chi(e_j) b_j w(E_j) = sum_j chi(e'_j) b'_j w(E'_j)`` on the star of ``sigma'``.

    Model: ``A^m`` with ``Z = sum b_i {x_i = 0}``; the subdivision is
    ``Delta^eps(v)`` made simplicial, realised as a fan refining the orthant.
    """
    m = len(b)
    cx = DualComplex.simplex(b)
    pc, _, sig_eps = special_subdivide(cx, sigma, v, eps)
    pc = barycentric_outside_star(pc, sig_eps)
    fan, ray_of = cone_fan(pc)
    chi = chi_on_face(f, tuple(b))
    coords = pc.coords
    vpos = tuple(v[c] for c in coords)
    L, _ = cx.star(sigma)
    eps_of = {}
    for i, (kind, j) in ((i, p) for i, p in pc.provenance.items() if p[0] == "eps"):
        eps_of[j] = i
    if len(sigma) == 1:
        (j0,) = sigma
        eps_of[j0] = j0
    e_prime = {j: pc.positions[eps_of[j]] for j in sorted(L)}
    pre = {
        "affine on sigma'": chi.is_affine_on([e_prime[j] for j in sorted(sigma)]),
    }
    for j in sorted(L):
        pre[f"affine on [v, e'_{j}]"] = chi.is_affine_on([vpos, e_prime[j]])
    bprime = {i: dot(fan.rays[ray_of[i]], b) for i in pc.positions}
    e_vertex = {j: tuple(Fraction(int(c == j), b[j]) for c in coords) for j in coords}
    dv = {j: chi.directional_derivative(vpos, e_vertex[j]) for j in sorted(L)}
    chi_v = chi(vpos)

    def wE(i, w):
        return divisor_valuation_fn(fan, ray_of[i], w)

    def lhs(w):
        return chi_v * dot(b, w) + sum((dv[j] * b[j] * w[coords.index(j)] for j in sorted(L)), Fraction(0))

    def rhs(w):
        return sum((chi(e_prime[j]) * bprime[eps_of[j]] * wE(eps_of[j], w) for j in sorted(L)), Fraction(0))

    def residual(w):
        return chi(w) - sum((chi(pc.positions[i]) * bprime[i] * wE(i, w) for i in pc.positions), Fraction(0))

    star_cells = [c for c in pc.star(sig_eps)]
    pts = sorted({pc.positions[i] for c in star_cells for i in c})
    pts += [tuple(to_fraction(x) for x in p) for p in extra_points]
    rows = tuple(L101Row(p, lhs(p), rhs(p), residual(p)) for p in pts)
    sig_pts = [e_prime[j] for j in sorted(sigma)]
    bary_sig = tuple(sum(col, Fraction(0)) / len(sig_pts) for col in zip(*sig_pts))
    residual_ok = all(r.residual >= 0 for r in rows) and residual(bary_sig) == 0 and all(
        residual(p) == 0 for p in sig_pts
    )
    return L101Report(pre, rows, residual_ok)
