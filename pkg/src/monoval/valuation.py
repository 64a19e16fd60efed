"""Monomial valuations on a face and the concave piecewise-affine function chi_f.

On a face ``J`` with multiplicities ``b_J`` the domain is the simplex
``{t >= 0, sum b_j t_j = 1}`` in weight coordinates, and
``chi_f(t) = min over alpha in supp(f) of <t, alpha>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .core import INF, ArityError, Norm, SupportSet, dot, fmt, min_total_degree, norm_eval, to_fraction
from .polyhedra import (
    UnsupportedDimension,
    in_newton,
    in_newton_lp,
    lp_minimize,
    newton_facets,
    newton_vertices,
    solve,
)

MAX_LIPSCHITZ_DIM = 4  # faces with at most four vertices, i.e. dimension <= 3

Form = tuple  # (coeffs: tuple[Fraction, ...], const: Fraction)


def eval_valuation(t: Sequence, f: SupportSet):
    """``min <t, alpha>`` over the support of ``f``; ``INF`` for the zero polynomial."""
    if len(t) != f.arity:
        raise ArityError(f"weight vector of length {len(t)} against arity {f.arity}")
    if f.is_zero():
        return INF
    return min(dot(t, a) for a in f.terms)


# ---------------------------------------------------------------- Newton polyhedra


@dataclass(frozen=True)
class NewtonPolyhedron:
    arity: int
    extremal: tuple  # sorted extremal points

    @property
    def facets(self):
        return newton_facets(self.extremal, self.arity)

    def contains(self, beta: Sequence) -> bool:
        return in_newton([to_fraction(x) for x in beta], self.facets)


def newton_polyhedron(f: SupportSet | Iterable[Sequence]) -> NewtonPolyhedron:
    if isinstance(f, SupportSet):
        if f.is_zero():
            raise ValueError("Newton polyhedron of the zero polynomial")
        pts, m = list(f.terms), f.arity
    else:
        pts = [tuple(p) for p in f]
        if not pts:
            raise ValueError("Newton polyhedron of an empty point set")
        m = len(pts[0])
    return NewtonPolyhedron(m, tuple(newton_vertices(pts, m)))


def extremal_points(f) -> list[tuple]:
    np_ = f if isinstance(f, NewtonPolyhedron) else newton_polyhedron(f)
    return list(np_.extremal)


def restrict_to_face(f: SupportSet, J: Sequence[int]) -> SupportSet:
    """Project the support onto coordinates ``J``: valuations supported on ``J`` see only these."""
    out: dict[tuple, Fraction] = {}
    for e, c in f.terms.items():
        k = tuple(e[j] for j in J)
        out[k] = out.get(k, Fraction(0)) + Fraction(1)
    return SupportSet(len(J), out)


# ---------------------------------------------------------------- concave PL functions


@dataclass(frozen=True)
class PiecewiseAffineConcave:
    """``t -> min_k (<coeffs_k, t> + const_k)`` on the simplex ``{t >= 0, sum b_j t_j = 1}``.

    ``domain`` names the vertex ids of the face, in coordinate order.
    """

    forms: tuple
    b: tuple
    domain: tuple = field(default=())

    def __post_init__(self):
        forms = tuple(
            sorted({(tuple(to_fraction(c) for c in a), to_fraction(k)) for a, k in self.forms})
        )
        if not forms:
            raise ValueError("a piecewise affine function needs at least one form")
        n = len(self.b)
        if any(len(a) != n for a, _ in forms):
            raise ArityError("form length does not match the face dimension")
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "b", tuple(to_fraction(x) for x in self.b))
        object.__setattr__(self, "domain", tuple(self.domain) or tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.b)

    # evaluation
    def form_value(self, form: Form, t: Sequence) -> Fraction:
        return dot(form[0], t) + form[1]

    def __call__(self, t: Sequence) -> Fraction:
        return min(self.form_value(fm, t) for fm in self.forms)

    def active(self, t: Sequence) -> list[Form]:
        vals = [(self.form_value(fm, t), fm) for fm in self.forms]
        best = min(v for v, _ in vals)
        return [fm for v, fm in vals if v == best]

    def in_domain(self, t: Sequence) -> bool:
        return len(t) == self.dim and all(x >= 0 for x in t) and dot(self.b, t) == 1

    def vertices(self) -> list[tuple]:
        n = self.dim
        return [tuple(Fraction(int(i == j)) / self.b[i] for j in range(n)) for i in range(n)]

    def directional_derivative(self, v: Sequence, w: Sequence) -> Fraction:
        """One-sided derivative of ``chi`` at ``v`` towards ``w``: ``min over active forms of l(w - v)``."""
        if not self.in_domain(v):
            raise ValueError("base point outside the domain")
        d = [to_fraction(a) - to_fraction(b) for a, b in zip(w, v)]
        return min(dot(a, d) for a, _ in self.active(v))

    def is_affine_on(self, points: Sequence[Sequence]) -> bool:
        """True when one form realises the minimum at every point (so chi is affine on their hull)."""
        common = None
        for p in points:
            act = set(self.active(p))
            common = act if common is None else common & act
            if not common:
                return False
        return True

    # irredundancy
    def prune(self) -> "PiecewiseAffineConcave":
        """Drop forms that never strictly achieve the minimum on an open subset of the domain."""
        if all(k == 0 for _, k in self.forms) and all(c >= 0 for a, _ in self.forms for c in a):
            keep = set(newton_vertices([a for a, _ in self.forms], self.dim))
            return PiecewiseAffineConcave(
                tuple(fm for fm in self.forms if fm[0] in keep), self.b, self.domain
            )
        forms = list(self.forms)
        k = 0
        while k < len(forms):
            if len(forms) > 1 and _strict_margin(forms, k, self.b) <= 0:
                forms.pop(k)
            else:
                k += 1
        return PiecewiseAffineConcave(tuple(forms), self.b, self.domain)

    # norms
    def lipschitz_constant(self, norm: Norm = Norm.LINF) -> Fraction:
        """Exact Lipschitz constant for ``norm`` on weight coordinates.

        Max over forms of the dual norm of the form restricted to the
        direction space ``W = {sum b_j w_j = 0}`` of the face.
        """
        if self.dim == 1:
            return Fraction(0)
        return max(restricted_dual_norm(a, self.b, norm) for a, _ in self.prune().forms)

    def sup_abs(self) -> Fraction:
        """``sup |chi|`` on the domain: max via an exact LP, min at a vertex (concavity)."""
        lo = min(self(v) for v in self.vertices())
        return max(self.max_value(), -lo)

    def max_value(self) -> Fraction:
        # variables t_0..t_{n-1}, s+, s-, slack_k ; maximize s = s+ - s-
        n = self.dim
        F = len(self.forms)
        A, rhs = [], []
        for k, (a, c) in enumerate(self.forms):
            # <a,t> + c - s - slack_k = 0
            A.append(list(a) + [-1, 1] + [-int(i == k) for i in range(F)])
            rhs.append(-c)
        A.append(list(self.b) + [0, 0] + [0] * F)
        rhs.append(1)
        cost = [0] * n + [-1, 1] + [0] * F
        val, _ = lp_minimize(cost, A, rhs)
        return -val

    def c01_norm(self, norm: Norm = Norm.LINF) -> Fraction:
        return self.sup_abs() + self.lipschitz_constant(norm)

    def cell_vertices(self) -> list[tuple]:
        """Vertices of the arrangement cut out on the domain by ``l_i = l_j`` and ``t_k = 0``.

        Contains every vertex of every domain of affineness of ``chi``.
        """
        n = self.dim
        if n == 1:
            return [(1 / self.b[0],)]
        hyper = []
        for (a1, c1), (a2, c2) in combinations(self.forms, 2):
            row = tuple(x - y for x, y in zip(a1, a2))
            if any(row):
                hyper.append((row, c2 - c1))
        for k in range(n):
            hyper.append((tuple(Fraction(int(i == k)) for i in range(n)), Fraction(0)))
        out = set()
        for chosen in combinations(hyper, n - 1):
            A = [h[0] for h in chosen] + [self.b]
            rhs = [h[1] for h in chosen] + [Fraction(1)]
            t = solve(A, rhs)
            if t is not None and all(x >= 0 for x in t):
                out.add(t)
        return sorted(out)

    def __add__(self, other: "PiecewiseAffineConcave") -> "PiecewiseAffineConcave":
        if self.b != other.b:
            raise ArityError("functions live on different faces")
        forms = [
            (tuple(x + y for x, y in zip(a1, a2)), c1 + c2)
            for (a1, c1), (a2, c2) in product(self.forms, other.forms)
        ]
        return PiecewiseAffineConcave(tuple(forms), self.b, self.domain).prune()

    def to_json(self) -> dict:
        return {
            "domain": list(self.domain),
            "b": [fmt(x) for x in self.b],
            "forms": [{"coeffs": [fmt(x) for x in a], "const": fmt(c)} for a, c in self.forms],
        }


def _strict_margin(forms, k, b) -> Fraction:
    """``max_t min_{j != k} (l_j - l_k)(t)`` over the domain simplex."""
    n = len(b)
    ak, ck = forms[k]
    others = [fm for j, fm in enumerate(forms) if j != k]
    F = len(others)
    A, rhs = [], []
    for j, (a, c) in enumerate(others):
        # (a - ak).t + (c - ck) - s - slack_j = 0
        A.append([x - y for x, y in zip(a, ak)] + [-1, 1] + [-int(i == j) for i in range(F)])
        rhs.append(ck - c)
    A.append(list(b) + [0, 0] + [0] * F)
    rhs.append(1)
    val, _ = lp_minimize([0] * n + [-1, 1] + [0] * F, A, rhs)
    return -val


def restricted_dual_norm(m: Sequence, b: Sequence, norm: Norm = Norm.LINF) -> Fraction:
    """``sup <m, w>`` over ``w`` in the unit ``norm``-ball with ``sum b_j w_j = 0``.

    The sup is attained at a vertex of (ball intersect W), and every such
    vertex lies on an edge of the ball.
    """
    m = [to_fraction(x) for x in m]
    b = [to_fraction(x) for x in b]
    n = len(m)
    if n > MAX_LIPSCHITZ_DIM:
        raise UnsupportedDimension(f"Lipschitz constants are computed on faces with <= {MAX_LIPSCHITZ_DIM} vertices")
    if n == 1:
        return Fraction(0)
    best = Fraction(0)
    if norm is Norm.L1:
        for i, j in combinations(range(n), 2):
            best = max(best, abs(m[i] * b[j] - m[j] * b[i]) / (b[i] + b[j]))
        return best
    for k in range(n):
        rest = [i for i in range(n) if i != k]
        for signs in product((-1, 1), repeat=n - 1):
            wk = -sum(b[i] * s for i, s in zip(rest, signs)) / b[k]
            if abs(wk) <= 1:
                val = m[k] * wk + sum(m[i] * s for i, s in zip(rest, signs))
                best = max(best, abs(val))
    return best


def chi_on_face(
    f: SupportSet, b: Sequence | None = None, domain: Sequence[int] | None = None
) -> PiecewiseAffineConcave:
    """chi_f on the face whose local coordinates are the variables of ``f``."""
    if f.is_zero():
        raise ValueError("chi of the zero polynomial is identically infinite")
    b = tuple(b) if b is not None else (1,) * f.arity
    if len(b) != f.arity:
        raise ArityError("need one multiplicity per variable")
    ext = newton_vertices(list(f.terms), f.arity)
    forms = tuple((a, Fraction(0)) for a in ext)
    return PiecewiseAffineConcave(forms, b, tuple(domain) if domain is not None else ())


def np_membership(beta: Sequence, f: SupportSet, method: str = "vertex") -> bool:
    """Is ``beta`` in the Newton polyhedron of ``f``?

    ``vertex``: ``<v, beta> >= chi_f(v)`` at every vertex of the refinement of
    chi's pieces on the standard simplex; ``lp``: primal convex-combination
    LP; ``facets``: facet inequalities.
    """
    beta = tuple(to_fraction(x) for x in beta)
    if len(beta) != f.arity:
        raise ArityError(f"point of length {len(beta)} against arity {f.arity}")
    if f.is_zero():
        return False
    if method == "lp":
        return in_newton_lp(beta, list(f.terms))
    if method == "facets":
        return in_newton(beta, newton_facets(list(f.terms), f.arity))
    if method != "vertex":
        raise ValueError(f"unknown method {method!r}")
    chi = chi_on_face(f)
    return all(dot(v, beta) >= chi(v) for v in chi.cell_vertices())


# ---------------------------------------------------------------- face bounds against ord_0


@dataclass(frozen=True)
class FaceBound:
    face: tuple
    ord0: object
    max_extremal_norm: Fraction
    lipschitz: Fraction
    ratio: object  # max_extremal_norm / ord0, None when ord0 == 0
    passed: bool


def face_bound(
    face: tuple, local: SupportSet, b: Sequence, ord0, A, norm: Norm = Norm.LINF
) -> FaceBound:
    """Extremal-norm and Lipschitz data of chi_f on one face against ``A * ord0``."""
    ext = extremal_points(local)
    max_norm = max(norm_eval(norm.dual, a) for a in ext)
    chi = chi_on_face(local, b)
    lip = chi.lipschitz_constant(norm)
    ratio = None if ord0 == 0 else Fraction(max_norm) / ord0
    bound = Fraction(A) * ord0
    if ord0 == 0:
        passed = lip == 0
    else:
        passed = max_norm <= bound and lip <= bound
    return FaceBound(tuple(face), ord0, max_norm, lip, ratio, passed)


def smooth_face_expansions(f: SupportSet) -> dict[tuple, tuple[SupportSet, tuple]]:
    """Local data for every face of the coordinate simplex at a smooth point (all ``b_j = 1``)."""
    out = {}
    m = f.arity
    for k in range(1, m + 1):
        for J in combinations(range(m), k):
            out[J] = (restrict_to_face(f, J), (1,) * k)
    return out


def check_theoremA(
    f: SupportSet,
    faces: dict[tuple, tuple[SupportSet, tuple]] | None = None,
    A=None,
    norm: Norm = Norm.LINF,
    ord0=None,
) -> list[FaceBound]:
    """Per-face rows ``(ord0, max extremal norm, Lipschitz, ratio, pass)``.

    ``faces`` maps a face label to ``(local expansion, b on the face)``; by
    default the coordinate simplex at a smooth point. With ``A=None`` the
    rows are computed against the smallest ``A`` that works for ``f``.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    faces = faces if faces is not None else smooth_face_expansions(f)
    ord0 = min_total_degree(f) if ord0 is None else ord0
    if A is None:
        A = fitted_A([f], [faces], [ord0], norm)
    return [face_bound(J, loc, b, ord0, A, norm) for J, (loc, b) in sorted(faces.items())]


def fitted_A(fs, face_maps, ord0s, norm: Norm = Norm.LINF) -> Fraction:
    """Smallest ``A`` with every extremal dual norm ``<= A * ord0`` over a corpus."""
    best = Fraction(0)
    for f, faces, o in zip(fs, face_maps, ord0s):
        if o == 0:
            continue
        for loc, _ in faces.values():
            for a in extremal_points(loc):
                best = max(best, norm_eval(norm.dual, a) / Fraction(o))
    return best
