"""Command line interface: ``monoval <command> ...``.

Exit codes: 0 when everything ran and every assertion held, 1 when a
report suite found a failing case, 2 for usage, parse and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .complex import ComplexError, DualComplex, WeightPoint
from .core import ArityError, Norm, ParseError, SupportSet, fmt, parse_support, parse_vector, to_fraction
from .fans import FanError
from .multiplicities import (
    IdealError,
    alpha,
    linking_number,
    linking_number_brute,
    linking_number_limit,
    volume,
    volume_oracle,
)
from .polyhedra import UnsupportedDimension
from .reports import SUITES, SuiteConfig, SuiteError, builtin_models, run_suite
from .subdivision import SubdivisionError, barycentric_outside_star, is_projective, special_subdivide
from .surface_models import (
    BlowupTree,
    TreeError,
    chi_on_model_face,
    dual_graph,
    eval_on_model,
    graph_diameter,
    metric_diameter,
    vertex_bound_constants,
    vertex_values,
)
from .valuation import chi_on_face, eval_valuation, newton_polyhedron, restrict_to_face

USAGE_ERRORS = (
    ParseError,
    ArityError,
    ComplexError,
    TreeError,
    FanError,
    IdealError,
    SubdivisionError,
    SuiteError,
    UnsupportedDimension,
    ValueError,
    OSError,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input helpers


def load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load_model(source: str):
    """A tree (``nodes``), a complex (``vertices``/``faces``) or a simplex (``b``); builtin tree names work too."""
    models = builtin_models()
    if source in models:
        return models[source]
    data = load_json(source)
    if not isinstance(data, dict):
        raise UsageError(f"{source}: expected a JSON object")
    if "nodes" in data:
        return BlowupTree.from_json(data)
    if "vertices" in data:
        return DualComplex.from_json(data).check()
    if "b" in data:
        return DualComplex.simplex([int(x) for x in data["b"]]).check()
    raise UsageError(f"{source}: expected a tree (nodes), a complex (vertices, faces) or a simplex (b)")


def vector(text: str, what: str) -> tuple:
    try:
        return parse_vector(text)
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed {what} {text!r}: {exc}") from None


def ids(text: str, what: str) -> tuple:
    return tuple(int(x) for x in vector(text, what))


def poly(text: str, arity: int | None = None) -> SupportSet:
    return parse_support(text, arity)


def emit(args, payload) -> int:
    """Write text or JSON to ``--out`` or stdout; returns the success exit code."""
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _csv(rows) -> str:
    return "".join(",".join(fmt(x) if not isinstance(x, str) else x for x in r) + "\n" for r in rows)


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> int:
    model = load_model(args.model)
    if isinstance(model, BlowupTree):
        f = poly(args.poly, 2)
        if not args.point:
            vals = vertex_values(model, f)
            return emit(args, _csv([["vertex", "chi"]] + [[f"E{k}", v] for k, v in enumerate(vals)]))
        out = []
        for p in args.point:
            t = vector(p, "weight vector")
            if len(t) != len(model):
                raise UsageError(f"weight vector {p!r} has {len(t)} entries, the model has {len(model)} vertices")
            out.append(eval_on_model(model, f, WeightPoint(dict(enumerate(t)))))
        return emit(args, "".join(fmt(v) + "\n" for v in out))
    verts = model.vertices
    f = poly(args.poly, len(verts))
    if not args.point:
        rows = [["vertex", "chi"]]
        for i in verts:
            rows.append([f"e{i}", eval_valuation(tuple(Fraction(int(j == i), model.b[i]) for j in verts), f)])
        return emit(args, _csv(rows))
    out = []
    for p in args.point:
        t = vector(p, "weight vector")
        if len(t) != len(verts):
            raise UsageError(f"weight vector {p!r} has {len(t)} entries, the model has {len(verts)} vertices")
        support = [i for i, x in zip(verts, t) if x]
        if any(x < 0 for x in t) or not model.is_face(support):
            raise UsageError(f"weight vector {p!r} is not supported on a face of the model")
        out.append(eval_valuation(t, f))
    return emit(args, "".join(fmt(v) + "\n" for v in out))


def cmd_chi(args) -> int:
    model = load_model(args.model)
    norm = Norm.parse(args.norm)
    if isinstance(model, BlowupTree):
        f = poly(args.poly, 2)
        cx, _ = dual_graph(model)
        faces = [ids(args.face, "face")] if args.face else sorted((tuple(sorted(J)) for J in cx.faces), key=lambda J: (len(J), J))
        chis = [chi_on_model_face(model, f, J) for J in faces]
    else:
        f = poly(args.poly, len(model.vertices))
        faces = [ids(args.face, "face")] if args.face else sorted((tuple(sorted(J)) for J in model.faces), key=lambda J: (len(J), J))
        chis = []
        for J in faces:
            if not model.is_face(J):
                raise UsageError(f"{list(J)} is not a face of the model")
            chis.append(chi_on_face(_restrict(f, J, model.vertices), tuple(model.b[j] for j in J), J))
    out = []
    for chi in chis:
        d = chi.to_json()
        d["lipschitz"] = fmt(chi.lipschitz_constant(norm))
        d["norm"] = norm.value
        out.append(d)
    return emit(args, out)


def _restrict(f: SupportSet, J, verts) -> SupportSet:
    return restrict_to_face(f, [verts.index(j) for j in J])


def cmd_newton(args) -> int:
    f = poly(args.poly, args.arity)
    np_ = newton_polyhedron(f)
    if args.member:
        beta = vector(args.member, "exponent")
        if len(beta) != f.arity:
            raise UsageError(f"point {args.member!r} has {len(beta)} entries, the polynomial has arity {f.arity}")
        return emit(args, ("true" if np_.contains(beta) else "false") + "\n")
    payload = {
        "arity": f.arity,
        "extremal": [[fmt(x) for x in a] for a in np_.extremal],
        "facets": [
            {"normal": [fmt(x) for x in fc.normal], "offset": fmt(fc.offset), "bounded": fc.bounded}
            for fc in np_.facets
        ],
    }
    return emit(args, payload)


def cmd_subdivide(args) -> int:
    model = load_model(args.model)
    if isinstance(model, BlowupTree):
        model, _ = dual_graph(model)
    sigma = ids(args.sigma, "face")
    t = vector(args.point, "weight vector")
    if len(t) != len(sigma):
        raise UsageError("the point needs one weight per vertex of sigma")
    v = WeightPoint(dict(zip(sigma, t)))
    eps = to_fraction(args.eps)
    pc, h, sig_eps = special_subdivide(model, sigma, v, eps)
    projective, reasons = is_projective(pc, h, detail=True)
    payload = {"subdivision": pc.to_json(), "sigma_eps": sorted(sig_eps), "projective": projective, "reasons": reasons}
    payload["support_function"] = [
        {"coeffs": [fmt(x) for x in a], "const": fmt(c)} for a, c in h.pieces()
    ]
    if args.barycentric:
        bary = barycentric_outside_star(pc, sig_eps)
        payload["refined"] = bary.to_json()
        payload["simplicial"] = bary.is_simplicial()
    return emit(args, payload)


def cmd_dualgraph(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, BlowupTree):
        raise UsageError("dualgraph needs a blowup tree model")
    cx, data = dual_graph(model)
    vb = vertex_bound_constants(cx, data)
    payload = {
        "b": list(data.b),
        "intersection_matrix": [list(r) for r in data.matrix],
        "edges": [list(e) for e in cx.edges()],
        "negative_definite": data.is_negative_definite(),
        "graph_diameter": graph_diameter(cx),
        "metric_diameter": fmt(metric_diameter(cx)),
        "vertex_bound": {"A0": fmt(vb.A0), "B0": fmt(vb.B0), "l": vb.l, "A": fmt(vb.A), "B": fmt(vb.B)},
    }
    return emit(args, payload)


def cmd_alpha(args) -> int:
    t = vector(args.weights, "weight vector")
    levels = ids(args.oracle, "levels") if args.oracle else ()
    a = alpha(t, levels)
    payload = {
        "t": [fmt(x) for x in t],
        "alpha": [fmt(x) for x in a.exact],
        "teissier": a.teissier(),
        "oracle": {str(n): [fmt(x) for x in est] for n, est in sorted(a.oracle.items())},
    }
    return emit(args, payload)


def cmd_volume(args) -> int:
    t = vector(args.weights, "weight vector")
    exact = volume(t)
    payload = {"t": [fmt(x) for x in t], "volume": fmt(exact)}
    if args.n:
        est = volume_oracle(t, args.n)
        payload.update({"n": args.n, "oracle": fmt(est), "relative_error": fmt(abs(est - exact) / exact)})
    return emit(args, payload)


def cmd_beta(args) -> int:
    v, w = vector(args.v, "weight vector"), vector(args.w, "weight vector")
    payload = {"v": [fmt(x) for x in v], "w": [fmt(x) for x in w], "beta": fmt(linking_number(v, w))}
    if args.degree:
        payload["brute_force"] = fmt(linking_number_brute(v, w, args.degree))
    if args.n:
        payload["limit"] = fmt(linking_number_limit(v, w, args.n))
    return emit(args, payload)


def cmd_report(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        samples=args.samples,
        norm=Norm.parse(args.norm),
        model=args.model,
        eps=to_fraction(args.eps) if args.eps else None,
    )
    result = run_suite(args.suite, config)
    if args.out:
        csv_path, json_path = result.write(args.out)
        print(result.summary())
        print(f"wrote {csv_path} and {json_path}")
    else:
        sys.stdout.write(result.to_csv())
        print(result.summary(), file=sys.stderr)
    for note in result.notes:
        print(f"note: {note}", file=sys.stderr)
    return 0 if result.passed else 1


def _grid(n: int):
    if n < 2:
        raise UsageError("--points must be at least 2")
    return [Fraction(k, n - 1) for k in range(n)]


def cmd_plotdata(args) -> int:
    rows = []
    if args.kind == "chi-edge":
        model = load_model(args.model)
        J = ids(args.face, "face") if args.face else (0, 1)
        if len(J) != 2:
            raise UsageError("chi-edge needs an edge")
        if isinstance(model, BlowupTree):
            chi = chi_on_model_face(model, poly(args.poly, 2), J)
        else:
            f = poly(args.poly, len(model.vertices))
            chi = chi_on_face(_restrict(f, J, model.vertices), tuple(model.b[j] for j in J), J)
        b0, b1 = chi.b
        rows.append(["s", "chi"])
        for s in _grid(args.points):
            rows.append([s, chi((s / b0, (1 - s) / b1))])
    elif args.kind == "alpha-segment":
        p, q = vector(args.start, "weight vector"), vector(args.end, "weight vector")
        if len(p) != len(q):
            raise UsageError("segment endpoints differ in length")
        rows.append(["s", f"alpha{args.index}"])
        for s in _grid(args.points):
            t = tuple((1 - s) * a + s * b for a, b in zip(p, q))
            rows.append([s, alpha(t).exact[args.index]])
    elif args.kind == "newton":
        f = poly(args.poly, args.arity)
        rows.append([f"a{i}" for i in range(f.arity)])
        rows += [[fmt(x) for x in a] for a in newton_polyhedron(f).extremal]
    return emit(args, _csv(rows))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoval", description="Exact monomial valuations on dual complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, norm=False):
        sp.add_argument("--out", help="write output here instead of stdout")
        if norm:
            sp.add_argument("--norm", default="linf", choices=["l1", "linf"], help="primal norm on weight coordinates")
        return sp

    sp = common(sub.add_parser("eval", help="evaluate v(f) at weight points, or chi at every vertex"))
    sp.add_argument("--model", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--point", action="append", help="comma-separated weights over all vertices (repeatable)")
    sp.set_defaults(func=cmd_eval)

    sp = common(sub.add_parser("chi", help="affine pieces of chi_f on faces of a model"), norm=True)
    sp.add_argument("--model", required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--face")
    sp.set_defaults(func=cmd_chi)

    sp = common(sub.add_parser("newton", help="extremal points and facets of a Newton polyhedron"))
    sp.add_argument("--poly", required=True)
    sp.add_argument("--arity", type=int)
    sp.add_argument("--member", help="test membership of this exponent vector")
    sp.set_defaults(func=cmd_newton)

    sp = common(sub.add_parser("subdivide", help="special subdivision around a point of a face"))
    sp.add_argument("--model", required=True)
    sp.add_argument("--sigma", required=True, help="vertex ids of the face")
    sp.add_argument("--point", required=True, help="weights of v on sigma")
    sp.add_argument("--eps", required=True)
    sp.add_argument("--barycentric", action="store_true", help="also refine outside the star to a simplicial complex")
    sp.set_defaults(func=cmd_subdivide)

    sp = common(sub.add_parser("dualgraph", help="dual graph, intersection matrix and vertex-bound constants of a tree"))
    sp.add_argument("--model", required=True)
    sp.set_defaults(func=cmd_dualgraph)

    sp = common(sub.add_parser("alpha", help="alpha_i of a monomial valuation"))
    sp.add_argument("--weights", required=True)
    sp.add_argument("--oracle", help="comma-separated levels n for the mixed-multiplicity oracle")
    sp.set_defaults(func=cmd_alpha)

    sp = common(sub.add_parser("volume", help="volume of a monomial valuation"))
    sp.add_argument("--weights", required=True)
    sp.add_argument("--n", type=int, help="also count colengths at this level")
    sp.set_defaults(func=cmd_volume)

    sp = common(sub.add_parser("beta", help="linking number beta(v/w) of two monomial valuations"))
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", required=True)
    sp.add_argument("--degree", type=int, help="brute force over monomials up to this degree")
    sp.add_argument("--n", type=int, help="valuation-ideal limit at this level")
    sp.set_defaults(func=cmd_beta)

    sp = common(sub.add_parser("report", help="run an experiment suite"), norm=True)
    sp.add_argument("suite", choices=list(SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--model", help="builtin model name or tree JSON")
    sp.add_argument("--eps", help="fixed eps for L101")
    sp.set_defaults(func=cmd_report)

    sp = common(sub.add_parser("plotdata", help="CSV samples of chi, alpha or Newton data"))
    sp.add_argument("kind", choices=["chi-edge", "alpha-segment", "newton"])
    sp.add_argument("--model")
    sp.add_argument("--poly")
    sp.add_argument("--face")
    sp.add_argument("--arity", type=int)
    sp.add_argument("--start", help="segment start (alpha-segment)")
    sp.add_argument("--end", help="segment end (alpha-segment)")
    sp.add_argument("--index", type=int, default=1)
    sp.add_argument("--points", type=int, default=101)
    sp.set_defaults(func=cmd_plotdata)
    return p


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) in (None, "")]
    if missing:
        raise UsageError(f"{args.command} needs --{', --'.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "plotdata":
            need = {"chi-edge": ("model", "poly"), "alpha-segment": ("start", "end"), "newton": ("poly",)}[args.kind]
            _require(args, *need)
        return args.func(args)
    except UsageError as exc:
        print(f"monoval: error: {exc}", file=sys.stderr)
        return 2
    except USAGE_ERRORS as exc:
        print(f"monoval: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
