"""Command line interface.

Exit codes: 0 success, 2 validation error, 3 resource cap, 4 inconclusive only.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import boundary as bd
from . import classify as cl
from . import graph as gr
from . import hecke as hk
from .coxeter import (
    DEFAULT_MEM_CAP,
    CoxeterGroup,
    CoxeterMatrixError,
    Element,
    ResourceCapError,
    load_matrix,
)

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INCONCLUSIVE = 0, 2, 3, 4


class Inconclusive(Exception):
    """The command ran but only produced inconclusive results."""

    def __init__(self, payload):
        super().__init__("inconclusive")
        self.payload = payload


# -- output -----------------------------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return "%.12g" % x


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: sorted keys, floats as %.12g."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted((str(k), v) for k, v in obj.items())
        body = ",\n".join(f"{pad}{json.dumps(k, ensure_ascii=False)}: {to_json(v, indent, _level + 1)}" for k, v in items)
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(pad + to_json(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(header, rows) -> str:
    def cell(x):
        return _fmt_float(x).strip('"') if isinstance(x, float) else str(x)

    lines = [",".join(header)]
    lines += [",".join(cell(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- inputs -------------------------------------------------------------------------------


def builtin_path(name: str) -> Path:
    return Path(str(resources.files("coxbound") / "data" / name))


def _resolve(path: str, suffix: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    cand = builtin_path(path if path.endswith(suffix) else path + suffix)
    if cand.exists():
        return cand
    raise FileNotFoundError(f"no such file: {path}")


def _group(args) -> CoxeterGroup:
    if not args.matrix:
        raise ValueError("--matrix is required for this command")
    return CoxeterGroup(load_matrix(_resolve(args.matrix, ".cox")))


def _params(args, group: CoxeterGroup) -> hk.ParameterQ:
    if not args.q:
        return hk.ParameterQ.uniform(group.matrix, Fraction(1))
    return hk.load_parameters(_resolve(args.q, ".q"), group.matrix)


def _element(group: CoxeterGroup, text: str) -> Element:
    return group.element(text)


def _type_json(t) -> dict:
    kind = type(t).__name__
    return {"kind": kind, "name": t.name, "display": t.pretty}


# -- commands ----------------------------------------------------------------------------------


def cmd_classify(args) -> str:
    group = _group(args)
    m = group.matrix
    comps = [
        {"generators": [m.labels[i] for i in c], "type": _type_json(t)}
        for c, t in cl.classification(m)
    ]
    hyp = cl.is_word_hyperbolic(m, args.rank_cap)
    cert = None
    if not hyp.hyperbolic:
        cert = {"kind": hyp.kind, "subset": [m.labels[i] for i in hyp.subset]}
        if hyp.split:
            cert["split"] = [[m.labels[i] for i in part] for part in hyp.split]
    v = cl.small_at_infinity(m, probe_radius=args.radius or 10, rank_cap=args.rank_cap)
    out = {
        "components": comps,
        "amenable": cl.is_amenable(m),
        "hyperbolic": hyp.hyperbolic,
        "hyperbolic_certificate": cert,
        "small_at_infinity": {
            "verdict": v.verdict,
            "rule": v.label,
            "rules": [{"rule": r, "verdict": x} for r, x in v.rules],
            "certified": v.certified,
            "witness": v.witness,
        },
    }
    if v.verdict == "Unknown":
        raise Inconclusive(to_json(out))
    return to_json(out)


def cmd_ball(args) -> str:
    group = _group(args)
    radius = _need(args.radius, "--radius")
    ball = group.ball(radius, args.mem_cap)
    sizes = ball.strata_sizes()
    if args.format == "json":
        out = {"radius": radius, "strata": sizes, "total": sum(sizes)}
        if args.elements:
            out["elements"] = [group.format(x) for x in ball.elements]
        return to_json(out)
    rows = [(n, a) for n, a in enumerate(sizes)]
    text = to_csv(["length", "count"], rows)
    if args.elements:
        text += to_csv(["position", "element", "length"], [(i, group.format(x), len(x)) for i, x in enumerate(ball.elements)])
    return text


def cmd_growth(args) -> str:
    group = _group(args)
    radius = _need(args.radius, "--radius")
    if radius < 12:
        raise ValueError("growth needs --radius >= 12")
    q = _params(args, group)
    table = hk.growth_series(group, radius)
    report = hk.in_R_prime(q, table)
    out = {
        "counts": table.counts,
        "radius_estimate": hk.radius_estimate(table),
        "q": {",".join(group.labels[s] for s in c): str(v) for c, v in zip(q.classes, q.values)},
        "patterns": {
            ",".join("+" if e > 0 else "-" for e in eps): rec for eps, rec in sorted(report.patterns.items())
        },
        "r_prime_verdict": report.verdict,
        "note": report.note,
    }
    if args.format == "csv":
        return to_csv(["length", "count"], list(enumerate(table.counts)))
    if report.verdict == "Borderline":
        raise Inconclusive(to_json(out))
    return to_json(out)


def _rays(args, group, radius):
    if not args.ray:
        raise ValueError("at least one --ray is required")
    return [bd.parse_ray(group, lit, args.horizon, radius) for lit in args.ray]


def _result_json(group, res):
    if isinstance(res, bd.Distinct):
        return {"result": "Distinct", "witness": group.format(res.witness)}
    if isinstance(res, bd.Equal):
        return {"result": "Equal", "radius": res.radius}
    return {"result": "Inconclusive", "vertex": group.format(res.vertex)}


def cmd_boundary(args) -> str:
    group = _group(args)
    radius = args.radius if args.radius is not None else 3
    rays = _rays(args, group, radius)
    op = args.op
    if op == "profile":
        out = []
        for lit, z in zip(args.ray, rays):
            f = bd.profile(group, z, radius)
            out.append(
                {
                    "ray": lit,
                    "values": {group.format(v): f.values[v] for v in sorted(f.values)},
                    "stabilized": all(f.stabilized.values()),
                }
            )
        return to_json(out)
    if op == "equal":
        if len(rays) != 2:
            raise ValueError("equal needs exactly two --ray options")
        res = bd.rays_equal(group, rays[0], rays[1], radius)
        out = _result_json(group, res)
        if isinstance(res, bd.Inconclusive):
            raise Inconclusive(to_json(out))
        return to_json(out)
    if op == "act":
        w = _element(group, _need(args.word, "--word"))
        return to_json([{"ray": lit, "image": bd.format_ray(group, bd.act(group, w, z))} for lit, z in zip(args.ray, rays)])
    if op == "orbit":
        rep = bd.minimality_experiment(group, rays[0], args.depth, args.length)
        return to_json(
            {
                "depth": rep.depth,
                "elements_used": rep.elements_used,
                "hits": {group.format(k): v for k, v in rep.hits.items()},
                "unresolved": rep.unresolved,
            }
        )
    if op == "proximal":
        g = _element(group, _need(args.word, "--word"))
        rep = bd.proximality_experiment(group, g, rays, args.iterations, radius)
        return to_json([{"ray": e.point, "converged": e.converged, "first_match": e.first_match} for e in rep])
    if op == "fixed":
        w = _element(group, _need(args.word, "--word"))
        hits = bd.fixed_point_scan(group, w, args.depth, radius)
        return to_json({"depth": args.depth, "cylinders": [group.format(v) for v in hits]})
    raise ValueError(f"unknown boundary operation {op!r}")


def _laurent_str(c) -> str:
    return repr(c)


def cmd_hecke_mul(args) -> str:
    group = _group(args)
    if not args.word or len(args.word) < 2:
        raise ValueError("hecke-mul needs two or more --word options")
    if args.q:
        alg = hk.HeckeAlgebra(group, _params(args, group))
    else:
        alg = hk.HeckeAlgebra(group)
    prod = alg.basis(_element(group, args.word[0]))
    for w in args.word[1:]:
        prod = prod * alg.basis(_element(group, w))
    coeffs = {}
    for w in sorted(prod.coeffs):
        c = prod.coeffs[w]
        coeffs[group.format(w)] = _laurent_str(c) if alg.exact else float(c)
    return to_json(
        {
            "factors": args.word,
            "mode": "exact" if alg.exact else "numeric",
            "variables": ["t" + str(i) + "=" + "".join(group.labels[s] for s in c) for i, c in enumerate(alg.classes)],
            "product": coeffs,
        }
    )


def cmd_commutator(args) -> str:
    group = _group(args)
    radius = _need(args.radius, "--radius")
    q = _params(args, group)
    ball = group.ball(radius, args.mem_cap)
    s = group.parse_word(_need(args.generator, "--generator"))
    if len(s) != 1:
        raise ValueError("--generator must be a single generator label")
    w = _element(group, _need(args.word, "--word"))
    A = hk.generator_operator(ball, s[0], q)
    B = hk.projection(ball, w, right=(args.pair == "left-right"))
    if args.pair == "same":
        B = A
    lengths = [int(x) for x in args.min_lengths.split(",")] if args.min_lengths else list(range(radius + 1))
    rows = [(k, hk.commutator_tail_norm(A, B, k)) for k in lengths]
    if args.format == "json":
        return to_json({"pair": args.pair, "rows": [{"min_length": k, "tail_norm": v} for k, v in rows]})
    return to_csv(["min_length", "tail_norm"], rows)


def cmd_graph(args) -> str:
    if not args.graph:
        raise ValueError("--graph is required")
    g = gr.load_graph(_resolve(args.graph, ".graph"))
    tables = gr.DistanceTables(g)
    dist = gr.bfs_distances(g, g.root).dist
    out = {"root": g.root, "vertices": len(g), "distances": dist}
    if args.delta:
        out["delta_estimate"] = gr.delta_estimate(g)
    if args.x and args.y:
        radius = args.radius if args.radius is not None else max(dist.values())
        rep = gr.cylinder_minimals(args.x, args.y, radius, tables)
        meet = gr.meet_on_ball(args.x, args.y, radius, tables)
        out["pair"] = {
            "x": args.x,
            "y": args.y,
            "x_leq_y": gr.graph_leq(args.x, args.y, tables),
            "y_leq_x": gr.graph_leq(args.y, args.x, tables),
            "gromov_product": gr.gromov_product(args.x, args.y, g.root, tables),
            "cylinder_members": list(rep.members),
            "cylinder_minimal": list(rep.minimal_elements),
            "meet": meet if isinstance(meet, str) else {"NoMeet": list(meet.maximal_lower_bounds)},
        }
    return to_json(out)


def _need(value, flag):
    if value is None:
        raise ValueError(f"{flag} is required for this command")
    return value


COMMANDS = {
    "classify": cmd_classify,
    "ball": cmd_ball,
    "growth": cmd_growth,
    "boundary": cmd_boundary,
    "hecke-mul": cmd_hecke_mul,
    "commutator": cmd_commutator,
    "graph": cmd_graph,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matrix", help="Coxeter matrix file (or the name of a bundled fixture, e.g. dinf)")
    common.add_argument("--radius", type=int)
    common.add_argument("--horizon", type=int)
    common.add_argument("--q", help="parameter file with lines 'class <labels> = <value>'")
    common.add_argument("--ray", action="append", help="ray literal prefix;period (repeatable)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--rank-cap", type=int, default=cl.DEFAULT_RANK_CAP)
    common.add_argument("--mem-cap", type=int, default=DEFAULT_MEM_CAP)

    parser = argparse.ArgumentParser(prog="coxbound", description="Coxeter groups and their combinatorial boundary")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="types, hyperbolicity, smallness at infinity")
    p = sub.add_parser("ball", parents=[common], help="growth coefficients of a Cayley ball")
    p.add_argument("--elements", action="store_true", help="also list the elements")
    sub.add_parser("growth", parents=[common], help="radius of convergence and R' membership")
    p = sub.add_parser("boundary", parents=[common], help="boundary points given as rays")
    p.add_argument("op", choices=["profile", "equal", "act", "orbit", "proximal", "fixed"])
    p.add_argument("--word", help="group element, e.g. st")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--iterations", type=int, default=6)
    p = sub.add_parser("hecke-mul", parents=[common], help="product of basis elements T_w")
    p.add_argument("--word", action="append", help="factor (repeatable)")
    p = sub.add_parser("commutator", parents=[common], help="tail norms of [T_s, P_w]")
    p.add_argument("--generator", help="generator label s")
    p.add_argument("--word", help="element w of the projection")
    p.add_argument("--pair", choices=["left-right", "left-left", "same"], default="left-right")
    p.add_argument("--min-lengths", help="comma separated list (default 0..radius)")
    p = sub.add_parser("graph", parents=[common], help="rooted graph fixtures")
    p.add_argument("--graph", help="fixture file (or bundled name, e.g. ladder)")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--delta", action="store_true", help="compute the four-point constant")
    return parser


_DEFAULT_FORMAT = {"ball": "csv", "commutator": "csv"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = _DEFAULT_FORMAT.get(args.command, "json")
    try:
        text = COMMANDS[args.command](args)
    except Inconclusive as exc:
        emit(args, exc.payload)
        return EXIT_INCONCLUSIVE
    except (ResourceCapError, cl.RankCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except bd.UnresolvedPeriodicity as exc:
        print(f"inconclusive: {exc}; last prefixes: {', '.join(exc.prefixes)}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (
        CoxeterMatrixError,
        hk.ParameterError,
        gr.GraphError,
        bd.NonGeodesic,
        FileNotFoundError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    emit(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
