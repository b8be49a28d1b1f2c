"""Command-line interface: classify, ceg, presentation, verify, wp.

Exit codes: 0 success, 1 verification failure (or unequal words / a
non-finite graph), 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .braid import BraidWord, presentation_from_wqp
from .coxeter import BoundExceeded, CoxeterGraph, classify_finite, parse_edge_list, standard_graph
from .exchange import build_ceg, enumerate_polygons, h1_polygon_complex, polygon_counts, to_dot, to_json
from .folding import catalog, get_folding
from .garside import WordTooLong, artin_group
from .quiver import chordless_cycles, initial_seed, weighted_mutate
from . import verify as V

SUITES = ("lem-surj", "theta", "twist", "iota", "diagram", "local-twist", "ceg", "homology", "garside", "all")

DEFAULT_TYPES = ("A3", "A4", "B3", "B4", "D4", "F4", "G2", "H3", "H4", "I2:5", "I2:8")


class UsageError(Exception):
    pass


def _dump(data, fmt: str, out: str | None, text: str | None = None) -> None:
    if fmt == "json":
        body = json.dumps(data, sort_keys=True, indent=2) + "\n"
    else:
        body = text if text is not None else json.dumps(data, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(body)
    else:
        sys.stdout.write(body)


def _parse_range(text: str) -> list[int]:
    """``"3..12"``, ``"5"`` or ``"3,5,7"``."""
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def _read_graph(spec: str) -> CoxeterGraph:
    p = Path(spec)
    if p.suffix == ".json" and p.exists():
        return CoxeterGraph.from_json(json.loads(p.read_text()))
    try:
        return parse_edge_list(spec)
    except ValueError:
        return standard_graph(spec)


def _folding(args):
    if getattr(args, "folding", None):
        return get_folding(args.folding)
    if getattr(args, "type", None):
        return get_folding(args.type)
    raise UsageError("give --type or --folding")


def _types(args) -> list[str]:
    if getattr(args, "type", None):
        return [t.strip() for t in args.type.split(",") if t.strip()]
    return list(DEFAULT_TYPES)


def _foldings(args) -> list:
    if getattr(args, "folding", None):
        return [get_folding(args.folding)]
    return [f for t in _types(args) for f in catalog(t)]


# --- commands ------------------------------------------------------------------


def cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    label = classify_finite(g)
    data = {"graph": g.to_json(), "type": label}
    _dump(data, args.format, args.output, label + "\n")
    return 1 if label == "not finite" else 0


def cmd_ceg(args) -> int:
    f = _folding(args)
    g = build_ceg(f, radius=args.radius, max_vertices=args.max_vertices)
    polys = enumerate_polygons(g)
    counts = polygon_counts(polys)
    stats = {
        "type": f.target_type,
        "folding": f.name,
        "vertices": len(g),
        "edges": len(g.unoriented_edges()),
        "polygons": len(polys),
        "faces": {str(k): v for k, v in sorted(counts.items())},
        "complete": g.complete,
    }
    if g.complete:
        stats["h1"] = h1_polygon_complex(g, polys)
    if args.format == "dot":
        _dump(None, "text", args.output, to_dot(g, oriented=args.oriented, polygons=polys if args.clusters else None))
        if args.output:
            sys.stderr.write(_stats_text(stats))
        return 0
    if args.format == "json":
        data = to_json(g, polys)
        data["stats"] = stats
        _dump(data, "json", args.output)
        return 0
    _dump(stats, "text", args.output, _stats_text(stats))
    return 0


def _stats_text(s: dict) -> str:
    faces = ", ".join(f"{v} {k}-gons" for k, v in s["faces"].items()) or "none"
    line = f"{s['folding']}: {s['vertices']} vertices, {s['edges']} unoriented edges, {s['polygons']} polygons ({faces})"
    if "h1" in s:
        line += f", H1 invariant factors {s['h1']}"
    return line + "\n"


def _mutation_path(f, text: str) -> list[int]:
    labels = list(f.target.labels)
    out = []
    for tok in text.replace(",", " ").split():
        if tok in labels:
            out.append(labels.index(tok))
        else:
            i = int(tok) - 1
            if not 0 <= i < len(labels):
                raise UsageError(f"no vertex {tok!r}")
            out.append(i)
    return out


def cmd_presentation(args) -> int:
    f = _folding(args)
    labels = f.target.labels
    if args.vertex == "triple-heptagon":
        g = build_ceg(f)
        v = V.triple_heptagon_vertex(g)
        path = list(g.paths[v])
        seed = g.seeds[v]
    else:
        path = _mutation_path(f, args.mutations or "")
        seed = initial_seed(f)
        for i in path:
            seed = weighted_mutate(seed, i)
    q = seed.quiver
    terms = chordless_cycles(q)
    pres = presentation_from_wqp(q, terms, labels)
    data = {
        "folding": f.name,
        "mutations": [labels[i] for i in path],
        "quiver": [list(a) for a in q.arrows],
        "potential": [t.to_json() for t in terms],
        "presentation": pres.to_json(),
    }
    text = pres.to_text() + "\n"
    if args.twists:
        _, tw = V.delta_labels_along(f, path, words=True)
        data["twists"] = [w.to_text(labels) for w in tw.images]
        text += "".join(f"t{labels[i]} = {w}\n" for i, w in enumerate(data["twists"]))
    _dump(data, args.format, args.output, text)
    return 0


def _run_suite(name: str, args) -> list[V.VerificationReport]:
    seed = args.seed
    if name == "lem-surj":
        return [V.verify_lem_surj(_parse_range(args.m) if args.m else range(2, 31))]
    if name == "theta":
        return [V.random_theta_suite(t, args.samples, args.len, seed) for t in _types(args)]
    if name == "twist":
        out = []
        for t in _types(args):
            g = build_ceg(get_folding(args.folding) if args.folding else t, radius=args.radius)
            lab = V.build_twist_labeling(g)
            out += [lab.report, V.verify_presentations(lab)]
        return out
    if name == "iota":
        return [V.verify_iota(f) for f in _foldings(args)]
    if name == "diagram":
        out = []
        for f in _foldings(args):
            g = build_ceg(f, radius=args.radius)
            out.append(V.verify_diagram(f, [[]] + V.random_vertex_paths(g, args.samples_diagram, seed)))
        return out
    if name == "local-twist":
        return [V.verify_local_twist_decomposition(f) for f in _foldings(args)]
    if name == "ceg":
        return [V.verify_ceg(t) for t in _types(args)]
    if name == "homology":
        return [V.verify_homology(t) for t in _types(args)]
    if name == "garside":
        return [V.verify_garside(t, args.cases, seed) for t in _types(args)]
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    names = [s for s in SUITES if s != "all"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports += _run_suite(name, args)
    ok = all(r.ok for r in reports)
    data = {
        "config": {
            "suite": args.suite,
            "type": args.type,
            "folding": args.folding,
            "seed": args.seed,
            "len": args.len,
            "samples": args.samples,
            "cases": args.cases,
            "radius": args.radius,
            "threads": args.threads,
        },
        "ok": ok,
        "reports": [r.to_json(verbose=args.verbose) for r in reports],
    }
    text = "".join(r.summary() + "\n" for r in reports) + f"seed={args.seed} {'PASS' if ok else 'FAIL'}\n"
    _dump(data, args.format, args.output, text)
    return 0 if ok else 1


def cmd_wp(args) -> int:
    grp = artin_group(args.type)
    labels = standard_graph(args.type).labels
    u, v = BraidWord.parse(args.lhs, labels), BraidWord.parse(args.rhs, labels)
    if max(u.max_generator(), v.max_generator()) > grp.rank:
        raise UsageError(f"generator out of range for {args.type}")
    nu, nv = grp.normal_form(u), grp.normal_form(v)
    same = nu == nv
    data = {"type": args.type, "lhs": u.to_text(), "rhs": v.to_text(), "equal": same,
            "lhs_normal_form": nu.to_json(), "rhs_normal_form": nv.to_json()}
    _dump(data, args.format, args.output, ("equal" if same else "unequal") + "\n")
    return 0 if same else 1


# --- argument parsing ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cluster-braid", description="Cluster braid groups of weighted quivers.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--threads", type=int, default=1, help="upper bound on worker threads")

    c = sub.add_parser("classify", help="classify a Coxeter graph")
    c.add_argument("graph", help='edge list like "1-2:5,2-3", a type label, or a JSON file')
    common(c)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("ceg", help="build the cluster exchange graph")
    c.add_argument("--type")
    c.add_argument("--folding", help="selector Delta:Lambda")
    c.add_argument("--radius", type=int)
    c.add_argument("--max-vertices", type=int, default=100_000)
    c.add_argument("--oriented", action="store_true", help="DOT: one arc per green mutation")
    c.add_argument("--clusters", action="store_true", help="DOT: draw polygons as clusters")
    common(c, ("text", "json", "dot"))
    c.set_defaults(func=cmd_ceg)

    c = sub.add_parser("presentation", help="braid presentation at a vertex")
    c.add_argument("--type")
    c.add_argument("--folding")
    c.add_argument("--mutations", default="", help='Delta-vertices to mutate, e.g. "1 2"')
    c.add_argument("--vertex", choices=("triple-heptagon",), help="select a distinguished vertex")
    c.add_argument("--twists", action="store_true", help="also print the local twists as braid words")
    common(c)
    c.set_defaults(func=cmd_presentation)

    c = sub.add_parser("verify", help="run verification suites")
    c.add_argument("--suite", choices=SUITES, default="all")
    c.add_argument("--type", help="comma-separated type labels")
    c.add_argument("--folding")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--len", type=int, default=8, help="maximal mutation-sequence length")
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--samples-diagram", type=int, default=10)
    c.add_argument("--cases", type=int, default=1000)
    c.add_argument("--radius", type=int)
    c.add_argument("--m", help='range of m for lem-surj, e.g. "3..12"')
    c.add_argument("--verbose", action="store_true")
    common(c)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("wp", help="word problem in an Artin group")
    c.add_argument("--type", required=True)
    c.add_argument("lhs")
    c.add_argument("rhs")
    common(c)
    c.set_defaults(func=cmd_wp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.threads < 1:
        sys.stderr.write("--threads must be positive\n")
        return 2
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (BoundExceeded, WordTooLong, MemoryError) as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
