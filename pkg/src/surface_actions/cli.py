r"""
Command-line front end.

Every subcommand prints JSON (``render`` prints SVG). Exit status is 0 on
success, 1 on a domain error (printed as ``{"error": ..., "which": ...}``)
and 2 on a usage error.

Data sets are given either as tokens ``n g0 [r] c/m c/m ...`` or as one
token in the printed notation ``"(n,g0;(c,m),...)"``; ``--json FILE`` reads
them from a file instead. Commands taking two data sets separate token
groups with ``+``.

EXAMPLES::

    >>> main(["validate", "5", "0", "0", "1/5", "3/5", "1/5"])
    {"valid":true,"genus":2}
    0
    >>> main(["validate", "4", "0", "0", "1/2", "1/4"])
    {"error":"ConditionViolated","which":"iv","message":"(4,0;(1,2),(1,4)) violates condition(s) iv, NonIntegralGenus"}
    1
"""

from __future__ import annotations

import argparse
import json
import math
import platform
import sys
from datetime import datetime, timezone

from . import __version__
from .dataset import (
    DataSet,
    check_conditions,
    classify,
    compose_pair,
    decompose,
    enumerate_datasets,
    pair_reduction_size,
    reduction_system_size,
    validate,
)
from .errors import DomainError
from .fatgraph import (
    automorphism_from_rotation,
    boundary_components,
    compatible_orbit_pairs,
    from_polygon,
    graph_genus,
    quotient_data,
    special_orbits,
)
from .polygon import build_polygon, quotient_genus, realized_data_set, vertex_classes
from .roots import closure_block, is_root_realizing, rep_root_sep, root_blocks, root_indices, split_indices, split_root
from .symplectic import (
    convert_basis,
    cycle_lattice,
    describe_images,
    fixed_point_pairs,
    matrix_json,
    rep_comp_pair,
    rep_direct_sum,
    rep_type1,
)
from .words import format_word, natural_key, normalize_full, parse_word, word_to_json


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input


def parse_dataset_tokens(tokens: list[str]) -> DataSet:
    r"""
    ``["5", "0", "1/5", "2/5", "2/5"]`` or ``["(5,0;(1,5),(2,5),(2,5))"]``.

    EXAMPLES::

        >>> parse_dataset_tokens(["6", "0", "0", "1/2", "1/3", "1/6"])
        DataSet(6,0;(1,2),(1,3),(1,6))
        >>> parse_dataset_tokens(["(3,1;(1,3),(2,3))"])
        DataSet(3,1;(1,3),(2,3))
    """
    if len(tokens) == 1 and tokens[0].strip().startswith("("):
        try:
            D = DataSet.parse(tokens[0])
        except ValueError as e:
            raise UsageError(str(e)) from None
        return validate(D.n, D.g0, D.r, D.cone)
    head, cone = [], []
    for t in tokens:
        if "/" in t:
            c, m = t.split("/", 1)
            try:
                cone.append((int(c), int(m)))
            except ValueError:
                raise UsageError(f"bad cone point {t!r}") from None
        elif cone:
            raise UsageError("integers must come before the cone points")
        else:
            try:
                head.append(int(t))
            except ValueError:
                raise UsageError(f"bad integer {t!r}") from None
    if len(head) not in (2, 3):
        raise UsageError("expected n g0 [r] followed by c/m cone points")
    n, g0 = head[0], head[1]
    r = head[2] if len(head) == 3 else 0
    return validate(n, g0, r, cone)


def _datasets_from_json(path: str) -> list[DataSet]:
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, dict) and "datasets" in obj:
        obj = obj["datasets"]
    if isinstance(obj, dict):
        obj = [obj]
    sets = [DataSet.from_json(x) for x in obj]
    return [validate(D.n, D.g0, D.r, D.cone) for D in sets]


def _datasets(args, count: int) -> list[DataSet]:
    if args.json:
        out = _datasets_from_json(args.json)
    else:
        groups, cur = [], []
        for t in args.data:
            if t == "+":
                groups.append(cur)
                cur = []
            elif t.startswith("(") and count > 1:
                if cur:
                    groups.append(cur)
                groups.append([t])
                cur = []
            else:
                cur.append(t)
        if cur:
            groups.append(cur)
        out = [parse_dataset_tokens(g) for g in groups]
    if len(out) != count:
        raise UsageError(f"expected {count} data set(s), got {len(out)}")
    return out


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    D = _datasets(args, 1)[0]
    out = {"valid": True, "genus": D.genus}
    if not D.is_realizable():
        out["realizable"] = False
    return out


def cmd_enumerate(args):
    out = []
    for D in enumerate_datasets(args.n, args.g):
        kind = classify(D).kind
        if args.kind and kind != args.kind:
            continue
        out.append({"data": str(D), "kind": kind})
    return {"n": args.n, "g": args.g, "count": len(out), "datasets": out}


def cmd_classify(args):
    D = _datasets(args, 1)[0]
    cls = classify(D)
    out = {"data": str(D), "kind": cls.kind, "irreducible": cls.irreducible, "genus": D.genus}
    if cls.notes:
        out["notes"] = list(cls.notes)
    out["realizable"] = D.is_realizable()
    out["root_realizing"] = is_root_realizing(D)
    return out


def cmd_realize(args):
    D = _datasets(args, 1)[0]
    P = build_polygon(D)
    out = P.to_json()
    out.update(
        {
            "data": str(P.data),
            "sides": P.k,
            "vertex_classes": len(vertex_classes(P)),
            "genus": quotient_genus(P),
            "realized": str(realized_data_set(P).canonical()),
        }
    )
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(P))
    return out


def cmd_fatgraph(args):
    D = _datasets(args, 1)[0]
    P = build_polygon(D)
    G = from_polygon(P)
    F = automorphism_from_rotation(P, G=G)
    orbits = [
        {"kind": o.kind, "size": o.size, "cone": list(o.cone)} for o in special_orbits(F)
    ]
    return {
        "graph": G.to_json(),
        "automorphism": F.to_json()["map"],
        "boundary_components": len(boundary_components(G)),
        "genus": graph_genus(G),
        "special_orbits": orbits,
        "quotient": str(quotient_data(F).canonical()),
    }


def cmd_normalize(args):
    if args.json:
        with open(args.json) as fh:
            w = parse_word(json.load(fh))
    else:
        w = parse_word(" ".join(args.word))
    canon, f = normalize_full(w)
    letters = sorted({a for a, _ in w}, key=natural_key)
    names = [a for a, s in canon if s == 1]
    return {
        "word": word_to_json(w),
        "canonical": format_word(canon),
        "substitution": f.to_json(),
        "letters": letters,
        "vectors": {x: list(f.vector(x, letters)) for x in names},
    }


def _matrix_out(M, args, extra=None):
    out = matrix_json(M, args.basis)
    out["images"] = describe_images(M)
    if extra:
        out.update(extra)
    return out


def cmd_rep(args):
    if args.kind == "type1":
        D = _datasets(args, 1)[0]
        P = build_polygon(D)
        M = rep_type1(D, P)
        L = cycle_lattice(P)
        return _matrix_out(M, args, {"data": str(D), "letters": list(L.letters), "basis_vectors": [list(v) for v in L.basis]})
    D1, D2 = _datasets(args, 2)
    if args.kind == "sum":
        rs = tuple(args.rs) if args.rs else None
        return _matrix_out(rep_direct_sum(D1, D2, rs), args, {"pairs": [list(p) for p in fixed_point_pairs(D1, D2)]})
    if not args.rs:
        raise UsageError("rep pair needs --rs r s")
    rs = tuple(args.rs)
    M = rep_comp_pair(D1, D2, rs)
    return _matrix_out(M, args, {"data": str(compose_pair(D1, D2, rs))})


def cmd_root(args):
    if args.action == "check":
        D = _datasets(args, 1)[0]
        ij = root_indices(D)
        return {"data": str(D), "root_realizing": ij is not None, "indices": list(ij) if ij else None}
    if args.action == "split":
        D = _datasets(args, 1)[0]
        D1, D2 = split_root(D)
        return {"D1": str(D1), "D2": str(D2), "rs": list(split_indices(D))}
    if args.curve == "nonsep":
        D = _datasets(args, 1)[0]
        R = root_blocks(D, tuple(args.indices) if args.indices else None)
        out = R.to_json()
        out["matrix"] = convert_basis(R.matrix, args.basis)
        out["basis"] = args.basis
        out["g"] = len(R.matrix) // 2
        return out
    D1, D2 = _datasets(args, 2)
    i1, i2 = (args.indices or [None, None])[:2]
    M = rep_root_sep(D1, D2, i1, i2)
    return _matrix_out(M, args)


def cmd_reduce_size(args):
    if args.formula:
        n, a, b, k = args.formula
        return {"size": pair_reduction_size(n, a, b, k)}
    ds = _datasets(args, 2 if args.pair else 1)
    rs = tuple(args.rs) if args.rs else None
    return {"size": reduction_system_size(*ds, rs=rs) if len(ds) == 2 else reduction_system_size(ds[0])}


def cmd_decompose(args):
    D = _datasets(args, 1)[0]
    T = decompose(D, budget=args.budget)
    return {"data": str(D), "tree": T.to_json(), "leaves": [str(x) for x in T.leaves()], "evaluates": str(T.evaluate().canonical())}


def cmd_render(args):
    D = _datasets(args, 1)[0]
    svg = render_svg(build_polygon(D))
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg)
        return {"svg": args.svg}
    return svg


def cmd_selftest(args):
    checks = golden_checks()
    failed = [c for c in checks if not c["ok"]]
    return {"passed": len(checks) - len(failed), "failed": len(failed), "checks": checks}


# ---------------------------------------------------------------- svg


def render_svg(P, size: int = 400) -> str:
    """A regular polygon with paired sides in matching colours and arrows along each side."""
    k = P.k
    cx = cy = size / 2
    R = size * 0.38
    pts = [(cx + R * math.cos(2 * math.pi * i / k - math.pi / 2), cy + R * math.sin(2 * math.pi * i / k - math.pi / 2)) for i in range(k)]
    letters = P.letters
    colour = {a: f"hsl({round(360 * i / max(1, len(letters)))},70%,40%)" for i, a in enumerate(letters)}
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
        '<path d="M 0 0 L 10 5 L 0 10 z" fill="context-stroke"/></marker></defs>',
    ]
    for i, (a, s) in enumerate(P.word):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % k]
        if s == -1:
            x0, y0, x1, y1 = x1, y1, x0, y0
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        parts.append(
            f'<path d="M {x0:.2f} {y0:.2f} L {mx:.2f} {my:.2f} L {x1:.2f} {y1:.2f}" stroke="{colour[a]}" '
            f'stroke-width="3" fill="none" marker-mid="url(#arrow)"/>'
        )
        lx, ly = cx + (mx - cx) * 1.12, cy + (my - cy) * 1.12
        parts.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="12" text-anchor="middle" fill="{colour[a]}">{a}</text>')
    parts.append(f'<text x="{cx:.2f}" y="{size - 8}" font-size="12" text-anchor="middle">{P.data or ""}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------- goldens


def golden_checks() -> list[dict]:
    """Quick comparison of the library against the worked examples."""
    from .fatgraph import FatGraph, automorphism_from_rotation as auto, glue_compatible
    from .polygon import SidePairedPolygon
    from .intlinalg import transpose

    out = []

    def add(name, got, want):
        out.append({"name": name, "ok": got == want, "got": got, "expected": want})

    for text, g in [
        ("(5,0;(1,5),(3,5),(1,5))", 2),
        ("(6,0;(1,2),(1,2),(1,3),(2,3))", 2),
        ("(30,1;(1,2),(1,6),(1,10),(7,30))", 49),
        ("(5,0;(1,5),(2,5),(3,5),(4,5))", 4),
    ]:
        add(f"genus {text}", DataSet.parse(text).genus, g)
    add("hexagon word", build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))")).word_text(), "a0 a1 a2 a0^-1 a1^-1 a2^-1")

    hexa = parse_word("a0 a1 a2 a0^-1 a1^-1 a2^-1")
    _, f = normalize_full(hexa)
    L = ["a0", "a1", "a2"]
    add("hexagon f(l1), f(m1)", [list(f.vector("x1", L)), list(f.vector("y1", L))], [[1, 1, 0], [-1, 0, 1]])
    dec = parse_word("a0 a8^-1 a2 a0^-1 a4 a2^-1 a6 a4^-1 a8 a6^-1")
    _, f = normalize_full(dec)
    L = ["a0", "a2", "a4", "a6", "a8"]
    add(
        "decagon f-values",
        [list(f.vector(x, L)) for x in ("x1", "y1", "x2", "y2")],
        [[0, 0, 0, -1, 1], [0, 0, -1, 0, 1], [0, -1, 0, 0, 1], [-1, -1, 1, 0, 1]],
    )

    D1 = DataSet.parse("(5,0;(1,5),(2,5),(2,5))")
    add("images D1", describe_images(rep_type1(D1)), ["l1 -> -m1+l2", "m1 -> -l2+m2", "l2 -> -m1", "m2 -> l1-2m1+l2-m2"])
    D2 = DataSet.parse("(5,0;(4,5),(3,5),(3,5))")
    from .symplectic import basis_names

    add(
        "images D2",
        describe_images(rep_type1(D2), basis_names(2, 3)),
        ["l3 -> m3-2l4+m4", "m3 -> -l4", "l4 -> l3-l4", "m4 -> l3+m3-l4"],
    )
    printed = [[1, -1, -1, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, -1, 0, 0, 0], [0, 0, 0, -1, 0, 0], [0, 0, 0, 0, 0, 1], [0, 0, 1, 0, -1, 1]]
    M = rep_comp_pair(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"), DataSet.parse("(6,0;(1,2),(2,3),(5,6))"), (2, 2))
    add("C6 pair matrix", M, printed)
    add("C6 pair m2 -> -m2", describe_images(M)[3], "m2 -> -m2")

    R = root_blocks(DataSet.parse("(5,0;(3,5),(3,5),(4,5))"))
    add("root B^t", transpose(R.B), [[0, 0, 0, 0], [0, 0, -1, 1]])
    add("root C", R.C, [[0, 0, 0, 0], [-1, -1, -1, 1]])
    names5 = basis_names(3, 3)
    add("root l5 image", describe_images(R.matrix, names5)[4], "l5 -> -l4+m4+l5")
    add("root m5 fixed", describe_images(R.matrix, names5)[5], "m5 -> m5")
    add("root closure", closure_block(R.E, R.B), R.C)

    G = FatGraph.from_cycles(["e1", "e2", "e3"], [["e1", "e2", "e3"], ["e1^-1", "e3^-1", "e2^-1"]])
    add("fig12 sigma0", len(boundary_components(G)), 3)
    G2 = FatGraph.from_cycles(["e1", "e2", "e3"], [["e1", "e2", "e3"], ["e1^-1", "e2^-1", "e3^-1"]])
    add("fig12 sigma0'", len(boundary_components(G2)), 1)
    G3 = from_polygon(SidePairedPolygon(parse_word("a b c d e a^-1 b^-1 c^-1 d^-1 e^-1")))
    add("fig13 sigma0", _cycle_set(G3.vertices()), _cycle_set([["a", "b^-1", "c", "d^-1", "e"], ["a^-1", "b", "c^-1", "d", "e^-1"]]))

    P1 = build_polygon(DataSet.parse("(6,0;(1,2),(1,3),(1,6))"))
    P2 = build_polygon(DataSet.parse("(6,0;(1,2),(2,3),(5,6))"))
    F1 = auto(P1).relabel({"a0": "e1", "a1": "e2", "a2": "e3"})
    F2 = auto(P2).relabel({"a0": "f1", "a1": "f2", "a2": "f3"})
    names = {"e1": "h3", "e1^-1": "g1", "e2": "g2", "e2^-1": "h1", "e3": "h2", "e3^-1": "g3"}
    G, F = glue_compatible(F1, F2, (1, 1), base=("e1", "f2^-1"), arc_names=names)
    taus = [
        ["e1", "h3", "f2^-1", "h2^-1"],
        ["e1^-1", "g1", "f2", "g3^-1"],
        ["e2", "g2", "f1^-1", "g1^-1"],
        ["e2^-1", "h1", "f1", "h3^-1"],
        ["e3", "h2", "f3", "h1^-1"],
        ["e3^-1", "g3", "f3^-1", "g2^-1"],
    ]
    add("fg_cpair sigma0", _cycle_set(G.vertices()), _cycle_set(taus))
    add("fg_cpair F on V", _vertex_cycles(F, taus), [[1, 3, 5], [2, 4, 6]])
    return out


def _cycle_set(cycles) -> list[list[str]]:
    """Cycles rotated to start at their least label, then sorted."""
    out = []
    for c in cycles:
        k = min(range(len(c)), key=lambda i: c[i])
        out.append(list(c[k:]) + list(c[:k]))
    return sorted(out)


def _vertex_cycles(F, named) -> list[list[int]]:
    """Cycles of ``F`` on vertices, with vertices numbered by their position in ``named``."""
    G = F.graph
    where = {x: i + 1 for i, c in enumerate(named) for x in c}
    img = {where[c[0]]: where[G.labels[F.perm[G.ids[c[0]]]]] for c in named}
    seen, cycles = set(), []
    for v in sorted(img):
        if v in seen:
            continue
        cyc = [v]
        seen.add(v)
        while img[cyc[-1]] != v:
            cyc.append(img[cyc[-1]])
            seen.add(cyc[-1])
        if len(cyc) > 1:
            cycles.append(cyc)
    return cycles


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surface-actions", description="Cyclic actions on surfaces: data sets, polygons, fat graphs and symplectic matrices.")
    p.add_argument("--out", help="write the output to this file")
    p.add_argument("--meta", action="store_true", help="add a provenance block")
    sub = p.add_subparsers(dest="command", required=True)

    def data_cmd(name, help_, many=False):
        s = sub.add_parser(name, help=help_)
        s.add_argument("data", nargs="*", help="n g0 [r] c/m ... or (n,g0;(c,m),...)" + (" (one quoted token per set)" if many else ""))
        s.add_argument("--json", help="read data sets from a JSON file")
        return s

    data_cmd("validate", "check the data-set conditions and report the genus")
    s = sub.add_parser("enumerate", help="list all data sets of a degree and genus")
    s.add_argument("n", type=int)
    s.add_argument("g", type=int)
    s.add_argument("--kind", choices=["Rotational", "Type1", "Type2"])
    data_cmd("classify", "rotational, Type 1 or Type 2")
    s = data_cmd("realize", "build the side-paired polygon of a Type 1 set")
    s.add_argument("--svg", help="also write an SVG drawing")
    data_cmd("fatgraph", "fat graph and automorphism of a Type 1 polygon")
    s = sub.add_parser("normalize", help="normalize a surface word to a product of commutators")
    s.add_argument("word", nargs="*", help='letters like a0 a1^-1 ...')
    s.add_argument("--json", help="read the word from a JSON array")
    s = sub.add_parser("rep", help="symplectic matrix of an action")
    s.add_argument("kind", choices=["type1", "pair", "sum"])
    s.add_argument("data", nargs="*")
    s.add_argument("--json")
    s.add_argument("--rs", type=int, nargs=2, metavar=("R", "S"))
    s.add_argument("--basis", choices=["interleaved", "split"], default="interleaved")
    s = sub.add_parser("root", help="roots of Dehn twists")
    s.add_argument("action", choices=["check", "split", "rep"])
    s.add_argument("data", nargs="*")
    s.add_argument("--json")
    s.add_argument("--curve", choices=["nonsep", "sep"], default="nonsep")
    s.add_argument("--indices", type=int, nargs=2, metavar=("I", "J"))
    s.add_argument("--basis", choices=["interleaved", "split"], default="interleaved")
    s = sub.add_parser("reduce-size", help="size of a maximal reduction system")
    s.add_argument("data", nargs="*")
    s.add_argument("--json")
    s.add_argument("--pair", action="store_true", help="two data sets glued along --rs")
    s.add_argument("--rs", type=int, nargs=2, metavar=("R", "S"))
    s.add_argument("--formula", type=int, nargs=4, metavar=("N", "A", "B", "K"), help="evaluate the pair formula directly")
    s = data_cmd("decompose", "compatibility tree of a Type 2 set")
    s.add_argument("--budget", type=int, default=200000)
    s = data_cmd("render", "SVG drawing of the polygon")
    s.add_argument("--svg", help="write the SVG here instead of stdout")
    sub.add_parser("selftest", help="compare against the worked examples")
    return p


COMMANDS = {
    "validate": cmd_validate,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "realize": cmd_realize,
    "fatgraph": cmd_fatgraph,
    "normalize": cmd_normalize,
    "rep": cmd_rep,
    "root": cmd_root,
    "reduce-size": cmd_reduce_size,
    "decompose": cmd_decompose,
    "render": cmd_render,
    "selftest": cmd_selftest,
}


def _emit(payload, out_path, stdout):
    text = payload if isinstance(payload, str) else json.dumps(payload, separators=(",", ":")) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2
    except DomainError as e:
        _emit(e.report(), args.out, stdout)
        return 1
    if args.meta and isinstance(payload, dict):
        payload = {
            "result": payload,
            "meta": {
                "version": __version__,
                "python": platform.python_version(),
                "argv": list(argv if argv is not None else sys.argv[1:]),
                "time": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            },
        }
    _emit(payload, args.out, stdout)
    if args.command == "selftest":
        body = payload["result"] if args.meta else payload
        return 1 if body["failed"] else 0
    return 0


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
