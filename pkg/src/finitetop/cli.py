"""Batch command line front end.

Exit codes: 0 success, 1 validation or mathematical failure (message
carries the witness), 2 usage or format error. Reports are plain aligned
text; `--json` switches to a machine-readable variant with the same
content. Output is deterministic: point order comes from the input file.
"""

import argparse
import json
import math
import sys

from . import approx, construct, filters, formats, locales, pmetric, spaces
from .bitsets import bits, subsets
from .errors import FormatError, ValidationError
from .logic import (
    lindenbaum_algebra,
    is_consistent,
    model_from_ultrafilter,
    stone_representation,
)

CLOSURE_TABLE_LIMIT = 6  # carriers above this get their subset table elided


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}") from None


def _set_str(space, mask):
    return "{" + " ".join(space.labels(mask)) + "}"


def _labels_arg(space, text):
    return space.mask(text.split())


def _emit(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


class _Report:
    """Collects rows so the same data can print as text or JSON."""

    def __init__(self, as_json):
        self.as_json = as_json
        self.data = {}
        self.lines = []

    def add(self, key, value, line=None):
        self.data[key] = value
        self.lines.append(line if line is not None else f"{key}: {value}")

    def table(self, key, headers, rows):
        self.data[key] = [dict(zip(headers, r)) for r in rows]
        widths = [
            max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
            for i, h in enumerate(headers)
        ]
        self.lines.append("  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip())
        for r in rows:
            self.lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())

    def print(self, out):
        if self.as_json:
            json.dump(self.data, out, indent=2, sort_keys=True)
            out.write("\n")
        else:
            out.write("\n".join(self.lines) + "\n")


# -- space ------------------------------------------------------------------


def cmd_space_report(args, out):
    space = formats.load_space(_read(args.infile))
    if args.emit:
        _emit(out, formats.dump_space(space))
        return 0
    rep = _Report(args.json)
    rep.add("points", list(space.points), "points: " + " ".join(space.points))
    opens = sorted(space.opens, key=lambda m: (m.bit_count(), m))
    rep.add(
        "opens",
        [list(space.labels(u)) for u in opens],
        "opens: " + " ".join(_set_str(space, u) for u in opens),
    )
    if space.n <= CLOSURE_TABLE_LIMIT:
        rows = []
        for m in sorted(subsets(space.full), key=lambda m: (m.bit_count(), m)):
            if m == 0:
                continue
            r = spaces.closure_interior(space, m)
            rows.append(
                (
                    _set_str(space, m),
                    _set_str(space, r["closure"]),
                    _set_str(space, r["interior"]),
                    _set_str(space, r["boundary"]),
                )
            )
        rep.lines.append("")
        rep.table("subsets", ("set", "closure", "interior", "boundary"), rows)
    else:
        rep.add("subsets", None, f"(subset table elided for more than {CLOSURE_TABLE_LIMIT} points)")
    prof = spaces.separation_profile(space)
    rep.lines.append("")
    for name in ("t0", "t1", "t2", "t3", "t4", "regular", "normal"):
        rep.add(name, getattr(prof, name))
    order = spaces.specialization_order(space)
    pairs = [
        (space.points[i], space.points[j])
        for i in range(space.n)
        for j in bits(order.rel[i])
        if i != j
    ]
    rep.lines.append("")
    rep.add(
        "specialization",
        [list(p) for p in pairs],
        "specialization: " + (" ".join(f"{a}<={b}" for a, b in pairs) or "(discrete order)"),
    )
    rep.add("specialization_is_poset", order.is_poset)
    rep.lines.append("")
    nbrows = []
    for p in space.points:
        base = spaces.open_neighborhoods(space, p)
        nbrows.append((p, " ".join(_set_str(space, u) for u in base)))
    rep.table("neighborhood_bases", ("point", "open neighborhoods"), nbrows)
    rep.print(out)
    return 0


# -- check ------------------------------------------------------------------


def cmd_check(args, out):
    text = _read(args.infile)
    if args.what == "base" or args.what == "subbase":
        fam = formats.load_family(text)
        if args.what == "base":
            check = spaces.validate_base(fam)
            if not check.ok:
                raise ValidationError("family is not a base", check.witness)
        space = spaces.generate_topology(fam, mode=args.what)
        _emit(out, formats.dump_space(space))
    elif args.what == "closure-op":
        table = formats.load_closure_table(text)
        table.validate()
        _emit(out, "closure operator: ok")
    elif args.what == "pmetric":
        rows = formats.load_matrix(text)
        labels = args.labels.split() if args.labels else [str(i + 1) for i in range(len(rows))]
        sp = pmetric.pmetric_from_matrix(labels, rows)
        _emit(out, f"pseudometric: ok, metric: {sp.is_metric}")
    elif args.what == "chain":
        chain = formats.load_chain(text)
        _emit(out, f"chain: ok, depth {chain.depth} on {chain.n} points")
    return 0


# -- map --------------------------------------------------------------------


def _load_point_map(args):
    src = formats.load_space(_read(args.src))
    dst = formats.load_space(_read(args.dst))
    mapping = formats.load_map(_read(args.mapfile))
    return construct.PointMap.from_dict(src, dst, mapping)


def cmd_map(args, out):
    pm = _load_point_map(args)
    if args.what == "continuity":
        check = construct.is_continuous(pm)
        if check.ok:
            _emit(out, "continuous: yes")
            return 0
        _emit(out, f"continuous: no, witness open {_set_str(pm.target, check.witness_open)}")
        return 1
    if construct.is_homeomorphism(pm):
        _emit(out, "homeomorphism: yes")
        return 0
    _emit(out, "homeomorphism: no")
    return 1


# -- build ------------------------------------------------------------------


def cmd_build(args, out):
    what = args.what
    if what == "product":
        a = formats.load_space(_read(args.infile))
        b = formats.load_space(_read(args.second))
        space = construct.product(a, b)
    elif what == "subspace":
        a = formats.load_space(_read(args.infile))
        space = construct.subspace(a, _labels_arg(a, args.keep))
    elif what == "sum":
        a = formats.load_space(_read(args.infile))
        b = formats.load_space(_read(args.second))
        space = construct.topological_sum(a, b)
    elif what == "quotient":
        a = formats.load_space(_read(args.infile))
        eq = formats.load_equivalence(_read(args.classes), a)
        space, _ = construct.quotient(a, eq)
    elif what == "onepoint":
        a = formats.load_space(_read(args.infile))
        space = construct.one_point_extension(a, args.label)
    elif what == "from-poset":
        order = formats.load_poset(_read(args.infile))
        space = spaces.topology_from_poset(order)
    elif what == "from-closure":
        table = formats.load_closure_table(_read(args.infile))
        space = spaces.topology_from_closure(table)
    else:  # scott
        order = formats.load_poset(_read(args.infile))
        space = locales.scott_topology(order)
    _emit(out, formats.dump_space(space))
    return 0


# -- locale -----------------------------------------------------------------


def cmd_locale(args, out):
    space = formats.load_space(_read(args.infile))
    rep = _Report(args.json)
    if args.what == "implication":
        a = _labels_arg(space, args.seta)
        b = _labels_arg(space, args.setb)
        c = locales.heyting_implication(space, a, b)
        rep.add("implication", list(space.labels(c)), f"implication: {_set_str(space, c)}")
        neg = locales.heyting_negation(space, a)
        rep.add("negation_of_first", list(space.labels(neg)), f"negation of first: {_set_str(space, neg)}")
    elif args.what == "points":
        pts = locales.points_of_locale(space)
        rep.add("count", len(pts))
        rows = [
            (i, " ".join(_set_str(space, u) for u in sorted(m.top_opens, key=lambda u: (u.bit_count(), u))))
            for i, m in enumerate(pts)
        ]
        rep.table("morphisms", ("index", "top-valued opens"), rows)
        phi = locales.phi_map(space)
        rep.add("phi_injective", phi.injective)
        rep.add("phi_surjective", phi.surjective)
    elif args.what == "sober":
        irr, sober = locales.irreducible_closed_sets(space)
        rep.add(
            "irreducible_closed",
            [list(space.labels(f)) for f in irr],
            "irreducible closed: " + " ".join(_set_str(space, f) for f in irr),
        )
        rep.add("sober", sober)
    else:  # hofmann-mislove
        hm = locales.hofmann_mislove_report(space)
        rep.add("sober", hm.sober)
        rep.add("filter_count", len(hm.filters))
        rep.add("saturated_compact_count", len(hm.saturated_compacts))
        rep.add("bijection_holds", hm.bijection_holds)
        rows = []
        for f in hm.filters:
            inter = space.full
            for u in f.members():
                inter &= u
            rows.append((_set_str(space, f.kernel_open), _set_str(space, inter)))
        rep.table("correspondence", ("filter generator", "intersection"), rows)
    rep.print(out)
    return 0


# -- metric -----------------------------------------------------------------


def _load_pmetric(args):
    rows = formats.load_matrix(_read(args.infile))
    labels = args.labels.split() if args.labels else [str(i + 1) for i in range(len(rows))]
    return pmetric.pmetric_from_matrix(labels, rows)


def _point_set(points, text):
    m = 0
    for lab in text.split():
        if lab not in points:
            raise FormatError(f"unknown point {lab!r}")
        m |= 1 << points.index(lab)
    return m


def cmd_metric(args, out):
    rep = _Report(args.json)
    if args.what == "hausdorff":
        sp = _load_pmetric(args)
        c = _point_set(sp.points, args.seta)
        d = _point_set(sp.points, args.setb)
        v = pmetric.hausdorff_distance(sp, c, d)
        rep.add("hausdorff", v, f"hausdorff: {v:.12g}")
    elif args.what == "quotient":
        sp = _load_pmetric(args)
        q, classes = pmetric.metric_quotient(sp)
        rep.add("classes", [list(sp.labels(c)) for c in classes],
                "classes: " + " ".join(_set_str(sp, c) for c in classes))
        rep.table(
            "distances",
            ("",) + q.points,
            [(q.points[i],) + tuple(f"{v:.12g}" for v in q.dist[i]) for i in range(q.n)],
        )
    elif args.what == "net":
        sp = _load_pmetric(args)
        centers = pmetric.epsilon_net(sp, args.eps)
        rep.add("centers", centers, "centers: " + " ".join(centers))
    elif args.what == "chain":
        chain = formats.load_chain(_read(args.infile))
        result = pmetric.pseudometric_from_chain(chain)
        sp = result.space
        rep.table(
            "distances",
            ("",) + sp.points,
            [(sp.points[i],) + tuple(f"{v:.12g}" for v in sp.dist[i]) for i in range(sp.n)],
        )
        rep.add("squeeze_verified", True)
    else:  # ultrarank
        rs = formats.load_ranks(_read(args.infile))
        a = _point_set(rs.points, args.seta)
        b = _point_set(rs.points, args.setb)
        v = pmetric.ultrametric_from_rank(rs, a, b)
        rep.add("distance", v, f"distance: {v:.12g}")
    rep.print(out)
    return 0


# -- solve ------------------------------------------------------------------

_FIXPOINT_FUNCTIONS = {
    "cos": lambda v: [math.cos(x) for x in v],
    "halve": lambda v: [x / 2.0 for x in v],
    "damped-shift": lambda v: [0.5 * x + 1.0 for x in v],
}


def cmd_solve(args, out):
    rep = _Report(args.json)
    if args.what == "fixpoint":
        if args.func not in _FIXPOINT_FUNCTIONS:
            raise FormatError(f"unknown function {args.func!r}; have {sorted(_FIXPOINT_FUNCTIONS)}")
        x0 = [float(v) for v in args.x0.split(",")]
        res = pmetric.banach_fixed_point(
            _FIXPOINT_FUNCTIONS[args.func], x0, metric=args.metric, tol=args.tol, max_iter=args.max_iter
        )
        rep.add("x", list(res.x), "x: " + " ".join(f"{v:.12g}" for v in res.x))
        rep.add("iterations", res.iterations)
        rep.add("gamma_estimate", res.gamma_estimate, f"gamma_estimate: {res.gamma_estimate:.6g}")
    else:  # pagerank
        rows = formats.load_matrix(_read(args.infile))
        matrix = pmetric.StochasticMatrix(tuple(tuple(r) for r in rows))
        p = pmetric.pagerank(matrix, tol=args.tol, max_iter=args.max_iter)
        rep.add("distribution", [float(v) for v in p], "distribution: " + " ".join(f"{v:.6f}" for v in p))
    rep.print(out)
    return 0


# -- approx -----------------------------------------------------------------


def _grid_arg(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise FormatError("grid must be comma-separated numbers") from None


def cmd_approx(args, out):
    rep = _Report(args.json)
    if args.what == "sqrt":
        gf = approx.sqrt_iteration(args.n, _grid_arg(args.grid))
        rep.table(
            "values", ("t", f"f_{args.n}(t)"), [(f"{t:.12g}", f"{v:.12g}") for t, v in zip(gf.grid, gf.values)]
        )
    elif args.what == "weierstrass":
        f = approx.named_function(args.func)
        ev = approx.weierstrass_polynomial(f, args.n, panels=args.panels)
        rows = [(f"{x:.12g}", f"{ev(x):.12g}", f"{f(x):.12g}") for x in _grid_arg(args.grid)]
        rep.table("values", ("x", f"P_{args.n}(x)", "f(x)"), rows)
    else:  # kernel-ratio
        r = approx.kernel_ratio(args.n, args.delta, panels=args.panels)
        rep.add("ratio", r.ratio, f"ratio: {r.ratio:.12g}")
        rep.add("bound", r.bound, f"bound: {r.bound:.12g}")
        rep.add("ratio_below_bound", r.ratio < r.bound)
    rep.print(out)
    return 0


# -- logic ------------------------------------------------------------------


def cmd_logic(args, out):
    theory = formats.load_theory(_read(args.infile))
    rep = _Report(args.json)
    if args.what == "consistent":
        ok = is_consistent(theory)
        rep.add("consistent", ok)
        rep.print(out)
        return 0 if ok else 1
    if args.what == "model":
        model = model_from_ultrafilter(theory)
        rep.add(
            "valuation",
            {v: (v in model.valuation) for v in theory.vars},
            "valuation: "
            + " ".join(f"{v}={'top' if v in model.valuation else 'bot'}" for v in theory.vars),
        )
    elif args.what == "algebra":
        alg = lindenbaum_algebra(theory)
        rep.add("models", len(alg.models))
        rep.add("elements", alg.size)
    else:  # stone
        alg = lindenbaum_algebra(theory)
        st = stone_representation(alg)
        rep.add("ultrafilters", len(st.ultrafilters))
        rep.add("top_maps_to_all", st.image_of(alg.top) == frozenset(range(len(alg.models))))
        rep.add("bot_maps_to_empty", st.image_of(alg.bot) == frozenset())
    rep.print(out)
    return 0


# -- parser wiring ------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="finitetop", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", help="inspect a space")
    spsub = sp.add_subparsers(dest="what", required=True)
    rep = spsub.add_parser("report", help="closure table, separation, neighborhoods")
    rep.add_argument("--in", dest="infile", required=True)
    rep.add_argument("--json", action="store_true")
    rep.add_argument("--emit", action="store_true", help="print the canonical space file instead")
    rep.set_defaults(fn=cmd_space_report)

    ck = sub.add_parser("check", help="validate an input file")
    cksub = ck.add_subparsers(dest="what", required=True)
    for what in ("base", "subbase", "closure-op", "pmetric", "chain"):
        w = cksub.add_parser(what)
        w.add_argument("--in", dest="infile", required=True)
        if what == "pmetric":
            w.add_argument("--labels", default=None)
        w.set_defaults(fn=cmd_check, what=what)

    mp = sub.add_parser("map", help="test a point map")
    mpsub = mp.add_subparsers(dest="what", required=True)
    for what in ("continuity", "homeo"):
        w = mpsub.add_parser(what)
        w.add_argument("--src", required=True)
        w.add_argument("--dst", required=True)
        w.add_argument("--map", dest="mapfile", required=True)
        w.set_defaults(fn=cmd_map, what=what)

    bd = sub.add_parser("build", help="construct a new space")
    bdsub = bd.add_subparsers(dest="what", required=True)
    for what in ("product", "subspace", "sum", "quotient", "onepoint", "from-poset", "from-closure", "scott"):
        w = bdsub.add_parser(what)
        w.add_argument("--in", dest="infile", required=True)
        if what in ("product", "sum"):
            w.add_argument("--with", dest="second", required=True)
        if what == "subspace":
            w.add_argument("--keep", required=True, help="labels to keep")
        if what == "quotient":
            w.add_argument("--classes", required=True, help="equivalence file")
        if what == "onepoint":
            w.add_argument("--label", default="inf")
        w.set_defaults(fn=cmd_build, what=what)

    lc = sub.add_parser("locale", help="order-theoretic reports")
    lcsub = lc.add_subparsers(dest="what", required=True)
    for what in ("implication", "points", "sober", "hofmann-mislove"):
        w = lcsub.add_parser(what)
        w.add_argument("--in", dest="infile", required=True)
        w.add_argument("--json", action="store_true")
        if what == "implication":
            w.add_argument("--a", dest="seta", required=True)
            w.add_argument("--b", dest="setb", required=True)
        w.set_defaults(fn=cmd_locale, what=what)

    mt = sub.add_parser("metric", help="pseudometric computations")
    mtsub = mt.add_subparsers(dest="what", required=True)
    for what in ("hausdorff", "quotient", "net", "chain", "ultrarank"):
        w = mtsub.add_parser(what)
        w.add_argument("--in", dest="infile", required=True)
        w.add_argument("--json", action="store_true")
        if what in ("hausdorff", "quotient", "net"):
            w.add_argument("--labels", default=None)
        if what in ("hausdorff", "ultrarank"):
            w.add_argument("--a", dest="seta", required=True)
            w.add_argument("--b", dest="setb", required=True)
        if what == "net":
            w.add_argument("--eps", type=float, required=True)
        w.set_defaults(fn=cmd_metric, what=what)

    sv = sub.add_parser("solve", help="fixed-point solvers")
    svsub = sv.add_subparsers(dest="what", required=True)
    fx = svsub.add_parser("fixpoint")
    fx.add_argument("--fn", dest="func", required=True)
    fx.add_argument("--x0", required=True, help="comma-separated start vector")
    fx.add_argument("--metric", default="l2", choices=("l1", "l2", "linf"))
    fx.add_argument("--tol", type=float, default=1e-12)
    fx.add_argument("--max-iter", type=int, default=1000)
    fx.add_argument("--json", action="store_true")
    fx.set_defaults(fn=cmd_solve, what="fixpoint")
    pr = svsub.add_parser("pagerank")
    pr.add_argument("--in", dest="infile", required=True)
    pr.add_argument("--tol", type=float, default=1e-9)
    pr.add_argument("--max-iter", type=int, default=200)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(fn=cmd_solve, what="pagerank")

    ap = sub.add_parser("approx", help="constructive approximation")
    apsub = ap.add_subparsers(dest="what", required=True)
    sq = apsub.add_parser("sqrt")
    sq.add_argument("--n", type=int, required=True)
    sq.add_argument("--grid", required=True)
    sq.add_argument("--json", action="store_true")
    sq.set_defaults(fn=cmd_approx, what="sqrt")
    ws = apsub.add_parser("weierstrass")
    ws.add_argument("--fn", dest="func", required=True)
    ws.add_argument("--n", type=int, required=True)
    ws.add_argument("--panels", type=int, default=2048)
    ws.add_argument("--grid", required=True)
    ws.add_argument("--json", action="store_true")
    ws.set_defaults(fn=cmd_approx, what="weierstrass")
    kr = apsub.add_parser("kernel-ratio")
    kr.add_argument("--n", type=int, required=True)
    kr.add_argument("--delta", type=float, required=True)
    kr.add_argument("--panels", type=int, default=2048)
    kr.add_argument("--json", action="store_true")
    kr.set_defaults(fn=cmd_approx, what="kernel-ratio")

    lg = sub.add_parser("logic", help="propositional workbench")
    lgsub = lg.add_subparsers(dest="what", required=True)
    for what in ("consistent", "model", "algebra", "stone"):
        w = lgsub.add_parser(what)
        w.add_argument("--in", dest="infile", required=True)
        w.add_argument("--json", action="store_true")
        w.set_defaults(fn=cmd_logic, what=what)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args, sys.stdout)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        witness = f" [{e.witness}]" if e.witness else ""
        print(f"failed: {e}{witness}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
