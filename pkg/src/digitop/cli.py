"""Command-line entry point.

Exit codes: 0 verified/true, 1 refuted or witness found, 2 usage or input
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import audit
from .compatibility import compatibility_report
from .contraction import admits_theta_contraction, digital_contraction_coefficient, is_quasi_contraction
from .errors import DigitopError
from .formats import format_image, format_map, load_image, load_map, load_points
from .freezing import Minimality, Verdict, is_freezing_set, is_minimal_freezing_set, search_freezing_subsets
from .image import interval, is_connected, rectangle
from .maps import EnumerationConstraints, EnumStatus, enumerate_maps
from .metrics import parse_metric

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_BUDGET = 10**7
CLASSES = ("contraction", "quasi", "theta")


class UsageError(DigitopError):
    pass


def _default_budget() -> int:
    raw = os.environ.get("DIGITOP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"DIGITOP_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise UsageError("DIGITOP_BUDGET must be positive")
    return value


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _adjacency(text: str) -> int:
    if not text.startswith("c"):
        raise argparse.ArgumentTypeError(f"adjacency must look like c<u>, got {text!r}")
    try:
        return int(text[1:])
    except ValueError:
        raise argparse.ArgumentTypeError(f"adjacency must look like c<u>, got {text!r}") from None


def _b(v: bool) -> str:
    return "true" if v else "false"


def _pt(p) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def _inline_map(f) -> str:
    return " ".join(f"{_pt(p)}->{_pt(q)}" for p, q in f.table.items())


def _emit_witness(f, out_path: str | None) -> str:
    if out_path:
        Path(out_path).write_text(format_map(f), encoding="utf-8")
        return f"witness={out_path}"
    return f"witness={_inline_map(f)}"


# ---------------------------------------------------------------------------
# verbs


def cmd_image_gen(a) -> int:
    if a.shape == "rect":
        if not a.extents:
            raise UsageError("rect needs at least one extent")
        X = rectangle(*a.extents, adjacency=a.adj)
    else:
        if len(a.extents) != 2:
            raise UsageError("interval needs two endpoints")
        X = interval(a.extents[0], a.extents[1], a.adj or 1)
    text = format_image(X)
    if a.output:
        Path(a.output).write_text(text, encoding="utf-8")
        print(f"wrote {a.output} points={len(X)}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_image_validate(a) -> int:
    X = load_image(a.image)
    print(f"valid=true dim={X.dimension} points={len(X)} adjacency={X.adjacency} "
          f"edges={len(X.edges())} connected={_b(is_connected(X))}")
    return EXIT_OK


def cmd_maps_enumerate(a) -> int:
    X = load_image(a.image)
    c = EnumerationConstraints(pinned={}, require_continuous=a.continuous, require_onto=a.onto,
                               node_budget=a.budget)

    def show(f):
        print(f"map {_inline_map(f)}")
        return False

    res = enumerate_maps(X, c, None if a.count_only else show, jobs=a.jobs)
    print(f"count={res.count} nodes={res.nodes} status={res.status.value}")
    return EXIT_BUDGET if res.status is EnumStatus.BUDGET_EXCEEDED else EXIT_OK


def _timing(a, elapsed: float) -> str:
    return f" ms={int(round(elapsed * 1000))}" if a.timing else ""


def cmd_freezing_verify(a) -> int:
    X = load_image(a.image)
    A = load_points(a.set, X.dimension)
    if a.minimal:
        rep = is_minimal_freezing_set(X, A, a.budget, a.jobs)
        base = rep.freezing
        line = f"verdict={base.verdict.value}"
        if base.verdict is Verdict.FREEZING:
            mv = rep.verdict
            line += f" minimal={'unknown' if mv is Minimality.BUDGET_EXCEEDED else _b(rep.minimal)}"
            if rep.redundant is not None:
                line += f" redundant={_pt(rep.redundant)}"
        line += f" nodes={rep.nodes_explored}" + _timing(a, rep.elapsed)
        print(line)
        if base.witness is not None:
            print(_emit_witness(base.witness, a.witness_out))
        if rep.verdict is Minimality.BUDGET_EXCEEDED:
            return EXIT_BUDGET
        return EXIT_OK if rep.minimal else EXIT_REFUTED
    rep = is_freezing_set(X, A, a.budget, a.jobs)
    print(f"verdict={rep.verdict.value} nodes={rep.nodes_explored}" + _timing(a, rep.elapsed))
    if rep.witness is not None:
        print(_emit_witness(rep.witness, a.witness_out))
    return {Verdict.FREEZING: EXIT_OK, Verdict.NOT_FREEZING: EXIT_REFUTED,
            Verdict.BUDGET_EXCEEDED: EXIT_BUDGET}[rep.verdict]


def cmd_freezing_search(a) -> int:
    X = load_image(a.image)
    rep = search_freezing_subsets(X, a.max_size, a.budget)
    for s in rep.minimal_sets:
        print("set " + " ".join(_pt(p) for p in s))
    print(f"found={len(rep.minimal_sets)} complete={_b(rep.complete)} nodes={rep.nodes_explored}")
    if not rep.complete:
        return EXIT_BUDGET
    return EXIT_OK if rep.minimal_sets else EXIT_REFUTED


def cmd_classify(a) -> int:
    X = load_image(a.image)
    f = load_map(a.map, X)
    d = parse_metric(a.metric, X)
    names = [c.strip() for c in a.classes.split(",") if c.strip()]
    bad = [c for c in names if c not in CLASSES]
    if bad or not names:
        raise UsageError(f"unknown class {', '.join(bad) or '(none)'}; choose from {', '.join(CLASSES)}")
    ops = {"contraction": digital_contraction_coefficient, "quasi": is_quasi_contraction,
           "theta": admits_theta_contraction}
    ok = True
    for c in names:
        r = ops[c](f, d)
        w = "-" if r.witness_pair is None else ",".join(_pt(p) for p in r.witness_pair)
        line = f"class={c} satisfied={_b(r.satisfied)} qstar={r.qstar_text()} witness={w}"
        if r.indeterminate:
            line += " indeterminate=true"
        print(line)
        ok = ok and r.satisfied
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_compat(a) -> int:
    X = load_image(a.image)
    S, T = load_map(a.s, X), load_map(a.t, X)
    rep = compatibility_report(S, T, parse_metric(a.metric, X))
    print(rep.line())
    if rep.failing_witness is not None:
        p, v = rep.failing_witness
        print(f"failing_witness={_pt(p)} distance={v}")
    if rep.vacuous:
        print("note=no coincidence point; compatibility holds vacuously")
    return EXIT_OK if rep.compatible else EXIT_REFUTED


def cmd_audit_list(a) -> int:
    for r in audit.list_assertions():
        kinds = "+".join(e.kind.value for e in r.evidence)
        print(f"{r.id} verdict={r.verdict_label} evidence={kinds} source={r.source}")
    return EXIT_OK


def cmd_audit_run(a) -> int:
    if a.all == bool(a.ids):
        raise UsageError("give assertion ids or --all, not both")
    ids = [r.id for r in audit.list_assertions()] if a.all else a.ids
    for i in ids:
        audit.get_assertion(i)
    reports = audit.run_all(ids, a.budget, a.prefix)
    if a.json:
        doc = [r.to_dict() for r in reports]
        print(json.dumps(doc if len(doc) > 1 else doc[0], indent=2, sort_keys=True))
    else:
        for r in reports:
            print("\n".join(r.lines()))
    if any(r.status is audit.AuditStatus.FAILED for r in reports):
        budget_hit = any(c.name == "budget" and not c.passed for r in reports for c in r.checks)
        return EXIT_BUDGET if budget_hit else EXIT_REFUTED
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser(budget_default: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digitop", description="Fixed-point workbench for digital images.")
    verbs = p.add_subparsers(dest="verb", metavar="{image,maps,freezing,classify,compat,audit}")
    verbs.required = True

    def common(sp, jobs=True):
        sp.add_argument("--budget", type=_positive, default=budget_default,
                        help="search-node budget (default 10^7, or $DIGITOP_BUDGET)")
        if jobs:
            sp.add_argument("--jobs", type=_positive, default=1, help="worker processes (default 1)")

    img = verbs.add_parser("image", help="generate or validate DIGIMG files")
    iv = img.add_subparsers(dest="action", metavar="{gen,validate}")
    iv.required = True
    g = iv.add_parser("gen", help="write a rectangle or interval")
    g.add_argument("shape", choices=["rect", "interval"])
    g.add_argument("extents", type=int, nargs="+")
    g.add_argument("--adj", type=_adjacency, default=None, help="c<u> (default c_n)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_image_gen)
    v = iv.add_parser("validate", help="parse and summarize an image")
    v.add_argument("image")
    v.set_defaults(func=cmd_image_validate)

    mp = verbs.add_parser("maps", help="enumerate self-maps")
    mv = mp.add_subparsers(dest="action", metavar="{enumerate}")
    mv.required = True
    e = mv.add_parser("enumerate")
    e.add_argument("image")
    e.add_argument("--continuous", action="store_true")
    e.add_argument("--onto", action="store_true")
    e.add_argument("--count-only", action="store_true")
    common(e)
    e.set_defaults(func=cmd_maps_enumerate)

    fr = verbs.add_parser("freezing", help="freezing-set verification")
    fv = fr.add_subparsers(dest="action", metavar="{verify,search}")
    fv.required = True
    ver = fv.add_parser("verify")
    ver.add_argument("image")
    ver.add_argument("--set", required=True, help="point-set file")
    ver.add_argument("--minimal", action="store_true")
    ver.add_argument("--witness-out", help="write any witness as a DIGMAP file")
    ver.add_argument("--timing", action="store_true", help="append ms=<elapsed>")
    common(ver)
    ver.set_defaults(func=cmd_freezing_verify)
    se = fv.add_parser("search")
    se.add_argument("image")
    se.add_argument("--max-size", type=int, required=True)
    common(se, jobs=False)
    se.set_defaults(func=cmd_freezing_search)

    cl = verbs.add_parser("classify", help="contraction classes of a self-map")
    cl.add_argument("image")
    cl.add_argument("map")
    cl.add_argument("--metric", default="lp:2")
    cl.add_argument("--classes", default="contraction,quasi,theta")
    cl.set_defaults(func=cmd_classify)

    co = verbs.add_parser("compat", help="compatibility notions for a pair of self-maps")
    co.add_argument("image")
    co.add_argument("s")
    co.add_argument("t")
    co.add_argument("--metric", default="lp:2")
    co.set_defaults(func=cmd_compat)

    au = verbs.add_parser("audit", help="registry of critiqued assertions")
    av = au.add_subparsers(dest="action", metavar="{list,run}")
    av.required = True
    av.add_parser("list").set_defaults(func=cmd_audit_list)
    r = av.add_parser("run")
    r.add_argument("ids", nargs="*")
    r.add_argument("--all", action="store_true")
    r.add_argument("--json", action="store_true")
    r.add_argument("--prefix", type=_positive, default=audit.DEFAULT_PREFIX,
                   help="bounded-prefix length for infinite-domain counterexamples")
    common(r, jobs=False)
    r.set_defaults(func=cmd_audit_run)
    return p


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        parser = build_parser(_default_budget())
    except UsageError as exc:
        print(f"digitop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        ns = parser.parse_args(args)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return ns.func(ns)
    except (DigitopError, OSError, UnicodeDecodeError) as exc:
        print(f"digitop: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
