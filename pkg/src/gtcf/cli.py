"""Command line front end: ``gtcf <area> <command> ...``.

Exit codes: 0 success, 2 invalid input, 3 a check failed (witness printed),
4 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .algebra.fields import parse_field
from .algebra.ideal import settings
from .axioms import emit_axiom_instance, emit_axiom_scheme
from .bass_serre import (
    c2_free_c2, c4_c4_hnn, dinfinity, finite_marked_group, free_marked_group, free_times_finite,
    klein_hnn, marked_group_from_spec,
)
from .diffcheck import PresentedRing, maps_from_json, replay_zrtz, verify_hom, verify_relation
from .errors import CheckFailed, GtcfError, ValidationError
from .gpairs import (
    Presentation, check_g_pair, kernel_from_pair, pair_from_kernel, prolong, tower,
)
from .group_core import (
    MarkedGroup, cyclic_group, diagonal_classes, klein_group, parse_word, rho_product_matrix,
)
from .variety import (
    BlockVariety, GField, fiber_product, project_closure, reduced_generators, twist, variety_from_json,
)


def _builtin(name: str) -> MarkedGroup:
    n = name.strip()
    low = n.lower()
    if low in ("z", "f1"):
        return free_marked_group(1)
    if low.startswith("f") and low[1:].isdigit():
        return free_marked_group(int(low[1:]))
    if low.startswith("c") and low[1:].isdigit():
        k = int(low[1:])
        labels = ["1", "sigma"] if k == 2 else None
        return finite_marked_group(cyclic_group(k, labels, name=f"C{k}"), f"C{k}")
    if low in ("c2xc2", "klein"):
        return finite_marked_group(klein_group(), "C2xC2")
    if low in ("c2*c2",):
        return c2_free_c2()
    if low in ("klein-hnn", "(c2xc2)*alpha"):
        return klein_hnn()
    if low in ("c4*c4-hnn", "(c4*c4)*alpha"):
        return c4_c4_hnn()
    if low in ("dinf", "d_inf", "dinfinity"):
        return dinfinity()
    if low.startswith("f") and "xc" in low:
        a, b = low[1:].split("xc")
        return free_times_finite(int(a), cyclic_group(int(b), ["1", "tau"] if b == "2" else None, name=f"C{b}"))
    raise ValidationError(f"unknown group {name!r}", kind="unsupported-kind")


class Context:
    """Per-invocation state: the marked group and how to write it back out."""

    def __init__(self, args):
        self.args = args
        self.field = parse_field(args.field) if getattr(args, "field", None) else None
        self._group: Optional[MarkedGroup] = None
        self.group_spec = None
        if getattr(args, "group", None):
            self.set_group(args.group)

    def set_group(self, ref):
        spec = ref
        if isinstance(ref, str) and os.path.exists(ref):
            spec = _read(ref)
        if isinstance(spec, dict) and spec.get("schema") == "gtcf.marked-group/1":
            spec = spec["spec"]
        self._group = _builtin(spec) if isinstance(spec, str) else marked_group_from_spec(spec)
        self.group_spec = spec

    @property
    def group(self) -> MarkedGroup:
        if self._group is None:
            raise ValidationError("no marked group given (use --group or embed \"group\" in the input)",
                                  kind="missing-group")
        return self._group

    def adopt(self, doc: dict):
        if self._group is None and isinstance(doc, dict) and "group" in doc:
            self.set_group(doc["group"])

    def variety(self, doc: dict) -> BlockVariety:
        self.adopt(doc)
        if doc.get("schema") not in (None, "gtcf.variety/1"):
            raise ValidationError(f"expected a variety document, got {doc.get('schema')!r}", kind="invalid-spec")
        if "field" not in doc and self.field is not None:
            doc = dict(doc, field=self.field.descriptor())
        return variety_from_json(doc, self.group)

    def emit_variety(self, V: BlockVariety) -> dict:
        out = V.to_json()
        if self.group_spec is not None:
            out["group"] = self.group_spec
        return out

    def pair(self, paths: List[str]):
        if len(paths) == 1:
            doc = _read(paths[0])
            self.adopt(doc)
            sch = doc.get("schema")
            if sch == "gtcf.pair/1":
                return self.variety(doc["V"]), self.variety(doc["W"])
            if sch == "gtcf.tower/1":
                return self.variety(doc["stages"][-2]), self.variety(doc["stages"][-1])
            raise ValidationError("a single input must be a pair or tower document", kind="invalid-spec")
        if len(paths) != 2:
            raise ValidationError("expected V and W", kind="invalid-spec")
        a, b = _read(paths[0]), _read(paths[1])
        return self.variety(a), self.variety(b)


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}", kind="io-error")
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path}: invalid JSON ({e})", kind="syntax-error")


def group_summary(M: MarkedGroup, spec=None) -> dict:
    dc = diagonal_classes(M)
    out = {
        "schema": "gtcf.marked-group/1",
        "name": M.name,
        "kind": M.kind,
        "rho": [str(r) for r in M.rho],
        "rho_rho": [[str(c) for c in row] for row in rho_product_matrix(M)],
        "diagonal_classes": [[[i + 1, j + 1] for i, j in c] for c in dc.classes],
        "relations": [[i + 1, j + 1, k + 1, l + 1] for i, j, k, l in dc.relations],
    }
    if spec is not None:
        out["spec"] = spec
    return out


# ---------------------------------------------------------------- text renderers


def _text_variety(doc: dict) -> str:
    lines = ["blocks:"]
    lines += [f"  {b['label']}: {', '.join(b['vars'])}" for b in doc["blocks"]]
    lines.append("ideal:")
    lines += [f"  {g}" for g in doc["ideal"]]
    if not doc["ideal"]:
        lines.append("  (0)")
    return "\n".join(lines)


def _text_report(doc: dict) -> str:
    lines = [f"{doc['kind']} pair check: {'PASS' if doc['verdict'] else 'FAIL'}"]
    for c in doc["checks"]:
        lines.append(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}")
        if not c["passed"] and c.get("witness"):
            lines.append(f"      {json.dumps(c['witness'], sort_keys=True)}")
    if doc.get("lemma"):
        lines.append("  lemma conditions: " + ", ".join(f"({k})={v}" for k, v in sorted(doc["lemma"].items())))
    lines.append(f"  note: {doc['caveat']}")
    return "\n".join(lines)


def _text_group(doc: dict) -> str:
    lines = [f"{doc['name'] or doc['kind']} (kind: {doc['kind']})", "rho = (" + ", ".join(doc["rho"]) + ")"]
    if "rho_rho" in doc:
        w = max(len(c) for row in doc["rho_rho"] for c in row)
        lines.append("rho*rho =")
        lines += ["  " + "  ".join(c.ljust(w) for c in row).rstrip() for row in doc["rho_rho"]]
    if "diagonal_classes" in doc:
        lines.append("diagonal classes:")
        for c in doc["diagonal_classes"]:
            if len(c) > 1:
                lines.append("  {" + ", ".join(f"({i},{j})" for i, j in c) + "}")
    return "\n".join(lines)


def _text_diffcheck(doc: dict) -> str:
    lines = [f"scenario {doc['scenario']}: {'VERIFIED' if doc['verdict'] else 'FAILED'}"]
    for i in doc["identities"]:
        lines.append(f"  [{'ok' if i['holds'] else 'FAIL'}] {i['identity']}")
        if not i["holds"]:
            lines.append(f"      lhs = {i['lhs']}, rhs = {i['rhs']}")
    if doc["conclusion"]:
        lines.append("  conclusion: " + json.dumps(doc["conclusion"], sort_keys=True))
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def cmd_group(ctx: Context, args):
    if args.spec:
        ctx.set_group(args.spec)
    M = ctx.group
    full = group_summary(M, ctx.group_spec)
    if args.command == "rho-matrix":
        doc = {k: full[k] for k in ("schema", "name", "kind", "rho", "rho_rho")}
    elif args.command == "diagonals":
        doc = {k: full[k] for k in ("schema", "name", "kind", "rho", "diagonal_classes", "relations")}
    else:
        doc = full
    return doc, _text_group(doc), 0


def _labels(text: Optional[str]):
    if text is None:
        return None
    return [parse_word(t) for t in text.split(",") if t.strip()]


def cmd_variety(ctx: Context, args):
    V = ctx.variety(_read(args.inputs[0]))
    if args.command == "twist":
        out = twist(V, parse_word(args.word))
    elif args.command == "project":
        keep = [V.group.key(w) for w in _labels(args.keep)]
        out = project_closure(V, keep)
    else:
        if len(args.inputs) != 2:
            raise ValidationError("fiber needs two varieties", kind="invalid-spec")
        B = ctx.variety(_read(args.inputs[1]))
        base = _labels(args.base)
        out = fiber_product(V, B, None if base is None else [V.group.key(w) for w in base])
    doc = ctx.emit_variety(out)
    return doc, _text_variety(doc), 0


def cmd_pair(ctx: Context, args):
    V, W = ctx.pair(args.inputs)
    M = ctx.group
    if args.command == "check":
        rep = check_g_pair(V, W, M, debug=args.debug)
        doc = rep.to_json()
        return doc, _text_report(doc), 0 if rep.verdict else 3
    if args.command == "prolong":
        rep = check_g_pair(V, W, M)
        if not rep.verdict:
            raise CheckFailed("the input is not a G-pair", report=rep, kind="pair-check-failed")
        Wp = prolong(V, W, M)
        doc = ctx.emit_variety(Wp)
        return doc, _text_variety(doc), 0
    T = tower(V, W, M, steps=args.steps)
    doc = T.to_json()
    if ctx.group_spec is not None:
        doc["group"] = ctx.group_spec
        for s in doc["stages"]:
            s["group"] = ctx.group_spec
    text = "\n".join(f"stage {k}:\n{_text_variety(s)}" for k, s in enumerate(doc["stages"]))
    return doc, text, 0


def kernel_document(ctx: Context, V: BlockVariety, W: BlockVariety) -> dict:
    """K[W] as a presentation, with the point a = V's coordinates and images rho'_i(a)."""
    M = ctx.group
    hom = kernel_from_pair(V, W, M)
    first = hom[M.identity_index]["images"]
    vb = V.blocks[0].vars
    doc = {
        "schema": "gtcf.kernel/1",
        **V.gfield.to_json(),
        "variables": list(W.ring.vars),
        "relations": [str(g) for g in reduced_generators(W.ideal)],
        "inverted": [],
        "point": [first[v] for v in vb],
        "images": {h["generator"]: [h["images"][v] for v in vb] for h in hom},
        "bases": list(vb),
        "hom_data": hom,
    }
    if ctx.group_spec is not None:
        doc["group"] = ctx.group_spec
    return doc


def _coord(c):
    return tuple(c) if isinstance(c, list) else c


def cmd_kernel(ctx: Context, args):
    if args.command == "from-pair":
        V, W = ctx.pair(args.inputs)
        doc = kernel_document(ctx, V, W)
        return doc, json.dumps(doc, indent=2, sort_keys=True), 0
    doc = _read(args.inputs[0])
    ctx.adopt(doc)
    M = ctx.group
    field = parse_field(doc.get("field", ctx.field or "Q"))
    gf = GField(M, field, doc.get("action", {}))
    P = Presentation.parse(doc["variables"], doc.get("relations", []), doc.get("inverted", []), field)
    point = [_coord(c) for c in doc["point"]]
    images = {k: [_coord(c) for c in v] for k, v in doc.get("images", {}).items()}
    V, W, rep = pair_from_kernel(gf, P, point, images, doc.get("bases"))
    out = {"schema": "gtcf.pair/1", "V": ctx.emit_variety(V), "W": ctx.emit_variety(W), "report": rep.to_json()}
    if ctx.group_spec is not None:
        out["group"] = ctx.group_spec
    text = f"V:\n{_text_variety(out['V'])}\nW:\n{_text_variety(out['W'])}\n{_text_report(out['report'])}"
    return out, text, 0 if rep.verdict else 3


def cmd_axioms(ctx: Context, args):
    if args.command == "scheme":
        if args.inputs:
            ctx.set_group(args.inputs)
        S = emit_axiom_scheme(ctx.group)
        return S.to_json(), S.render().rstrip("\n"), 0
    V, W = ctx.pair(args.inputs)
    doc = emit_axiom_instance(ctx.group, V, W)
    return doc, doc["sentence"], 0


def cmd_diffcheck(ctx: Context, args):
    if args.command == "run":
        window = tuple(args.window) if args.window else None
        rep = replay_zrtz(args.scenario, n=args.n, window=window, mutate=args.mutate)
        doc = rep.to_json()
        return doc, _text_diffcheck(doc), 0 if rep.verdict else 3
    if len(args.inputs) != 2:
        raise ValidationError("verify needs ring.json and maps.json", kind="invalid-spec")
    rdoc = _read(args.inputs[0])
    if ctx.field is not None and "field" not in rdoc:
        rdoc = dict(rdoc, field=str(args.field))
    R = PresentedRing.from_json(rdoc)
    mdoc = _read(args.inputs[1])
    maps = maps_from_json(R, mdoc)
    results = []
    for name, phi in maps.items():
        v = verify_hom(R, phi)
        results.append({"check": f"{name} is an endomorphism", "holds": v.ok, "witness": v.witness})
    for rel in mdoc.get("relations", []):
        v = verify_relation(R, maps, rel["lhs"], rel["rhs"], rel.get("generators", list(R.ring.vars)))
        results.append({"check": f"{rel['lhs']} = {rel['rhs']}", "holds": v.ok, "witness": v.witness})
    ok = all(r["holds"] for r in results)
    doc = {"schema": "gtcf.diffcheck-verify/1", "verdict": ok, "checks": results}
    lines = [f"verify: {'VERIFIED' if ok else 'FAILED'}"]
    for r in results:
        lines.append(f"  [{'ok' if r['holds'] else 'FAIL'}] {r['check']}")
        if not r["holds"] and r["witness"]:
            lines.append(f"      {r['witness']}")
    return doc, "\n".join(lines), 0 if ok else 3


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=argparse.SUPPRESS, help="default base field, e.g. Q or Q(zeta3)")
    p.add_argument("--order", default=argparse.SUPPRESS, choices=["grevlex", "lex"],
                   help="monomial order for Groebner bases")
    p.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, help="degree guard for Buchberger")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    p.add_argument("--group", default=argparse.SUPPRESS, help="marked group: JSON file or builtin name")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gtcf", description="G-pairs, prolongations and axiom schemes",
                                     parents=[common])
    areas = parser.add_subparsers(dest="area", required=True)

    g = areas.add_parser("group", help="marked groups", parents=[common])
    gs = g.add_subparsers(dest="command", required=True)
    for name in ("build", "rho-matrix", "diagonals"):
        c = gs.add_parser(name, parents=[common])
        c.add_argument("spec", nargs="?", help="graph-of-groups JSON or builtin name")

    v = areas.add_parser("variety", help="block varieties", parents=[common])
    vs = v.add_subparsers(dest="command", required=True)
    c = vs.add_parser("twist", parents=[common])
    c.add_argument("inputs", nargs=1)
    c.add_argument("--word", required=True)
    c = vs.add_parser("project", parents=[common])
    c.add_argument("inputs", nargs=1)
    c.add_argument("--keep", required=True, help="comma separated labels")
    c = vs.add_parser("fiber", parents=[common])
    c.add_argument("inputs", nargs=2)
    c.add_argument("--base", help="comma separated labels (default: common labels)")

    p = areas.add_parser("pair", help="G-pairs", parents=[common])
    ps = p.add_subparsers(dest="command", required=True)
    c = ps.add_parser("check", parents=[common])
    c.add_argument("inputs", nargs="+")
    c.add_argument("--debug", action="store_true", help="also evaluate the finite-group lemma conditions")
    c = ps.add_parser("prolong", parents=[common])
    c.add_argument("inputs", nargs="+")
    c = ps.add_parser("tower", parents=[common])
    c.add_argument("inputs", nargs="+")
    c.add_argument("--steps", type=int, default=1)

    k = areas.add_parser("kernel", help="G-kernels", parents=[common])
    ks = k.add_subparsers(dest="command", required=True)
    c = ks.add_parser("to-pair", parents=[common])
    c.add_argument("inputs", nargs=1)
    c = ks.add_parser("from-pair", parents=[common])
    c.add_argument("inputs", nargs="+")

    a = areas.add_parser("axioms", help="axiom schemes", parents=[common])
    as_ = a.add_subparsers(dest="command", required=True)
    c = as_.add_parser("scheme", parents=[common])
    c.add_argument("inputs", nargs="?", default=None)
    c = as_.add_parser("instance", parents=[common])
    c.add_argument("inputs", nargs="+")

    d = areas.add_parser("diffcheck", help="difference-field identity checks", parents=[common])
    ds = d.add_subparsers(dest="command", required=True)
    c = ds.add_parser("run", parents=[common])
    c.add_argument("--scenario", required=True, choices=["A", "B", "C", "a", "b", "c"])
    c.add_argument("--n", type=int, default=None)
    c.add_argument("--window", type=int, nargs=2, default=None, metavar=("LO", "HI"))
    c.add_argument("--mutate", action="store_true", help="flip the sign of one image")
    c = ds.add_parser("verify", parents=[common])
    c.add_argument("inputs", nargs=2)
    return parser


COMMANDS = {
    "group": cmd_group,
    "variety": cmd_variety,
    "pair": cmd_pair,
    "kernel": cmd_kernel,
    "axioms": cmd_axioms,
    "diffcheck": cmd_diffcheck,
}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    want_json = getattr(args, "json", False)
    saved = (settings.order, settings.max_degree)
    try:
        if getattr(args, "order", None):
            settings.order = args.order
        if getattr(args, "max_degree", None) is not None:
            settings.max_degree = args.max_degree
        if args.area == "axioms" and args.command == "scheme" and args.inputs is None and not getattr(args, "group", None):
            raise ValidationError("no marked group given", kind="missing-group")
        if args.area == "group" and not args.spec and not getattr(args, "group", None):
            raise ValidationError("no marked group given", kind="missing-group")
        ctx = Context(args)
        doc, text, code = COMMANDS[args.area](ctx, args)
    except GtcfError as e:
        doc = e.to_json()
        doc["schema"] = "gtcf.error/1"
        if want_json:
            out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            err.write(f"error [{e.kind}]: {e}\n")
            rep = getattr(e, "report", None)
            if rep is not None and hasattr(rep, "to_json"):
                err.write(_text_report(rep.to_json()) + "\n")
        return e.exit_code
    finally:
        settings.order, settings.max_degree = saved
    if want_json:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
