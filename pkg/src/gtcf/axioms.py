"""Geometric axiom schemes for marked groups, as deterministic text or JSON."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .algebra.poly import PolyRing
from .errors import CheckFailed, ValidationError
from .gpairs import CAVEAT, SUPPORTED_KINDS, check_g_pair
from .group_core import MarkedGroup, Word, diagonal_classes, rho_product_matrix
from .variety import BlockVariety


def _w(w: Word) -> str:
    return str(w)


def _apply(w: Word, x: str = "x") -> str:
    if not w.letters:
        return x
    s = str(w)
    return f"{s}({x})" if len(w.letters) == 1 else f"({s})({x})"


def _twist(w: Word, what: str) -> str:
    return what if not w.letters else f"^{w} {what}" if len(w.letters) == 1 else f"^({w}) {what}"


def _gname(G, vname: str) -> str:
    if G.name:
        return G.name
    n = G.order
    if any(G.element_order(a) == n for a in range(n)):
        return f"C{n}"
    if n == 4:
        return "C2xC2"
    return f"G_{vname}"


def _seq(words) -> str:
    return "(" + ", ".join(_w(w) for w in words) + ")"


@dataclass
class AxiomScheme:
    name: str
    kind: str
    rho: List[str]
    matrix: List[List[str]]
    classes: List[List[List[int]]]
    relations: List[List[int]]
    diagonals: List[str]
    conditions: List[str]
    sentence: str
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": "gtcf.axioms/1",
            "group": {"name": self.name, "kind": self.kind, "rho": self.rho},
            "rho_rho": self.matrix,
            "diagonal_classes": self.classes,
            "relations": self.relations,
            "diagonals": self.diagonals,
            "pair_conditions": [{"id": i + 1, "text": c} for i, c in enumerate(self.conditions)],
            "sentence": self.sentence,
            "notes": self.notes,
        }

    def render(self) -> str:
        lines = [f"axiom scheme for {self.name} (kind: {self.kind})", f"rho = ({', '.join(self.rho)})", "rho*rho ="]
        width = max(len(c) for row in self.matrix for c in row)
        for row in self.matrix:
            lines.append("  " + "  ".join(c.ljust(width) for c in row).rstrip())
        lines.append("diagonal identifications:")
        if self.diagonals:
            lines += [f"  {d}" for d in self.diagonals]
        else:
            lines.append("  none")
        lines.append("(V, W) with W inside ^rho V is a G-pair if:")
        lines += [f"  ({i + 1}) {c}" for i, c in enumerate(self.conditions)]
        lines.append("axiom:")
        lines.append(f"  {self.sentence}")
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


def _conditions(M: MarkedGroup) -> List[str]:
    rho = M.rho
    st = M.structure
    kind = M.kind
    if kind == "free":
        projs = ", ".join(f"W -> {_twist(r, 'V')}" for r in rho)
        return [f"all the projections {projs} are dominant"]
    if kind == "finite":
        out = [f"the projection W -> ^g V is dominant for every g in {_seq(rho)}"]
        for g in rho[1:]:
            out.append(f"lambda^{g}_V(W) = ^{g} W")
        return out
    if kind in ("tree-amalgam", "hnn", "graph-of-groups"):
        out = []
        names = st["vertex_names"]
        blocks = st["vertex_blocks"]
        groups = st["vertex_groups"]
        single = len(names) == 1
        subs = ["rho0" if single else f"rho_{n}" for n in names]
        where = ", ".join(f"{sub} = {_seq(rho[i] for i in blk)}" for sub, blk in zip(subs, blocks))
        for sb in st["stable_blocks"]:
            t = sb["letter"]
            if single:
                out.append(f"^{t} W_rho0 = W_({t}*rho0), where {where}")
            else:
                out.append(f"^{t} W_rho_i = W_({t}*rho_i) for every vertex i, where {where}")
        vpairs = [
            f"(V, W_{sub}) is a {_gname(G, n)}-pair" for sub, n, G in zip(subs, names, groups)
        ]
        if kind == "graph-of-groups":
            out.append("the tree part (V, W_rho_T) is a pair for the tree of groups, that is "
                       + " and ".join(vpairs) + f", where W_rho_i is the projection of W on ^rho_i V and {where}")
        else:
            for vp, sub, blk in zip(vpairs, subs, blocks):
                out.append(f"{vp}, where W_{sub} is the projection of W on ^{sub} V and {sub} = "
                           f"{_seq(rho[i] for i in blk)}")
        return out
    if kind == "product" and st.get("subkind") == "free-times-finite":
        gb = _seq(rho[i] for i in st["g_bar"])
        sb = _seq(rho[i] for i in st["sigma_bar"])
        n = st["n"]
        return [
            "W projects dominantly on V",
            f"(W_gbar, W) is an F{n}-pair, where W_gbar is the projection of W on ^gbar V and gbar = {gb}",
            f"(W_sigmabar, W) is a {_gname(st['finite_group'], 'G0')}-pair, where W_sigmabar is the projection "
            f"of W on ^sigmabar V and sigmabar = {sb}",
        ]
    if kind == "product" and st.get("subkind") == "dinfinity":
        rs = _seq(rho[i] for i in st["rho_sigma"])
        rt = _seq(rho[i] for i in st["rho_tau"])
        a, b = st["twist_swap"]
        return [
            "W projects dominantly on V",
            f"(W_sigma, tw{a + 1}_{b + 1}(W)) is a C2-pair, where W_sigma is the projection of W on "
            f"^rho_sigma V, rho_sigma = {rs}, and tw{a + 1}_{b + 1} exchanges coordinates {a + 1} and {b + 1}, "
            f"so that tw{a + 1}_{b + 1}(W) lies in ^rho_sigma V x ^tau(^rho_sigma V)",
            f"(W_tau, W) is a (Z, rho_sigma)-pair, where W_tau is the projection of W on ^rho_tau V "
            f"and rho_tau = {rt}",
        ]
    raise ValidationError(f"no axiom scheme for kind {M.kind!r}", kind="unsupported-kind")


def emit_axiom_scheme(M: MarkedGroup) -> AxiomScheme:
    if M.kind not in SUPPORTED_KINDS:
        raise ValidationError(f"no axiom scheme for kind {M.kind!r}", kind="unsupported-kind")
    conditions = _conditions(M)
    dc = diagonal_classes(M)
    mat = rho_product_matrix(M)
    diagonals = []
    for i, j, k, l in dc.relations:
        diagonals.append(
            f"rho{i + 1}*rho{j + 1} = rho{k + 1}*rho{l + 1}  [{M.rho[i]} * {M.rho[j]} = {M.rho[k]} * {M.rho[l]}"
            f" = {dc.representatives[dc.class_of[(i, j)]]}]"
        )
    tup = "(" + ", ".join(_apply(r) for r in M.rho) + ")"
    sentence = f"for each G-pair (V, W) there is x in V(K) such that {tup} lies in W(K)"
    notes = ["G is finitely generated and virtually free, so these axioms describe G-TCF"]
    return AxiomScheme(
        name=M.name or M.kind,
        kind=M.kind if M.kind != "product" else M.structure.get("subkind", "product"),
        rho=[str(r) for r in M.rho],
        matrix=[[str(c) for c in row] for row in mat],
        classes=[[[i + 1, j + 1] for i, j in c] for c in dc.classes],
        relations=[[i + 1, j + 1, k + 1, l + 1] for i, j, k, l in dc.relations],
        diagonals=diagonals,
        conditions=conditions,
        sentence=sentence,
        notes=notes,
    )


def _eq(p) -> str:
    c = p.constant_value()
    if c and not p.is_constant():
        rest = p - c
        v = -c
        return f"{rest} = {v}"
    return f"{p} = 0"


def emit_axiom_instance(M: MarkedGroup, V: BlockVariety, W: BlockVariety) -> dict:
    """The existential sentence for a concrete pair, with I(V), I(W) written in x, rho_i(x)."""
    rep = check_g_pair(V, W, M)
    if not rep.verdict:
        raise CheckFailed("the input is not a G-pair", report=rep, kind="pair-check-failed")
    vb = V.blocks[0].vars
    xs = ["x"] if len(vb) == 1 else [f"x{p + 1}" for p in range(len(vb))]
    names = {}
    for b in W.blocks:
        for v, x in zip(b.vars, xs):
            names[v] = _apply(b.label, x)
    ring = PolyRing([names[v] for v in W.ring.vars], W.ring.field)
    weqs = [_eq(p.remap(names, ring)) for p in W.ideal.groebner()]
    vring = PolyRing(xs, V.ring.field)
    vmap = dict(zip(vb, xs))
    veqs = [_eq(p.remap(vmap, vring)) for p in V.ideal.groebner()] if V.ideal.gens else []
    x = xs[0] if len(xs) == 1 else "(" + ", ".join(xs) + ")"
    cond = " and ".join(weqs) if weqs else "true"
    text = (f"exists {x} with " + " and ".join(veqs) if veqs else f"exists {x}") + f": {cond}"
    return {
        "schema": "gtcf.axiom-instance/1",
        "group": M.name or M.kind,
        "V": veqs,
        "W": weqs,
        "sentence": text,
        "caveat": CAVEAT,
    }
