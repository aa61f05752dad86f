"""G-pair checks, prolongation, towers and kernel extraction.

Everything is phrased on block labels.  For a base X whose blocks carry the
labels S, an ambient indexed by rho carries the labels rho*S, and the part
indexed by a sub-sequence A of rho is the projection onto A*S.  The same code
therefore checks (V, W) and the shifted pair (W, W').
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra.ideal import Ideal
from .algebra.poly import PolyRing
from .errors import CheckFailed, ValidationError
from .group_core import MarkedGroup, Word, diagonal_classes, parse_word
from .variety import (
    Block,
    BlockVariety,
    GField,
    align,
    contained_ideal,
    make_blocks,
    project_closure,
    same_variety,
    twist,
)

CAVEAT = "irreducibility assumed, not verified"

SUPPORTED_KINDS = ("free", "finite", "tree-amalgam", "hnn", "graph-of-groups", "product")


# ---------------------------------------------------------------- reports


@dataclass
class SubCheck:
    name: str
    passed: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        d = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class GPairReport:
    kind: str
    checks: List[SubCheck] = field(default_factory=list)
    caveat: str = CAVEAT
    lemma: Optional[Dict[int, bool]] = None

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.verdict

    def failing(self) -> List[SubCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        d = {
            "schema": "gtcf.pair-report/1",
            "verdict": self.verdict,
            "kind": self.kind,
            "caveat": self.caveat,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.lemma is not None:
            d["lemma_conditions"] = {str(k): v for k, v in sorted(self.lemma.items())}
        return d


def _gens(V: BlockVariety) -> List[str]:
    return [str(p) for p in V.ideal.groebner()]


def _mismatch(expected: BlockVariety, found: BlockVariety) -> dict:
    """Both ideals written in the expected variety's variables."""
    I = align(found, expected)
    return {
        "blocks": {str(b.label): list(b.vars) for b in expected.blocks},
        "expected": _gens(expected),
        "found": [str(p) for p in I.groebner()] if I is not None else _gens(found),
    }


# ---------------------------------------------------------------- label bookkeeping


def label_keys(M: MarkedGroup, words: Sequence[Word], X: BlockVariety) -> List[object]:
    """Keys of words*S in first-occurrence order, S the labels of X."""
    out, seen = [], set()
    for a in words:
        for b in X.blocks:
            k = M.key(a * b.label)
            if k not in seen:
                seen.add(k)
                out.append(k)
    return out


def part(Y: BlockVariety, X: BlockVariety, words: Sequence[Word]) -> BlockVariety:
    """Projection of Y onto the labels words*S."""
    return project_closure(Y, label_keys(Y.group, words, X))


def _check_ambient(X: BlockVariety, Y: BlockVariety, M: MarkedGroup):
    want = set(label_keys(M, M.rho, X))
    if set(Y.keys()) != want:
        raise ValidationError("W's blocks do not match rho applied to V's blocks", kind="block-mismatch")
    for b in Y.blocks:
        if len(b.vars) != X.width:
            raise ValidationError("block widths of W and V differ", kind="block-mismatch")


def _dominance(X, Y, g: Word, tag="dominant") -> SubCheck:
    proj = part(Y, X, [g])
    tw = twist(X, g)
    ok = same_variety(proj, tw)
    return SubCheck(f"{tag}[{g}]", ok, None if ok else _mismatch(tw, proj))


def _iterative(Y: BlockVariety, g: Word, tag="iterative") -> SubCheck:
    tw = twist(Y, g)
    ok = same_variety(tw, Y)
    return SubCheck(f"{tag}[{g}]", ok, None if ok else _mismatch(Y, tw))


def finite_pair_checks(X: BlockVariety, Y: BlockVariety, elements: Sequence[Word], tag: str = "") -> List[SubCheck]:
    """G0-pair conditions for a finite group with the given elements acting on Y's labels."""
    pre = f"{tag}:" if tag else ""
    out = [_dominance(X, Y, g, pre + "dominant") for g in elements]
    out += [_iterative(Y, g, pre + "iterative") for g in elements if g.letters]
    return out


def free_pair_checks(X, Y, letters: Sequence[Word], tag: str = "") -> List[SubCheck]:
    pre = f"{tag}:" if tag else ""
    return [_dominance(X, Y, s, pre + "dominant") for s in letters]


# ---------------------------------------------------------------- the dispatcher


def check_g_pair(V: BlockVariety, W: BlockVariety, M: Optional[MarkedGroup] = None,
                 debug: bool = False) -> GPairReport:
    M = M or W.group
    if M.kind not in SUPPORTED_KINDS:
        raise ValidationError(f"no pair definition for kind {M.kind!r}", kind="unsupported-kind")
    _check_ambient(V, W, M)
    rho = M.rho
    st = M.structure
    kind = M.kind
    if kind == "product":
        kind = st.get("subkind", "product")
    rep = GPairReport(kind)
    if M.kind == "free":
        rep.checks = free_pair_checks(V, W, rho)
    elif M.kind == "finite":
        rep.checks = finite_pair_checks(V, W, rho)
        if debug:
            rep.lemma = lemma_conditions(V, W, M)
    elif M.kind in ("tree-amalgam", "hnn", "graph-of-groups"):
        rep.checks = _graph_checks(V, W, M)
    elif kind == "free-times-finite":
        rep.checks = _free_times_finite_checks(V, W, M)
    elif kind == "dinfinity":
        rep.checks = _dinfinity_checks(V, W, M)
    else:
        raise ValidationError(f"no pair definition for product subkind {kind!r}", kind="unsupported-kind")
    return rep


def _graph_checks(X, Y, M) -> List[SubCheck]:
    st = M.structure
    rho = M.rho
    names = st["vertex_names"]
    checks: List[SubCheck] = []
    vertex_words = [[rho[i] for i in blk] for blk in st["vertex_blocks"]]
    # stable letters: twisting the vertex part gives the translated vertex part
    for sb in st["stable_blocks"]:
        t = Word.of(sb["letter"])
        for name, words in zip(names, vertex_words):
            Wi = part(Y, X, words)
            Wei = part(Y, X, [t * w for w in words])
            tw = twist(Wi, t)
            ok = same_variety(tw, Wei)
            checks.append(SubCheck(f"stable[{t},{name}]", ok, None if ok else _mismatch(tw, Wei)))
    # tree part: each vertex projection is a pair for its vertex group
    for name, words in zip(names, vertex_words):
        Wi = part(Y, X, words)
        checks += finite_pair_checks(X, Wi, words, tag=f"vertex {name}")
    # implied by the above, kept for diagnostics
    for r in rho:
        c = _dominance(X, Y, r, "implied-dominant")
        checks.append(c)
    return checks


def _free_times_finite_checks(X, Y, M) -> List[SubCheck]:
    st = M.structure
    rho = M.rho
    g_bar = [rho[i] for i in st["g_bar"]]
    s_bar = [rho[i] for i in st["sigma_bar"]]
    checks = [_dominance(X, Y, Word(), "dominant")]
    Wg = part(Y, X, g_bar)
    checks += free_pair_checks(Wg, Y, s_bar, tag="free part")
    Ws = part(Y, X, s_bar)
    checks += finite_pair_checks(Ws, Y, g_bar, tag="finite part")
    return checks


def _dinfinity_checks(X, Y, M) -> List[SubCheck]:
    st = M.structure
    rho = M.rho
    r_sigma = [rho[i] for i in st["rho_sigma"]]
    r_tau = [rho[i] for i in st["rho_tau"]]
    checks = [_dominance(X, Y, Word(), "dominant")]
    # (W_sigma, tw(W)) is a C2-pair; tw only reorders blocks, labels are unchanged
    Ws = part(Y, X, r_sigma)
    checks += finite_pair_checks(Ws, Y, r_tau, tag="C2 part")
    # (W_tau, W) is a (Z, rho_sigma)-pair
    Wt = part(Y, X, r_tau)
    checks += free_pair_checks(Wt, Y, r_sigma, tag="Z part")
    return checks


# ---------------------------------------------------------------- prolongation


def _ambient_from_labels(gfield: GField, words: Sequence[Word], width: int,
                         bases: Optional[Sequence[str]] = None) -> List[Block]:
    bases = list(bases or (["x"] if width == 1 else [f"x{j + 1}" for j in range(width)]))
    return make_blocks(gfield, words, bases)


def _place(T: BlockVariety, target: Dict[object, Block], ring: PolyRing):
    mapping = {}
    for b in T.blocks:
        mapping.update(zip(b.vars, target[b.key].vars))
    return [p.remap(mapping, ring) for p in T.ideal.gens]


def prolong(V: BlockVariety, W: BlockVariety, M: Optional[MarkedGroup] = None,
            mode: str = "class", bases: Optional[Sequence[str]] = None):
    """W' = ^rho W meet ^{rho.rho} V.

    ``mode="class"`` returns a BlockVariety on the distinct labels rho_i*L;
    ``mode="equations"`` returns a GridVariety with one block per (i, j) and
    explicit diagonal equations (first step only).
    """
    M = M or W.group
    _check_ambient(V, W, M)
    if mode == "equations":
        return _prolong_grid(V, W, M)
    if mode != "class":
        raise ValidationError(f"unknown prolongation mode {mode!r}", kind="invalid-params")
    words, seen = [], set()
    for r in M.rho:
        for b in W.blocks:
            w = M.normal_form(r * b.label)
            k = M.key(w)
            if k not in seen:
                seen.add(k)
                words.append(w)
    blocks = _ambient_from_labels(W.gfield, words, W.width, bases)
    ring = PolyRing([v for b in blocks for v in b.vars], W.ring.field)
    by_key = {b.key: b for b in blocks}
    gens = []
    for r in M.rho:
        gens += _place(twist(W, r), by_key, ring)
    done = set()
    for a in M.rho:
        for b in M.rho:
            g = a * b
            k = M.key(g)
            if k in done:
                continue
            done.add(k)
            gens += _place(twist(V, g), by_key, ring)
    return BlockVariety(W.gfield, blocks, Ideal(ring, gens))


@dataclass
class GridVariety:
    """Prolongation in the (i, j)-indexed ambient with explicit diagonal equations."""

    group: MarkedGroup
    ideal: Ideal
    vars_of: Dict[Tuple[int, int], Tuple[str, ...]]

    @property
    def m(self) -> int:
        return self.group.m

    def diagonal_polys(self, rel: Tuple[int, int, int, int]):
        i, j, k, l = rel
        ring = self.ideal.ring
        a, b = self.vars_of[(i, j)], self.vars_of[(k, l)]
        return [ring.var(x) - ring.var(y) for x, y in zip(a, b)]


def _prolong_grid(V, W, M) -> GridVariety:
    if len(V.blocks) != 1 or M.key(V.blocks[0].label) != M.key(Word()):
        raise ValidationError("equation mode needs a single base block at the identity", kind="block-mismatch")
    m = M.m
    width = V.width
    vars_of = {}
    names = []
    for i in range(m):
        for j in range(m):
            vs = tuple(f"x{i + 1}_{j + 1}" if width == 1 else f"x{i + 1}_{j + 1}_{t + 1}" for t in range(width))
            vars_of[(i, j)] = vs
            names += vs
    ring = PolyRing(names, W.ring.field)
    gens = []
    wkeys = [M.key(r) for r in M.rho]
    for i, r in enumerate(M.rho):
        T = twist(W, r)
        mapping = {}
        for b in W.blocks:
            j = wkeys.index(b.key)
            mapping.update(zip(b.vars, vars_of[(i, j)]))
        gens += [p.remap(mapping, ring) for p in T.ideal.gens]
        for j, s in enumerate(M.rho):
            Tv = twist(V, r * s)
            mp = dict(zip(V.blocks[0].vars, vars_of[(i, j)]))
            gens += [p.remap(mp, ring) for p in Tv.ideal.gens]
    grid = GridVariety(M, Ideal(ring, []), vars_of)
    for rel in diagonal_classes(M).relations:
        gens += grid.diagonal_polys(rel)
    grid.ideal = Ideal(ring, gens)
    return grid


def word_problem_diagonal_check(Wp, relation: Tuple[int, int, int, int], M: Optional[MarkedGroup] = None) -> bool:
    """True iff the diagonal x_(i,j) = x_(k,l) holds on W' (0-based indices)."""
    i, j, k, l = relation
    if isinstance(Wp, GridVariety):
        if any(x not in range(Wp.m) for x in relation):
            raise ValidationError("relation index out of range", kind="block-mismatch")
        return all(Wp.ideal.contains(p) for p in Wp.diagonal_polys(relation))
    M = M or Wp.group
    if any(x not in range(M.m) for x in relation):
        raise ValidationError("relation index out of range", kind="block-mismatch")
    a = M.key(M.rho[i] * M.rho[j])
    b = M.key(M.rho[k] * M.rho[l])
    if not (Wp.has(a) and Wp.has(b)):
        raise ValidationError("W' has no block for this product", kind="block-mismatch")
    return a == b


def grid_to_classes(grid: GridVariety, bases: Optional[Sequence[str]] = None, gfield: Optional[GField] = None) -> BlockVariety:
    """Collapse the (i, j) grid onto diagonal classes; diagonals become identities."""
    M = grid.group
    dc = diagonal_classes(M)
    width = len(next(iter(grid.vars_of.values())))
    gf = gfield or GField.trivial(M, grid.ideal.ring.field)
    blocks = _ambient_from_labels(gf, dc.representatives, width, bases)
    ring = PolyRing([v for b in blocks for v in b.vars], grid.ideal.ring.field)
    mapping = {}
    for (i, j), vs in grid.vars_of.items():
        mapping.update(zip(vs, blocks[dc.class_of[(i, j)]].vars))
    return BlockVariety(gf, blocks, Ideal(ring, [p.remap(mapping, ring) for p in grid.ideal.gens]))


def lemma_conditions(V: BlockVariety, W: BlockVariety, M: Optional[MarkedGroup] = None) -> Dict[int, bool]:
    """The four equivalent iterativity conditions for a finite group."""
    M = M or W.group
    if M.kind != "finite":
        raise ValidationError("lemma conditions apply to finite groups", kind="unsupported-kind")
    non_id = [g for g in M.rho if g.letters]
    c1 = all(same_variety(twist(W, g), W) for g in non_id)
    c2 = all(contained_ideal(twist(W, g), W) for g in non_id)
    Wp = prolong(V, W, M)
    c3 = same_variety(Wp, W)
    c4 = all(same_variety(part(Wp, W, [g]), twist(W, g)) for g in M.rho)
    return {1: c1, 2: c2, 3: c3, 4: c4}


# ---------------------------------------------------------------- towers and kernels


def _hom_data(X: BlockVariety, Y: BlockVariety, M: MarkedGroup) -> List[dict]:
    out = []
    for i, r in enumerate(M.rho):
        images = {}
        for b in X.blocks:
            t = Y.block(M.key(r * b.label))
            images.update(zip(b.vars, t.vars))
        out.append({
            "index": i + 1,
            "generator": str(r),
            "images": images,
            "field_aut": X.gfield.aut(r).k,
        })
    return out


@dataclass
class KernelTower:
    stages: List[BlockVariety]
    hom_data: List[List[dict]]
    reports: List[GPairReport]

    def to_json(self) -> dict:
        return {
            "schema": "gtcf.tower/1",
            "caveat": CAVEAT,
            "stages": [s.to_json() for s in self.stages],
            "hom_data": self.hom_data,
            "reports": [r.to_json() for r in self.reports],
        }


def tower(V: BlockVariety, W: BlockVariety, M: Optional[MarkedGroup] = None, steps: int = 1) -> KernelTower:
    M = M or W.group
    if steps < 0:
        raise ValidationError("steps must be non-negative", kind="invalid-params")
    rep = check_g_pair(V, W, M)
    if not rep.verdict:
        raise CheckFailed("the input is not a G-pair", report=rep, kind="pair-check-failed")
    stages = [V, W]
    homs = [_hom_data(V, W, M)]
    reports = [rep]
    for _ in range(steps):
        X, Y = stages[-2], stages[-1]
        Z = prolong(X, Y, M)
        r = check_g_pair(Y, Z, M)
        if not r.verdict:
            raise CheckFailed(f"stage {len(stages)} failed its pair check", report=r, kind="stage-check-failed")
        stages.append(Z)
        homs.append(_hom_data(Y, Z, M))
        reports.append(r)
    return KernelTower(stages, homs, reports)


def kernel_from_pair(V: BlockVariety, W: BlockVariety, M: Optional[MarkedGroup] = None) -> List[dict]:
    """Generator maps rho'_i: coordinates of V go to the block rho_i of W."""
    M = M or W.group
    rep = check_g_pair(V, W, M)
    if not rep.verdict:
        raise CheckFailed("the input is not a G-pair", report=rep, kind="pair-check-failed")
    return _hom_data(V, W, M)


# ---------------------------------------------------------------- loci


@dataclass
class Presentation:
    """A finitely presented algebra K[vars]/I with some elements inverted."""

    ring: PolyRing
    relations: List
    inverted: List = field(default_factory=list)

    @classmethod
    def parse(cls, variables: Sequence[str], relations: Sequence = (), inverted: Sequence = (), field_=None):
        from .algebra.fields import QQ

        ring = PolyRing(variables, field_ or QQ)
        rel = [ring(r) if isinstance(r, str) else r for r in relations]
        inv = [ring(r) if isinstance(r, str) else r for r in inverted]
        return cls(ring, rel, inv)

    def full_ideal(self, extra_vars: Sequence[str] = ()) -> Tuple[PolyRing, List]:
        us = [f"__u{k}" for k in range(len(self.inverted))]
        ring = PolyRing(list(extra_vars) + us + list(self.ring.vars), self.ring.field)
        gens = [p.remap({}, ring) for p in self.relations]
        for u, d in zip(us, self.inverted):
            gens.append(ring.var(u) * d.remap({}, ring) - 1)
        return ring, gens

    def is_consistent(self) -> bool:
        ring, gens = self.full_ideal()
        return not Ideal(ring, gens).is_unit()

    def as_fraction(self, value):
        """value is a polynomial or a pair (numerator, denominator)."""
        if isinstance(value, tuple):
            num, den = value
        else:
            num, den = value, 1
        num = self.ring(num) if isinstance(num, str) else (num if hasattr(num, "ring") else self.ring.const(num))
        den = self.ring(den) if isinstance(den, str) else (den if hasattr(den, "ring") else self.ring.const(den))
        return num, den


def locus(P: Presentation, coords: Sequence, names: Sequence[str]) -> Ideal:
    """Kernel of K[names] -> K[vars]/I sending names[j] to coords[j] (fractions allowed)."""
    fr = [P.as_fraction(c) for c in coords]
    tmp = [f"__X{j}" for j in range(len(fr))]
    dens = []
    for _, d in fr:
        if not d.is_constant():
            dens.append(d)
    P2 = Presentation(P.ring, P.relations, list(P.inverted) + dens)
    ring, gens = P2.full_ideal(tmp)
    for t, (n, d) in zip(tmp, fr):
        gens.append(ring.var(t) * d.remap({}, ring) - n.remap({}, ring))
    I = Ideal(ring, gens)
    if I.is_unit():
        raise ValidationError("the presentation is inconsistent (1 lies in the ideal)", kind="inconsistent-presentation")
    drop = [v for v in ring.vars if v not in tmp]
    E = I.eliminate(drop)
    target = PolyRing(list(names), P.ring.field)
    return E.remap(dict(zip(tmp, names)), target)


def pair_from_kernel(gfield: GField, P: Presentation, point: Sequence, images: Mapping,
                     bases: Optional[Sequence[str]] = None) -> Tuple[BlockVariety, BlockVariety, GPairReport]:
    """V = locus of a, W = locus of (rho'_1(a), ..., rho'_m(a)).

    ``images`` maps a rho index (0-based) or label string to the coordinate tuple
    of rho'_i(a); the identity defaults to a itself.
    """
    M = gfield.group
    if not P.is_consistent():
        raise ValidationError("the presentation is inconsistent (1 lies in the ideal)", kind="inconsistent-presentation")
    n = len(point)
    bases = list(bases or (["x"] if n == 1 else [f"x{j + 1}" for j in range(n)]))
    by_index: Dict[int, Sequence] = {}
    for k, v in images.items():
        if isinstance(k, int):
            idx = k
        else:
            idx = M.index_of(parse_word(k))
            if idx is None:
                raise ValidationError(f"{k!r} is not in rho", kind="unknown-label")
        if len(v) != n:
            raise ValidationError("image tuples must match the point's length", kind="width-mismatch")
        by_index[idx] = v
    coords = []
    for i, r in enumerate(M.rho):
        if i in by_index:
            coords.append(by_index[i])
        elif not r.letters or M.key(r) == M.key(Word()):
            coords.append(point)
        else:
            raise ValidationError(f"no image given for {r}", kind="block-mismatch")
    vb = make_blocks(gfield, [Word()], bases)
    V = BlockVariety(gfield, vb, locus(P, point, vb[0].vars))
    wb = make_blocks(gfield, M.rho, bases)
    flat = [c for tup in coords for c in tup]
    W = BlockVariety(gfield, wb, locus(P, flat, [v for b in wb for v in b.vars]))
    return V, W, check_g_pair(V, W, M)


def pair_from_hom_data(V: BlockVariety, W: BlockVariety, hom: List[dict]):
    """Rebuild (V, W) from kernel data: the point is V's coordinates inside K[W]."""
    M = W.group
    P = Presentation(W.ring, list(W.ideal.gens))
    first = hom[M.identity_index]["images"]
    point = [W.ring.var(first[v]) for v in V.blocks[0].vars]
    images = {}
    for h in hom:
        images[h["index"] - 1] = [W.ring.var(h["images"][v]) for v in V.blocks[0].vars]
    bases = [v.split("_")[0] for v in V.blocks[0].vars]
    if len(set(bases)) != len(bases):
        bases = None
    return pair_from_kernel(V.gfield, P, point, images, bases)


# ---------------------------------------------------------------- Moebius solutions


def mobius_compose(f, g):
    """Matrix of f o g for x -> (a x + b)/(c x + d)."""
    a, b, c, d = f
    p, q, r, s = g
    return (a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)


def mobius_inverse(f):
    a, b, c, d = f
    return (d, -b, -c, a)


def mobius_of_word(maps: Mapping[str, tuple], w: Word):
    """The substitution x -> w(x) for an action by field automorphisms.

    Automorphisms compose as substitutions in reverse order:
    (u v)(x) = m_v(m_u(x)).
    """
    out = (1, 0, 0, 1)
    for name, e in w.letters:
        m = maps[name]
        if e < 0:
            m = mobius_inverse(m)
        out = mobius_compose(m, out)
    return out


def mobius_pair(gfield: GField, maps: Mapping[str, tuple], base: str = "x",
                var: str = "s") -> Tuple[BlockVariety, BlockVariety, GPairReport]:
    """The pair (A^1, locus of rho(s)) for an action on Q(s) by Moebius maps."""
    M = gfield.group
    P = Presentation.parse([var], field_=gfield.field)
    s = P.ring.var(var)
    images = {}
    for i, r in enumerate(M.rho):
        a, b, c, d = mobius_of_word(maps, r)
        images[i] = [(s.scale(Fraction(a)) + Fraction(b), s.scale(Fraction(c)) + Fraction(d))]
    return pair_from_kernel(gfield, P, [s], images, [base])


def full_space_pair(gfield: GField, width: int = 1) -> Tuple[BlockVariety, BlockVariety]:
    from .variety import affine_space

    bases = ["x"] if width == 1 else [f"x{j + 1}" for j in range(width)]
    return affine_space(gfield, [Word()], bases), affine_space(gfield, gfield.group.rho, bases)
