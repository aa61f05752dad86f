"""Graphs of finite groups and the word problem of their fundamental groups.

Words in the fundamental group pi_1(Y, T) use vertex-group element labels
and one stable letter per edge outside the maximal tree.  Equality is
decided through the fundamental groupoid: a word is rewritten as a loop at
the base vertex (conjugating vertex letters by tree paths) and brought to
the reduced form

    g0 f1 c1 f2 c2 ... fk ck

where each fi is a directed edge, ci is the lowest-index representative of
its right coset of the edge-group image in the terminal vertex group, and
no ci = 1 is followed by the reverse of fi.  Reduced forms are unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import UnknownLetterError, ValidationError
from .group_core import (
    FiniteGroup,
    MarkedGroup,
    Word,
    WordOracle,
    cyclic_group,
    group_from_spec,
    parse_word,
)


@dataclass(frozen=True)
class Vertex:
    name: str
    group: FiniteGroup


@dataclass(frozen=True)
class Edge:
    name: str
    src: int
    dst: int
    group: FiniteGroup
    inj_src: Tuple[int, ...]
    inj_dst: Tuple[int, ...]
    in_tree: bool
    letter: Optional[str] = None


@dataclass
class GraphOfGroups:
    vertices: List[Vertex]
    edges: List[Edge]
    base: int = 0
    _oracle: Optional["GraphOracle"] = field(default=None, repr=False)

    @property
    def tree_edges(self) -> List[int]:
        return [i for i, e in enumerate(self.edges) if e.in_tree]

    @property
    def nontree_edges(self) -> List[int]:
        return [i for i, e in enumerate(self.edges) if not e.in_tree]

    @property
    def oracle(self) -> "GraphOracle":
        if self._oracle is None:
            self._oracle = GraphOracle(self)
        return self._oracle

    def to_json(self) -> dict:
        return {
            "vertices": [{"name": v.name, "group": v.group.to_json()} for v in self.vertices],
            "edges": [
                {
                    "name": e.name,
                    "from": e.src + 1,
                    "to": e.dst + 1,
                    "edge_group": e.group.to_json(),
                    "inj_from": [self.vertices[e.src].group.elements[x] for x in e.inj_src],
                    "inj_to": [self.vertices[e.dst].group.elements[x] for x in e.inj_dst],
                    "in_tree": e.in_tree,
                    **({"letter": e.letter} if e.letter else {}),
                }
                for e in self.edges
            ],
        }


def _check_mono(edge_group: FiniteGroup, target: FiniteGroup, inj: Sequence[int], what: str):
    if len(inj) != edge_group.order:
        raise ValidationError(f"{what}: injection lists {len(inj)} images for {edge_group.order} elements",
                              kind="not-a-monomorphism")
    if len(set(inj)) != len(inj):
        raise ValidationError(f"{what}: injection is not one-to-one", kind="not-a-monomorphism")
    for a in range(edge_group.order):
        for b in range(edge_group.order):
            if inj[edge_group.mul(a, b)] != target.mul(inj[a], inj[b]):
                raise ValidationError(
                    f"{what}: not a homomorphism at ({edge_group.elements[a]}, {edge_group.elements[b]})",
                    kind="not-a-monomorphism",
                )


def _resolve_vertex(ref, names: List[str]) -> int:
    if isinstance(ref, int):
        if not 1 <= ref <= len(names):
            raise ValidationError(f"vertex {ref} out of range", kind="invalid-spec")
        return ref - 1
    if ref in names:
        return names.index(ref)
    raise ValidationError(f"unknown vertex {ref!r}", kind="invalid-spec")


def _resolve_elements(refs, group: FiniteGroup) -> Tuple[int, ...]:
    out = []
    for r in refs:
        if isinstance(r, int):
            if not 1 <= r <= group.order:
                raise ValidationError(f"element index {r} out of range", kind="not-a-monomorphism")
            out.append(r - 1)
        else:
            out.append(group.index(str(r)))
    return tuple(out)


def build_graph_of_groups(spec) -> GraphOfGroups:
    """Validate a JSON-style spec (vertex refs and element indices are 1-based)."""
    if isinstance(spec, GraphOfGroups):
        return spec
    vspecs = spec.get("vertices")
    if not vspecs:
        raise ValidationError("graph of groups needs at least one vertex", kind="invalid-spec")
    vertices = []
    for k, vs in enumerate(vspecs):
        name = str(vs.get("name", k + 1))
        vertices.append(Vertex(name, group_from_spec(vs["group"] if "group" in vs else vs)))
    names = [v.name for v in vertices]
    espec = spec.get("edges", [])
    any_tree_flag = any("in_tree" in e for e in espec)
    edges = []
    for k, es in enumerate(espec):
        s = _resolve_vertex(es["from"], names)
        d = _resolve_vertex(es["to"], names)
        eg_spec = es.get("edge_group", {"elements": ["1"], "table": [[1]]})
        eg = group_from_spec(eg_spec)
        ename = str(es.get("name", f"e{k + 1}"))
        inj_s = _resolve_elements(es.get("inj_from", [1]), vertices[s].group)
        inj_d = _resolve_elements(es.get("inj_to", [1]), vertices[d].group)
        _check_mono(eg, vertices[s].group, inj_s, f"edge {ename} (from side)")
        _check_mono(eg, vertices[d].group, inj_d, f"edge {ename} (to side)")
        edges.append([ename, s, d, eg, inj_s, inj_d, bool(es.get("in_tree", False)), es.get("letter")])

    n = len(vertices)
    # connectivity
    adj = {i: set() for i in range(n)}
    for e in edges:
        adj[e[1]].add(e[2])
        adj[e[2]].add(e[1])
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != n:
        raise ValidationError("graph is not connected", kind="disconnected")

    if not any_tree_flag:
        # choose a spanning tree greedily in edge order
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in edges:
            ra, rb = find(e[1]), find(e[2])
            if ra != rb:
                parent[ra] = rb
                e[6] = True
    tree = [e for e in edges if e[6]]
    if len(tree) != n - 1:
        raise ValidationError(f"maximal tree must have {n - 1} edges, got {len(tree)}", kind="tree-invalid")
    parent = list(range(n))

    def find2(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in tree:
        ra, rb = find2(e[1]), find2(e[2])
        if ra == rb:
            raise ValidationError("tree edges contain a cycle", kind="tree-invalid")
        parent[ra] = rb

    # stable letters
    nontree = [e for e in edges if not e[6]]
    for k, e in enumerate(nontree):
        if not e[7]:
            e[7] = "t" if len(nontree) == 1 else f"t{k + 1}"
    Y = GraphOfGroups(vertices, [Edge(*e) for e in edges])
    Y.oracle  # validates letters
    return Y



class GraphOracle(WordOracle):
    """Normal forms in pi_1(Y, T) via the fundamental groupoid."""

    certificate = "amalgam-normal-form"

    def __init__(self, Y: GraphOfGroups):
        self.Y = Y
        self.letters: Dict[str, Tuple] = {}
        identity_names = set()
        for vi, v in enumerate(Y.vertices):
            identity_names.add(v.group.elements[0])
            for ei, label in enumerate(v.group.elements[1:], start=1):
                if label in self.letters:
                    raise ValidationError(f"element label {label!r} used in two vertex groups",
                                          kind="duplicate-label")
                self.letters[label] = ("v", vi, ei)
        self.identity_names = identity_names
        for k, e in enumerate(Y.edges):
            if e.in_tree:
                continue
            if e.letter in self.letters or e.letter in identity_names:
                raise ValidationError(f"stable letter {e.letter!r} clashes with an element label",
                                      kind="duplicate-label")
            self.letters[e.letter] = ("t", k)
        self.alphabet = frozenset(self.letters) | frozenset(identity_names)
        if Y.nontree_edges:
            self.certificate = "britton-reduced"
        self._tree_paths()
        self._coset_tables()

    # directed edge f = (edge index, +1 | -1)
    def _ends(self, f):
        e = self.Y.edges[f[0]]
        return (e.src, e.dst) if f[1] > 0 else (e.dst, e.src)

    def _maps(self, f):
        """(iota_f, tau_f): injections into the initial and terminal vertex groups of f."""
        e = self.Y.edges[f[0]]
        return (e.inj_src, e.inj_dst) if f[1] > 0 else (e.inj_dst, e.inj_src)

    def _tree_paths(self):
        Y = self.Y
        paths = {Y.base: ()}
        order = [Y.base]
        # depth-first from the base vertex, edges in spec order
        stack = [Y.base]
        while stack:
            v = stack.pop()
            for k in Y.tree_edges:
                e = Y.edges[k]
                for f, nxt in (((k, 1), e.dst), ((k, -1), e.src)):
                    start, end = self._ends(f)
                    if start == v and end not in paths:
                        paths[end] = paths[v] + (f,)
                        order.append(end)
                        stack.append(end)
        self.paths = paths

    def _coset_tables(self):
        self.decomp = {}
        self.pinch_target = {}
        for k, e in enumerate(self.Y.edges):
            for sgn in (1, -1):
                f = (k, sgn)
                _, end = self._ends(f)
                _, tau = self._maps(f)
                G = self.Y.vertices[end].group
                inv_tau = {img: a for a, img in enumerate(tau)}
                table = []
                for g in range(G.order):
                    coset = [G.mul(img, g) for img in tau]
                    c = min(coset)
                    a = inv_tau[G.mul(g, G.inv(c))]
                    table.append((a, c))
                self.decomp[f] = tuple(table)

    def _groupoid_word(self, w: Word) -> List[Tuple]:
        out: List[Tuple] = []
        for name, ex in w.letters:
            info = self.letters.get(name)
            if info is None:
                if name in self.identity_names:
                    continue
                raise UnknownLetterError(f"unknown letter {name!r}", letter=name)
            if info[0] == "v":
                _, v, el = info
                G = self.Y.vertices[v].group
                el = el if ex > 0 else G.inv(el)
                p = self.paths[v]
                out.extend(("f", f) for f in p)
                out.append(("g", v, el))
                out.extend(("f", (f[0], -f[1])) for f in reversed(p))
            else:
                k = info[1]
                e = self.Y.edges[k]
                f = (k, 1) if ex > 0 else (k, -1)
                start, end = self._ends(f)
                out.extend(("f", x) for x in self.paths[start])
                out.append(("f", f))
                out.extend(("f", (x[0], -x[1])) for x in reversed(self.paths[end]))
        return out

    def reduce(self, w: Word) -> Tuple[int, Tuple[Tuple[Tuple[int, int], int], ...]]:
        """Reduced groupoid form (g0, ((f1, c1), ...)) of the loop represented by w."""
        letters = self._groupoid_word(w)
        g0 = 0
        vertex = self.Y.base
        tail: List[Tuple[Tuple[int, int], int]] = []  # stored reversed: tail[-1] is f1
        for item in reversed(letters):
            if item[0] == "g":
                _, v, el = item
                assert v == vertex
                g0 = self.Y.vertices[v].group.mul(el, g0)
                continue
            f = item[1]
            start, end = self._ends(f)
            assert end == vertex
            a, c = self.decomp[f][g0]
            iota, _ = self._maps(f)
            G_start = self.Y.vertices[start].group
            if c == 0 and tail and tail[-1][0] == (f[0], -f[1]):
                _, c1 = tail.pop()
                g0 = G_start.mul(iota[a], c1)
            else:
                tail.append((f, c))
                g0 = iota[a]
            vertex = start
        assert vertex == self.Y.base
        return g0, tuple(reversed(tail))

    def key(self, w: Word):
        return self.reduce(w)

    def _to_word(self, red) -> Word:
        g0, tail = red
        out: List[Tuple[str, int]] = []
        vertex = self.Y.base
        if g0:
            out.append((self.Y.vertices[vertex].group.elements[g0], 1))
        for f, c in tail:
            e = self.Y.edges[f[0]]
            if not e.in_tree:
                out.append((e.letter, f[1]))
            _, vertex = self._ends(f)
            if c:
                out.append((self.Y.vertices[vertex].group.elements[c], 1))
        return Word(tuple(out))

    def normal_form(self, w: Word) -> Word:
        return self._to_word(self.reduce(w))

    def reduction_length(self, w: Word) -> int:
        return len(self.reduce(w)[1])


class DihedralOracle(WordOracle):
    """Infinite dihedral group on letters sigma (translation) and tau (reflection).

    Elements are pairs (k, e) standing for sigma^k tau^e, using tau sigma = sigma^-1 tau.
    """

    certificate = "dihedral-normal-form"

    def __init__(self, sigma: str = "sigma", tau: str = "tau"):
        self.sigma = sigma
        self.tau = tau
        self.alphabet = frozenset({sigma, tau, "1"})

    def evaluate(self, w: Word) -> Tuple[int, int]:
        k, e = 0, 0
        for name, ex in w.letters:
            if name == self.sigma:
                dk, de = ex, 0
            elif name == self.tau:
                dk, de = 0, 1
            elif name == "1":
                continue
            else:
                raise UnknownLetterError(f"unknown letter {name!r}", letter=name)
            k = k + (dk if e == 0 else -dk)
            e = (e + de) % 2
        return k, e

    def key(self, w: Word):
        return self.evaluate(w)

    def normal_form(self, w: Word) -> Word:
        k, e = self.evaluate(w)
        letters = [(self.sigma, 1 if k > 0 else -1)] * abs(k)
        if e:
            letters.append((self.tau, 1))
        return Word(tuple(letters))


class SubstitutionOracle(WordOracle):
    """Oracle for letters defined as words over another oracle's alphabet."""

    def __init__(self, base: WordOracle, mapping: Dict[str, Word]):
        self.base = base
        self.mapping = dict(mapping)
        self.alphabet = frozenset(self.mapping) | {"1"}
        self.certificate = getattr(base, "certificate", "substitution")

    def expand(self, w: Word) -> Word:
        out: List[Tuple[str, int]] = []
        for name, ex in w.letters:
            if name == "1":
                continue
            img = self.mapping.get(name)
            if img is None:
                raise UnknownLetterError(f"unknown letter {name!r}", letter=name)
            out.extend((img if ex > 0 else img.inverse()).letters)
        return Word(tuple(out))

    def key(self, w: Word):
        return self.base.key(self.expand(w))

    def normal_form(self, w: Word) -> Word:
        # canonical representative: the base normal form, kept in base letters
        return self.base.normal_form(self.expand(w))


# ---------------------------------------------------------------- marked groups from graphs


def _elem_word(label: str, identity_names) -> Word:
    return Word() if label in identity_names else Word.of(label)


def fundamental_marked_group(Y: GraphOfGroups, name: str = "") -> MarkedGroup:
    """rho = rho_T followed by blocks t_e * rho_T for the edges outside the tree."""
    Y = build_graph_of_groups(Y) if not isinstance(Y, GraphOfGroups) else Y
    oracle = Y.oracle
    rho: List[Word] = []
    keys: Dict[object, int] = {}
    vertex_blocks: List[List[int]] = []
    identifications: Dict[str, str] = {}
    for vi, v in enumerate(Y.vertices):
        block = []
        for label in v.group.elements:
            w = _elem_word(label, oracle.identity_names)
            k = oracle.key(w)
            if k in keys:
                if label not in oracle.identity_names or vi > 0:
                    identifications[f"{v.name}:{label}"] = str(rho[keys[k]])
                block.append(keys[k])
            else:
                keys[k] = len(rho)
                block.append(len(rho))
                rho.append(w)
        vertex_blocks.append(block)
    rho_T = list(range(len(rho)))
    stable_blocks = []
    for k in Y.nontree_edges:
        e = Y.edges[k]
        t = Word.of(e.letter)
        block = []
        for i in rho_T:
            block.append(len(rho))
            rho.append(t * rho[i])
        stable_blocks.append({"letter": e.letter, "edge": k, "indices": block})
    nv = len(Y.vertices)
    ne = len(stable_blocks)
    if ne == 0:
        kind = "finite" if nv == 1 else "tree-amalgam"
    elif all(v.group.order == 1 for v in Y.vertices) and nv == 1:
        kind = "free"
    elif nv == 1 and ne == 1:
        kind = "hnn"
    else:
        kind = "graph-of-groups"
    structure = {
        "rho_T": rho_T,
        "vertex_blocks": vertex_blocks,
        "vertex_groups": [v.group for v in Y.vertices],
        "vertex_names": [v.name for v in Y.vertices],
        "stable_blocks": stable_blocks,
        "identifications": identifications,
        "graph": Y,
    }
    return MarkedGroup(tuple(rho), oracle, kind, name=name, structure=structure)


def normal_form(Y, w) -> Word:
    oracle = Y.oracle if isinstance(Y, GraphOfGroups) else (Y.oracle if isinstance(Y, MarkedGroup) else Y)
    return oracle.normal_form(parse_word(w))


def words_equal(Y, w1, w2) -> bool:
    oracle = Y.oracle if isinstance(Y, (GraphOfGroups, MarkedGroup)) else Y
    return oracle.words_equal(parse_word(w1), parse_word(w2))


# ---------------------------------------------------------------- standard constructions


def trivial_group(label: str = "1") -> FiniteGroup:
    return cyclic_group(1, [label], name="1")


def free_letters(n: int) -> List[str]:
    return ["sigma"] if n == 1 else [f"sigma{k}" for k in range(1, n + 1)]


def free_marked_group(n: int, letters: Optional[Sequence[str]] = None) -> MarkedGroup:
    """F_n marked (1, sigma_1, ..., sigma_n): one vertex {1} with n loops."""
    letters = list(letters or free_letters(n))
    if len(letters) != n:
        raise ValidationError("need one letter per free generator", kind="invalid-spec")
    spec = {
        "vertices": [{"name": "v", "group": trivial_group().to_json()}],
        "edges": [
            {"from": 1, "to": 1, "in_tree": False, "letter": s, "name": s} for s in letters
        ],
    }
    if n == 0:
        spec["edges"] = []
    M = fundamental_marked_group(build_graph_of_groups(spec), name="Z" if n == 1 else f"F{n}")
    return M


def finite_marked_group(G: FiniteGroup, name: str = "") -> MarkedGroup:
    spec = {"vertices": [{"name": "v", "group": G.to_json()}], "edges": []}
    return fundamental_marked_group(build_graph_of_groups(spec), name=name or G.name)


def amalgam_spec(B: FiniteGroup, C: FiniteGroup, A: Optional[FiniteGroup] = None,
                 inj_b=None, inj_c=None) -> dict:
    A = A or trivial_group()
    return {
        "vertices": [{"name": "B", "group": B.to_json()}, {"name": "C", "group": C.to_json()}],
        "edges": [
            {
                "from": 1, "to": 2, "in_tree": True, "edge_group": A.to_json(),
                "inj_from": list(inj_b or [B.elements[0]]), "inj_to": list(inj_c or [C.elements[0]]),
            }
        ],
    }


def hnn_spec(G0: FiniteGroup, A: FiniteGroup, inj_from, inj_to, letter: str = "t") -> dict:
    return {
        "vertices": [{"name": "G0", "group": G0.to_json()}],
        "edges": [
            {"from": 1, "to": 1, "in_tree": False, "edge_group": A.to_json(),
             "inj_from": list(inj_from), "inj_to": list(inj_to), "letter": letter, "name": "e"}
        ],
    }


def c2_free_c2() -> MarkedGroup:
    B = cyclic_group(2, ["1", "sigma"])
    C = cyclic_group(2, ["1", "tau"])
    return fundamental_marked_group(build_graph_of_groups(amalgam_spec(B, C)), name="C2*C2")


def klein_hnn() -> MarkedGroup:
    """(C2 x C2) *_alpha with alpha: sigma -> tau, so sigma t = t tau."""
    from .group_core import klein_group

    G0 = klein_group()
    A = cyclic_group(2, ["1", "a"])
    spec = hnn_spec(G0, A, ["1", "sigma"], ["1", "tau"])
    return fundamental_marked_group(build_graph_of_groups(spec), name="(C2xC2)*alpha")


def c4_c4_hnn() -> MarkedGroup:
    """(C4 * C4) *_alpha_e with beta t = t beta'."""
    G1 = cyclic_group(4, ["1", "alpha", "beta", "gamma"])
    G2 = cyclic_group(4, ["1", "alpha'", "beta'", "gamma'"])
    C2 = cyclic_group(2, ["1", "b"])
    spec = {
        "vertices": [{"name": "1", "group": G1.to_json()}, {"name": "2", "group": G2.to_json()}],
        "edges": [
            {"name": "e1", "from": 1, "to": 2, "in_tree": True},
            {"name": "e", "from": 1, "to": 2, "in_tree": False, "edge_group": C2.to_json(),
             "inj_from": ["1", "beta"], "inj_to": ["1", "beta'"], "letter": "t"},
        ],
    }
    return fundamental_marked_group(build_graph_of_groups(spec), name="(C4*C4)*alpha")


def free_times_finite(n: int, G0: FiniteGroup, letters: Optional[Sequence[str]] = None) -> MarkedGroup:
    """F_n x G0 marked by the Kronecker sequence (sigma_j * g_i), g blocks outermost."""
    letters = list(letters or free_letters(n))
    e_ids = [G0.elements[x] for x in range(G0.order)]
    spec = {
        "vertices": [{"name": "G0", "group": G0.to_json()}],
        "edges": [
            {"from": 1, "to": 1, "in_tree": False, "edge_group": G0.to_json(),
             "inj_from": e_ids, "inj_to": e_ids, "letter": s, "name": s}
            for s in letters
        ],
    }
    Y = build_graph_of_groups(spec)
    oracle = Y.oracle
    idn = oracle.identity_names
    sig = [Word()] + [Word.of(s) for s in letters]
    rho = []
    g_bar = []
    sigma_bar = []
    for i, label in enumerate(G0.elements):
        g = _elem_word(label, idn)
        for j, s in enumerate(sig):
            if j == 0:
                g_bar.append(len(rho))
            if i == 0:
                sigma_bar.append(len(rho))
            rho.append(s * g)
    structure = {
        "subkind": "free-times-finite",
        "n": n,
        "finite_group": G0,
        "letters": letters,
        "g_bar": g_bar,
        "sigma_bar": sigma_bar,
        "graph": Y,
    }
    return MarkedGroup(tuple(rho), oracle, "product", name=f"F{n}x{G0.name or 'G0'}", structure=structure)


def dinfinity() -> MarkedGroup:
    """D_inf = Z x| C2 marked (sigma^-1, 1, sigma, sigma^-1 tau, tau, sigma tau)."""
    oracle = DihedralOracle()
    rho = [parse_word(s) for s in ("sigma^-1", "1", "sigma", "sigma^-1*tau", "tau", "sigma*tau")]
    structure = {
        "subkind": "dinfinity",
        "rho_sigma": [0, 1, 2],
        "rho_tau": [1, 4],
        "twist_swap": (3, 5),
    }
    return MarkedGroup(tuple(rho), oracle, "product", name="Dinf", structure=structure, identity_index=1)


def dinfinity_via_free_product() -> SubstitutionOracle:
    """D_inf inside C2 * C2 = <a> * <tau> with sigma = a*tau."""
    A = cyclic_group(2, ["1", "a"])
    T = cyclic_group(2, ["1", "tau"])
    Y = build_graph_of_groups(amalgam_spec(A, T))
    return SubstitutionOracle(Y.oracle, {"sigma": parse_word("a*tau"), "tau": parse_word("tau")})


def marked_group_from_spec(spec) -> MarkedGroup:
    """JSON marked-group spec: ``{"construction": ..., ...}`` or a raw graph of groups."""
    if isinstance(spec, MarkedGroup):
        return spec
    c = spec.get("construction")
    if c is None and "vertices" in spec:
        c = "graph"
    if c == "free":
        M = free_marked_group(int(spec.get("n", 1)), spec.get("letters"))
    elif c == "finite":
        M = finite_marked_group(group_from_spec(spec["group"]))
    elif c == "graph":
        M = fundamental_marked_group(build_graph_of_groups(spec.get("graph", spec)), name=spec.get("name", ""))
    elif c == "free-times-finite":
        M = free_times_finite(int(spec.get("n", 1)), group_from_spec(spec["group"]), spec.get("letters"))
    elif c == "dinfinity":
        M = dinfinity()
    elif c == "c2*c2":
        M = c2_free_c2()
    elif c == "klein-hnn":
        M = klein_hnn()
    elif c == "c4*c4-hnn":
        M = c4_c4_hnn()
    else:
        raise ValidationError(f"unknown construction {c!r}", kind="unsupported-kind")
    if spec.get("name"):
        M.name = spec["name"]
    if "rho" in spec:
        rho = tuple(parse_word(w) for w in spec["rho"])
        M = MarkedGroup(rho, M.oracle, M.kind, name=M.name, structure={}, identity_index=0)
        M.kind = "custom"
    return M
