"""Block varieties: ideals whose variables are grouped into blocks labelled by group elements.

A block label is a group element, compared through the marked group's word
oracle, so a twist ``^w V`` simply relabels every block ``L`` as ``w*L`` and
applies the field automorphism attached to ``w`` to all coefficients.  Two
block varieties are compared block-by-block through their labels.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra.fields import QQ, FieldAut, parse_field
from .algebra.ideal import Ideal, ideal_equal
from .algebra.poly import PolyRing
from .errors import ValidationError
from .group_core import MarkedGroup, Word, parse_word

# ---------------------------------------------------------------- G-fields


class GField:
    """A base field with an action of the marked group, given on letters."""

    def __init__(self, group: MarkedGroup, field=QQ, action: Optional[Mapping[str, int]] = None):
        self.group = group
        self.field = parse_field(field)
        self.action: Dict[str, FieldAut] = {}
        for letter, k in (action or {}).items():
            if letter not in group.alphabet:
                raise ValidationError(f"action given on unknown letter {letter!r}", kind="unknown-letter")
            self.action[letter] = k if isinstance(k, FieldAut) else FieldAut(self.field, int(k))
        self._cache: Dict[Tuple, FieldAut] = {}

    @classmethod
    def trivial(cls, group: MarkedGroup, field=QQ) -> "GField":
        return cls(group, field, {})

    def aut(self, w: Word) -> FieldAut:
        got = self._cache.get(w.letters)
        if got is not None:
            return got
        out = FieldAut.identity(self.field)
        for letter, ex in w.letters:
            a = self.action.get(letter)
            if a is None:
                continue
            out = out.compose(a if ex > 0 else a.inverse())
        self._cache[w.letters] = out
        return out

    def check_relations(self) -> Optional[str]:
        """None if the action is compatible with every relation in P, otherwise a witness."""
        from .group_core import diagonal_classes

        M = self.group
        dc = diagonal_classes(M)
        for i, j, k, l in dc.relations:
            lhs = self.aut(M.rho[i] * M.rho[j])
            rhs = self.aut(M.rho[k] * M.rho[l])
            if lhs != rhs:
                return f"rho{i + 1}*rho{j + 1} = rho{k + 1}*rho{l + 1} but the automorphisms differ"
        return None

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "action": {k: v.k for k, v in sorted(self.action.items())},
        }


# ---------------------------------------------------------------- block varieties


@dataclass(frozen=True)
class Block:
    key: object
    label: Word
    vars: Tuple[str, ...]


def label_code(w: Word) -> str:
    """ASCII identifier fragment for a label, e.g. sigma^-1*t -> 'sigmaI_t'."""
    if not w.letters:
        return "1"
    parts = []
    for n, e in w.letters:
        n = n.replace("'", "p")
        parts.append(n if e > 0 else n + "I")
    return "_".join(parts)


class BlockVariety:
    """An ideal over blocks of variables labelled by group elements."""

    def __init__(self, gfield: GField, blocks: Sequence[Block], ideal: Ideal):
        self.gfield = gfield
        self.blocks: Tuple[Block, ...] = tuple(blocks)
        self.ideal = ideal
        keys = [b.key for b in self.blocks]
        if len(set(keys)) != len(keys):
            raise ValidationError("block labels are not pairwise distinct", kind="label-collision")
        allvars = [v for b in self.blocks for v in b.vars]
        if tuple(allvars) != ideal.ring.vars:
            raise ValidationError("ideal ring does not match the block variables", kind="block-mismatch")
        self._by_key = {b.key: b for b in self.blocks}
        self._proj_cache: Dict[frozenset, "BlockVariety"] = {}

    # basic queries
    @property
    def group(self) -> MarkedGroup:
        return self.gfield.group

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def keys(self) -> List[object]:
        return [b.key for b in self.blocks]

    def labels(self) -> List[Word]:
        return [b.label for b in self.blocks]

    def block(self, key) -> Block:
        try:
            return self._by_key[key]
        except KeyError:
            raise ValidationError("unknown block label", kind="unknown-label")

    def has(self, key) -> bool:
        return key in self._by_key

    def block_for(self, label) -> Block:
        return self.block(self.group.key(parse_word(label)))

    @property
    def width(self) -> int:
        ws = {len(b.vars) for b in self.blocks}
        if len(ws) != 1:
            raise ValidationError("blocks have different widths", kind="width-mismatch")
        return ws.pop()

    def __repr__(self):
        return f"BlockVariety(blocks={[str(b.label) for b in self.blocks]}, ideal={[str(g) for g in self.ideal.gens]})"

    def is_full_space(self) -> bool:
        return self.ideal.is_zero() or not self.ideal.groebner()

    def to_json(self) -> dict:
        return {
            "schema": "gtcf.variety/1",
            **self.gfield.to_json(),
            "blocks": [{"label": str(b.label), "vars": list(b.vars)} for b in self.blocks],
            "ideal": [str(g) for g in reduced_generators(self.ideal)],
        }


def reduced_generators(ideal: Ideal):
    return ideal.groebner() if ideal.gens else []


def _unique_names(codes: Sequence[str], bases: Sequence[str]) -> List[List[str]]:
    """Variable names base_code per block, falling back to indices on collisions."""
    names = [[f"{b}_{c}" for b in bases] for c in codes]
    flat = [n for row in names for n in row]
    ok = len(set(flat)) == len(flat) and all(re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n) for n in flat)
    if ok and "zeta" not in flat:
        return names
    return [[f"{b}_{i + 1}" for b in bases] for i in range(len(codes))]


def make_blocks(gfield: GField, labels: Sequence, bases: Sequence[str] = ("x",)) -> List[Block]:
    """Blocks for the given labels, variables named after base names and labels."""
    M = gfield.group
    words = [parse_word(l) for l in labels]
    names = _unique_names([label_code(w) for w in words], bases)
    return [Block(M.key(w), w, tuple(n)) for w, n in zip(words, names)]


def affine_space(gfield: GField, labels: Sequence, bases: Sequence[str] = ("x",)) -> BlockVariety:
    blocks = make_blocks(gfield, labels, bases)
    ring = PolyRing([v for b in blocks for v in b.vars], gfield.field)
    return BlockVariety(gfield, blocks, Ideal(ring, []))


def variety(gfield: GField, blocks: Sequence[Tuple[object, Sequence[str]]], gens: Iterable = ()) -> BlockVariety:
    """Build from (label, variable names) pairs and generator strings or polynomials."""
    M = gfield.group
    bl = []
    for label, vars_ in blocks:
        w = parse_word(label)
        bl.append(Block(M.key(w), w, tuple(vars_)))
    ring = PolyRing([v for b in bl for v in b.vars], gfield.field)
    return BlockVariety(gfield, bl, Ideal(ring, [ring(g) if isinstance(g, str) else g for g in gens]))


def rho_space(gfield: GField, V: BlockVariety, bases: Optional[Sequence[str]] = None) -> BlockVariety:
    """The ambient ^rho V as a full space with one block per rho entry."""
    return affine_space(gfield, gfield.group.rho, bases or _bases(V))


def _bases(V: BlockVariety) -> List[str]:
    if len(V.blocks) == 1:
        return [re.sub(r"[^A-Za-z0-9_]", "", v) or "x" for v in V.blocks[0].vars]
    return [f"x{j + 1}" for j in range(V.width)] if V.width > 1 else ["x"]


# ---------------------------------------------------------------- operations


def twist(V: BlockVariety, w) -> BlockVariety:
    """^w V: coefficients through act(w), labels L -> w*L, variable names kept."""
    w = parse_word(w)
    M = V.group
    aut = V.gfield.aut(w)
    blocks = []
    for b in V.blocks:
        lab = M.normal_form(w * b.label)
        blocks.append(Block(M.key(lab), lab, b.vars))
    return BlockVariety(V.gfield, blocks, V.ideal.map_coeffs(aut))


def relabel(V: BlockVariety, labels: Sequence) -> BlockVariety:
    """Replace block labels positionally."""
    M = V.group
    if len(labels) != len(V.blocks):
        raise ValidationError("relabel needs one label per block", kind="block-mismatch")
    blocks = []
    for b, l in zip(V.blocks, labels):
        w = parse_word(l)
        blocks.append(Block(M.key(w), w, b.vars))
    return BlockVariety(V.gfield, blocks, V.ideal)


def rename_vars(V: BlockVariety, mapping: Mapping[str, str]) -> BlockVariety:
    blocks = [Block(b.key, b.label, tuple(mapping.get(v, v) for v in b.vars)) for b in V.blocks]
    ring = PolyRing([v for b in blocks for v in b.vars], V.ring.field)
    return BlockVariety(V.gfield, blocks, V.ideal.remap(mapping, ring))


def product(Vs: Sequence[BlockVariety]) -> BlockVariety:
    if not Vs:
        raise ValidationError("empty product", kind="block-mismatch")
    g = Vs[0].gfield
    seen_keys = set()
    used = set()
    blocks = []
    gens = []
    parts = []
    for V in Vs:
        if V.gfield.field != g.field:
            raise ValidationError("factors over different fields", kind="field-mismatch")
        for b in V.blocks:
            if b.key in seen_keys:
                raise ValidationError(f"label {b.label} occurs in two factors", kind="label-collision")
            seen_keys.add(b.key)
        mapping = {}
        for v in V.ring.vars:
            name = v
            k = 1
            while name in used:
                k += 1
                name = f"{v}_{k}"
            used.add(name)
            if name != v:
                mapping[v] = name
        parts.append((V, mapping))
    for V, mapping in parts:
        for b in V.blocks:
            blocks.append(Block(b.key, b.label, tuple(mapping.get(v, v) for v in b.vars)))
    ring = PolyRing([v for b in blocks for v in b.vars], g.field)
    for V, mapping in parts:
        gens.extend(p.remap(mapping, ring) for p in V.ideal.gens)
    return BlockVariety(g, blocks, Ideal(ring, gens))


def project_closure(W: BlockVariety, keep: Iterable) -> BlockVariety:
    """Zariski closure of the projection of W onto the blocks with the given keys."""
    keep_keys = []
    for k in keep:
        if isinstance(k, (Word, str)):
            k = W.group.key(parse_word(k))
        if not W.has(k):
            raise ValidationError(f"label not present in the variety", kind="unknown-label")
        keep_keys.append(k)
    fk = frozenset(keep_keys)
    hit = W._proj_cache.get(fk)
    if hit is not None:
        return hit
    blocks = [b for b in W.blocks if b.key in fk]
    drop = [v for b in W.blocks if b.key not in fk for v in b.vars]
    if not drop:
        out = W
    else:
        I = W.ideal.eliminate(drop)
        out = BlockVariety(W.gfield, blocks, I)
    W._proj_cache[fk] = out
    return out


def align(A: BlockVariety, B: BlockVariety) -> Optional[Ideal]:
    """A's ideal rewritten in B's variables (matching blocks by label), or None if labels differ."""
    if set(A.keys()) != set(B.keys()):
        return None
    mapping = {}
    for b in A.blocks:
        t = B.block(b.key)
        if len(t.vars) != len(b.vars):
            return None
        mapping.update(zip(b.vars, t.vars))
    return A.ideal.remap(mapping, B.ring)


def same_variety(A: BlockVariety, B: BlockVariety) -> bool:
    """Equality as labelled varieties."""
    I = align(A, B)
    return I is not None and ideal_equal(I, B.ideal)


def contained_ideal(A: BlockVariety, B: BlockVariety) -> bool:
    """I(A) inside I(B) after label matching, i.e. B is a subvariety of A."""
    I = align(A, B)
    return I is not None and B.ideal.contains_ideal(I)


def is_dominant(W: BlockVariety, V: BlockVariety, label=None) -> bool:
    """True iff the projection of W onto V's blocks is dominant onto V.

    With ``label``, V must have a single block and is placed at that label.
    """
    if label is not None:
        if len(V.blocks) != 1:
            raise ValidationError("a single-block base is needed with an explicit label", kind="block-mismatch")
        V = relabel(V, [label])
    for k in V.keys():
        if not W.has(k):
            raise ValidationError("base label not present in W", kind="unknown-label")
    return same_variety(project_closure(W, V.keys()), V)


def fiber_product(W1: BlockVariety, W2: BlockVariety, base: Optional[Iterable] = None) -> BlockVariety:
    """W1 x_B W2 over the shared base blocks B (all common labels by default)."""
    M = W1.group
    common = [k for k in W1.keys() if W2.has(k)]
    if base is None:
        base_keys = common
    else:
        base_keys = [M.key(parse_word(b)) if isinstance(b, (str, Word)) else b for b in base]
        for k in base_keys:
            if not (W1.has(k) and W2.has(k)):
                raise ValidationError("base label missing from a factor", kind="unknown-label")
        extra = set(common) - set(base_keys)
        if extra:
            raise ValidationError("factors share labels outside the base", kind="label-collision")
    for k in base_keys:
        if len(W1.block(k).vars) != len(W2.block(k).vars):
            raise ValidationError("base blocks have different widths", kind="incompatible-base-width")
    # W2's base variables are identified with W1's; its other variables are made fresh
    used = set(W1.ring.vars)
    mapping = {}
    for b in W2.blocks:
        if b.key in base_keys:
            mapping.update(zip(b.vars, W1.block(b.key).vars))
        else:
            for v in b.vars:
                name = v
                k = 1
                while name in used:
                    k += 1
                    name = f"{v}_{k}"
                used.add(name)
                mapping[v] = name
    blocks = list(W1.blocks) + [
        Block(b.key, b.label, tuple(mapping[v] for v in b.vars)) for b in W2.blocks if b.key not in base_keys
    ]
    ring = PolyRing([v for b in blocks for v in b.vars], W1.ring.field)
    gens = [p.remap({}, ring) for p in W1.ideal.gens] + [p.remap(mapping, ring) for p in W2.ideal.gens]
    return BlockVariety(W1.gfield, blocks, Ideal(ring, gens))


def coordinate_permutation(V: BlockVariety, perm: Sequence[int], labels: Optional[Sequence] = None) -> BlockVariety:
    """Move block perm[k] to position k (0-based); variable names stay with positions.

    Labels travel with the moved data unless ``labels`` gives the new labels.
    """
    n = len(V.blocks)
    if sorted(perm) != list(range(n)):
        raise ValidationError("not a permutation of the blocks", kind="block-mismatch")
    mapping = {}
    new_blocks = []
    for k, src in enumerate(perm):
        old, pos = V.blocks[src], V.blocks[k]
        if len(old.vars) != len(pos.vars):
            raise ValidationError("permuted blocks have different widths", kind="width-mismatch")
        mapping.update(zip(old.vars, pos.vars))
        new_blocks.append(Block(old.key, old.label, pos.vars))
    ring = V.ring
    out = BlockVariety(V.gfield, new_blocks, V.ideal.remap(mapping, ring))
    if labels is not None:
        out = relabel(out, labels)
    return out


def variety_from_json(doc: dict, group: MarkedGroup) -> BlockVariety:
    field = parse_field(doc.get("field", "Q"))
    gf = GField(group, field, doc.get("action", {}))
    blocks = []
    for b in doc["blocks"]:
        blocks.append((b["label"], b["vars"]))
    return variety(gf, blocks, doc.get("ideal", []))
