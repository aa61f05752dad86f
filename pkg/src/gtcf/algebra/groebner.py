"""Buchberger's algorithm with the Gebauer-Moeller criteria and sugar selection.

Monomial orders are exposed as flat integer sort keys so that the reduction
loop can use a single heap of negated keys.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import ResourceLimitError, ValidationError
from .poly import Poly, PolyRing

Exp = Tuple[int, ...]

DEFAULT_MAX_BASIS = 4000
DEFAULT_MAX_DEGREE = 64


class MonomialOrder:
    """A term order on exponent vectors of a fixed length.

    ``blocks`` (for the block order) lists block sizes in variable order;
    each block is compared by grevlex, earlier blocks dominate.
    """

    def __init__(self, name: str, nvars: int, blocks: Optional[Sequence[int]] = None):
        self.name = name
        self.nvars = nvars
        if name == "lex":
            self.key = _lex_key
        elif name == "grevlex":
            self.key = _grevlex_key
        elif name == "block":
            if blocks is None or sum(blocks) != nvars or any(b < 0 for b in blocks):
                raise ValidationError(f"block sizes {blocks} do not cover {nvars} variables", kind="invalid-order")
            self.blocks = tuple(b for b in blocks if b)
            cuts = []
            start = 0
            for b in self.blocks:
                cuts.append((start, start + b))
                start += b

            def key(e, cuts=tuple(cuts)):
                out = []
                for a, b in cuts:
                    part = e[a:b]
                    out.append(sum(part))
                    out.extend(-x for x in reversed(part))
                return tuple(out)

            self.key = key
        else:
            raise ValidationError(f"unknown monomial order {name!r}", kind="invalid-order")
        if name != "block":
            self.blocks = (nvars,)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.name == other.name
            and self.nvars == other.nvars
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.name, self.nvars, self.blocks))

    def __repr__(self):
        if self.name == "block":
            return f"block{list(self.blocks)}"
        return self.name


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def make_order(name: str, nvars: int, blocks=None) -> MonomialOrder:
    return MonomialOrder(name, nvars, blocks)


def _inv(c):
    return 1 / c if isinstance(c, Fraction) else c.inverse()


def _clean(c):
    if not isinstance(c, Fraction) and not any(c.c[1:]):
        return c.c[0]
    return c


def _divides(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elt:
    """Basis element: monic dict with cached leading exponent and sugar."""

    __slots__ = ("terms", "lead", "sugar", "tail")

    def __init__(self, terms: Dict[Exp, object], lead: Exp, sugar: int):
        self.terms = terms
        self.lead = lead
        self.sugar = sugar
        self.tail = [(e, c) for e, c in terms.items() if e != lead]


def _leading(terms: Dict[Exp, object], key) -> Exp:
    return max(terms, key=key)


def _normalize(terms: Dict[Exp, object], key) -> Tuple[Dict[Exp, object], Exp]:
    lead = _leading(terms, key)
    c = terms[lead]
    if c != 1:
        inv = _inv(c)
        terms = {e: _clean(v * inv) for e, v in terms.items()}
    return terms, lead


def reduce_terms(
    terms: Dict[Exp, object], basis: Sequence[_Elt], key, full: bool = True
) -> Dict[Exp, object]:
    """Remainder of ``terms`` modulo ``basis`` (monic leads)."""
    work = dict(terms)
    heap = [(tuple(-x for x in key(e)), e) for e in work]
    heapq.heapify(heap)
    rem: Dict[Exp, object] = {}
    leads = [(g.lead, g) for g in basis]
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None:
            continue
        divisor = None
        for le, g in leads:
            if _divides(le, e):
                divisor = g
                break
        if divisor is None:
            rem[e] = c
            if not full:
                # top-reduced only: keep the rest as is
                rem.update(work)
                return rem
            continue
        q = tuple(x - y for x, y in zip(e, divisor.lead))
        for ge, gc in divisor.tail:
            ne = tuple(x + y for x, y in zip(ge, q))
            old = work.get(ne)
            if old is None:
                work[ne] = -c * gc
                heapq.heappush(heap, (tuple(-x for x in key(ne)), ne))
            else:
                v = _clean(old - c * gc)
                if v:
                    work[ne] = v
                else:
                    del work[ne]
    return {e: _clean(c) for e, c in rem.items()}


def _spoly(f: _Elt, g: _Elt) -> Tuple[Dict[Exp, object], int]:
    l = _lcm(f.lead, g.lead)
    qf = tuple(x - y for x, y in zip(l, f.lead))
    qg = tuple(x - y for x, y in zip(l, g.lead))
    out: Dict[Exp, object] = {}
    for e, c in f.tail:
        ne = tuple(x + y for x, y in zip(e, qf))
        out[ne] = c
    for e, c in g.tail:
        ne = tuple(x + y for x, y in zip(e, qg))
        v = out.get(ne)
        if v is None:
            out[ne] = -c
        else:
            v = _clean(v - c)
            if v:
                out[ne] = v
            else:
                del out[ne]
    sugar = max(f.sugar + sum(qf), g.sugar + sum(qg))
    return out, sugar


def _buchberger(elts: List[_Elt], key, max_basis: int, max_degree: int) -> List[_Elt]:
    basis: List[_Elt] = []
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []

    def update(h: int):
        nonlocal active, pairs
        lh = basis[h].lead
        cands = [(h, g) for g in active]
        kept = []
        lcms = {}
        for p in cands:
            lcms[p] = _lcm(lh, basis[p[1]].lead)
        # chain criterion among the new pairs
        for idx, p in enumerate(cands):
            lp = lcms[p]
            if _coprime(lh, basis[p[1]].lead):
                kept.append(p)
                continue
            redundant = False
            for q in cands[idx + 1:]:
                if _divides(lcms[q], lp):
                    redundant = True
                    break
            if not redundant:
                for q in kept:
                    if _divides(lcms[q], lp):
                        redundant = True
                        break
            if not redundant:
                kept.append(p)
        new_pairs = [p for p in kept if not _coprime(lh, basis[p[1]].lead)]
        survivors = []
        for a, b in pairs:
            lab = _lcm(basis[a].lead, basis[b].lead)
            if (
                _divides(lh, lab)
                and _lcm(basis[a].lead, lh) != lab
                and _lcm(lh, basis[b].lead) != lab
            ):
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(lh, basis[g].lead)] + [h]

    def add(elt: _Elt):
        if len(basis) >= max_basis:
            raise ResourceLimitError(
                f"Groebner basis exceeded {max_basis} elements", limit="max-basis", value=max_basis
            )
        if max_degree and sum(elt.lead) > max_degree:
            raise ResourceLimitError(
                f"Groebner basis degree exceeded {max_degree}", limit="max-degree", value=max_degree
            )
        basis.append(elt)
        update(len(basis) - 1)

    for elt in sorted(elts, key=lambda t: (t.sugar, key(t.lead))):
        red = reduce_terms(elt.terms, [basis[i] for i in active], key)
        if red:
            terms, lead = _normalize(red, key)
            add(_Elt(terms, lead, elt.sugar))

    while pairs:
        best = None
        best_rank = None
        for i, (a, b) in enumerate(pairs):
            l = _lcm(basis[a].lead, basis[b].lead)
            sugar = max(basis[a].sugar + sum(l) - sum(basis[a].lead), basis[b].sugar + sum(l) - sum(basis[b].lead))
            rank = (sugar, key(l))
            if best_rank is None or rank < best_rank:
                best_rank = rank
                best = i
        a, b = pairs.pop(best)
        s, sugar = _spoly(basis[a], basis[b])
        if not s:
            continue
        red = reduce_terms(s, [basis[i] for i in active], key)
        if red:
            terms, lead = _normalize(red, key)
            if all(x == 0 for x in lead):
                basis.append(_Elt(terms, lead, sugar))
                return [basis[-1]]
            add(_Elt(terms, lead, sugar))

    # minimal then reduced basis
    mins = [basis[i] for i in active]
    mins = [g for g in mins if not any(h is not g and _divides(h.lead, g.lead) for h in mins)]
    out = []
    for g in mins:
        others = [h for h in mins if h is not g]
        tail = reduce_terms({e: c for e, c in g.tail}, others, key)
        tail[g.lead] = Fraction(1)
        out.append(_Elt(tail, g.lead, g.sugar))
    out.sort(key=lambda t: key(t.lead), reverse=True)
    return out


def groebner(
    polys: Sequence[Poly],
    order: MonomialOrder,
    max_basis: int = DEFAULT_MAX_BASIS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> List[Poly]:
    """Reduced Groebner basis (monic, sorted by leading term descending)."""
    key = order.key
    elts = []
    ring = None
    for p in polys:
        ring = p.ring if ring is None else ring
        if p.ring != ring:
            raise ValidationError("generators live in different rings", kind="ring-mismatch")
        if p.terms:
            terms, lead = _normalize(dict(p.terms), key)
            elts.append(_Elt(terms, lead, p.total_degree()))
    if not elts:
        return []
    out = _buchberger(elts, key, max_basis, max_degree)
    return [Poly(ring, dict(g.terms)) for g in out]


def leading_exp(p: Poly, order: MonomialOrder) -> Exp:
    return max(p.terms, key=order.key)


def normal_form(p: Poly, basis: Sequence[Poly], order: MonomialOrder) -> Poly:
    key = order.key
    elts = []
    for g in basis:
        terms, lead = _normalize(dict(g.terms), key)
        elts.append(_Elt(terms, lead, 0))
    return Poly(p.ring, reduce_terms(dict(p.terms), elts, key))


def is_groebner(basis: Sequence[Poly], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    key = order.key
    elts = []
    for g in basis:
        if g.terms:
            terms, lead = _normalize(dict(g.terms), key)
            elts.append(_Elt(terms, lead, 0))
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            if _coprime(elts[i].lead, elts[j].lead):
                continue
            s, _ = _spoly(elts[i], elts[j])
            if s and reduce_terms(s, elts, key):
                return False
    return True
