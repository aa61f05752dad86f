"""Ideals with memoized Groebner bases, elimination and comparison."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from ..errors import ValidationError
from .fields import FieldAut
from .groebner import DEFAULT_MAX_BASIS, DEFAULT_MAX_DEGREE, MonomialOrder, groebner, normal_form
from .poly import Poly, PolyRing


@dataclass
class Settings:
    """Process-wide defaults; the CLI overrides these from its flags."""

    order: str = "grevlex"
    max_degree: int = DEFAULT_MAX_DEGREE
    max_basis: int = DEFAULT_MAX_BASIS


settings = Settings()


class Ideal:
    """An ideal of a :class:`PolyRing` given by generators."""

    def __init__(self, ring: PolyRing, gens: Iterable[Poly] = ()):
        self.ring = ring
        gl = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            elif not isinstance(g, Poly):
                g = ring.const(g)
            if g.ring != ring:
                raise ValidationError("generator from another ring", kind="ring-mismatch")
            if g.terms:
                gl.append(g)
        self.gens: List[Poly] = gl
        self._gb: Dict[MonomialOrder, List[Poly]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]} in {list(self.ring.vars)})"

    def default_order(self) -> MonomialOrder:
        return MonomialOrder(settings.order, self.ring.nvars)

    def groebner(self, order: Optional[MonomialOrder] = None) -> List[Poly]:
        order = order or self.default_order()
        with self._lock:
            gb = self._gb.get(order)
        if gb is None:
            gb = groebner(self.gens, order, settings.max_basis, settings.max_degree)
            with self._lock:
                self._gb[order] = gb
        return gb

    def set_basis(self, gb: List[Poly], order: MonomialOrder):
        with self._lock:
            self._gb[order] = gb

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, p: Poly) -> bool:
        if isinstance(p, str):
            p = self.ring(p)
        if not p.terms:
            return True
        order = self.default_order()
        return not normal_form(p, self.groebner(order), order).terms

    def reduce(self, p: Poly) -> Poly:
        order = self.default_order()
        return normal_form(p, self.groebner(order), order)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValidationError("sum of ideals in different rings", kind="ring-mismatch")
        return Ideal(self.ring, self.gens + other.gens)

    def remap(self, rename: Mapping[str, str], target: PolyRing) -> "Ideal":
        return Ideal(target, [g.remap(rename, target) for g in self.gens])

    def map_coeffs(self, aut: FieldAut) -> "Ideal":
        if aut.is_identity():
            return self
        return Ideal(self.ring, [g.map_coeffs(aut) for g in self.gens])

    def eliminate(self, drop: Sequence[str], order_name: Optional[str] = None) -> "Ideal":
        """``I`` intersected with the subring on the variables not in ``drop``."""
        drop_set = set(drop)
        unknown = drop_set - set(self.ring.vars)
        if unknown:
            raise ValidationError(f"unknown variables {sorted(unknown)}", kind="unknown-variable")
        keep = [v for v in self.ring.vars if v not in drop_set]
        elim = [v for v in self.ring.vars if v in drop_set]
        keep_ring = PolyRing(keep, self.ring.field)
        if not elim:
            return Ideal(keep_ring, [g.remap({}, keep_ring) for g in self.gens])
        work_ring = PolyRing(elim + keep, self.ring.field)
        moved = [g.remap({}, work_ring) for g in self.gens]
        if order_name == "lex":
            order = MonomialOrder("lex", work_ring.nvars)
        else:
            order = MonomialOrder("block", work_ring.nvars, [len(elim), len(keep)])
        gb = groebner(moved, order, settings.max_basis, settings.max_degree)
        k = len(elim)
        out = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
        res = Ideal(keep_ring, [g.remap({}, keep_ring) for g in out])
        if order_name == "lex":
            res.set_basis(res.gens, MonomialOrder("lex", keep_ring.nvars))
        return res


def ideal_equal(a: Ideal, b: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    """Equality of ideals via reduced Groebner bases under a common order."""
    if a.ring != b.ring:
        if a.ring.field != b.ring.field or set(a.ring.vars) != set(b.ring.vars):
            return False
        b = b.remap({}, a.ring)
    if a.is_zero() or b.is_zero():
        return a.is_zero() == b.is_zero() or (a.is_zero() and not b.groebner(order)) or (
            b.is_zero() and not a.groebner(order)
        )
    order = order or a.default_order()
    return a.groebner(order) == b.groebner(order)


def ideal_member(p: Poly, ideal: Ideal) -> bool:
    return ideal.contains(p)


def apply_field_aut(ideal: Ideal, aut: FieldAut) -> Ideal:
    return ideal.map_coeffs(aut)
