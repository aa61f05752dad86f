"""Sparse multivariate polynomials over an exact field."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from ..errors import ValidationError
from .fields import QQ, Cyc

Exp = Tuple[int, ...]


def _grevlex_key(e: Exp):
    return (sum(e), tuple(-x for x in reversed(e)))


class PolyRing:
    """F[x_1, ..., x_n] with a fixed variable order."""

    def __init__(self, variables: Iterable[str], field=QQ):
        self.vars: Tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValidationError(f"duplicate variable names in {self.vars}", kind="duplicate-variable")
        self.index: Dict[str, int] = {v: i for i, v in enumerate(self.vars)}
        self.field = field
        self.nvars = len(self.vars)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.vars == other.vars and self.field == other.field

    def __hash__(self):
        return hash((self.vars, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.vars)}, {self.field!r})"

    def coerce_coeff(self, c):
        if isinstance(c, Cyc):
            if self.field.kind != "cyclotomic" or c.field.n != self.field.n:
                raise ValidationError("coefficient outside the coefficient field", kind="field-mismatch")
            if self.field.is_rational(c):
                return c.c[0]
            return c
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise ValidationError(f"bad coefficient {c!r}", kind="field-mismatch")

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: Fraction(1)})

    def const(self, c) -> "Poly":
        c = self.coerce_coeff(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    def var(self, name: str) -> "Poly":
        if name not in self.index:
            raise ValidationError(f"unknown variable {name!r}", kind="unknown-variable")
        e = [0] * self.nvars
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(v) for v in self.vars]

    def zeta(self) -> "Poly":
        return self.const(self.field.zeta())

    def monomial(self, exp: Exp, coeff=1) -> "Poly":
        coeff = self.coerce_coeff(coeff)
        return Poly(self, {tuple(exp): coeff} if coeff else {})

    def extend(self, names: Iterable[str]) -> "PolyRing":
        extra = [n for n in names if n not in self.index]
        return PolyRing(self.vars + tuple(extra), self.field)

    def with_vars(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(names, self.field)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            return value.remap({}, self) if value.ring != self else value
        if isinstance(value, str):
            from .parser import parse_poly

            return parse_poly(value, self)
        return self.const(value)


def _clean(c):
    """Collapse rational-valued cyclotomic scalars to Fraction."""
    if isinstance(c, Cyc) and not any(c.c[1:]):
        return c.c[0]
    return c


class Poly:
    """An immutable sparse polynomial: a dict from exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exp, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # arithmetic
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValidationError("polynomials from different rings", kind="ring-mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = _clean(v + c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: Dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: _clean(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValidationError("negative exponent", kind="syntax-error")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        c = self.ring.coerce_coeff(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: _clean(v * c) for e, v in self.terms.items()})

    def mul_term(self, exp: Exp, c) -> "Poly":
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): _clean(v * c) for e, v in self.terms.items()},
        )

    # predicates and queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyc)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        return max((e[i] for e in self.terms), default=0)

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(self.ring.vars[i])
        return used

    def monic(self, key=_grevlex_key) -> "Poly":
        if not self.terms:
            return self
        lead = max(self.terms, key=key)
        c = self.terms[lead]
        if c == 1:
            return self
        inv = 1 / c if isinstance(c, Fraction) else c.inverse()
        return self.scale(inv)

    # transformations
    def map_coeffs(self, f) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            v = _clean(f(c))
            if v:
                out[e] = v
        return Poly(self.ring, out)

    def remap(self, rename: Mapping[str, str], target: PolyRing) -> "Poly":
        """Rename variables (unmapped names keep their name) into ``target``."""
        used = self.variables()
        pos = []
        for v in self.ring.vars:
            name = rename.get(v, v)
            if name in target.index:
                pos.append(target.index[name])
            elif v in used:
                raise ValidationError(f"variable {name!r} missing in target ring", kind="unknown-variable")
            else:
                pos.append(-1)
        out: Dict[Exp, object] = {}
        n = target.nvars
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in enumerate(e):
                if x:
                    ne[pos[i]] += x
            ne = tuple(ne)
            v = out.get(ne)
            out[ne] = c if v is None else v + c
        return Poly(target, {e: _clean(c) for e, c in out.items() if c})

    def substitute(self, images: Mapping[str, "Poly"], target: PolyRing, coeff_map=None) -> "Poly":
        """Ring map sending each variable to ``images[var]`` (or itself, renamed into target)."""
        gens = []
        for v in self.ring.vars:
            if v in images:
                img = images[v]
                if not isinstance(img, Poly):
                    img = target.const(img)
                gens.append(img)
            elif v in target.index:
                gens.append(target.var(v))
            else:
                raise ValidationError(f"no image for variable {v!r}", kind="undefined-composition")
        # cache powers per variable
        powers = [dict() for _ in gens]
        acc = target.zero()
        for e, c in self.terms.items():
            term = target.const(coeff_map(c) if coeff_map else c)
            for i, x in enumerate(e):
                if x:
                    p = powers[i].get(x)
                    if p is None:
                        p = gens[i] ** x
                        powers[i][x] = p
                    term = term * p
            acc = acc + term
        return acc

    def evaluate(self, point: Mapping[str, object]):
        total = Fraction(0)
        vals = [point[v] for v in self.ring.vars]
        for e, c in self.terms.items():
            t = c
            for x, p in zip(vals, e):
                if p:
                    t = t * x ** p
            total = total + t
        return _clean(total)

    # printing
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _grevlex_key(ec[0]), reverse=True)

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly({self})"
