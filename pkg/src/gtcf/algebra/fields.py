"""Exact coefficient fields: the rationals and cyclotomic fields Q(zeta_n).

Rational elements are plain :class:`fractions.Fraction` values.  Cyclotomic
elements are :class:`Cyc` instances holding the coefficient vector of the
unique representative of degree < phi(n) modulo the n-th cyclotomic
polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import ValidationError


def _poly_divmod(num, den):
    """Long division of dense coefficient lists (lowest degree first)."""
    num = list(num)
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        coeff = Fraction(num[-1]) / lead
        out[shift] = coeff
        for i, d in enumerate(den):
            num[shift + i] -= coeff * d
        num.pop()
        while num and num[-1] == 0:
            num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValidationError(f"cyclotomic order must be positive, got {n}", kind="invalid-field")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not any(rem)
    while num and num[-1] == 0:
        num.pop()
    return tuple(int(c) for c in num)


class RationalField:
    """The field Q; elements are Fractions."""

    kind = "rational"
    n = 1
    degree = 1

    def __call__(self, value):
        if isinstance(value, Cyc):
            raise ValidationError("cyclotomic element in the rational field", kind="field-mismatch")
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def zeta(self):
        raise ValidationError("zeta is not available over Q", kind="zeta-in-rational-field")

    def is_rational(self, c) -> bool:
        return True

    def format(self, c) -> str:
        return str(c)

    def units(self):
        return [1]

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def descriptor(self) -> str:
        return "Q"


class CyclotomicField:
    """Q(zeta_n) presented as Q[z]/(Phi_n)."""

    kind = "cyclotomic"

    def __init__(self, n: int):
        if n < 3:
            raise ValidationError(
                f"Q(zeta_{n}) equals Q; use the rational field", kind="invalid-field"
            )
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        self._aut_cache = {}

    # element construction
    def __call__(self, value):
        if isinstance(value, Cyc):
            if value.field != self:
                raise ValidationError("element of a different field", kind="field-mismatch")
            return value
        return Cyc(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def element(self, coeffs) -> "Cyc":
        return Cyc(self, self.reduce(coeffs))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def zeta(self):
        return self.element([0, 1])

    def reduce(self, coeffs) -> tuple:
        c = [Fraction(x) for x in coeffs]
        d = self.degree
        mod = self.modulus
        for top in range(len(c) - 1, d - 1, -1):
            lead = c[top]
            if lead:
                shift = top - d
                for i in range(d + 1):
                    c[shift + i] -= lead * mod[i]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return tuple(c)

    def is_rational(self, c) -> bool:
        return not any(c.c[1:])

    def units(self):
        return [k for k in range(1, self.n) if gcd(k, self.n) == 1]

    def format(self, c: "Cyc") -> str:
        parts = []
        for i in range(self.degree - 1, -1, -1):
            a = c.c[i]
            if not a:
                continue
            mono = "" if i == 0 else ("zeta" if i == 1 else f"zeta^{i}")
            mag = abs(a)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if a < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def aut_images(self, k: int) -> tuple:
        """Images of the basis zeta^i under zeta -> zeta^k."""
        k %= self.n
        if k not in self._aut_cache:
            images = []
            for i in range(self.degree):
                e = (i * k) % self.n
                images.append(self.reduce([0] * e + [1]))
            self._aut_cache[k] = tuple(images)
        return self._aut_cache[k]

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyc", self.n))

    def __repr__(self):
        return f"Q(zeta_{self.n})"

    def descriptor(self) -> str:
        return f"Q(zeta{self.n})"


class Cyc:
    """An element of Q(zeta_n); immutable."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: CyclotomicField, coeffs: tuple):
        self.field = field
        self.c = coeffs
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.field.n != self.field.n:
                raise ValidationError("mixing cyclotomic fields", kind="field-mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.field, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyc(self.field, tuple(a - b for a, b in zip(self.c, other.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.field, tuple(a * other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        prod[i + j] += a * b
        return Cyc(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid in Q[z]: find u with u*self = 1 mod Phi_n
        a = [Fraction(x) for x in self.field.modulus]
        b = list(self.c)
        while b and b[-1] == 0:
            b.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(b) > 1:
            q, r = _poly_divmod(a, b)
            a, b = b, r
            s0, s1 = s1, _sub_dense(s0, _mul_dense(q, s1))
            while b and b[-1] == 0:
                b.pop()
        # now b is a nonzero constant
        const = b[0]
        return Cyc(self.field, self.field.reduce([x / const for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.field, tuple(a / other for a in self.c))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        if isinstance(other, Cyc):
            return self.field.n == other.field.n and self.c == other.c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.c[1:]):
                self._hash = hash(self.c[0])
            else:
                self._hash = hash((self.field.n, self.c))
        return self._hash

    def __repr__(self):
        return self.field.format(self)


def _mul_dense(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _sub_dense(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


QQ = RationalField()


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def parse_field(text) -> RationalField | CyclotomicField:
    """Accepts ``Q``, ``QQ``, ``rational``, ``Q(zeta3)``, ``Q(zeta_3)``, ``cyclotomic:3``."""
    if isinstance(text, (RationalField, CyclotomicField)):
        return text
    if isinstance(text, dict):
        if text.get("kind") == "cyclotomic":
            return cyclotomic(int(text["n"]))
        return QQ
    t = str(text).strip().replace(" ", "")
    if t in ("Q", "QQ", "rational", "Q(zeta1)", "Q(zeta2)"):
        return QQ
    for prefix, suffix in (("Q(zeta_", ")"), ("Q(zeta", ")"), ("cyclotomic:", "")):
        if t.startswith(prefix) and t.endswith(suffix):
            body = t[len(prefix): len(t) - len(suffix)] if suffix else t[len(prefix):]
            if body.isdigit():
                n = int(body)
                return QQ if n <= 2 else cyclotomic(n)
    raise ValidationError(f"unknown field descriptor {text!r}", kind="invalid-field")


class FieldAut:
    """The automorphism zeta -> zeta^k of Q(zeta_n) (identity on Q)."""

    __slots__ = ("field", "k")

    def __init__(self, field, k: int = 1):
        self.field = field
        if field.kind == "rational":
            k = 1
        else:
            k %= field.n
            if gcd(k, field.n) != 1:
                raise ValidationError(
                    f"exponent {k} is not a unit mod {field.n}", kind="invalid-automorphism"
                )
        self.k = k

    @classmethod
    def identity(cls, field):
        return cls(field, 1)

    def is_identity(self) -> bool:
        return self.k == 1

    def __call__(self, c):
        if self.k == 1:
            return c
        if not isinstance(c, Cyc):
            return c
        images = self.field.aut_images(self.k)
        acc = [Fraction(0)] * self.field.degree
        for a, img in zip(c.c, images):
            if a:
                for i, v in enumerate(img):
                    acc[i] += a * v
        return Cyc(self.field, tuple(acc))

    def compose(self, other: "FieldAut") -> "FieldAut":
        """``self o other``."""
        if self.field != other.field:
            raise ValidationError("composing automorphisms of different fields", kind="field-mismatch")
        return FieldAut(self.field, self.k * other.k)

    def inverse(self) -> "FieldAut":
        if self.field.kind == "rational":
            return self
        return FieldAut(self.field, pow(self.k, -1, self.field.n))

    def __eq__(self, other):
        return isinstance(other, FieldAut) and self.field == other.field and self.k == other.k

    def __hash__(self):
        return hash((self.field, self.k))

    def __repr__(self):
        if self.field.kind == "rational":
            return "id"
        return f"zeta->zeta^{self.k}"
