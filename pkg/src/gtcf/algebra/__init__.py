"""Exact algebra: fields, polynomials, Groebner bases and ideals."""

from .fields import QQ, Cyc, CyclotomicField, FieldAut, RationalField, cyclotomic, parse_field
from .groebner import MonomialOrder, groebner, is_groebner, make_order, normal_form
from .ideal import Ideal, apply_field_aut, ideal_equal, ideal_member, settings
from .parser import format_poly, parse_poly
from .poly import Poly, PolyRing

__all__ = [
    "QQ",
    "Cyc",
    "CyclotomicField",
    "FieldAut",
    "RationalField",
    "cyclotomic",
    "parse_field",
    "MonomialOrder",
    "groebner",
    "is_groebner",
    "make_order",
    "normal_form",
    "Ideal",
    "apply_field_aut",
    "ideal_equal",
    "ideal_member",
    "settings",
    "format_poly",
    "parse_poly",
    "Poly",
    "PolyRing",
]
