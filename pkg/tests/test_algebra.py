from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gtcf.algebra import (
    QQ, FieldAut, Ideal, MonomialOrder, PolyRing, apply_field_aut, cyclotomic, format_poly,
    groebner, ideal_equal, ideal_member, is_groebner, parse_field, parse_poly,
)
from gtcf.errors import ParseError, ResourceLimitError, ValidationError

F3 = cyclotomic(3)


def ring(names="x y", field=QQ):
    return PolyRing(names.split(), field)


# ---------------------------------------------------------------- fields


def test_cyclotomic_relation_and_inverse():
    z = F3.zeta()
    assert z * z + z + 1 == F3.zero
    assert z ** 3 == F3.one
    inv = (z + 2).inverse()
    assert inv * (z + 2) == F3.one


def test_field_aut_composes_by_exponent_product():
    a = FieldAut(F3, 2)
    assert a.compose(a).k == 1
    assert a(F3.zeta()) == F3.zeta() ** 2
    F5 = cyclotomic(5)
    b, c = FieldAut(F5, 2), FieldAut(F5, 3)
    assert b.compose(c).k == 1
    assert b.inverse().k == 3


def test_field_aut_rejects_non_unit():
    with pytest.raises(ValidationError):
        FieldAut(cyclotomic(4), 2)


@pytest.mark.parametrize("text", ["Q", "QQ", "Q(zeta3)", "Q(zeta_5)", "cyclotomic:7"])
def test_parse_field_descriptor_round_trip(text):
    f = parse_field(text)
    assert parse_field(f.descriptor()) == f


# ---------------------------------------------------------------- parser


def test_parse_graph_polynomial():
    R = ring()
    p = parse_poly("y - x^2", R)
    assert p == R.var("y") - R.var("x") ** 2


def test_parse_reduces_zeta_square():
    R = ring("x", F3)
    p = parse_poly("x - zeta^2", R)
    z = F3.zeta()
    assert p == R.var("x") + R.const(z + 1)


def test_negative_exponent_is_syntax_error():
    with pytest.raises(ParseError) as e:
        parse_poly("x^-1", ring("x"))
    assert e.value.kind == "syntax-error"
    assert e.value.position is not None


def test_unknown_variable_and_zeta_over_q():
    with pytest.raises(ValidationError) as e:
        parse_poly("x + w", ring("x"))
    assert e.value.kind == "unknown-variable"
    with pytest.raises(ValidationError) as e:
        parse_poly("x - zeta", ring("x"))
    assert e.value.kind == "zeta-in-rational-field"


def test_parse_rationals_and_parentheses():
    R = ring()
    p = parse_poly("(x + 1/2)*(x - 1/2) - 3/4*y", R)
    x, y = R.var("x"), R.var("y")
    assert p == x * x - Fraction(1, 4) - y.scale(Fraction(3, 4))


# ---------------------------------------------------------------- Groebner bases


def test_groebner_collapses_to_linear_factor():
    R = ring("x")
    gb = groebner([R("x^2 - 1"), R("x - 1")], MonomialOrder("lex", 1))
    assert gb == [R("x - 1")]


def test_groebner_of_coordinates_is_itself():
    R = ring()
    gb = groebner([R("x"), R("y")], MonomialOrder("lex", 2))
    assert set(map(str, gb)) == {"x", "y"}


def test_groebner_lex_finds_composed_square():
    R = ring("z y x")
    gb = groebner([R("y - x^2"), R("z - y^2")], MonomialOrder("lex", 3))
    assert R("z - x^4") in gb or Ideal(R, gb).contains(R("z - x^4"))
    assert is_groebner(gb, MonomialOrder("lex", 3))


def test_resource_guard_trips():
    R = ring("x y z")
    with pytest.raises(ResourceLimitError):
        groebner([R("x^3 - y*z"), R("y^3 - x*z"), R("z^3 - x*y")], MonomialOrder("grevlex", 3), max_degree=2)


# ---------------------------------------------------------------- elimination and predicates


def test_eliminate_graph_onto_domain():
    R = ring()
    assert Ideal(R, [R("y - x^2")]).eliminate(["y"]).is_zero()


def test_eliminate_keeps_coordinate():
    R = ring()
    E = Ideal(R, [R("x")]).eliminate(["y"])
    assert [str(g) for g in E.groebner()] == ["x"]


def test_eliminate_middle_variable():
    R = ring("x y z")
    E = Ideal(R, [R("y - x^2"), R("z - y^2")]).eliminate(["y"])
    S = E.ring
    assert ideal_equal(E, Ideal(S, [S("z - x^4")]))


def test_ideal_equal_and_member():
    R = ring("x")
    assert ideal_equal(Ideal(R, [R("x^2 - 1"), R("x - 1")]), Ideal(R, [R("x - 1")]))
    R2 = ring()
    assert ideal_member(R2("x + y"), Ideal(R2, [R2("x"), R2("y")]))
    assert not ideal_member(R("x + 1"), Ideal(R, [R("x - 1")]))


def test_apply_field_aut_examples():
    R = ring("x", F3)
    I = Ideal(R, [R("x - zeta")])
    a = FieldAut(F3, 2)
    assert ideal_equal(apply_field_aut(I, FieldAut.identity(F3)), I)
    assert ideal_equal(apply_field_aut(I, a), Ideal(R, [R("x - zeta^2")]))
    assert ideal_equal(apply_field_aut(apply_field_aut(I, a), a), I)


# ---------------------------------------------------------------- independent oracle: sympy

VARS3 = ["x", "y", "z"]

monomials = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
terms = st.lists(st.tuples(st.integers(-3, 3).filter(bool), monomials), min_size=1, max_size=3)


def _build(R, tl):
    p = R.zero()
    for c, e in tl:
        p = p + R.monomial(e, c)
    return p


def _to_sympy(p, syms):
    return sympy.sympify(format_poly(p).replace("^", "**"), locals=dict(zip(VARS3, syms)))


@settings(max_examples=40, deadline=None)
@given(st.lists(terms, min_size=1, max_size=3), st.sampled_from(["lex", "grevlex"]))
def test_groebner_matches_sympy(gens, order):
    R = PolyRing(VARS3, QQ)
    polys = [p for p in (_build(R, t) for t in gens) if p.terms]
    if not polys:
        return
    ours = groebner(polys, MonomialOrder(order, 3))
    syms = sympy.symbols(VARS3)
    theirs = sympy.groebner([_to_sympy(p, syms) for p in polys], *syms, order=order)
    mine = {sympy.expand(_to_sympy(g, syms)) for g in ours}
    ref = {sympy.expand(g / sympy.Poly(g, *syms).LC(order=order)) for g in theirs.exprs}
    assert mine == ref
    assert is_groebner(ours, MonomialOrder(order, 3))


@settings(max_examples=25, deadline=None)
@given(st.lists(terms, min_size=1, max_size=2))
def test_elimination_matches_sympy(gens):
    R = PolyRing(VARS3, QQ)
    polys = [p for p in (_build(R, t) for t in gens) if p.terms]
    if not polys:
        return
    E = Ideal(R, polys).eliminate(["x"])
    syms = sympy.symbols(VARS3)
    G = sympy.groebner([_to_sympy(p, syms) for p in polys], *syms, order="lex")
    ref = [g for g in G.exprs if syms[0] not in g.free_symbols]
    S = E.ring
    ref_ideal = Ideal(S, [S(str(sympy.expand(g)).replace("**", "^")) for g in ref])
    assert ideal_equal(E, ref_ideal)


# ---------------------------------------------------------------- properties


@settings(max_examples=30, deadline=None)
@given(st.lists(terms, min_size=1, max_size=2))
def test_elimination_is_transitive(gens):
    R = PolyRing(VARS3, QQ)
    polys = [p for p in (_build(R, t) for t in gens) if p.terms]
    if not polys:
        return
    I = Ideal(R, polys)
    once = I.eliminate(["x", "y"])
    twice = I.eliminate(["x"]).eliminate(["y"])
    assert ideal_equal(once, twice)


cyc_coeffs = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
cyc_terms = st.lists(st.tuples(cyc_coeffs, st.tuples(st.integers(0, 2), st.integers(0, 2))), min_size=1, max_size=3)


def _cyc_poly(R, tl):
    p = R.zero()
    for (a, b), e in tl:
        p = p + R.monomial(e, F3.element((a, b)))
    return p


@settings(max_examples=40, deadline=None)
@given(cyc_terms, cyc_terms, st.sampled_from([1, 2]))
def test_field_aut_is_ring_homomorphism(t1, t2, k):
    R = PolyRing(["x", "y"], F3)
    a = FieldAut(F3, k)
    p, q = _cyc_poly(R, t1), _cyc_poly(R, t2)
    assert (p + q).map_coeffs(a) == p.map_coeffs(a) + q.map_coeffs(a)
    assert (p * q).map_coeffs(a) == p.map_coeffs(a) * q.map_coeffs(a)


@settings(max_examples=60, deadline=None)
@given(cyc_terms)
def test_print_parse_round_trip(tl):
    R = PolyRing(["x", "y"], F3)
    p = _cyc_poly(R, tl)
    assert parse_poly(format_poly(p), R) == p
    assert parse_poly(format_poly(parse_poly(format_poly(p), R)), R) == p


@settings(max_examples=30, deadline=None)
@given(st.lists(terms, min_size=1, max_size=3))
def test_reduced_basis_is_canonical(gens):
    R = PolyRing(VARS3, QQ)
    polys = [p for p in (_build(R, t) for t in gens) if p.terms]
    if not polys:
        return
    order = MonomialOrder("grevlex", 3)
    gb = groebner(polys, order)
    assert groebner(list(reversed(polys)) + gb, order) == gb
