import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from batch import certified_affine
from curvelab import gf
from curvelab.errors import (
    ArityMismatch,
    DegreeTooSmall,
    FieldMismatch,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
    VariableAbsent,
    ZeroDivisor,
)
from curvelab.mpoly import (
    NEG_INF,
    MultiPoly,
    binom_mod_p,
    dehomogenize,
    divides,
    divides_by_evaluation,
    eval_codes,
    evaluate,
    format_poly,
    hasse_derivative,
    homogenize,
    parse_poly,
    pseudo_divrem,
    random_poly,
    translate,
)

EX = ("x^4*y^2 + x^2*y^4 + x^4*y*z + x*y^4*z + x^4*z^2 + x^2*y^2*z^2 + y^4*z^2 "
      "+ x^2*z^4 + x*y*z^4 + y^2*z^4")
FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)]


def poly_strategy(arity=2, max_deg=4):
    @st.composite
    def build(draw):
        K = gf.build_field(*draw(st.sampled_from(FIELDS)))
        seed = draw(st.integers(0, 2**32))
        d = draw(st.integers(0, max_deg))
        return random_poly(K, arity, d, random.Random(seed), density=0.5)
    return build()


def same_field_polys(n, arity=2, max_deg=4):
    @st.composite
    def build(draw):
        K = gf.build_field(*draw(st.sampled_from(FIELDS)))
        rng = random.Random(draw(st.integers(0, 2**32)))
        return [random_poly(K, arity, draw(st.integers(0, max_deg)), rng, 0.5) for _ in range(n)]
    return build()


def P(text, p=2, s=1, arity=2):
    return parse_poly(text, gf.build_field(p, s), arity)


def test_arith_examples():
    assert P("x + y") ** 2 == P("x^2 + y^2")
    f = P("x^3 + y^3 + 1", 2, 2)
    assert f ** 2 == P("x^6 + y^6 + 1", 2, 2)
    assert not (f * MultiPoly.zero(f.field, 2))
    assert MultiPoly.zero(f.field, 2).degree() == NEG_INF


def test_mixing_errors():
    with pytest.raises(FieldMismatch):
        P("x", 2) + P("x", 3)
    with pytest.raises(ArityMismatch):
        P("x") + P("x", arity=3)


@settings(max_examples=60, deadline=None)
@given(same_field_polys(3))
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == MultiPoly.zero(f.field, 2)
    if f and g:
        assert (f * g).degree() == f.degree() + g.degree()


def test_evaluate_examples():
    F2, F4 = gf.build_field(2, 1), gf.build_field(2, 2)
    f = parse_poly("x^2 + x + 1", F2, 2)
    g = F4.gen
    assert evaluate(f, [g, F4.zero]).value == 0
    h = P("x*y + 3*x + 4", 5)
    assert eval_codes(h, (0, 0)) == 4
    E = parse_poly(EX, F4, 3)
    assert eval_codes(E, (0, 0, 1)) == 0


def test_hasse_examples():
    F3 = gf.build_field(3, 1)
    x3 = parse_poly("x^3", F3, 2)
    assert not hasse_derivative(x3, 0, 1)
    assert hasse_derivative(parse_poly("x^5", F3, 2), 0, 2) == parse_poly("x^3", F3, 2)
    for p in (2, 3, 5, 7):
        xp = MultiPoly.var(gf.build_field(p), 2, 0, p)
        assert hasse_derivative(xp, 0, p) == MultiPoly.constant(xp.field, 2, 1)


def test_binom_mod_p_lucas():
    from math import comb

    for p in (2, 3, 5):
        for n in range(40):
            for k in range(n + 2):
                assert binom_mod_p(n, k, p) == comb(n, k) % p


@settings(max_examples=100, deadline=None)
@given(poly_strategy(), st.integers(0, 4), st.integers(0, 4), st.integers(0, 1))
def test_hasse_composition(f, i, j, var):
    p = f.field.p
    lhs = hasse_derivative(hasse_derivative(f, var, j), var, i)
    rhs = hasse_derivative(f, var, i + j).scale(f.field.constant(binom_mod_p(i + j, i, p)))
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(same_field_polys(2), st.integers(0, 1))
def test_leibniz(fg, var):
    f, g = fg
    assert hasse_derivative(f * g, var, 1) == f * hasse_derivative(g, var, 1) + g * hasse_derivative(f, var, 1)
    assert hasse_derivative(f, var, 1) == f.derivative(var)
    assert hasse_derivative(f, var, 0) == f


def test_translate_examples():
    F5 = gf.build_field(5)
    f = parse_poly("y - x^2", F5, 2)
    assert translate(f, 0, 0) == f
    assert translate(f, 1, 1) == parse_poly("y - x^2 - 2*x", F5, 2)


@settings(max_examples=50, deadline=None)
@given(poly_strategy(), st.integers(0, 100), st.integers(0, 100))
def test_translate_round_trip(f, a, b):
    K = f.field
    a, b = a % K.q, b % K.q
    g = translate(f, a, b)
    assert g.degree() == f.degree()
    assert translate(g, K.neg(a), K.neg(b)) == f


def test_homogenize_examples():
    F5 = gf.build_field(5)
    assert homogenize(parse_poly("y - x^2", F5, 2), 2) == parse_poly("y*z - x^2", F5, 3)
    assert dehomogenize(parse_poly("x^3+y^3+z^3", F5, 3), "z") == parse_poly("x^3+y^3+1", F5, 2)
    E = parse_poly(EX, gf.build_field(2, 2), 3)
    assert homogenize(dehomogenize(E, "z"), 6) == E
    with pytest.raises(DegreeTooSmall):
        homogenize(parse_poly("x^3", F5, 2), 2)
    with pytest.raises(NotHomogeneous):
        dehomogenize(parse_poly("x^3 + z", F5, 3), "z")


@settings(max_examples=60, deadline=None)
@given(same_field_polys(2, max_deg=5))
def test_pseudo_divrem_identity(hf):
    h, f = hf
    if not f:
        with pytest.raises(ZeroDivisor):
            pseudo_divrem(h, f, 0)
        return
    var = 1 if f.deg_in(1) >= 1 else 0
    if f.deg_in(var) < 1:
        with pytest.raises(VariableAbsent):
            pseudo_divrem(h, f, var)
        return
    Q, R, power = pseudo_divrem(h, f, var)
    assert h * (f.lc_in(var) ** power) == Q * f + R
    assert R.deg_in(var) < f.deg_in(var)


def test_pseudo_divrem_examples():
    F4 = gf.build_field(2, 2)
    f = parse_poly("x^3 + y^3 + 1", F4, 2)
    assert not pseudo_divrem(f, f, 1)[1]
    x = MultiPoly.var(F4, 2, 0)
    _, R, power = pseudo_divrem(x * f + MultiPoly.constant(F4, 2, 1), f, 1)
    assert power == 0 and R == MultiPoly.constant(F4, 2, 1)
    # (x^4 + x) x^2 + (y^4 + y) y^2
    h = parse_poly("x^6 + x^3 + y^6 + y^3", F4, 2)
    assert h == f * f + f
    assert not pseudo_divrem(h, f, 1)[1]
    assert divides(f, h)
    with pytest.raises(ZeroDivisor):
        pseudo_divrem(h, MultiPoly.zero(F4, 2), 1)


def test_divides_examples():
    rng = random.Random(3)
    K = gf.build_field(3, 2)
    f = certified_affine(K, 3, rng)
    g = random_poly(K, 2, 2, rng)
    assert divides(f, f * g)
    assert not divides(f, f * g + MultiPoly.constant(K, 2, 1))


def test_divides_agrees_with_evaluation_oracle():
    rng = random.Random(20250611)
    mismatches = 0
    for i in range(100):
        K = gf.build_field(*((2, 2) if i % 2 else (3, 2)))
        f = certified_affine(K, 2 + i % 3, rng)
        g = random_poly(K, 2, rng.randrange(0, 3), rng)
        h = f * g if i % 3 else f * g + random_poly(K, 2, rng.randrange(0, 3), rng)
        if divides(f, h) != divides_by_evaluation(f, h, seed=i):
            mismatches += 1
    assert mismatches == 0


def test_parse_examples():
    F4 = gf.build_field(2, 2)
    E = parse_poly(EX, F4, 3)
    assert len(E.terms) == 10 and E.degree() == 6
    F27 = gf.build_field(3, 3)
    C1 = parse_poly("x^13 - y^13 - z^13", F27, 3)
    assert C1 == parse_poly("x^13 + 2*y^13 + 2*z^13", F27, 3)
    assert not parse_poly("0", F27, 3)
    assert parse_poly("g^2*x + [1,1]*y", F4, 2) == parse_poly("[1,1]*x + g^2*y", F4, 2)


def test_parse_errors():
    F5 = gf.build_field(5)
    with pytest.raises(UnknownVariable):
        parse_poly("x + w", F5, 2)
    with pytest.raises(UnknownVariable):
        parse_poly("x + z", F5, 2)
    with pytest.raises(PolySyntaxError) as exc:
        parse_poly("x + * y", F5, 2)
    assert "position" in str(exc.value)


@settings(max_examples=100, deadline=None)
@given(poly_strategy(arity=3, max_deg=5))
def test_format_parse_round_trip(f):
    assert parse_poly(format_poly(f), f.field, 3) == f
    assert parse_poly(format_poly(f, dlog=True), f.field, 3) == f
