import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvelab import corpus, gf
from curvelab import curve as cv
from curvelab.errors import LineMissesPoint, NotHomogeneous, NotSingular, PointNotOnCurve, PthPower, SingularPoint
from curvelab.mpoly import MultiPoly, eval_codes, parse_poly, random_poly


def brute_points(C, k=1):
    """Normalized points of PG(2, q^k) on C, by a plain loop."""
    K = gf.extension(C.base, k)
    F = C.F.lift(K)
    cands = [(0, 0, 1)] + [(0, 1, b) for b in range(K.q)] + [(1, a, b) for a in range(K.q) for b in range(K.q)]
    return {c for c in cands if eval_codes(F, c, K) == 0}


def brute_singular(C, k=1):
    K = gf.extension(C.base, k)
    parts = [D.lift(K) for D in C.partials]
    return {c for c in brute_points(C, k) if all(eval_codes(D, c, K) == 0 for D in parts)}


def test_new_curve_checks():
    F4 = gf.build_field(2, 2)
    C = cv.new_curve(parse_poly("x^3+y^3+z^3", F4))
    assert C.d == 3 and C.irreducible_asserted
    with pytest.raises(PthPower):
        cv.new_curve(parse_poly("x^2 + y^2", gf.build_field(2)))
    with pytest.raises(NotHomogeneous):
        cv.new_curve(parse_poly("x^2 + y", gf.build_field(3)))
    assert corpus.get("sextic-f4").curve().d == 6
    with pytest.warns(UserWarning, match="z divides F"):
        cv.new_curve(parse_poly("x*z + y*z", gf.build_field(3)))


@pytest.mark.parametrize("name,k", [("hermitian-q2", 1), ("hermitian-q2", 2), ("sextic-f4", 1),
                                    ("hermitian-q3", 1), ("dls-q8", 1)])
def test_points_match_brute_force(name, k):
    C = corpus.get(name).curve()
    got = cv.points_over(C, k)
    assert {P.coords for P in got} == brute_points(C, k)
    assert len(got) == len({P.coords for P in got})


def test_point_counts():
    assert len(cv.points_over(corpus.get("hermitian-q2").curve())) == 9
    C1 = corpus.get("fermat13-f27").curve()
    assert cv.counts(C1) == (208, 208)
    E = corpus.get("sextic-f4").curve()
    assert cv.counts(E) == (7, 0)
    pg22 = {(0, 0, 1)} | {(0, 1, b) for b in (0, 1)} | {(1, a, b) for a in (0, 1) for b in (0, 1)}
    assert pg22 == {P.coords for P in cv.points_over(E)}


def test_points_deterministic_across_workers():
    C = corpus.get("hermitian-q3").curve()
    assert cv.points_over(C, 2, workers=1) == cv.points_over(C, 2, workers=3)


def test_multiplicities():
    E = corpus.get("sextic-f4").curve()
    for P in cv.points_over(E):
        assert cv.multiplicity(E, P) == 2
    F5 = gf.build_field(5)
    cusp = cv.new_curve(parse_poly("y^2*z - x^3", F5))
    O = cv.make_point((0, 0, 1), F5, F5)
    assert cv.multiplicity(cusp, O) == 2
    with pytest.raises(PointNotOnCurve):
        cv.multiplicity(cusp, cv.make_point((0, 1, 1), F5, F5))


def test_multiplicity_chart_independent():
    E = corpus.get("sextic-f4").curve()
    for P in cv.points_over(E):
        charts = [ch for ch, i in (("z", 2), ("y", 1), ("x", 0)) if P.coords[i]]
        assert len({cv.multiplicity(E, P, ch) for ch in charts}) == 1


def test_singular_points_scan():
    E = corpus.get("sextic-f4").curve()
    assert {P.coords for P in cv.singular_points_over(E, 1)} == brute_singular(E)
    assert len(cv.singular_points_over(E, 1)) == 7
    assert cv.singular_points_over(corpus.get("fermat13-f27").curve(), 2) == []
    assert cv.singular_points_over(corpus.get("c2-f27").curve(), 1) == []


@pytest.mark.parametrize("name", [c.name for c in corpus.CORPUS])
def test_singular_locus_agrees_with_scan(name):
    C = corpus.get(name).curve()
    locus = cv.singular_locus(C)
    assert locus.certified
    k_max = 2 if C.q < 27 else 1
    # every point found by the scan lies in the certified locus, with matching levels
    for P in cv.singular_points_over(C, k_max):
        assert P in locus.points
    for P in locus.points:
        if P.level <= k_max:
            assert P in cv.singular_points_over(C, k_max)


def test_c2_singular_point_orbit():
    C = corpus.get("c2-f27").curve()
    locus = cv.singular_locus(C)
    assert [(P.level, len(cv.orbit(P, C.base))) for P in locus.points] == [(2, 2)]
    assert cv.multiplicity(C, locus.points[0]) == 3


def test_tangent_lines():
    F5 = gf.build_field(5)
    conic = cv.new_curve(parse_poly("y*z - x^2", F5))
    O = cv.make_point((0, 0, 1), F5, F5)
    assert cv.tangent_line(conic, O).line == (0, 1, 0)
    assert cv.line_intersection_multiplicity(conic, O, (0, 1, 0)) == 2
    cusp = cv.new_curve(parse_poly("y^2*z - x^3", F5))
    assert cv.line_intersection_multiplicity(cusp, O, (0, 1, 0)) == 3
    with pytest.raises(SingularPoint):
        cv.tangent_line(cusp, O)
    with pytest.raises(LineMissesPoint):
        cv.line_intersection_multiplicity(conic, O, (0, 0, 1))
    H = corpus.get("hermitian-q2").curve()
    P = cv.make_point((0, 1, 1), H.base, H.base)
    assert cv.tangent_line(H, P).line == (0, 1, 1)


def test_line_component_is_infinite():
    F3 = gf.build_field(3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        C = cv.new_curve(parse_poly("x*z^2 + x^2*z + y^2*z", F3))
    O = cv.make_point((0, 1, 0), F3, F3)
    assert cv.line_intersection_multiplicity(C, O, (0, 0, 1)) == cv.INFINITE


@pytest.mark.parametrize("name", ["hermitian-q2", "hermitian-q3", "dls-q8", "sextic-f4"])
def test_tangent_at_smooth_points(name):
    C = corpus.get(name).curve()
    for P in cv.points_over(C):
        if not cv.is_smooth_point(C, P):
            continue
        T = cv.tangent_line(C, P)
        assert cv.line_intersection_multiplicity(C, P, T.line) >= 2


def test_tangent_cones():
    F5 = gf.build_field(5)
    O = cv.make_point((0, 0, 1), F5, F5)
    node = cv.new_curve(parse_poly("x*y*z + x^3 + y^3", F5))
    dirs = cv.tangent_cone(node, O)
    assert len(dirs) == 2 and all(t.multiplicity == 1 for t in dirs)
    cusp = cv.new_curve(parse_poly("y^2*z - x^3", F5))
    (t,) = cv.tangent_cone(cusp, O)
    assert t.multiplicity == 2
    with pytest.raises(NotSingular):
        cv.tangent_cone(cv.new_curve(parse_poly("y*z - x^2", F5)), O)
    E = corpus.get("sextic-f4").curve()
    for P in cv.points_over(E):
        dirs = cv.tangent_cone(E, P)
        assert len(dirs) == 2 and all(t.level == 1 and t.multiplicity == 1 for t in dirs)


def test_irrational_tangents():
    F3 = gf.build_field(3)
    # x^2 + y^2 is irreducible over GF(3): two conjugate tangents over GF(9)
    C = cv.new_curve(parse_poly("x^2*z + y^2*z + x^3 + y^3", F3))
    dirs = cv.tangent_cone(C, cv.make_point((0, 0, 1), F3, F3))
    assert sorted(t.level for t in dirs) == [2, 2]


def curves_strategy():
    @st.composite
    def build(draw):
        K = gf.build_field(*draw(st.sampled_from([(2, 2), (3, 1), (5, 1), (3, 2)])))
        rng = random.Random(draw(st.integers(0, 2**32)))
        d = draw(st.integers(1, 5))
        F = random_poly(K, 3, d, rng, 0.6, homogeneous=True)
        if not F.terms or cv.is_p_power(F):
            F = F + MultiPoly.var(K, 3, 0, d) + MultiPoly.var(K, 3, 1, d - 1) * MultiPoly.var(K, 3, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return cv.new_curve(F)
    return build()


@settings(max_examples=40, deadline=None)
@given(curves_strategy())
def test_euler_relation(C):
    K = C.base
    Fx, Fy, Fz = C.partials
    X = [MultiPoly.var(K, 3, i) for i in range(3)]
    lhs = X[0] * Fx + X[1] * Fy + X[2] * Fz
    assert lhs == C.F.scale(K.constant(C.d))


@settings(max_examples=30, deadline=None)
@given(curves_strategy())
def test_counts_and_scan_consistency(C):
    Mq, MqS = cv.counts(C)
    assert MqS <= Mq
    assert Mq == len(brute_points(C))
    assert Mq - MqS == len(brute_singular(C))


@settings(max_examples=25, deadline=None)
@given(curves_strategy(), st.integers(0, 2**32))
def test_transform_preserves_counts(C, seed):
    M = cv.random_pgl3(C.base, random.Random(seed))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        D = cv.transform(C, M)
    assert cv.counts(D) == cv.counts(C)


def test_transform_rejects_singular_matrix():
    C = corpus.get("hermitian-q2").curve()
    with pytest.raises(ValueError):
        cv.transform(C, ((1, 0, 0), (1, 0, 0), (0, 0, 1)))
