import random
import warnings

import pytest

from curvelab import corpus, frobclass, gf
from curvelab import curve as cv
from curvelab.curve import INFINITE
from curvelab.errors import NotEnoughPoints
from curvelab.mpoly import parse_poly

FNC_NAMES = ["sextic-f4", "fermat13-f27", "c2-f27", "hermitian-q2", "hermitian-q3", "dls-q8"]


def conic():
    return cv.new_curve(parse_poly("y*z - x^2", gf.build_field(5)))


def transformed(C, seed):
    M = cv.random_pgl3(C.base, random.Random(seed))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return cv.transform(C, M)


@pytest.mark.parametrize("name", FNC_NAMES)
def test_corpus_is_fnc_in_every_chart(name):
    C = corpus.get(name).curve()
    charts = frobclass.usable_charts(C)
    assert charts
    for ch in charts:
        assert frobclass.fnc_test(C, ch)


def test_conic_is_classical():
    assert not frobclass.fnc_test(conic())
    assert frobclass.usable_charts(conic()) == ["z", "y", "x"]


def test_hermitian_criterion_polynomial():
    # x^(m+1) + y^(m+1) + 1 over GF(m^2): the criterion polynomial is exactly f^m - f
    for name, m in (("hermitian-q2", 2), ("hermitian-q3", 3)):
        C = corpus.get(name).curve()
        f, h = frobclass.criterion_polynomial(C, "z")
        assert h == f ** m - f


@pytest.mark.parametrize("name", ["hermitian-q2", "sextic-f4", "hermitian-q3"])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_fnc_invariant_under_projective_change(name, seed):
    D = transformed(corpus.get(name).curve(), seed)
    assert frobclass.fnc_test(D)
    for ch in frobclass.usable_charts(D):
        assert frobclass.fnc_test(D, ch)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_classical_invariant_under_projective_change(seed):
    assert not frobclass.fnc_test(transformed(conic(), seed))


def test_lines_are_degenerate():
    L = cv.new_curve(parse_poly("x + y + z", gf.build_field(3)))
    v = frobclass.analyze_frobenius(L)
    assert v.fnc and v.degenerate and v.nu is None
    assert any("degree 1" in w for w in v.warnings)


@pytest.mark.parametrize("name,k", [("hermitian-q2", 3), ("sextic-f4", 3), ("dls-q8", 4), ("hermitian-q3", 3)])
def test_geometric_tangency_matches_algebraic_test(name, k):
    # independent route: the tangent at each sampled point is checked to pass through its Frobenius image
    C = corpus.get(name).curve()
    got = frobclass.sample_tangent_multiplicities(C, samples=12, k_max=k)
    assert len(got) == 12
    assert all(frobclass.frobenius_tangency(C, P) for P, _ in got)


def test_dls_has_no_new_points_below_level_four():
    # L-polynomial (1 + 4t + 8t^2)^14 gives 65 points over GF(8), GF(64) and GF(512)
    C = corpus.get("dls-q8").curve()
    assert [len(cv.points_over(C, k)) for k in (1, 2, 3)] == [65, 65, 65]
    assert frobclass.sample_tangent_multiplicities(C, samples=4, k_max=3) == []


def test_classical_curve_fails_tangency_somewhere():
    C = conic()
    got = frobclass.sample_tangent_multiplicities(C, samples=12, k_max=3)
    assert not all(frobclass.frobenius_tangency(C, P) for P, _ in got)


def brute_epsilon2(C, k):
    """Minimum tangent contact over every smooth point of C over GF(q^k) that is not rational."""
    best = None
    for P in cv.points_over(C, k):
        if P.level == 1 or not cv.is_smooth_point(C, P):
            continue
        m = cv.line_intersection_multiplicity(C, P, cv.tangent_line(C, P).line)
        if m != INFINITE and (best is None or m < best):
            best = m
    return best


@pytest.mark.parametrize("name,k", [("hermitian-q2", 3), ("sextic-f4", 3), ("hermitian-q3", 3)])
def test_epsilon2_matches_exhaustive_minimum(name, k):
    C = corpus.get(name).curve()
    est, conf = frobclass.epsilon2(C, samples=20, k_max=k)
    assert est == brute_epsilon2(C, k)
    assert conf >= 0.5


@pytest.mark.parametrize("curve,eps,nu", [
    ("conic", 2, 1),
    ("hermitian-q2", 2, 2),
    ("fermat13-f27", 3, 3),
    ("sextic-f4", 4, 4),
    ("hermitian-q3", 3, 3),
    ("dls-q8", 2, 2),
    ("c2-f27", 3, 3),
])
def test_frobenius_orders(curve, eps, nu):
    C = conic() if curve == "conic" else corpus.get(curve).curve()
    v = frobclass.analyze_frobenius(C, samples=20)
    assert (v.epsilon2, v.nu) == (eps, nu)
    assert v.confidence >= 0.5
    assert not any(w.startswith("FINDING") for w in v.warnings)
    assert v.nu == 1 or frobclass.is_p_power_int(v.nu, C.base.p)


def test_sampling_deterministic_across_workers():
    C = corpus.get("hermitian-q3").curve()
    a = frobclass.sample_tangent_multiplicities(C, samples=10, k_max=3, seed=5, workers=1)
    b = frobclass.sample_tangent_multiplicities(C, samples=10, k_max=3, seed=5, workers=3)
    assert a == b
    c = frobclass.sample_tangent_multiplicities(C, samples=10, k_max=3, seed=6, workers=1)
    assert a != c


@pytest.mark.parametrize("name", ["fermat13-f27", "hermitian-q3"])
def test_d_range_for_nonsingular_fnc(name):
    # nonsingular FNC curves with nu > 2 satisfy sqrt(q) + 1 <= d <= (q - 1)/(nu - 1)
    C = corpus.get(name).curve()
    assert cv.singular_locus(C).points == []
    v = frobclass.analyze_frobenius(C, samples=10)
    assert v.nu > 2
    assert (C.d - 1) ** 2 >= C.q
    assert C.d * (v.nu - 1) <= C.q - 1


def test_not_enough_points():
    # every point of the DLS curve over GF(512) is already rational
    with pytest.raises(NotEnoughPoints):
        frobclass.epsilon2(corpus.get("dls-q8").curve(), samples=5, k_max=3)
    # the Hermitian curve over GF(9) is minimal over GF(81): 28 points, none new
    assert len(cv.points_over(corpus.get("hermitian-q3").curve(), 2)) == 28


def test_is_p_power_int():
    assert [n for n in range(1, 30) if frobclass.is_p_power_int(n, 3)] == [1, 3, 9, 27]
    assert not frobclass.is_p_power_int(6, 2)
