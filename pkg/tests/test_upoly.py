import random

from hypothesis import given, settings
from hypothesis import strategies as st

from curvelab import gf, upoly

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def polys(K, max_deg=6, nonzero=True):
    return st.lists(st.integers(0, K.q - 1), min_size=2 if nonzero else 0, max_size=max_deg + 1).map(
        lambda c: upoly.trim(c)).filter(lambda c: len(c) > 1 or not nonzero)


def det(K, M):
    """Determinant by Gaussian elimination (oracle for the resultant)."""
    M = [list(r) for r in M]
    n = len(M)
    acc = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            acc = K.neg(acc)
        acc = K.mul(acc, M[c][c])
        inv = K.inv(M[c][c])
        for r in range(c + 1, n):
            f = K.mul(M[r][c], inv)
            if f:
                M[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[r], M[c])]
    return acc


def sylvester(K, a, b):
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + a[::-1] + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b[::-1] + [0] * (m - 1 - i))
    return det(K, rows)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_divmod_identity(ps, data):
    K = gf.build_field(*ps)
    a = data.draw(polys(K, 8, nonzero=False))
    b = data.draw(polys(K, 4))
    qt, r = upoly.divmod_(K, a, b)
    assert upoly.add(K, upoly.mul(K, qt, b), r) == upoly.trim(list(a))
    assert upoly.deg(r) < upoly.deg(b)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_resultant_matches_sylvester(ps, data):
    K = gf.build_field(*ps)
    a = data.draw(polys(K, 5))
    b = data.draw(polys(K, 5))
    assert upoly.resultant(K, a, b) == sylvester(K, a, b)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_roots_match_brute_force(ps, data):
    K = gf.build_field(*ps)
    f = data.draw(polys(K, 7))
    assert upoly.roots(K, f) == [x for x in range(K.q) if upoly.evaluate(K, f, x) == 0]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_factor_reconstructs(ps, data):
    K = gf.build_field(*ps)
    f = data.draw(polys(K, 8))
    prod = [f[-1]]
    for g, k in upoly.factor(K, f):
        assert g[-1] == 1
        for _ in range(k):
            prod = upoly.mul(K, prod, g)
        if upoly.deg(g) <= 3:
            # degree <= 3 factors are irreducible iff rootless (or linear)
            assert upoly.deg(g) == 1 or not upoly.roots(K, g)
    assert prod == f


def test_factor_known():
    K = gf.build_field(2, 1)
    # x^4 + x = x (x + 1) (x^2 + x + 1) over GF(2)
    assert upoly.factor(K, [0, 1, 0, 0, 1]) == [([0, 1], 1), ([1, 1], 1), ([1, 1, 1], 1)]
    F5 = gf.build_field(5, 1)
    # (x - 1)^3 (x^2 + 2) over GF(5)
    f = upoly.mul(F5, upoly.mul(F5, [4, 1], upoly.mul(F5, [4, 1], [4, 1])), [2, 0, 1])
    assert upoly.factor(F5, f) == [([4, 1], 3), ([2, 0, 1], 1)]


def test_squarefree_char_p():
    K = gf.build_field(3, 1)
    # x^3 + 1 = (x + 1)^3 is a p-th power
    assert upoly.squarefree_decomposition(K, [1, 0, 0, 1]) == [([1, 1], 3)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_interpolate(ps, data):
    K = gf.build_field(*ps)
    n = data.draw(st.integers(1, K.q))
    xs = random.Random(n).sample(range(K.q), n)
    ys = data.draw(st.lists(st.integers(0, K.q - 1), min_size=n, max_size=n))
    f = upoly.interpolate(K, xs, ys)
    assert upoly.deg(f) < n
    assert [upoly.evaluate(K, f, x) for x in xs] == ys


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_gcd_divides_both(ps, data):
    K = gf.build_field(*ps)
    a = data.draw(polys(K, 6))
    b = data.draw(polys(K, 6))
    c = data.draw(polys(K, 3))
    g = upoly.gcd(K, upoly.mul(K, a, c), upoly.mul(K, b, c))
    assert g[-1] == 1
    assert not upoly.rem(K, upoly.mul(K, a, c), g)
    assert not upoly.rem(K, g, upoly.gcd(K, c, c))
