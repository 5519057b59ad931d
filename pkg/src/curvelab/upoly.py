"""Univariate polynomials over a finite field, as lists of element codes.

Lists are low-degree first and trimmed (no trailing zeros); ``[]`` is the
zero polynomial.  ``F`` is any object with the :class:`~curvelab.gf.FieldSpec`
code interface (``p``, ``q``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``pow``).
"""

from __future__ import annotations

import random

from .errors import DivisionByZero


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list[int]) -> int:
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == 0:
        return []
    if c == 1:
        return list(a)
    return trim([F.mul(x, c) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F, a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], trim(a)
    inv_lead = F.inv(b[-1])
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            c = F.mul(c, inv_lead)
            quo[i - db] = c
            shift = i - db
            for j, bj in enumerate(b):
                if bj:
                    a[shift + j] = F.sub(a[shift + j], F.mul(c, bj))
    return trim(quo), trim(a[:db])


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd (zero if both inputs are zero)."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def powmod(F, base, e, m):
    out = [1]
    base = rem(F, base, m)
    while e:
        if e & 1:
            out = rem(F, mul(F, out, base), m)
        e >>= 1
        if e:
            base = rem(F, mul(F, base, base), m)
    return out if len(m) > 1 else []


def deriv(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(a[i], i % F.p) if i % F.p else 0)
    return trim(out)


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def resultant(F, a, b) -> int:
    """Res(a, b) by the Euclidean recursion; 0 if either input is zero."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return 0
    acc = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return F.mul(acc, F.pow(b[0], m))
        r = rem(F, a, b)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2 == 1:
            acc = F.neg(acc)
        acc = F.mul(acc, F.pow(b[-1], m - k))
        a, b = b, r


def interpolate(F, xs, ys):
    """Lagrange interpolation via the Newton form."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            num = F.sub(coef[i], coef[i - 1])
            den = F.sub(xs[i], xs[i - j])
            coef[i] = F.mul(num, F.inv(den))
    out = [coef[-1]] if n else []
    for i in range(n - 2, -1, -1):
        # out = out * (x - xs[i]) + coef[i]
        shifted = [0] + out
        for k, c in enumerate(out):
            shifted[k] = F.sub(shifted[k], F.mul(c, xs[i]))
        shifted[0] = F.add(shifted[0], coef[i])
        out = shifted
    return trim(out)


# --- factorization ---------------------------------------------------------------

def _xq_minus_x(F, f, q_power):
    xp = powmod(F, [0, 1], q_power, f)
    return sub(F, xp, [0, 1])


def squarefree_decomposition(F, f):
    """[(g, k)] with f = lc * prod g^k, each g monic squarefree (Yun, char p)."""
    f = monic(F, f)
    out: dict[int, list] = {}
    _sqf(F, f, 1, out)
    return sorted(((g, k) for k, gs in out.items() for g in gs), key=lambda t: (t[1], t[0]))


def _sqf(F, f, mult, out):
    if len(f) <= 1:
        return
    p = F.p
    df = deriv(F, f)
    if not df:
        # f = g(x^p): take the p-th root of every coefficient
        root_exp = F.q // p
        g = [F.pow(f[i], root_exp) for i in range(0, len(f), p)]
        _sqf(F, g, mult * p, out)
        return
    c = gcd(F, f, df)
    w = divmod_(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if len(z) > 1:
            out.setdefault(mult * i, []).append(monic(F, z))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if len(c) > 1:
        root_exp = F.q // p
        g = [F.pow(c[i], root_exp) for i in range(0, len(c), p)]
        _sqf(F, g, mult * p, out)


def distinct_degree(F, f):
    """[(g, d)]: g is the product of the degree-d irreducible factors of f."""
    f = monic(F, f)
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = rem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(F, g, d, rng=None):
    """Split a monic squarefree g whose irreducible factors all have degree d."""
    n = len(g) - 1
    if n == d:
        return [g]
    if rng is None:
        rng = random.Random(0x5EED)
    q = F.q
    while True:
        a = trim([rng.randrange(q) for _ in range(n)])
        if len(a) < 2:
            continue
        if F.p == 2:
            bits = (q.bit_length() - 1) * d
            t, cur = list(a), list(a)
            for _ in range(bits - 1):
                cur = rem(F, mul(F, cur, cur), g)
                t = add(F, t, cur)
            b = t
        else:
            b = sub(F, powmod(F, a, (q**d - 1) // 2, g), [1])
        h = gcd(F, g, b)
        if 1 < len(h) < len(g):
            other = divmod_(F, g, h)[0]
            return equal_degree(F, h, d, rng) + equal_degree(F, monic(F, other), d, rng)


def factor(F, f, rng=None):
    """Monic irreducible factors with multiplicity, sorted by (degree, codes)."""
    f = trim(list(f))
    if len(f) <= 1:
        return []
    out = []
    for g, k in squarefree_decomposition(F, f):
        for gd, d in distinct_degree(F, g):
            for h in equal_degree(F, gd, d, rng):
                out.append((h, k))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def roots(F, f, rng=None) -> list[int]:
    """Distinct roots of f in F, sorted by code."""
    f = monic(F, trim(list(f)))
    if len(f) <= 1:
        return []
    found = []
    if f[0] == 0:
        found.append(0)
        while f and f[0] == 0:
            f = f[1:]
    if len(f) > 1:
        g = gcd(F, f, _xq_minus_x(F, f, F.q))
        if len(g) > 1:
            for h in equal_degree(F, g, 1, rng):
                found.append(F.neg(h[0]))
    return sorted(set(found))
