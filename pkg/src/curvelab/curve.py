"""Projective plane curves F(x, y, z) = 0 over GF(q) and their points.

Points over GF(q^k) are normalized (first nonzero coordinate 1) and stored
in their field of definition GF(q^level), so equal points compare equal.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf, upoly
from .errors import (
    DegreeTooSmall,
    FieldTooLarge,
    LineMissesPoint,
    NotHomogeneous,
    NotSingular,
    PointNotOnCurve,
    PthPower,
    SingularPoint,
    ZeroPolynomial,
)
from .mpoly import MultiPoly, dehomogenize, eval_codes, homogenize, parse_poly, translate, univariate_in

INFINITE = math.inf
CHARTS = ("z", "y", "x")
_CHART_IDX = {"z": 2, "y": 1, "x": 0}

# Field size (over GF(p)) up to which exact singular-point certification
# is attempted; larger residue fields leave the genus as an interval.
CERTIFY_FIELD_CAP = 2**32


# --- points -----------------------------------------------------------------------------

@dataclass(frozen=True, order=False)
class ProjPoint:
    """A point (a : b : c) with codes in ``field`` = GF(q^level)."""

    coords: tuple[int, int, int]
    field: gf.FieldSpec = field(compare=False)
    level: int = 1

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.q, self.coords))

    @property
    def elements(self) -> tuple[gf.FieldElement, ...]:
        return tuple(gf.FieldElement(self.field, c) for c in self.coords)

    def sort_key(self):
        return (self.level, _kind(self.coords), self.coords)

    def __str__(self):
        return "(" + " : ".join(gf.format_element(e) for e in self.elements) + ")"

    def in_field(self, K: gf.FieldSpec) -> tuple[int, int, int]:
        """Coordinates mapped into an extension K of the point's field."""
        if K is self.field:
            return self.coords
        emb = gf.embed(self.field, K)
        return tuple(emb.map_code(c) for c in self.coords)


def _kind(c):
    # scan order: (0:0:1), (0:1:b), (1:a:b)
    if c[0]:
        return 2
    return 1 if c[1] else 0


def normalize(coords, K: gf.FieldSpec) -> tuple[int, int, int]:
    for c in coords:
        if c:
            inv = K.inv(c)
            return tuple(K.mul(v, inv) for v in coords)
    raise ValueError("the zero vector is not a projective point")


def element_level(K: gf.FieldSpec, base: gf.FieldSpec, code: int) -> int:
    """Degree over ``base`` of the field generated by the element."""
    k = K.s // base.s
    for j in _divisors(k):
        if K.frob_q(code, base.q**j) == code:
            return j
    return k


def _divisors(n):
    return [j for j in range(1, n + 1) if n % j == 0]


def make_point(coords, K: gf.FieldSpec, base: gf.FieldSpec) -> ProjPoint:
    """Normalize and move the point into its field of definition over base."""
    c = normalize(coords, K)
    level = 1
    for v in c:
        if v:
            level = math.lcm(level, element_level(K, base, v))
    E = gf.extension(base, level)
    if E is not K:
        emb = gf.embed(E, K)
        c = tuple(emb.preimage(v) for v in c)
    return ProjPoint(c, E, level)


def frobenius_point(P: ProjPoint, base: gf.FieldSpec, times: int = 1) -> ProjPoint:
    K = P.field
    qq = base.q**times
    return ProjPoint(tuple(K.frob_q(c, qq) for c in P.coords), K, P.level)


def orbit(P: ProjPoint, base: gf.FieldSpec) -> list[ProjPoint]:
    out = [P]
    Q = frobenius_point(P, base)
    while Q != P:
        out.append(Q)
        Q = frobenius_point(Q, base)
    return out


def orbit_representative(P: ProjPoint, base: gf.FieldSpec) -> ProjPoint:
    return min(orbit(P, base), key=lambda X: X.sort_key())


@dataclass(frozen=True)
class TangentData:
    point: ProjPoint
    line: tuple[int, int, int]
    field: gf.FieldSpec


@dataclass(frozen=True)
class TangentDirection:
    """Linear factor a*u + b*v of the tangent cone in local chart coordinates."""

    form: tuple[int, int]
    field: gf.FieldSpec
    multiplicity: int
    level: int


# --- curves -------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PlaneCurve:
    F: MultiPoly
    d: int
    irreducible_asserted: bool = True
    warnings: tuple[str, ...] = ()

    @property
    def base(self) -> gf.FieldSpec:
        return self.F.field

    @property
    def q(self) -> int:
        return self.F.field.q

    @cached_property
    def partials(self) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        return tuple(self.F.derivative(i) for i in range(3))

    @cached_property
    def is_p_power(self) -> bool:
        return is_p_power(self.F)

    def text(self) -> str:
        from .mpoly import format_poly

        return format_poly(self.F)

    def __repr__(self):
        return f"PlaneCurve({self.text()!r} over {self.base!r})"


def is_p_power(F: MultiPoly) -> bool:
    """Over a perfect field F is a p-th power iff every exponent is divisible by p."""
    p = F.field.p
    return all(all(k % p == 0 for k in e) for e in F.terms)


def new_curve(F: MultiPoly, assert_irreducible: bool = True) -> PlaneCurve:
    if F.arity != 3:
        raise NotHomogeneous("a plane curve needs a form in x, y, z")
    if not F:
        raise ZeroPolynomial("the zero polynomial does not define a curve")
    if not F.is_homogeneous():
        raise NotHomogeneous("polynomial is not homogeneous")
    d = int(F.degree())
    if d < 1:
        raise DegreeTooSmall("a curve needs degree at least 1")
    if is_p_power(F):
        raise PthPower("polynomial is a p-th power")
    notes = []
    if d > 1:
        for i, v in enumerate("xyz"):
            if all(e[i] >= 1 for e in F.terms):
                msg = f"{v} divides F: the line {v} = 0 is a component"
                notes.append(msg)
                warnings.warn(msg, stacklevel=2)
    return PlaneCurve(F, d, assert_irreducible, tuple(notes))


def curve_from_text(text: str, p: int, s: int = 1, affine: bool = False,
                    assert_irreducible: bool = True) -> PlaneCurve:
    K = gf.build_field(p, s)
    if affine:
        f = parse_poly(text, K, 2)
        if not f:
            raise ZeroPolynomial("the zero polynomial does not define a curve")
        F = homogenize(f)
    else:
        F = parse_poly(text, K, 3)
    return new_curve(F, assert_irreducible)


def transform(C: PlaneCurve, matrix) -> PlaneCurve:
    """The curve F(M (x, y, z)^T) for an invertible 3x3 matrix of codes."""
    from .mpoly import substitute

    K = C.base
    if not det3(K, matrix):
        raise ValueError("transform matrix is singular")
    X = [MultiPoly.var(K, 3, i) for i in range(3)]
    images = []
    for row in matrix:
        acc = MultiPoly(K, 3)
        for c, v in zip(row, X):
            acc = acc + v.scale(c)
        images.append(acc)
    return new_curve(substitute(C.F, images), C.irreducible_asserted)


def det3(K: gf.FieldSpec, M) -> int:
    (a, b, c), (d, e, f), (g, h, i) = M
    mul, sub = K.mul, K.sub
    t1 = mul(a, sub(mul(e, i), mul(f, h)))
    t2 = mul(b, sub(mul(d, i), mul(f, g)))
    t3 = mul(c, sub(mul(d, h), mul(e, g)))
    return K.add(sub(t1, t2), t3)


def random_pgl3(K: gf.FieldSpec, rng) -> tuple[tuple[int, ...], ...]:
    """A uniformly random invertible 3x3 matrix over K (rejection sampling)."""
    while True:
        M = tuple(tuple(rng.randrange(K.q) for _ in range(3)) for _ in range(3))
        if det3(K, M):
            return M


# --- enumeration ------------------------------------------------------------------------------

def _check_plane_cap(Q: int):
    if Q * Q + Q + 1 > gf.enumeration_cap():
        raise FieldTooLarge(f"PG(2,{Q}) exceeds the enumeration cap")


def _horner_rows(F: MultiPoly, K: gf.FieldSpec, a_codes: np.ndarray) -> np.ndarray:
    """Values F(1, a, b) for a in a_codes (rows) and all b in K (columns)."""
    Q = K.q
    d = int(F.degree())
    b_codes = np.arange(Q, dtype=np.int64)
    # coefficient of b^l as a function of a: sum_j c * a^j
    by_l: dict[int, list] = {}
    for (i, j, l), c in F.terms.items():
        by_l.setdefault(l, []).append((j, c))
    acc = np.zeros((len(a_codes), Q), dtype=np.int64)
    for l in range(d, -1, -1):
        acc = K.vmul(acc, np.broadcast_to(b_codes, acc.shape))
        col = np.zeros(len(a_codes), dtype=np.int64)
        for j, c in by_l.get(l, ()):
            term = K.vmul(K.vpow(a_codes, j), np.full(len(a_codes), c, dtype=np.int64))
            col = K.vadd(col, term)
        acc = K.vadd(acc, np.broadcast_to(col[:, None], acc.shape))
    return acc


def _scan_block(args):
    F, K, lo, hi = args
    a_codes = np.arange(lo, hi, dtype=np.int64)
    vals = _horner_rows(F, K, a_codes)
    rows, cols = np.nonzero(vals == 0)
    return [(int(a_codes[r]), int(c)) for r, c in zip(rows, cols)]


def points_over(C: PlaneCurve, k: int = 1, workers: int = 1) -> list[ProjPoint]:
    """All points of C in PG(2, q^k) in scan order (0:0:1), (0:1:b), (1:a:b).

    Points are returned with coordinates in GF(q^k) (not descended).
    """
    K = gf.extension(C.base, k)
    Q = K.q
    _check_plane_cap(Q)
    FK = C.F.lift(K)
    out = []
    if eval_codes(FK, (0, 0, 1), K) == 0:
        out.append((0, 0, 1))
    g = univariate_in(FK, 2, (0, 1, 0))
    for b in range(Q):
        if upoly.evaluate(K, g, b) == 0:
            out.append((0, 1, b))
    block = max(1, min(Q, 2**16 // Q))
    jobs = [(FK, K, lo, min(Q, lo + block)) for lo in range(0, Q, block)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan_block, jobs))
    else:
        results = [_scan_block(j) for j in jobs]
    for res in results:
        out.extend((1, a, b) for a, b in res)
    return [ProjPoint(c, K, k) for c in out]


def is_on_curve(C: PlaneCurve, P: ProjPoint) -> bool:
    return eval_codes(C.F.lift(P.field), P.coords, P.field) == 0


def gradient_at(C: PlaneCurve, P: ProjPoint) -> tuple[int, int, int]:
    K = P.field
    return tuple(eval_codes(g.lift(K), P.coords, K) for g in C.partials)


def is_smooth_point(C: PlaneCurve, P: ProjPoint) -> bool:
    return any(gradient_at(C, P))


def choose_chart(P: ProjPoint) -> str:
    c = P.coords
    if c[2]:
        return "z"
    if c[1]:
        return "y"
    return "x"


def affine_coords(P: ProjPoint, chart: str) -> tuple[int, int]:
    K = P.field
    idx = _CHART_IDX[chart]
    c = P.coords
    if not c[idx]:
        raise ValueError(f"point {P} is not in chart {chart}")
    inv = K.inv(c[idx])
    return tuple(K.mul(v, inv) for i, v in enumerate(c) if i != idx)


def local_equation(C: PlaneCurve, P: ProjPoint, chart: str | None = None) -> MultiPoly:
    """Affine equation in the chart, moved so that P is the origin (over P's field)."""
    chart = chart or choose_chart(P)
    f = dehomogenize(C.F, chart).lift(P.field)
    a, b = affine_coords(P, chart)
    return translate(f, a, b)


def multiplicity(C: PlaneCurve, P: ProjPoint, chart: str | None = None) -> int:
    f = local_equation(C, P, chart)
    if not f or f.order() == 0:
        raise PointNotOnCurve(f"{P} is not on the curve")
    return int(f.order())


def rational_points(C: PlaneCurve, workers: int = 1) -> list[ProjPoint]:
    return points_over(C, 1, workers)


def counts(C: PlaneCurve, workers: int = 1) -> tuple[int, int]:
    """(M_q, M_q^S)."""
    pts = points_over(C, 1, workers)
    smooth = sum(1 for P in pts if is_smooth_point(C, P))
    return len(pts), smooth


def singular_points_over(C: PlaneCurve, k_max: int = 4, workers: int = 1) -> list[ProjPoint]:
    """Singular points of PG(2, q^k), k <= k_max, one per Frobenius orbit, by scan."""
    seen: set = set()
    out = []
    for k in range(1, k_max + 1):
        Q = C.q**k
        if Q * Q + Q + 1 > gf.enumeration_cap():
            break
        for P in points_over(C, k, workers):
            if is_smooth_point(C, P):
                continue
            R = make_point(P.coords, P.field, C.base)
            if R.level != k:
                continue
            rep = orbit_representative(R, C.base)
            if rep not in seen:
                seen.add(rep)
                out.append(rep)
    return sorted(out, key=lambda X: X.sort_key())


# --- tangents and intersections -------------------------------------------------------------------

def tangent_line(C: PlaneCurve, P: ProjPoint) -> TangentData:
    if not is_on_curve(C, P):
        raise PointNotOnCurve(f"{P} is not on the curve")
    grad = gradient_at(C, P)
    if not any(grad):
        raise SingularPoint(f"{P} is singular")
    return TangentData(P, normalize(grad, P.field), P.field)


def restrict_to_line(C: PlaneCurve, P: ProjPoint, D: tuple[int, int, int], K: gf.FieldSpec) -> list[int]:
    """F(P + t D) as a univariate polynomial in t over K."""
    FK = C.F.lift(K)
    Pc = P.in_field(K)
    lin = [[Pc[i], D[i]] for i in range(3)]
    cache = [{0: [1]} for _ in range(3)]

    def power(i, n):
        got = cache[i].get(n)
        if got is None:
            got = cache[i][n] = upoly.mul(K, power(i, n - 1), upoly.trim(list(lin[i])))
        return got

    acc: list[int] = []
    for e, c in FK.terms.items():
        t = [c]
        for i, n in enumerate(e):
            if n:
                t = upoly.mul(K, t, power(i, n))
        acc = upoly.add(K, acc, t)
    return acc


def line_intersection_multiplicity(C: PlaneCurve, P: ProjPoint, L) -> float | int:
    """Order of vanishing at P of F restricted to the line L; INFINITE for a component."""
    K = P.field
    L = tuple(L)
    if _dot(K, L, P.coords) != 0:
        raise LineMissesPoint(f"line does not pass through {P}")
    D = _second_point(K, L, P.coords)
    g = restrict_to_line(C, P, D, K)
    if not g:
        return INFINITE
    return next(i for i, c in enumerate(g) if c)


def _dot(K, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = K.add(acc, K.mul(x, y))
    return acc


def _cross(K, u, v):
    return (
        K.sub(K.mul(u[1], v[2]), K.mul(u[2], v[1])),
        K.sub(K.mul(u[2], v[0]), K.mul(u[0], v[2])),
        K.sub(K.mul(u[0], v[1]), K.mul(u[1], v[0])),
    )


def _second_point(K, L, P):
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        D = _cross(K, L, e)
        if any(D) and any(_cross(K, D, P)):
            return D
    raise ValueError("degenerate line")


def tangent_cone(C: PlaneCurve, P: ProjPoint) -> list[TangentDirection]:
    """Factor the lowest form at P into linear forms over extensions.

    Directions are given in local chart coordinates (u, v) as a*u + b*v,
    with each form stored in its field of definition.
    """
    f = local_equation(C, P)
    if not f or f.order() == 0:
        raise PointNotOnCurve(f"{P} is not on the curve")
    m = int(f.order())
    if m < 2:
        raise NotSingular(f"{P} is a smooth point")
    return factor_binary_form(f.homogeneous_part(m), C.base)


def factor_binary_form(L: MultiPoly, base: gf.FieldSpec) -> list[TangentDirection]:
    """Linear factors of a binary form over its splitting field, with multiplicities."""
    K = L.field
    m = int(L.degree())
    dense = [0] * (m + 1)
    for (i, j), c in L.terms.items():
        dense[i] = c  # coefficient of u^i v^(m-i)
    uni = upoly.trim(list(dense))
    out = []
    v_mult = m - (len(uni) - 1)
    if v_mult:
        out.append(TangentDirection((0, 1), base, v_mult, 1))
    for phi, mult in upoly.factor(K, uni):
        e = len(phi) - 1
        E = gf.extension(K, e)
        phiE = [gf.embed(K, E).map_code(c) for c in phi]
        for r in upoly.roots(E, phiE):
            # factor u - r v
            lev = element_level(E, base, r)
            W = gf.extension(base, lev)
            emb = gf.embed(W, E)
            form = (1, emb.preimage(E.neg(r)))
            out.append(TangentDirection(form, W, mult, lev))
    return out


# --- exact singular locus ----------------------------------------------------------------------------

@dataclass
class SingularLocus:
    points: list[ProjPoint]
    certified: bool
    notes: list[str] = field(default_factory=list)


def _resultant_in(f: MultiPoly, g: MultiPoly, var: int) -> list[int] | None:
    """Res_var(f, g) as a dense polynomial in the other variable over f.field.

    Computed by evaluation at points of an extension where both leading
    coefficients survive, then interpolation; None if not enough points.
    """
    B = f.field
    keep = 1 - var
    bound = int(f.degree()) * int(g.degree())
    lcf, lcg = f.lc_in(var), g.lc_in(var)
    k = 1
    while B.q**k < 2 * (bound + 1) + int(lcf.degree()) + int(lcg.degree()) + 2:
        k += 1
    K = gf.extension(B, k)
    fk, gk, lf, lg = (h.lift(K) for h in (f, g, lcf, lcg))
    xs, ys = [], []
    for x0 in range(K.q):
        vals = [0, 0]
        vals[keep] = x0
        if eval_codes(lf, vals, K) == 0 or eval_codes(lg, vals, K) == 0:
            continue
        uf = univariate_in(fk, var, vals)
        ug = univariate_in(gk, var, vals)
        xs.append(x0)
        ys.append(upoly.resultant(K, uf, ug))
        if len(xs) > bound:
            break
    if len(xs) <= bound:
        return None
    poly = upoly.interpolate(K, xs, ys)
    if K is B:
        return poly
    emb = gf.embed(B, K)
    return [emb.preimage(c) for c in poly]


def _common_gcd(K: gf.FieldSpec, polys: list[list[int]]) -> list[int] | None:
    nz = [upoly.trim(list(p)) for p in polys]
    nz = [p for p in nz if p]
    if not nz:
        return None
    g = nz[0]
    for h in nz[1:]:
        g = upoly.gcd(K, g, h)
    return upoly.monic(K, g)


def singular_locus(C: PlaneCurve) -> SingularLocus:
    """All singular points over the algebraic closure, one per Frobenius orbit.

    Affine part: the x-coordinates are roots of gcd(Res_y(f, f_x), Res_y(f, f_y));
    each irreducible factor is tested by a gcd in y over its residue field.
    The line at infinity is handled by a univariate gcd.  ``certified`` is
    False when a resultant vanishes identically or a residue field is too big.
    """
    B = C.base
    F = C.F
    Fx, Fy, Fz = C.partials
    found: dict = {}
    notes = []
    certified = True

    # line at infinity: (1 : t : 0) and (0 : 1 : 0)
    inf_polys = [_at_infinity(G) for G in (F, Fx, Fy, Fz)]
    g_inf = _common_gcd(B, inf_polys)
    if g_inf is None:
        certified = False
        notes.append("line at infinity lies in the singular locus")
    elif len(g_inf) > 1:
        for phi, _ in upoly.factor(B, g_inf):
            e = len(phi) - 1
            if B.q**e > CERTIFY_FIELD_CAP:
                certified = False
                notes.append(f"residue field of degree {e} too large")
                continue
            E = gf.extension(B, e)
            t0 = min(upoly.roots(E, _lift_codes(B, E, phi)))
            P = make_point((1, t0, 0), E, B)
            found[orbit_representative(P, B)] = True
    P010 = (0, 1, 0)
    if all(eval_codes(G, P010, B) == 0 for G in (F, Fx, Fy, Fz)):
        found[make_point(P010, B, B)] = True

    # affine part z = 1
    f = dehomogenize(F, "z")
    fx, fy = f.derivative(0), f.derivative(1)
    var = 1 if f.deg_in(1) >= 1 else 0
    keep = 1 - var
    if f.deg_in(var) < 1:
        return SingularLocus(sorted(found, key=lambda X: X.sort_key()), certified, notes)
    resultants = []
    for g in (fx, fy):
        if not g:
            continue
        if g.deg_in(var) < 1:
            # g depends on the kept variable only; it is its own eliminant
            resultants.append(univariate_in(g, keep, (0, 0)))
            continue
        r = _resultant_in(f, g, var)
        if r is None:
            certified = False
            notes.append("not enough evaluation points for a resultant")
            continue
        resultants.append(r)
    G = _common_gcd(B, resultants) if resultants else None
    if G is None:
        certified = False
        notes.append("eliminant vanishes identically")
        return SingularLocus(sorted(found, key=lambda X: X.sort_key()), certified, notes)
    if len(G) > 1:
        for phi, _ in upoly.factor(B, G):
            e = len(phi) - 1
            if B.q**e > CERTIFY_FIELD_CAP:
                certified = False
                notes.append(f"residue field of degree {e} too large")
                continue
            E = gf.extension(B, e)
            u0 = min(upoly.roots(E, _lift_codes(B, E, phi)))
            vals = [0, 0]
            vals[keep] = u0
            fE = [univariate_in(h.lift(E), var, vals) for h in (f, fx, fy)]
            h = _common_gcd(E, fE)
            if h is None:
                certified = False
                notes.append("a fibre of the projection lies in the singular locus")
                continue
            if len(h) <= 1:
                continue
            for psi, _ in upoly.factor(E, h):
                r = len(psi) - 1
                if E.q**r > CERTIFY_FIELD_CAP:
                    certified = False
                    notes.append(f"residue field of degree {e * r} too large")
                    continue
                W = gf.extension(E, r)
                y0 = min(upoly.roots(W, _lift_codes(E, W, psi)))
                pt = [0, 0, 1]
                pt[keep] = gf.embed(E, W).map_code(u0)
                pt[var] = y0
                P = make_point(tuple(pt), W, B)
                found[orbit_representative(P, B)] = True
    return SingularLocus(sorted(found, key=lambda X: X.sort_key()), certified, notes)


def _at_infinity(G: MultiPoly) -> list[int]:
    """G(1, t, 0) as a polynomial in t."""
    K = G.field
    out: dict[int, int] = {}
    for (i, j, k), c in G.terms.items():
        if k == 0:
            out[j] = K.add(out.get(j, 0), c)
    if not out:
        return []
    dense = [0] * (max(out) + 1)
    for j, c in out.items():
        dense[j] = c
    return upoly.trim(dense)


def _lift_codes(A: gf.FieldSpec, E: gf.FieldSpec, poly: list[int]) -> list[int]:
    if A is E:
        return list(poly)
    emb = gf.embed(A, E)
    return [emb.map_code(c) for c in poly]
