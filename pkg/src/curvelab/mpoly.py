"""Sparse polynomials in x, y (arity 2) or x, y, z (arity 3) over a finite field.

Terms map exponent tuples to nonzero element codes of ``field``.  Iteration
and printing follow graded-lex order (higher total degree first, then
lexicographically larger exponent vectors first).
"""

from __future__ import annotations

import math
import os
import random
from typing import Iterable, Mapping, Sequence

from . import gf, upoly
from .errors import (
    ArityMismatch,
    BadCoefficient,
    DegreeTooSmall,
    FieldMismatch,
    NotHomogeneous,
    PolySyntaxError,
    UnknownVariable,
    VariableAbsent,
    ZeroDivisor,
)

VARS = "xyz"
NEG_INF = -math.inf

# Re-multiply every pseudo-division result when set (test builds turn it on).
CHECK_IDENTITIES = bool(os.environ.get("CURVELAB_CHECK"))


def _order_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Immutable sparse polynomial; build with the constructors or operators."""

    __slots__ = ("field", "arity", "terms", "_hash")

    def __init__(self, field: gf.FieldSpec, arity: int, terms: Mapping[tuple, int] | None = None):
        if arity not in (2, 3):
            raise ArityMismatch(f"arity must be 2 or 3, got {arity}")
        self.field = field
        self.arity = arity
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != arity:
                    raise ArityMismatch(f"exponent {e} does not have arity {arity}")
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, field, arity):
        return cls(field, arity)

    @classmethod
    def constant(cls, field, arity, code: int):
        return cls(field, arity, {(0,) * arity: code})

    @classmethod
    def var(cls, field, arity, index: int, power: int = 1):
        e = [0] * arity
        e[index] = power
        return cls(field, arity, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, exps, code: int = 1):
        return cls(field, len(exps), {tuple(exps): code})

    # -- basic queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def order(self):
        """Minimal total degree of a term (NEG_INF for zero)."""
        if not self.terms:
            return NEG_INF
        return min(sum(e) for e in self.terms)

    def deg_in(self, var: int):
        if not self.terms:
            return NEG_INF
        return max(e[var] for e in self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]))

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly(self.field, self.arity, {e: c for e, c in self.terms.items() if sum(e) == k})

    def coeffs_in(self, var: int) -> dict[int, "MultiPoly"]:
        """Write self = sum_k c_k * var^k with var-free c_k."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            e2 = list(e)
            e2[var] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: MultiPoly(self.field, self.arity, t) for k, t in out.items()}

    def lc_in(self, var: int) -> "MultiPoly":
        if not self.terms:
            raise ZeroDivisor("leading coefficient of the zero polynomial")
        return self.coeffs_in(var)[self.deg_in(var)]

    # -- equality -------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field is other.field and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.field.s, self.arity, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.field!r}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic -------------------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.field is not self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, gf.FieldElement):
            if other.owner is not self.field:
                raise FieldMismatch(f"{other.owner} vs {self.field}")
            return MultiPoly.constant(self.field, self.arity, other.value)
        if isinstance(other, int):
            return MultiPoly.constant(self.field, self.arity, other % self.field.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(F, self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return MultiPoly(F, self.arity, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
        return MultiPoly(F, self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.field, self.arity, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, code: int) -> "MultiPoly":
        F = self.field
        if code == 0:
            return MultiPoly(F, self.arity)
        return MultiPoly(F, self.arity, {e: F.mul(c, code) for e, c in self.terms.items()})

    def shift(self, exps) -> "MultiPoly":
        """Multiply by the monomial with exponents ``exps``."""
        return MultiPoly(self.field, self.arity,
                         {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def monic(self) -> "MultiPoly":
        """Scale so the leading graded-lex coefficient is 1."""
        if not self.terms:
            return self
        lead = self.sorted_terms()[0][1]
        return self.scale(self.field.inv(lead))

    def map_field(self, emb: gf.Embedding) -> "MultiPoly":
        if emb.source is not self.field:
            raise FieldMismatch(f"embedding source {emb.source} is not {self.field}")
        return MultiPoly(emb.target, self.arity, {e: emb.map_code(c) for e, c in self.terms.items()})

    def lift(self, target: gf.FieldSpec) -> "MultiPoly":
        return self if target is self.field else self.map_field(gf.embed(self.field, target))

    def derivative(self, var: int) -> "MultiPoly":
        return hasse_derivative(self, var, 1)

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(i) for i in range(self.arity)]


def poly_from_text(text: str, field: gf.FieldSpec, arity: int = 3) -> MultiPoly:
    return parse_poly(text, field, arity)


# --- evaluation ------------------------------------------------------------------------

def eval_codes(f: MultiPoly, codes: Sequence[int], K: gf.FieldSpec | None = None) -> int:
    """Evaluate f (coefficients already in K) at a point given by codes of K."""
    K = f.field if K is None else K
    powers = [dict() for _ in codes]
    acc = 0
    for e, c in f.terms.items():
        v = c
        for i, k in enumerate(e):
            if k:
                pw = powers[i].get(k)
                if pw is None:
                    pw = powers[i][k] = K.pow(codes[i], k)
                v = K.mul(v, pw)
                if not v:
                    break
        acc = K.add(acc, v)
    return acc


def evaluate(f: MultiPoly, pt: Sequence[gf.FieldElement], emb: gf.Embedding | None = None) -> gf.FieldElement:
    if len(pt) != f.arity:
        raise ArityMismatch(f"point of length {len(pt)} for arity {f.arity}")
    K = pt[0].owner if pt else f.field
    if any(e.owner is not K for e in pt):
        raise FieldMismatch("point coordinates in different fields")
    if K is not f.field:
        if emb is None:
            try:
                emb = gf.embed(f.field, K)
            except gf.NotAnExtension as exc:
                raise FieldMismatch(str(exc)) from None
        f = f.map_field(emb)
    return gf.FieldElement(K, eval_codes(f, [e.value for e in pt], K))


def univariate_in(f: MultiPoly, var: int, values: Sequence[int]) -> list[int]:
    """Substitute codes for every variable except ``var``; dense list in var."""
    F = f.field
    out: dict[int, int] = {}
    for e, c in f.terms.items():
        v = c
        for i, k in enumerate(e):
            if i != var and k:
                v = F.mul(v, F.pow(values[i], k))
        if v:
            out[e[var]] = F.add(out.get(e[var], 0), v)
    if not out:
        return []
    dense = [0] * (max(out) + 1)
    for k, v in out.items():
        dense[k] = v
    return upoly.trim(dense)


# --- derivatives and substitutions --------------------------------------------------------

def binom_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        out = out * math.comb(a, b) % p
        n //= p
        k //= p
    return out


def hasse_derivative(f: MultiPoly, var: int, k: int) -> MultiPoly:
    if k == 0:
        return f
    F, p = f.field, f.field.p
    out: dict = {}
    for e, c in f.terms.items():
        n = e[var]
        b = binom_mod_p(n, k, p)
        if b:
            e2 = list(e)
            e2[var] = n - k
            e2 = tuple(e2)
            out[e2] = F.add(out.get(e2, 0), F.mul(c, b))
    return MultiPoly(F, f.arity, out)


def substitute(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """f(images[0], images[1], ...); images share a field and arity."""
    if len(images) != f.arity:
        raise ArityMismatch("one image per variable is required")
    target = images[0]
    F = target.field
    if f.field is not F:
        f = f.lift(F)
    cache: list[dict[int, MultiPoly]] = [{} for _ in images]

    def power(i, k):
        got = cache[i].get(k)
        if got is None:
            got = cache[i][k] = images[i] ** k
        return got

    acc = MultiPoly(F, target.arity)
    for e, c in f.terms.items():
        t = MultiPoly.constant(F, target.arity, c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        acc = acc + t
    return acc


def translate(f: MultiPoly, *shifts) -> MultiPoly:
    """f(x + a, y + b[, z + c]); shifts are FieldElements or codes of f.field."""
    if len(shifts) != f.arity:
        raise ArityMismatch("one shift per variable is required")
    F = f.field
    codes = []
    for s in shifts:
        if isinstance(s, gf.FieldElement):
            if s.owner is not F:
                raise FieldMismatch(f"{s.owner} vs {F}")
            codes.append(s.value)
        else:
            codes.append(int(s))
    images = []
    for i, c in enumerate(codes):
        images.append(MultiPoly.var(F, f.arity, i) + MultiPoly.constant(F, f.arity, c))
    return substitute(f, images)


def homogenize(f: MultiPoly, d: int | None = None) -> MultiPoly:
    """Arity-2 f -> arity-3 form z^d f(x/z, y/z)."""
    if f.arity != 2:
        raise ArityMismatch("homogenize expects an affine (arity 2) polynomial")
    deg = f.degree()
    if d is None:
        d = max(int(deg), 0) if f else 0
    if f and d < deg:
        raise DegreeTooSmall(f"degree {d} is below deg f = {deg}")
    return MultiPoly(f.field, 3, {(a, b, d - a - b): c for (a, b), c in f.terms.items()})


_CHART_INDEX = {"z": 2, "y": 1, "x": 0}


def dehomogenize(F: MultiPoly, chart: str = "z") -> MultiPoly:
    """Set the chart variable to 1.  Remaining variables keep their order.

    chart 'z' -> f(x, y); 'y' -> f(x, z); 'x' -> f(y, z).
    """
    if F.arity != 3:
        raise ArityMismatch("dehomogenize expects a form in x, y, z")
    if not F.is_homogeneous():
        raise NotHomogeneous("polynomial is not homogeneous")
    idx = _CHART_INDEX[chart]
    out: dict = {}
    K = F.field
    for e, c in F.terms.items():
        e2 = tuple(v for i, v in enumerate(e) if i != idx)
        out[e2] = K.add(out.get(e2, 0), c)
    return MultiPoly(K, 2, out)


def rehomogenize(f: MultiPoly, d: int, chart: str = "z") -> MultiPoly:
    """Inverse of dehomogenize for the given chart and degree."""
    idx = _CHART_INDEX[chart]
    out = {}
    for (a, b), c in f.terms.items():
        e = [a, b]
        e.insert(idx, d - a - b)
        out[tuple(e)] = c
    return MultiPoly(f.field, 3, out)


# --- division -------------------------------------------------------------------------------

def pseudo_divrem(h: MultiPoly, f: MultiPoly, var: int):
    """(Q, R, power) with lc_var(f)^power * h = Q*f + R and deg_var R < deg_var f.

    If lc_var(f) is a constant, ordinary division is used and power = 0.
    """
    h._check(f)
    if not f:
        raise ZeroDivisor("pseudo-division by zero")
    n = f.deg_in(var)
    if n < 1:
        raise VariableAbsent(f"divisor has degree {n} in {VARS[var]}")
    F = f.field
    lc = f.lc_in(var)
    const_lc = lc.is_constant()
    lc_inv = F.inv(lc.coefficient((0,) * f.arity)) if const_lc else None
    Q = MultiPoly(F, f.arity)
    R = h
    power = 0
    while R and R.deg_in(var) >= n:
        k = R.deg_in(var) - n
        shift = [0] * f.arity
        shift[var] = k
        lcR = R.lc_in(var).shift(shift)
        if const_lc:
            t = lcR.scale(lc_inv)
            R = R - t * f
            Q = Q + t
        else:
            R = lc * R - lcR * f
            Q = lc * Q + lcR
            power += 1
    if CHECK_IDENTITIES:
        lhs = h * (lc ** power)
        if lhs != Q * f + R:
            raise AssertionError("pseudo-division identity failed")
    return Q, R, power


def divisibility_variable(f: MultiPoly) -> int:
    """Variable of maximal degree in f; ties prefer a constant leading coefficient."""
    best = None
    for v in range(f.arity):
        dv = f.deg_in(v)
        if dv < 1:
            continue
        key = (dv, f.lc_in(v).is_constant())
        if best is None or key > best[0]:
            best = (key, v)
    if best is None:
        raise VariableAbsent("divisor is constant")
    return best[1]


def divides(f: MultiPoly, h: MultiPoly, var: int | None = None) -> bool:
    """True iff f | h, assuming f irreducible.

    A zero pseudo-remainder gives f | lc^power * h, and an irreducible f of
    positive degree in ``var`` cannot divide the var-free lc, so f | h.
    """
    f._check(h)
    if not f:
        raise ZeroDivisor("divisibility by the zero polynomial")
    if not h:
        return True
    if f.is_constant():
        return True
    if var is None:
        var = divisibility_variable(f)
    _, R, _ = pseudo_divrem(h, f, var)
    return not R


def curve_points_affine(f: MultiPoly, count: int, rng: random.Random, max_level: int = 12):
    """Distinct affine zeros of f over GF(q^k), k = 1, 2, ...; returns (K, points).

    Points are collected at the first level where ``count`` of them are found.
    """
    if f.arity != 2:
        raise ArityMismatch("affine point sampling needs arity 2")
    var = 1 if f.deg_in(1) >= 1 else 0
    other = 1 - var
    base = f.field
    for k in range(1, max_level + 1):
        K = gf.extension(base, k)
        fk = f.lift(K)
        pts = set()
        tries = 0
        budget = max(4 * count, 64)
        xs = range(K.q) if K.q <= budget else None
        while len(pts) < count and tries < budget:
            x0 = xs[tries] if xs is not None else rng.randrange(K.q)
            tries += 1
            vals = [0, 0]
            vals[other] = x0
            uni = univariate_in(fk, var, vals)
            if not uni:
                continue
            for r in upoly.roots(K, uni):
                pt = [0, 0]
                pt[other], pt[var] = x0, r
                pts.add(tuple(pt))
            if xs is not None and tries >= len(xs):
                break
        if len(pts) >= count:
            return K, sorted(pts)
    raise RuntimeError("could not find enough curve points")


def divides_by_evaluation(f: MultiPoly, h: MultiPoly, seed: int = 0) -> bool:
    """Independent check of f | h for irreducible affine f.

    If h vanishes at more than deg f * deg h points of f = 0, Bezout forces
    f | h; here 2 * deg f * deg h points are sampled over an extension.
    """
    if not h:
        return True
    if f.is_constant():
        return True
    need = max(2 * int(f.degree()) * max(int(h.degree()), 1), 1)
    K, pts = curve_points_affine(f, need, random.Random(seed))
    hk = h.lift(K)
    return all(eval_codes(hk, pt, K) == 0 for pt in pts)


# --- text format ----------------------------------------------------------------------------------

def _format_coeff(F: gf.FieldSpec, code: int, dlog: bool) -> str:
    if code < F.p:
        return str(code)
    return gf.format_element(gf.FieldElement(F, code), dlog=dlog)


def format_poly(f: MultiPoly, dlog: bool = False) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            VARS[i] if k == 1 else f"{VARS[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            pieces.append(_format_coeff(f.field, c, dlog))
        elif c == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{_format_coeff(f.field, c, dlog)}*{mono}")
    return " + ".join(pieces)


class _Parser:
    def __init__(self, text: str, field: gf.FieldSpec, arity: int):
        self.text = text
        self.pos = 0
        self.field = field
        self.arity = arity

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise PolySyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            got = self.text[start] if start < len(self.text) else "end of input"
            raise PolySyntaxError(f"expected an unsigned integer, got {got!r}", start)
        return int(self.text[start:self.pos])

    def parse(self) -> MultiPoly:
        F = self.field
        acc: dict = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            e, c = self.term()
            if sign < 0:
                c = F.neg(c)
            acc[e] = F.add(acc.get(e, 0), c)
            ch = self.peek()
            if ch == "":
                break
            if ch not in "+-":
                raise PolySyntaxError(f"unexpected character {ch!r}", self.pos)
            sign = -1 if ch == "-" else 1
            self.pos += 1
        return MultiPoly(F, self.arity, acc)

    def term(self):
        F = self.field
        ch = self.peek()
        coeff = 1
        exps = [0] * self.arity
        if ch.isdigit() or ch in "g[":
            coeff = self.coeff()
            if self.peek() != "*":
                return tuple(exps), coeff
            self.take("*")
        elif not ch:
            raise PolySyntaxError("unexpected end of input", self.pos)
        self.factor(exps)
        while self.peek() == "*":
            self.pos += 1
            self.factor(exps)
        return tuple(exps), coeff

    def factor(self, exps):
        ch = self.peek()
        start = self.pos
        if not ch.isalpha():
            raise PolySyntaxError(f"expected a variable, got {ch or 'end of input'!r}", start)
        idx = VARS.find(ch)
        if idx < 0 or idx >= self.arity:
            raise UnknownVariable(f"unknown variable {ch!r}", start)
        self.pos += 1
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.uint()
        exps[idx] += k

    def coeff(self) -> int:
        F = self.field
        ch = self.peek()
        start = self.pos
        if ch.isdigit():
            return self.uint() % F.p
        if ch == "g":
            self.pos += 1
            if F.s == 1:
                raise BadCoefficient("g^k coefficients need an extension field", start)
            k = 1
            if self.peek() == "^":
                self.pos += 1
                k = self.uint()
            return F.pow(gf.p_code_of_x(F), k)
        self.take("[")
        digits = [self.uint()]
        while self.peek() == ",":
            self.pos += 1
            digits.append(self.uint())
        self.take("]")
        if len(digits) > F.s:
            raise BadCoefficient(f"more than {F.s} coefficients", start)
        return F.from_digits(digits)


def parse_poly(text: str, field: gf.FieldSpec, arity: int = 3) -> MultiPoly:
    """Parse the polynomial grammar; integers are reduced mod p."""
    if arity not in (2, 3):
        raise ArityMismatch(f"arity must be 2 or 3, got {arity}")
    if not text.strip():
        raise PolySyntaxError("empty polynomial text", 0)
    return _Parser(text, field, arity).parse()


def random_poly(field: gf.FieldSpec, arity: int, degree: int, rng: random.Random,
                density: float = 0.5, homogeneous: bool = False) -> MultiPoly:
    terms = {}
    for e in monomials(arity, degree, homogeneous):
        if rng.random() < density:
            terms[e] = rng.randrange(1, field.q)
    return MultiPoly(field, arity, terms)


def monomials(arity: int, degree: int, homogeneous: bool = False) -> Iterable[tuple]:
    """Exponent tuples of total degree <= degree (== degree if homogeneous), graded-lex."""
    out = []
    degs = [degree] if homogeneous else range(degree, -1, -1)
    for t in degs:
        if arity == 2:
            out.extend((a, t - a) for a in range(t, -1, -1))
        else:
            for a in range(t, -1, -1):
                out.extend((a, b, t - a - b) for b in range(t - a, -1, -1))
    return out
