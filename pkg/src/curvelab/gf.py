"""Finite fields GF(p^s) in a polynomial basis.

An element of GF(p^s) = GF(p)[x]/(m(x)) is stored as the integer

    c_0 + c_1 p + ... + c_{s-1} p^(s-1)

where ``c_0 + c_1 x + ... + c_{s-1} x^(s-1)`` is its reduced representative.
All arithmetic methods of :class:`FieldSpec` work on these integer codes;
:class:`FieldElement` is the user facing value type wrapping a code.

Log/antilog (and Zech or full addition) tables are built lazily for fields
with at most ``TABLE_CAP`` elements.  They are an optimization only: results
are identical to the direct polynomial-basis arithmetic used above the cap.
"""

from __future__ import annotations

import functools
import math
import os
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadCoefficient,
    DivisionByZero,
    FieldMismatch,
    FieldTooLarge,
    NonPrimeCharacteristic,
    NotAnExtension,
    RootNotFound,
)

DEFAULT_CAP = 2**20
TABLE_CAP = 2**20
ADD_TABLE_CAP = 1024


def enumeration_cap() -> int:
    """Cap on enumerated sets (field sizes, plane point counts).

    ``CURVELAB_CAP`` in the environment overrides the default of 2^20.
    """
    value = os.environ.get("CURVELAB_CAP")
    return int(value) if value else DEFAULT_CAP


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- GF(p)[x] on coefficient lists (low degree first), used for moduli ----

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            shift = i - dm
            for j, mj in enumerate(m):
                a[shift + j] = (a[shift + j] - c * mj) % p
    return _ptrim(a[:dm] if len(a) > dm else a)


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _pmod([c % p for c in prod], m, p)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _has_root_mod_p(m, p):
    for r in range(p):
        acc = 0
        for c in reversed(m):
            acc = (acc * r + c) % p
        if acc == 0:
            return True
    return False


def is_irreducible_mod_p(m: list[int], p: int) -> bool:
    """Irreducibility of a polynomial over GF(p) given low-degree-first.

    Degree <= 3: no root in GF(p).  Degree >= 4: gcd(m, x^(p^i) - x) = 1
    for all i <= deg/2.
    """
    m = _ptrim(list(m))
    s = len(m) - 1
    if s < 1:
        return False
    if s == 1:
        return True
    if s <= 3:
        return not _has_root_mod_p(m, p)
    xpow = [0, 1]
    for _ in range(s // 2):
        # xpow <- xpow^p mod m
        acc, base, e = [1], xpow, p
        while e:
            if e & 1:
                acc = _pmulmod(acc, base, m, p)
            base = _pmulmod(base, base, m, p)
            e >>= 1
        xpow = acc
        diff = list(xpow) + [0] * max(0, 2 - len(xpow))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, _ptrim(diff), p)) > 1:
            return False
    return True


def _digits(code: int, p: int, s: int) -> list[int]:
    out = []
    for _ in range(s):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _canonical_modulus(p: int, s: int) -> tuple[int, ...]:
    if s == 1:
        return (0, 1)
    for tail_code in range(p**s):
        cand = _digits(tail_code, p, s) + [1]
        if cand[0] == 0:
            continue
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {s} over GF({p})")


# --- tables -----------------------------------------------------------------

class _Tables:
    """exp/log tables w.r.t. a primitive element, plus addition helpers."""

    __slots__ = ("gen", "exp", "log", "exp_np", "log_np", "zech", "zech_np",
                 "add", "add_np")


class FieldSpec:
    """The field GF(p^s) with the canonical modulus.

    Instances are unique per ``(p, s)``; construct them with :func:`build_field`.
    """

    def __init__(self, p: int, s: int):
        self.p = p
        self.s = s
        self.q = p**s
        self.modulus = _canonical_modulus(p, s)
        self._tables = None
        self._mod_bits = sum(c << i for i, c in enumerate(self.modulus)) if p == 2 else 0
        self._dlog_x = None
        self._mulmats = {}

    def __repr__(self):
        return f"GF({self.p}^{self.s})" if self.s > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (_make_field, (self.p, self.s))

    # -- codes ---------------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """Class of x (for prime fields this is 0, the root of the modulus x)."""
        return FieldElement(self, p_code_of_x(self))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self}")
        return FieldElement(self, code)

    def constant(self, n: int) -> int:
        """Code of the prime-field constant n mod p."""
        return n % self.p

    def digits(self, code: int) -> list[int]:
        return _digits(code, self.p, self.s)

    def from_digits(self, digits) -> int:
        code = 0
        for c in reversed(list(digits)):
            code = code * self.p + c % self.p
        return code

    def from_coeffs(self, coeffs) -> "FieldElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.s:
            raise ValueError(f"too many coefficients for {self}")
        return FieldElement(self, self.from_digits(coeffs))

    # -- scalar arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.s == 1:
            r = a + b
            return r - p if r >= p else r
        t = self.tables()
        if t is None:
            return self._add_digits(a, b)
        if t.add is not None:
            return t.add[a * self.q + b]
        if a == 0:
            return b
        if b == 0:
            return a
        la = t.log[a]
        z = t.zech[(t.log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return t.exp[la + z]

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2 or a == 0:
            return a
        if self.s == 1:
            return p - a
        t = self.tables()
        if t is None:
            return self.from_digits([-c for c in self.digits(a)])
        return t.exp[t.log[a] + (self.q - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.s == 1:
            return a * b % self.p
        t = self.tables()
        if t is None:
            return self._mul_direct(a, b)
        return t.exp[t.log[a] + t.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self}")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        t = self.tables()
        if t is None:
            return self._pow_direct(a, self.q - 2)
        n = self.q - 1
        return t.exp[(n - t.log[a]) % n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero(f"negative power of zero in {self}")
        n = self.q - 1
        e %= n
        if self.s == 1:
            return pow(a, e, self.p)
        t = self.tables()
        if t is None:
            return self._pow_direct(a, e)
        return t.exp[t.log[a] * e % n]

    def frob(self, a: int, r: int = 1) -> int:
        """a^(p^r)."""
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, r % self.s, self.q - 1) if self.q > 2 else 1)

    def frob_q(self, a: int, q: int) -> int:
        """a^q for a subfield size q (a power of p)."""
        if a == 0 or self.s == 1:
            return a
        return self.pow(a, q % (self.q - 1))

    # -- direct polynomial-basis arithmetic ------------------------------------

    def _add_digits(self, a, b):
        p = self.p
        out, m = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * m
            m *= p
        return out

    def _mul_direct(self, a, b):
        s = self.s
        if self.p == 2:
            mb = self._mod_bits
            top = 1 << s
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mb
            return r
        p = self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k] % p
            if c:
                base = k - s
                for i in range(s):
                    if mod[i]:
                        prod[base + i] -= c * mod[i]
        code = 0
        for k in range(s - 1, -1, -1):
            code = code * p + prod[k] % p
        return code

    def _pow_direct(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_direct(r, a)
            a = self._mul_direct(a, a)
            e >>= 1
        return r

    def _mulmatrix(self, c: int) -> np.ndarray:
        """Matrix M over GF(p) with digits(a*c) = digits(a) @ M (mod p)."""
        rows = []
        for i in range(self.s):
            basis = self.p**i
            rows.append(self.digits(self._mul_direct(basis, c) if self.s > 1 else basis * c % self.p))
        return np.array(rows, dtype=np.int64)

    # -- tables ----------------------------------------------------------------

    def tables(self):
        """Log/antilog tables, or None if the field exceeds TABLE_CAP."""
        t = self._tables
        if t is None:
            if self.q > TABLE_CAP:
                return None
            t = self._tables = self._build_tables()
        return t

    def _primitive_code(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = prime_factors(n)
        start = 2 if self.s == 1 else self.p
        for g in range(start, self.q):
            if all(self._slow_pow(g, n // r) != 1 for r in factors):
                return g
        raise RuntimeError("no primitive element")

    def _slow_pow(self, a, e):
        if self.s == 1:
            return pow(a, e, self.p)
        return self._pow_direct(a, e)

    def _build_tables(self) -> _Tables:
        p, s, q = self.p, self.s, self.q
        n = q - 1
        g = self._primitive_code()
        weights = np.array([p**i for i in range(s)], dtype=np.int64)
        block = max(1, math.isqrt(n))
        first = [1]
        for _ in range(block - 1):
            first.append(self._mul_direct(first[-1], g) if s > 1 else first[-1] * g % p)
        digits = np.array([self.digits(c) for c in first], dtype=np.int64)
        gb = self._slow_pow(g, block)
        mat = self._mulmatrix(gb)
        chunks = [digits]
        total = block
        while total < n:
            digits = digits @ mat % p
            chunks.append(digits)
            total += block
        all_digits = np.concatenate(chunks)[:n]
        exp_np = all_digits @ weights
        log_np = np.zeros(q, dtype=np.int64)
        log_np[exp_np] = np.arange(n, dtype=np.int64)
        t = _Tables()
        t.gen = g
        t.exp_np = np.concatenate([exp_np, exp_np])
        t.log_np = log_np
        t.exp = t.exp_np.tolist()
        t.log = log_np.tolist()
        t.add = t.add_np = t.zech = t.zech_np = None
        if p != 2 and s > 1:
            if q <= ADD_TABLE_CAP:
                codes = np.arange(q, dtype=np.int64)
                dig = (codes[:, None] // weights[None, :]) % p
                summed = (dig[:, None, :] + dig[None, :, :]) % p
                t.add_np = (summed @ weights).astype(np.int64)
                t.add = t.add_np.ravel().tolist()
            else:
                d0 = exp_np % p
                plus_one = exp_np - d0 + (d0 + 1) % p
                zech = np.where(plus_one == 0, -1, log_np[plus_one])
                t.zech_np = zech
                t.zech = zech.tolist()
        return t

    # -- vectorized arithmetic (numpy arrays of codes) --------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        if p == 2:
            return a ^ b
        if self.s == 1:
            return (a + b) % p
        t = self.tables()
        if t.add_np is not None:
            return t.add_np[a, b]
        n = self.q - 1
        la, lb = t.log_np[a], t.log_np[b]
        z = t.zech_np[(lb - la) % n]
        out = np.where(z < 0, 0, t.exp_np[la + np.maximum(z, 0)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return a * b % self.p
        t = self.tables()
        out = t.exp_np[t.log_np[a] + t.log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e == 0:
            return np.ones_like(a)
        t = self.tables()
        out = t.exp_np[t.log_np[a] * e % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def vmul_log(self, log_a: np.ndarray, zero_mask: np.ndarray) -> np.ndarray:
        """Codes for elements given by their logs, zero where masked."""
        t = self.tables()
        out = t.exp_np[log_a % (self.q - 1)]
        return np.where(zero_mask, 0, out)


def p_code_of_x(spec: FieldSpec) -> int:
    return 0 if spec.s == 1 else spec.p


@functools.lru_cache(maxsize=None)
def _make_field(p: int, s: int) -> FieldSpec:
    return FieldSpec(p, s)


def build_field(p: int, s: int = 1, cap: int | None = None) -> FieldSpec:
    """Return GF(p^s) with the canonical (smallest) monic irreducible modulus.

    Moduli are ordered by the integer code of their tail coefficients, i.e.
    lexicographically with the degree s-1 coefficient most significant;
    for GF(27) this gives x^3 + 2x + 1.  ``cap=0`` disables the size check.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    cap = enumeration_cap() if cap is None else cap
    if cap and p**s > cap:
        raise FieldTooLarge(f"GF({p}^{s}) exceeds the cap {cap}")
    return _make_field(p, s)


def extension(spec: FieldSpec, k: int) -> FieldSpec:
    """GF(q^k) for q = |spec|, without the enumeration cap."""
    return _make_field(spec.p, spec.s * k)


def enumerate_field(spec: FieldSpec) -> list["FieldElement"]:
    """All elements in increasing code order (zero first)."""
    if spec.q > enumeration_cap():
        raise FieldTooLarge(f"{spec} exceeds the enumeration cap")
    return [FieldElement(spec, c) for c in range(spec.q)]


# --- elements -----------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class FieldElement:
    owner: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.owner.digits(self.value))

    def _code(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.owner is not self.owner:
                raise FieldMismatch(f"{self.owner} vs {other.owner}")
            return other.value
        if isinstance(other, int):
            return other % self.owner.p
        return NotImplemented

    def __add__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.owner, self.owner.add(self.value, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.owner, self.owner.sub(self.value, c))

    def __rsub__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.owner, self.owner.sub(c, self.value))

    def __mul__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.owner, self.owner.mul(self.value, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._code(other)
        if c is NotImplemented:
            return c
        return FieldElement(self.owner, self.owner.div(self.value, c))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.owner, self.owner.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.owner, self.owner.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"{self.owner!r}({format_element(self)})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, n: int) -> FieldElement:
    return a**n


def frobenius(e: FieldElement, r: int = 1) -> FieldElement:
    """e^(p^r); the identity on GF(p^s) when s divides r."""
    return FieldElement(e.owner, e.owner.frob(e.value, r))


# --- text format ------------------------------------------------------------------

def _dlog_of_x(spec: FieldSpec) -> dict[int, int]:
    """Map code -> k for the powers x^k (the subgroup generated by x)."""
    if spec._dlog_x is None:
        x = p_code_of_x(spec)
        table, c, k = {}, 1, 0
        while c not in table:
            table[c] = k
            c = spec.mul(c, x)
            k += 1
        spec._dlog_x = table
    return spec._dlog_x


def format_element(e: FieldElement, dlog: bool = False) -> str:
    """Decimal residue for prime fields, else ``[c0,...]`` or ``g^k``.

    The ``g^k`` form is used only when requested and the element lies in
    the subgroup generated by g = class of x; otherwise coefficient form.
    """
    spec = e.owner
    if spec.s == 1:
        return str(e.value)
    if dlog:
        if e.value == 0:
            return "0"
        if spec.q <= TABLE_CAP:
            k = _dlog_of_x(spec).get(e.value)
            if k is not None:
                return "g" if k == 1 else f"g^{k}"
    return "[" + ",".join(str(c) for c in e.coeffs) + "]"


_ELEM_RE = re.compile(r"^\s*(?:(\d+)|g(?:\s*\^\s*(\d+))?|\[\s*(\d+(?:\s*,\s*\d+)*)\s*\])\s*$")


def parse_element(text: str, spec: FieldSpec) -> FieldElement:
    m = _ELEM_RE.match(text)
    if not m:
        raise BadCoefficient(f"cannot parse field element {text!r}")
    integer, gexp, bracket = m.groups()
    if integer is not None:
        return FieldElement(spec, int(integer) % spec.p)
    if bracket is not None:
        coeffs = [int(c) for c in bracket.split(",")]
        if len(coeffs) > spec.s:
            raise BadCoefficient(f"{text!r} has more than {spec.s} coefficients")
        return spec.from_coeffs(coeffs)
    if spec.s == 1:
        raise BadCoefficient("g^k form is not available in a prime field")
    k = 1 if gexp is None else int(gexp)
    return FieldElement(spec, spec.pow(p_code_of_x(spec), k))


# --- embeddings ---------------------------------------------------------------------

@dataclass(eq=False)
class Embedding:
    """Field homomorphism GF(p^s) -> GF(p^(sk)) sending x to ``image_of_generator``."""

    source: FieldSpec
    target: FieldSpec
    image_of_generator: FieldElement
    _powers: list[int] = field(default=None, repr=False)
    _table: list[int] | None = field(default=None, repr=False)
    _inverse: dict[int, int] | None = field(default=None, repr=False)

    def __post_init__(self):
        src, tgt = self.source, self.target
        gamma = self.image_of_generator.value
        powers, c = [], 1
        for _ in range(src.s):
            powers.append(c)
            c = tgt.mul(c, gamma)
        self._powers = powers
        if src.q <= 2**16:
            self._table = [self._map_slow(c) for c in range(src.q)]

    @property
    def is_identity(self) -> bool:
        return self.source is self.target

    def _map_slow(self, code: int) -> int:
        if self.source is self.target:
            return code
        tgt = self.target
        out = 0
        for d, pw in zip(self.source.digits(code), self._powers):
            if d:
                out = tgt.add(out, tgt.mul(d, pw))
        return out

    def map_code(self, code: int) -> int:
        if self._table is not None:
            return self._table[code]
        return self._map_slow(code)

    def __call__(self, e: FieldElement) -> FieldElement:
        if e.owner is not self.source:
            raise FieldMismatch(f"{e.owner} is not the source {self.source}")
        return FieldElement(self.target, self.map_code(e.value))

    def preimage(self, code: int) -> int:
        """Source code mapping to ``code``; ValueError if not in the image."""
        if self.source is self.target:
            return code
        if self._inverse is None:
            if self._table is not None:
                self._inverse = {v: i for i, v in enumerate(self._table)}
            else:
                self._inverse = {}
        if self._table is not None:
            try:
                return self._inverse[code]
            except KeyError:
                raise ValueError("element is not in the image of the embedding") from None
        return _solve_preimage(self, code)


def _solve_preimage(emb: Embedding, code: int) -> int:
    """Linear algebra over GF(p): write code as sum c_i gamma^i."""
    p = emb.source.p
    tgt = emb.target
    cols = [tgt.digits(pw) for pw in emb._powers]
    rhs = tgt.digits(code)
    n_rows, n_cols = tgt.s, len(cols)
    rows = [[cols[j][i] for j in range(n_cols)] + [rhs[i]] for i in range(n_rows)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = pow(rows[r][c], p - 2, p)
        rows[r] = [v * iv % p for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][-1] for i in range(r, n_rows)):
        raise ValueError("element is not in the image of the embedding")
    sol = [0] * n_cols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return emb.source.from_digits(sol)


@functools.lru_cache(maxsize=None)
def embed(source: FieldSpec, target: FieldSpec) -> Embedding:
    """Canonical embedding: x goes to the smallest-code root of the source modulus.

    Equivalent to scanning the target in enumeration order and taking the
    first root.  The identity is returned when source and target coincide.
    """
    if source.p != target.p or target.s % source.s != 0:
        raise NotAnExtension(f"{source} is not a subfield of {target}")
    if source is target:
        return Embedding(source, target, FieldElement(target, p_code_of_x(target)))
    if source.s == 1:
        return Embedding(source, target, FieldElement(target, 0))
    from . import upoly

    roots = upoly.roots(target, list(source.modulus))
    if not roots:
        raise RootNotFound(f"modulus of {source} has no root in {target}")
    return Embedding(source, target, FieldElement(target, min(roots)))
