"""q-Frobenius (non)classicality and the Frobenius order of a plane curve.

The curve is Frobenius nonclassical when the tangent line at a generic point
P passes through Frob_q(P).  With x as separating variable this becomes the
polynomial condition f | (x^q - x) f_x + (y^q - y) f_y, which is tested by
pseudo-division.  The generic tangent intersection multiplicity (epsilon_2)
is estimated by sampling non-rational smooth points over small extensions.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import gf, upoly
from .curve import (
    INFINITE,
    PlaneCurve,
    ProjPoint,
    gradient_at,
    line_intersection_multiplicity,
    make_point,
    tangent_line,
)
from .errors import NotEnoughPoints
from .mpoly import MultiPoly, dehomogenize, divides, univariate_in

DEFAULT_SAMPLES = 40
DEFAULT_KMAX = 4


@dataclass
class FrobeniusVerdict:
    fnc: bool
    criterion_poly: MultiPoly | None
    chart_used: str | None
    degenerate: bool = False
    geometric_samples: list[tuple[ProjPoint, bool]] = field(default_factory=list)
    epsilon2: int | None = None
    confidence: float | None = None
    nu: int | None = None
    seed: int = 0
    warnings: list[str] = field(default_factory=list)


def usable_charts(C: PlaneCurve) -> list[str]:
    """Charts whose line at infinity is not a component of C."""
    out = []
    for chart, idx in (("z", 2), ("y", 1), ("x", 0)):
        if not all(e[idx] >= 1 for e in C.F.terms):
            out.append(chart)
    return out


def criterion_polynomial(C: PlaneCurve, chart: str = "z") -> tuple[MultiPoly, MultiPoly]:
    """(f, h) with f the affine equation and h = (x^q - x) f_x + (y^q - y) f_y."""
    f = dehomogenize(C.F, chart)
    K = f.field
    q = K.q
    x = MultiPoly.var(K, 2, 0)
    y = MultiPoly.var(K, 2, 1)
    h = (MultiPoly.var(K, 2, 0, q) - x) * f.derivative(0) + (MultiPoly.var(K, 2, 1, q) - y) * f.derivative(1)
    return f, h


def fnc_test(C: PlaneCurve, chart: str | None = None) -> bool:
    return fnc_decision(C, chart)[0]


def fnc_decision(C: PlaneCurve, chart: str | None = None):
    """(fnc, h, chart, degenerate).  Lines are reported nonclassical and degenerate."""
    if C.d == 1:
        return True, None, None, True
    if chart is None:
        charts = usable_charts(C)
        chart = charts[0] if charts else "z"
    f, h = criterion_polynomial(C, chart)
    return divides(f, h), h, chart, False


def frobenius_tangency(C: PlaneCurve, P: ProjPoint) -> bool:
    """Does Frob_q(P) lie on the tangent line at the smooth point P?"""
    T = tangent_line(C, P)
    K = P.field
    image = tuple(K.frob_q(c, C.q) for c in P.coords)
    acc = 0
    for a, b in zip(T.line, image):
        acc = K.add(acc, K.mul(a, b))
    return acc == 0


# --- epsilon_2 sampling --------------------------------------------------------------------------

def _attempt_seed(seed: int, j: int) -> int:
    return (seed * 1_000_003 + j) & 0xFFFFFFFFFFFF


def _sample_attempt(args):
    """Try to draw one smooth non-rational point; returns (j, point, mult) or (j, None, None)."""
    C, seed, j, k = args
    rng = random.Random(_attempt_seed(seed, j))
    K = gf.extension(C.base, k)
    f = dehomogenize(C.F, "z").lift(K)
    x0 = rng.randrange(K.q)
    uni = univariate_in(f, 1, (x0, 0))
    if not uni:
        return j, None, None
    rts = upoly.roots(K, uni)
    if not rts:
        return j, None, None
    y0 = rts[rng.randrange(len(rts))]
    P = make_point((x0, y0, 1), K, C.base)
    if P.level == 1:
        return j, None, None
    if not any(gradient_at(C, P)):
        return j, None, None
    T = tangent_line(C, P)
    mult = line_intersection_multiplicity(C, P, T.line)
    return j, P, mult


def sampling_levels(C: PlaneCurve, k_max: int) -> list[int]:
    """Levels k_max, k_max - 1, ..., 2, skipping fields above the table cap."""
    return [k for k in range(max(k_max, 2), 1, -1) if C.q**k <= gf.TABLE_CAP] or [2]


def sample_tangent_multiplicities(C: PlaneCurve, samples: int = DEFAULT_SAMPLES, k_max: int = DEFAULT_KMAX,
                                  seed: int = 0, workers: int = 1, attempts_per_level: int | None = None):
    """Up to ``samples`` pairs (P, i(C.T_P; P)) at smooth non-rational points.

    Points over small extensions can all be special (higher tangent contact),
    so the highest level is sampled first and lower levels only fill up a
    shortfall.  Attempt j uses its own seeded generator, so the result does
    not depend on how attempts are distributed over workers.
    """
    if attempts_per_level is None:
        attempts_per_level = 30 * samples
    out = []
    batch = max(samples, 8)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for li, k in enumerate(sampling_levels(C, k_max)):
            j = 0
            while len(out) < samples and j < attempts_per_level:
                stop = min(j + batch, attempts_per_level)
                jobs = [(C, seed + 7919 * li, i, k) for i in range(j, stop)]
                j = stop
                results = list(pool.map(_sample_attempt, jobs)) if pool else [_sample_attempt(a) for a in jobs]
                for _, P, mult in sorted(results, key=lambda r: r[0]):
                    if P is not None and len(out) < samples:
                        out.append((P, mult))
            if len(out) >= samples:
                break
    finally:
        if pool:
            pool.shutdown()
    return out


def epsilon2(C: PlaneCurve, samples: int = DEFAULT_SAMPLES, k_max: int = DEFAULT_KMAX,
             seed: int = 0, workers: int = 1, strict: bool = True):
    """(estimate, confidence) of the generic tangent intersection multiplicity.

    Special points can only raise the multiplicity, so the sampled minimum
    is an upper bound; confidence is the fraction of samples attaining it.
    """
    got = sample_tangent_multiplicities(C, samples, k_max, seed, workers)
    finite = [m for _, m in got if m != INFINITE]
    if not finite or (strict and len(got) < samples):
        raise NotEnoughPoints(f"found {len(got)} of {samples} smooth sample points")
    low = min(finite)
    return int(low), sum(1 for m in finite if m == low) / len(finite)


def is_p_power_int(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def frobenius_order(C: PlaneCurve, samples: int = DEFAULT_SAMPLES, k_max: int = DEFAULT_KMAX,
                    seed: int = 0) -> int:
    verdict = analyze_frobenius(C, samples, k_max, seed)
    return verdict.nu


def analyze_frobenius(C: PlaneCurve, samples: int = DEFAULT_SAMPLES, k_max: int = DEFAULT_KMAX,
                      seed: int = 0, workers: int = 1) -> FrobeniusVerdict:
    fnc, h, chart, degenerate = fnc_decision(C)
    v = FrobeniusVerdict(fnc, h, chart, degenerate, seed=seed)
    if degenerate:
        v.warnings.append("degree 1: every line is trivially Frobenius nonclassical")
        return v
    got = sample_tangent_multiplicities(C, samples, k_max, seed, workers)
    finite = [m for _, m in got if m != INFINITE]
    if not finite:
        v.warnings.append("no smooth non-rational sample points; epsilon_2 not estimated")
        return v
    if len(got) < samples:
        v.warnings.append(f"only {len(got)} of {samples} sample points found")
    low = int(min(finite))
    v.epsilon2 = low
    v.confidence = sum(1 for m in finite if m == low) / len(finite)
    v.geometric_samples = [(P, frobenius_tangency(C, P)) for P, _ in got]
    if fnc:
        v.nu = low
        if not is_p_power_int(low, C.base.p):
            v.warnings.append(f"epsilon_2 estimate {low} is not a power of p")
        if not all(flag for _, flag in v.geometric_samples):
            v.warnings.append("FINDING: a sampled point violates Frobenius tangency")
    else:
        v.nu = 1
    return v

