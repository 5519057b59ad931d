"""Genus, rational point bounds, and checkable verdicts for a plane curve.

:func:`analyze` runs the whole pipeline (point counts, singular locus,
resolution, Frobenius test, genus) and assembles a :class:`CurveReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import curve as cv
from . import frobclass, resolve
from .curve import PlaneCurve
from .errors import GenusUncertain, ResolutionDepthExceeded
from .mpoly import format_poly

CLAIM_IDS = ("ineq0", "lemma_Bq", "main0", "main1", "cor0", "cor1", "small_d_sv", "sv", "proof_chain")


@dataclass
class GenusResult:
    g_star: int
    g: int | tuple[int, int]
    certified: bool

    @property
    def exact(self) -> int | None:
        return self.g if isinstance(self.g, int) else None

    def as_json(self):
        return self.g if isinstance(self.g, int) else list(self.g)


@dataclass
class Verdict:
    id: str
    holds: bool | None
    equality: bool | None
    notes: str = ""

    @property
    def finding(self) -> bool:
        return self.holds is False


@dataclass
class CurveReport:
    curve: PlaneCurve
    Mq: int
    MqS: int
    Bq: int
    N1: int
    genus: GenusResult
    frobenius: frobclass.FrobeniusVerdict
    singular: list[resolve.SingularPointReport]
    bounds: dict
    verdicts: list[Verdict]
    irreducible_certified: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def findings(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.finding]

    def verdict(self, claim: str) -> Verdict:
        return next(v for v in self.verdicts if v.id == claim)


# --- formulas ------------------------------------------------------------------------------------

def arithmetic_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def virtual_genus(d: int, reports) -> int:
    """(d-1)(d-2)/2 minus m(m-1)/2 over the rational singular points only."""
    return arithmetic_genus(d) - sum(r.m * (r.m - 1) // 2 for r in reports if r.point.level == 1)


def genus_from(d: int, reports, certified: bool) -> GenusResult:
    g_star = virtual_genus(d, reports)
    g_hi = arithmetic_genus(d) - sum(r.orbit_size * r.delta for r in reports)
    if certified:
        return GenusResult(g_star, g_hi, True)
    used = sum(r.orbit_size * r.m * (r.m - 1) for r in reports)
    remaining = max(d * (d - 1) - used, 0)
    return GenusResult(g_star, (max(g_hi - remaining // 2, 0), g_hi), False)


def irreducibility_certificate(d: int, reports, certified: bool) -> bool:
    """A reduced curve with a complete singular list and total delta < d - 1 is absolutely irreducible.

    Two components of degrees a + b = d meet in ab >= d - 1 points counted with
    multiplicity, and each meeting point contributes at least that much delta.
    """
    if not certified:
        return False
    budget = sum(r.orbit_size * r.m * (r.m - 1) for r in reports)
    return budget <= d * (d - 1) and sum(r.orbit_size * r.delta for r in reports) < d - 1


def bound_hv(d: int, q: int) -> int:
    return d * (q - d + 2)


def bound_sv(d: int, g, q: int, nu: int):
    """floor((nu (2g - 2) + (q + 2) d) / 2); raises GenusUncertain for an interval g."""
    if not isinstance(g, int):
        raise GenusUncertain("the genus is only known as an interval")
    return (nu * (2 * g - 2) + (q + 2) * d) // 2


def bound_main(d: int, q: int, g_star: int, g, rational_mults) -> int:
    if not isinstance(g, int):
        raise GenusUncertain("the genus is only known as an interval")
    return bound_hv(d, q) + 2 * (g_star - g) + sum(m * (m - 2) for m in rational_mults)


def bound_hasse_weil_genus(q: int, g: int) -> int:
    """floor(q + 1 + 2 g sqrt(q))."""
    return q + 1 + math.isqrt(4 * g * g * q)


def bound_hasse_weil_arith(q: int, d: int) -> int:
    """floor(1 + q + (d-1)(d-2) sqrt(q))."""
    k = (d - 1) * (d - 2)
    return 1 + q + math.isqrt(k * k * q)


# --- verdicts ----------------------------------------------------------------------------------------

def _not_evaluated(claim: str, why: str) -> Verdict:
    return Verdict(claim, None, None, f"not evaluated: {why}")


def evaluate_verdicts(C: PlaneCurve, Mq: int, MqS: int, Bq: int, N1: int, genus: GenusResult,
                      fv: frobclass.FrobeniusVerdict, reports, locus_certified: bool) -> list[Verdict]:
    d, q = C.d, C.q
    fnc = fv.fnc
    g = genus.exact
    rational = [r for r in reports if r.point.level == 1]
    nonrational = [r for r in reports if r.point.level > 1]
    hv = bound_hv(d, q)
    out = []

    # ineq0
    ok = MqS <= Mq <= Bq and MqS <= N1 <= Bq
    out.append(Verdict("ineq0", ok, MqS == Mq == N1 == Bq,
                       f"MqS={MqS} Mq={Mq} N1={N1} Bq={Bq}"))

    # lemma_Bq
    if not fnc:
        out.append(_not_evaluated("lemma_Bq", "curve is Frobenius classical"))
    elif g is None:
        out.append(_not_evaluated("lemma_Bq", "genus uncertain"))
    else:
        low = (q - 1) * d - (2 * g - 2)
        eq = Bq == low
        notes = f"Bq={Bq} >= (q-1)d-(2g-2)={low}"
        holds = Bq >= low
        if all(b.tame for r in rational for b in r.branches):
            off_linear = all(b.linear for r in nonrational for b in r.branches)
            if eq != off_linear:
                holds = False
                notes += f"; FINDING: equality={eq} but branches off PG(2,q) all linear={off_linear}"
            else:
                notes += "; equality condition consistent with branch linearity"
        else:
            notes += "; equality condition not applicable (wild rational-centered branch)"
        out.append(Verdict("lemma_Bq", holds, eq, notes))

    # main0
    main = None
    if g is not None:
        main = bound_main(d, q, genus.g_star, g, [r.m for r in rational])
    if not fnc:
        out.append(_not_evaluated("main0", "curve is Frobenius classical"))
    elif main is None:
        out.append(_not_evaluated("main0", "genus uncertain"))
    else:
        eq = MqS == main
        all_linear = all(b.linear for r in reports for b in r.branches)
        holds = MqS >= main
        notes = f"MqS={MqS} >= {main}"
        if eq != all_linear:
            holds = False
            notes += f"; FINDING: equality={eq} but all branches linear={all_linear}"
        out.append(Verdict("main0", holds, eq, notes))

    # main1
    if not fnc:
        out.append(_not_evaluated("main1", "curve is Frobenius classical"))
    else:
        eq = Mq == hv
        holds = Mq >= hv
        notes = f"Mq={Mq} >= d(q-d+2)={hv}"
        if locus_certified:
            smooth = not reports
            if eq != smooth:
                holds = False
                notes += f"; FINDING: equality={eq} but nonsingular={smooth}"
        else:
            notes += "; equality condition not checked (singular locus uncertified)"
        out.append(Verdict("main1", holds, eq, notes))

    # cor0
    if not fnc:
        out.append(_not_evaluated("cor0", "curve is Frobenius classical"))
    elif not locus_certified:
        out.append(_not_evaluated("cor0", "singular locus uncertified"))
    elif not all(r.point.level == 1 and r.ordinary and all(t.level == 1 for t in r.tangent_directions)
                 for r in reports):
        out.append(_not_evaluated("cor0", "hypotheses fail (a singularity is non-ordinary or not rational)"))
    else:
        val = hv + sum(r.m * (r.m - 1) for r in reports)
        out.append(Verdict("cor0", N1 == val, N1 == val, f"N1={N1} == d(q-d+2)+sum m(m-1)={val}"))

    # cor1
    if not fnc or d <= 1:
        out.append(_not_evaluated("cor1", "needs a Frobenius nonclassical curve of degree > 1"))
    else:
        hw = bound_hasse_weil_arith(q, d)
        ok = (d - 1) ** 2 >= q and MqS <= hw
        eq = (d - 1) ** 2 == q
        notes = f"(d-1)^2={(d - 1) ** 2} >= q={q}; MqS={MqS} <= {hw}"
        if eq:
            notes += "; boundary case d = sqrt(q)+1: Hermitian candidate"
        out.append(Verdict("cor1", ok, eq, notes))

    # small_d_sv
    if not (1 < d and d * d <= q):
        out.append(_not_evaluated("small_d_sv", "needs 1 < d <= sqrt(q)"))
    elif g is None:
        out.append(_not_evaluated("small_d_sv", "genus uncertain"))
    else:
        b = bound_sv(d, g, q, 1)
        out.append(Verdict("small_d_sv", N1 <= b, N1 == b, f"N1={N1} <= {b}"))

    # sv
    if d <= 1:
        out.append(_not_evaluated("sv", "degree 1"))
    elif g is None:
        out.append(_not_evaluated("sv", "genus uncertain"))
    elif fv.nu is None:
        out.append(_not_evaluated("sv", "Frobenius order not estimated"))
    else:
        b = bound_sv(d, g, q, fv.nu)
        out.append(Verdict("sv", N1 <= b, N1 == b, f"N1={N1} <= {b} (nu={fv.nu})"))

    # proof_chain: the g-free identity plus the branch/multiplicity equivalence
    if not fnc:
        out.append(_not_evaluated("proof_chain", "curve is Frobenius classical"))
        return out
    sum_m = MqS + sum(r.m for r in rational)
    g_any = g if g is not None else genus.g[1]
    main_any = bound_main(d, q, genus.g_star, g_any, [r.m for r in rational])
    lhs = MqS - main_any
    rhs = sum_m - ((q - 1) * d - (2 * g_any - 2))
    rational_linear = all(b.linear for r in rational for b in r.branches)
    chain_ok = lhs == rhs and ((Bq == sum_m) == rational_linear)
    out.append(Verdict("proof_chain", chain_ok, None,
                       f"MqS-main={lhs}, sum m_P-((q-1)d-(2g-2))={rhs}; Bq={Bq}, sum m_P={sum_m}, "
                       f"rational-centered branches linear={rational_linear}"))
    return out


# --- analysis pipeline -----------------------------------------------------------------------------

def singular_reports(C: PlaneCurve, k_max: int = 4, workers: int = 1):
    """(reports, certified, notes, reducible) for all singular points of the closure.

    ``reducible`` is set when the singular set proves C is not a reduced
    irreducible curve: more singular points than d(d-1)/2, or a point whose
    resolution never terminates (a multiple component).
    """
    d = C.d
    locus = cv.singular_locus(C)
    points = list(locus.points)
    notes = list(locus.notes)
    certified = locus.certified
    if not certified:
        for P in cv.singular_points_over(C, k_max, workers):
            if P not in points:
                points.append(P)
        points.sort(key=lambda X: X.sort_key())
        if len(points) > d * (d - 1) // 2:
            notes.append(f"{len(points)} singular points found, more than a reduced curve of degree {d} has: "
                         "the curve has a multiple component")
            return [], False, notes, True
    reports = []
    for P in points:
        try:
            reports.append(resolve.point_report(C, P))
        except ResolutionDepthExceeded:
            notes.append(f"resolution at {P} does not terminate: the curve has a multiple component")
            return reports, False, notes, True
    return reports, certified, notes, False


def analyze(C: PlaneCurve, k_max: int = 4, samples: int = frobclass.DEFAULT_SAMPLES, seed: int = 0,
            workers: int = 1) -> CurveReport:
    warn = list(C.warnings)
    pts = cv.points_over(C, 1, workers)
    smooth = [P for P in pts if cv.is_smooth_point(C, P)]
    Mq, MqS = len(pts), len(smooth)
    reports, certified, notes, reducible = singular_reports(C, k_max, workers)
    warn.extend(notes)

    if not reducible:
        scanned = {cv.make_point(P.coords, P.field, C.base) for P in pts if P not in smooth}
        found = {r.point for r in reports if r.point.level == 1}
        if scanned != found:
            warn.append("FINDING: rational singular points from the scan and the elimination differ")

    budget = sum(r.orbit_size * r.m * (r.m - 1) for r in reports)
    if budget > C.d * (C.d - 1):
        warn.append("polar Bezout budget exceeded: the curve is not irreducible")
        certified = False
        reducible = True
    irreducible_cert = irreducibility_certificate(C.d, reports, certified)

    Bq = resolve.B_q(MqS, reports)
    N1 = resolve.N1(MqS, reports)
    genus = genus_from(C.d, reports, certified)
    if not reducible and sum(r.orbit_size * r.delta for r in reports) > arithmetic_genus(C.d):
        warn.append("total delta exceeds the arithmetic genus: the curve is not irreducible")
        reducible = True
    fv = frobclass.analyze_frobenius(C, samples, k_max, seed, workers)
    warn.extend(fv.warnings)

    d, q = C.d, C.q
    g = genus.exact
    bounds = {
        "hv": bound_hv(d, q),
        "sv": None,
        "main": None,
        "hw_genus": None,
        "hw_arith": bound_hasse_weil_arith(q, d),
    }
    if fv.nu is not None:
        if g is not None:
            bounds["sv"] = bound_sv(d, g, q, fv.nu)
        else:
            lo, hi = genus.g
            bounds["sv"] = [bound_sv(d, lo, q, fv.nu), bound_sv(d, hi, q, fv.nu)]
    if g is not None:
        bounds["main"] = bound_main(d, q, genus.g_star, g, [r.m for r in reports if r.point.level == 1])
        bounds["hw_genus"] = bound_hasse_weil_genus(q, g)
    if reducible:
        # every registered claim presupposes an irreducible curve
        verdicts = [_not_evaluated(c, "hypotheses fail (the curve is not irreducible)") for c in CLAIM_IDS]
    else:
        verdicts = evaluate_verdicts(C, Mq, MqS, Bq, N1, genus, fv, reports, certified)
    return CurveReport(C, Mq, MqS, Bq, N1, genus, fv, reports, bounds, verdicts, irreducible_cert, warn)


# --- serialization -------------------------------------------------------------------------------------

def report_to_dict(rep: CurveReport) -> dict:
    C = rep.curve
    K = C.base
    fv = rep.frobenius
    return {
        "field": {"p": K.p, "s": K.s, "modulus": list(K.modulus)},
        "curve": {"degree": C.d, "text": format_poly(C.F)},
        "counts": {"Mq": rep.Mq, "MqS": rep.MqS, "Bq": rep.Bq, "N1": rep.N1},
        "genus": {"g_star": rep.genus.g_star, "g": rep.genus.as_json(), "certified": rep.genus.certified},
        "frobenius": {
            "fnc": fv.fnc,
            "epsilon2": fv.epsilon2,
            "confidence": fv.confidence,
            "nu": fv.nu,
            "seed": fv.seed,
        },
        "singular": [
            {
                "point": str(r.point),
                "level": r.point.level,
                "orbit_size": r.orbit_size,
                "mP": r.m,
                "delta": r.delta,
                "ordinary": r.ordinary,
                "branches": [
                    {"j1": b.j1, "s": b.s, "linear": b.linear, "tame": b.tame, "rational": b.rational}
                    for b in r.branches
                ],
            }
            for r in rep.singular
        ],
        "bounds": dict(rep.bounds),
        "verdicts": [
            {"id": v.id, "holds": v.holds, "equality": v.equality, "notes": v.notes} for v in rep.verdicts
        ],
        "irreducible_certified": rep.irreducible_certified,
        "warnings": list(rep.warnings),
    }
