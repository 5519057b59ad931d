"""Command-line front end: ``curvelab analyze | examples | search | verify-corpus``.

Exit codes: 0 when every evaluated claim holds, 2 when a claim fails or an
expectation mismatches (a FINDING), 1 on input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import corpus, frobclass, gf, invariants, resolve
from .curve import curve_from_text, new_curve
from .errors import CurvelabError
from .mpoly import MultiPoly, format_poly, monomials

EXIT_OK, EXIT_INPUT, EXIT_FINDING = 0, 1, 2


# --- rendering -----------------------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def render_text(rep: invariants.CurveReport) -> str:
    d = invariants.report_to_dict(rep)
    f, c, g, fr = d["field"], d["counts"], d["genus"], d["frobenius"]
    lines = [
        f"curve   {d['curve']['text']}  (degree {d['curve']['degree']})",
        f"field   GF({f['p']}^{f['s']})  modulus {f['modulus']}",
        f"counts  Mq={c['Mq']}  MqS={c['MqS']}  Bq={c['Bq']}  N1={c['N1']}",
        f"genus   g*={g['g_star']}  g={g['g']}  certified={g['certified']}",
        f"frob    fnc={fr['fnc']}  epsilon2={fr['epsilon2']}  confidence={fr['confidence']}  nu={fr['nu']}",
    ]
    for sp in d["singular"]:
        br = ", ".join(f"j1={b['j1']} s={b['s']}{'' if b['tame'] else ' wild'}" for b in sp["branches"])
        lines.append(f"sing    {sp['point']}  level={sp['level']} orbit={sp['orbit_size']} m={sp['mP']} "
                     f"delta={sp['delta']} ordinary={sp['ordinary']}  [{br}]")
    lines.append("bounds  " + "  ".join(f"{k}={v}" for k, v in d["bounds"].items()))
    for v in d["verdicts"]:
        state = {True: "holds", False: "FAILS", None: "skip"}[v["holds"]]
        eq = "" if v["equality"] is None else (" (equality)" if v["equality"] else "")
        lines.append(f"claim   {v['id']:<12} {state}{eq}  {v['notes']}")
    for w in d["warnings"]:
        lines.append(f"warning {w}")
    return "\n".join(lines)


def report_exit(rep: invariants.CurveReport) -> int:
    if rep.findings or any("FINDING" in w for w in rep.warnings):
        return EXIT_FINDING
    return EXIT_OK


def write_dot(rep: invariants.CurveReport, path: str):
    with open(path, "w") as fh:
        for i, r in enumerate(rep.singular):
            fh.write(resolve.to_dot(r.tree, f"P{i}") + "\n")


def _analysis_args(args):
    return dict(k_max=args.kmax, samples=args.samples, seed=args.seed, workers=args.workers)


# --- commands ----------------------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    if args.curve is None or args.p is None:
        raise CurvelabError("analyze needs --p and --curve")
    C = curve_from_text(args.curve, args.p, args.s, affine=args.affine)
    rep = invariants.analyze(C, **_analysis_args(args))
    print(dumps(invariants.report_to_dict(rep)) if args.json else render_text(rep))
    if args.dot:
        write_dot(rep, args.dot)
    return report_exit(rep)


def cmd_examples(args) -> int:
    if args.list or not args.name:
        for e in corpus.CORPUS:
            print(f"{e.name:<18} GF({e.p}^{e.s})  {e.text}")
        return EXIT_OK
    entry = corpus.get(args.name)
    rep = invariants.analyze(entry.curve(), **_analysis_args(args))
    bad = corpus.check_expectations(rep, entry.expected)
    if args.json:
        out = invariants.report_to_dict(rep)
        out["expectations"] = {"expected": entry.expected, "mismatches": bad, "notes": entry.notes}
        print(dumps(out))
    else:
        print(render_text(rep))
        print(f"expect  {'ok' if not bad else '; '.join(bad)}")
    if args.dot:
        write_dot(rep, args.dot)
    return EXIT_FINDING if bad else report_exit(rep)


def load_corpus(path: str) -> list[corpus.CorpusEntry]:
    with open(path) as fh:
        raw = json.load(fh)
    try:
        return [corpus.CorpusEntry(r["name"], r["p"], r.get("s", 1), r["text"], r.get("expected", {}),
                                   r.get("notes", "")) for r in raw]
    except (KeyError, TypeError, AttributeError) as exc:
        raise CurvelabError(f"malformed corpus file {path}: {exc!r}") from None


def cmd_verify_corpus(args) -> int:
    entries = load_corpus(args.corpus) if args.corpus else list(corpus.CORPUS)
    rows = []
    for e in entries:
        rep = invariants.analyze(e.curve(), **_analysis_args(args))
        bad = corpus.check_expectations(rep, e.expected)
        failed = [v.id for v in rep.findings]
        rows.append({"name": e.name, "ok": not bad and not failed and report_exit(rep) == EXIT_OK,
                     "N1": rep.N1, "Mq": rep.Mq, "fnc": rep.frobenius.fnc, "mismatches": bad,
                     "failed_claims": failed})
    if args.json:
        print(dumps({"entries": rows, "ok": all(r["ok"] for r in rows)}))
    else:
        for r in rows:
            msg = "; ".join(r["mismatches"] + [f"claim {c} fails" for c in r["failed_claims"]])
            print(f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']:<18} N1={r['N1']:<5} Mq={r['Mq']:<5} "
                  f"fnc={r['fnc']}  {msg}")
    return EXIT_OK if all(r["ok"] for r in rows) else EXIT_FINDING


# --- search ----------------------------------------------------------------------------------------

@dataclass
class SearchConfig:
    p: int
    s: int
    degree: int
    mode: str = "random"
    samples: int = 1000
    seed: int = 0
    require_fnc: bool = True
    require_singular: bool = False
    nu_floor: int | None = None
    limit: int | None = None
    workers: int = 1


def canonical_form(K: gf.FieldSpec, mons, coeffs) -> tuple[int, ...]:
    """Scale so the first nonzero coefficient (x^d first) is 1."""
    lead = next((c for c in coeffs if c), 0)
    if lead in (0, 1):
        return tuple(coeffs)
    inv = K.inv(lead)
    return tuple(K.mul(inv, c) for c in coeffs)


def cheap_reject(F: MultiPoly) -> str | None:
    """Reason to skip a form without running the Frobenius test, or None."""
    p = F.field.p
    if all(all(k % p == 0 for k in e) for e in F.terms):
        return "p-th power"
    for i in range(3):
        if all(e[i] >= 1 for e in F.terms):
            return "line factor"
        if F.degree() > 1 and all(e[i] == 0 for e in F.terms):
            # a binary form splits into concurrent lines
            return "cone"
    return None


def degree_pruned(cfg: SearchConfig, q: int) -> bool:
    """True when no degree-d curve can pass the filters."""
    d = cfg.degree
    if cfg.require_fnc and d > 1 and (d - 1) ** 2 < q:
        return True
    if cfg.require_fnc and cfg.nu_floor and cfg.nu_floor > 2:
        # for nonsingular curves with nu >= nu_floor the degree is at most (q-1)/(nu-1)
        return d * (cfg.nu_floor - 1) > q - 1
    return False


def canonical_count(q: int, n: int) -> int:
    """Number of nonzero forms with n coefficients up to scalar."""
    return (q**n - 1) // (q - 1)


def exhaustive_coeffs(index: int, n: int, q: int) -> list[int]:
    """The index-th canonical coefficient vector: leading 1 at position k, then a free tail."""
    for k in range(n):
        block = q ** (n - k - 1)
        if index < block:
            tail = []
            for _ in range(n - k - 1):
                index, r = divmod(index, q)
                tail.append(r)
            return [0] * k + [1] + tail[::-1]
        index -= block
    raise IndexError("index out of range")


def _candidate(cfg: SearchConfig, K, mons, index: int):
    if cfg.mode == "exhaustive":
        return tuple(exhaustive_coeffs(index, len(mons), K.q))
    else:
        rng = random.Random(cfg.seed * 1_000_003 + index)
        coeffs = [rng.randrange(K.q) for _ in mons]
    return canonical_form(K, mons, coeffs)


def _examine(job):
    cfg, index = job
    K = gf.build_field(cfg.p, cfg.s)
    mons = monomials(3, cfg.degree, True)
    coeffs = _candidate(cfg, K, mons, index)
    F = MultiPoly(K, 3, {e: c for e, c in zip(mons, coeffs) if c})
    if not F.terms:
        return index, "zero", None
    why = cheap_reject(F)
    if why:
        return index, why, None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        C = new_curve(F)
    fnc = frobclass.fnc_test(C)
    if cfg.require_fnc and not fnc:
        return index, None, None
    rec = {"index": index, "curve": format_poly(F), "fnc": fnc}
    reports, certified, _, reducible = invariants.singular_reports(C, k_max=1)
    if any(r.m == C.d for r in reports):
        return index, "cone", None
    if reducible or sum(r.orbit_size * r.delta for r in reports) > invariants.arithmetic_genus(C.d):
        return index, "reducible", None
    rec["singular_points"] = len(reports)
    rec["irreducible_certified"] = invariants.irreducibility_certificate(C.d, reports, certified)
    if cfg.require_singular and not reports:
        return index, None, None
    if cfg.nu_floor and (reports or not certified):
        return index, None, None
    if cfg.nu_floor:
        fv = frobclass.analyze_frobenius(C, seed=cfg.seed)
        rec["nu"] = fv.nu
        if fv.nu is None or fv.nu < cfg.nu_floor:
            return index, None, None
    return index, None, rec


def run_search(cfg: SearchConfig, emit=print) -> dict:
    """Stream matches through ``emit`` (as JSON lines) and return the summary."""
    K = gf.build_field(cfg.p, cfg.s)
    mons = monomials(3, cfg.degree, True)
    if cfg.mode == "exhaustive":
        total = canonical_count(K.q, len(mons))
        cap = gf.enumeration_cap()
        if total > cap:
            raise CurvelabError(f"exhaustive search needs {total} candidates, cap is {cap} (set CURVELAB_CAP)")
    elif cfg.mode == "random":
        total = cfg.samples
    else:
        raise CurvelabError(f"unknown search mode {cfg.mode!r}")
    summary = {"p": cfg.p, "s": cfg.s, "degree": cfg.degree, "mode": cfg.mode, "seed": cfg.seed,
               "examined": 0, "rejected": {}, "matches": 0, "pruned": False}
    if degree_pruned(cfg, K.q):
        summary["pruned"] = True
        return summary
    pool = ProcessPoolExecutor(max_workers=cfg.workers) if cfg.workers > 1 else None
    chunk = 256 * max(cfg.workers, 1)
    try:
        for start in range(0, total, chunk):
            jobs = [(cfg, i) for i in range(start, min(start + chunk, total))]
            results = pool.map(_examine, jobs, chunksize=32) if pool else map(_examine, jobs)
            for index, why, rec in results:
                summary["examined"] += 1
                if why:
                    summary["rejected"][why] = summary["rejected"].get(why, 0) + 1
                elif rec is not None:
                    summary["matches"] += 1
                    emit(dumps(rec))
                    if cfg.limit and summary["matches"] >= cfg.limit:
                        return summary
    finally:
        if pool:
            pool.shutdown()
    return summary


def cmd_search(args) -> int:
    if args.p is None or args.degree is None:
        raise CurvelabError("search needs --p and --degree")
    cfg = SearchConfig(args.p, args.s, args.degree, args.mode, args.count, args.seed,
                       not args.any_fnc, args.require_singular, args.nu_floor, args.limit, args.workers)
    summary = run_search(cfg)
    summary["config"] = asdict(cfg)
    summary["config"].pop("workers")
    print(dumps({"summary": summary}))
    return EXIT_OK


# --- parser ----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="field characteristic")
    common.add_argument("--s", type=int, default=1, help="extension degree, q = p^s")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--kmax", type=int, default=frobclass.DEFAULT_KMAX, help="largest extension level sampled")
    common.add_argument("--samples", type=int, default=frobclass.DEFAULT_SAMPLES)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--dot", metavar="FILE", help="write resolution trees in DOT format")

    ap = argparse.ArgumentParser(prog="curvelab", description="Frobenius nonclassical plane curves over finite fields")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="analyze one curve")
    a.add_argument("--curve", help="homogeneous polynomial in x, y, z")
    a.add_argument("--affine", action="store_true", help="curve is affine in x, y; homogenize")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("examples", parents=[common], help="analyze a named example curve")
    e.add_argument("name", nargs="?")
    e.add_argument("--list", action="store_true")
    e.set_defaults(func=cmd_examples)

    v = sub.add_parser("verify-corpus", parents=[common], help="check every corpus entry against its expectations")
    v.add_argument("--corpus", help="JSON list of entries to use instead of the built-in corpus")
    v.set_defaults(func=cmd_verify_corpus)

    s = sub.add_parser("search", parents=[common], help="search for Frobenius nonclassical curves")
    s.add_argument("--degree", type=int)
    s.add_argument("--mode", choices=("random", "exhaustive"), default="random")
    s.add_argument("--any-fnc", action="store_true", help="report every examined curve, not only nonclassical ones")
    s.add_argument("--require-singular", action="store_true")
    s.add_argument("--nu-floor", type=int, help="keep nonsingular curves with Frobenius order at least this")
    s.add_argument("--limit", type=int, help="stop after this many matches")
    s.add_argument("--count", type=int, default=1000, help="number of random samples")
    s.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CurvelabError, ValueError, OSError) as exc:
        print(f"curvelab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
