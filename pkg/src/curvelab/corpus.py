"""Named example curves with the expected values used by ``verify-corpus``."""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import PlaneCurve, curve_from_text
from .errors import UnknownExample


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    p: int
    s: int
    text: str
    expected: dict = field(default_factory=dict)
    notes: str = ""

    def curve(self) -> PlaneCurve:
        return curve_from_text(self.text, self.p, self.s)


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry(
        "sextic-f4", 2, 2,
        "x^4*y^2 + x^2*y^4 + x^4*y*z + x*y^4*z + x^4*z^2 + x^2*y^2*z^2 + y^4*z^2 + x^2*z^4 + x*y*z^4 + y^2*z^4",
        {"fnc": True, "N1": 14, "Mq": 7, "MqS": 0, "g": 3},
        "sextic over GF(4) whose singular points are the 7 points of PG(2,2), all nodes; "
        "Mq, MqS and g were computed by the scan and resolution oracles",
    ),
    CorpusEntry(
        "fermat13-f27", 3, 3, "x^13 - y^13 - z^13",
        {"fnc": True, "N1": 208, "Mq": 208, "smooth": True},
        "smooth Fermat curve of degree 13 over GF(27)",
    ),
    CorpusEntry(
        "c2-f27", 3, 3, "x^13 - y^13 - y^9*z^4 - y^3*z^10 - y*z^12 - 2*z^13",
        {"fnc": True, "N1": 280, "Mq_gt": 208, "g_lt": 66, "g": 42},
        "the integer coefficient 2 is read as the prime-field element 2 of GF(27); "
        "g = 42 was computed by the resolution oracle",
    ),
    CorpusEntry(
        "hermitian-q2", 2, 2, "x^3 + y^3 + z^3",
        {"fnc": True, "N1": 9, "Mq": 9, "smooth": True},
        "Hermitian curve over GF(4); N1 from a brute-force scan of PG(2,4)",
    ),
    CorpusEntry(
        "hermitian-q3", 3, 2, "x^4 + y^4 + z^4",
        {"fnc": True, "N1": 28, "Mq": 28, "smooth": True},
        "Hermitian curve over GF(9); N1 from a brute-force scan of PG(2,9)",
    ),
    CorpusEntry(
        "dls-q8", 2, 3, "y^8*z^2 + y*z^9 + x^10 + x^3*z^7",
        {"fnc": True, "Mq": 65, "N1": 65, "g": 14},
        "homogenized plane model of y^8 - y = x^2 (x^8 - x) over GF(8), singular at (0 : 1 : 0); "
        "Mq, N1 and g were computed by the scan and resolution oracles and then frozen",
    ),
)


def names() -> list[str]:
    return [e.name for e in CORPUS]


def get(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(names())}")


def check_expectations(report, expected: dict) -> list[str]:
    """Mismatch messages between an analysis report and an expectation dict."""
    got = {
        "fnc": report.frobenius.fnc,
        "N1": report.N1,
        "Mq": report.Mq,
        "MqS": report.MqS,
        "g": report.genus.exact,
        "smooth": not report.singular,
    }
    bad = []
    for key, want in expected.items():
        if key == "Mq_gt":
            if not report.Mq > want:
                bad.append(f"Mq={report.Mq} not > {want}")
        elif key == "g_lt":
            g = report.genus.exact
            if g is None or not g < want:
                bad.append(f"g={report.genus.g} not certified < {want}")
        elif got.get(key) != want:
            bad.append(f"{key}={got.get(key)} expected {want}")
    return bad
