"""Built-in golden corpus run by ``sing paper-examples``.

Every expected value is an exact string; a check passes only on an exact match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .constraints import allowed_region
from .localgb import milnor_number
from .monodromy import corollary1_bound, du_bois_family, euler_smoothing, nilpotence_index, power_membership
from .newton import kouchnirenko_mu
from .poly import parse_poly
from .spectra import Divisor, classify, fmt_rat, resolution_invariants, spectrum_newton, spectrum_qh

T444 = "x^4+y^4+z^4+x*y*z"
XYZ = ["x", "y", "z"]


@dataclass(frozen=True)
class Golden:
    name: str
    expected: str
    compute: Callable[[], str]


def _spec_text(sp) -> str:
    return " ".join(f"{fmt_rat(v)}x{k}" for v, k in sp.multiplicities().items())


def _region_text(points) -> str:
    return " ".join(f"({p},{q})" for p, q in sorted(points))


def _t444():
    return parse_poly(T444, XYZ)


GOLDENS: tuple[Golden, ...] = (
    Golden("T444 milnor number (standard basis)", "11", lambda: str(milnor_number(_t444()))),
    Golden("T444 milnor number (Kouchnirenko)", "11", lambda: str(kouchnirenko_mu(_t444()))),
    Golden(
        "T444 spectrum",
        "1x1 5/4x3 3/2x3 7/4x3 2x1",
        lambda: _spec_text(spectrum_newton(_t444()).spectrum),
    ),
    Golden("T444 minimal exponent", "1", lambda: fmt_rat(classify(_t444()).minimal_exponent)),
    Golden("T444 lct", "1", lambda: fmt_rat(classify(_t444()).lct)),
    Golden("T444 verdict", "DuBoisNotRational", lambda: classify(_t444()).verdict.value),
    Golden("T444 nilpotence index", "2", lambda: str(nilpotence_index(_t444()).s)),
    Golden("smoothing Euler number", "24", lambda: str(euler_smoothing(13, 11, 2))),
    Golden(
        "family n=2: h^(n-1) in Jacobian ideal",
        "False",
        lambda: str(power_membership(du_bois_family(2), 1).member),
    ),
    Golden(
        "family n=3: h^(n-1) in Jacobian ideal",
        "False",
        lambda: str(power_membership(du_bois_family(3), 2).member),
    ),
    Golden(
        "A1 surface verdict",
        "Rational 3/2",
        lambda: (lambda c: f"{c.verdict.value} {fmt_rat(c.minimal_exponent)}")(
            classify(parse_poly("x^2+y^2+z^2", XYZ))
        ),
    ),
    Golden(
        "cusp verdict",
        "NotDuBois 5/6 5/6",
        lambda: (lambda c: f"{c.verdict.value} {fmt_rat(c.minimal_exponent)} {fmt_rat(c.lct)}")(
            classify(parse_poly("x^2+y^3", ["x", "y"]))
        ),
    ),
    Golden(
        "cusp spectrum",
        "5/6x1 7/6x1",
        lambda: _spec_text(spectrum_qh(parse_poly("x^2+y^3", ["x", "y"]), ["1/2", "1/3"])),
    ),
    Golden(
        "cusp resolution alpha",
        "5/6",
        lambda: fmt_rat(resolution_invariants([Divisor(2, 1), Divisor(3, 2), Divisor(6, 4)]).alpha),
    ),
    Golden("region n=2 j=2", "(0,2) (1,1) (2,0)", lambda: _region_text(allowed_region(2, 2))),
    Golden(
        "region n=2 j=2 non-unipotent",
        "(1,1)",
        lambda: _region_text(allowed_region(2, 2, "non-unipotent")),
    ),
    Golden("nilpotence bound n=2 j=2", "1", lambda: str(corollary1_bound(2, 2))),
    Golden("nilpotence bound n=3 j=3", "2", lambda: str(corollary1_bound(3, 3))),
)


def run_goldens() -> list[tuple[Golden, str, bool]]:
    out = []
    for g in GOLDENS:
        try:
            actual = g.compute()
        except Exception as exc:  # a crash is a failed check, not an abort
            actual = f"error: {type(exc).__name__}: {exc}"
        out.append((g, actual, actual == g.expected))
    return out
