from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from math import lcm

import pytest
import sympy

from conftest import P, random_nondegenerate_germs
from hypersing.errors import NonIsolatedError, PreconditionError
from hypersing.localgb import milnor_number
from hypersing.poly import join, parse_poly
from hypersing.spectra import (
    INF,
    DiscrepancyClass,
    Divisor,
    Method,
    Spectrum,
    Verdict,
    classify,
    discrepancy_classify,
    fmt_rat,
    lct,
    lct_from_exponent,
    minimal_exponent,
    quasi_homogeneous_weights,
    resolution_invariants,
    spectrum_newton,
    spectrum_qh,
    symmetry_check,
    thom_sebastiani,
    ts_minimal_exponent,
    verdict_for,
)

F = Fraction
XY = ["x", "y"]


def _generating_function_spectrum(w) -> Counter:
    """Spectrum of a qh isolated singularity from prod (t^w - t) / (1 - t^w)."""
    D = lcm(*(Fraction(x).denominator for x in w))
    s = sympy.Symbol("s")
    expr = sympy.Integer(1)
    for x in w:
        k = int(Fraction(x) * D)
        expr *= sympy.cancel((s**k - s**D) / (1 - s**k))
    poly = sympy.Poly(sympy.expand(sympy.cancel(expr)), s)
    out = Counter()
    for (e,), c in poly.terms():
        out[Fraction(e, D)] += int(c)
    return out


def test_fmt_rat():
    assert fmt_rat(F(5, 6)) == "5/6"
    assert fmt_rat(F(2)) == "2"
    assert fmt_rat(INF) == "inf"
    assert INF > F(10**9)


def test_spectrum_container():
    sp = Spectrum(2, (F(7, 6), F(5, 6)))
    assert sp.values == (F(5, 6), F(7, 6))
    assert sp.minimum == F(5, 6)
    assert sp.to_dict() == {
        "m": 2,
        "label": "spectrum",
        "values": [{"value": "5/6", "multiplicity": 1}, {"value": "7/6", "multiplicity": 1}],
        "flags": [],
    }
    assert symmetry_check(sp)
    assert not symmetry_check(Spectrum(2, (F(1, 2),)))


def test_qh_weights():
    assert quasi_homogeneous_weights(P("x^2+y^3", XY)) == (F(1, 2), F(1, 3))
    assert quasi_homogeneous_weights(P("x^3+x*y^3", XY)) == (F(1, 3), F(2, 9))
    assert quasi_homogeneous_weights(P("x^4+y^4+z^4+x*y*z")) is None
    assert quasi_homogeneous_weights(P("x*y", XY)) == (F(1, 2), F(1, 2))


@pytest.mark.parametrize("text, vars_", [
    ("x^2+y^3", "xy"), ("x^3+y^4", "xy"), ("x^2*y+y^4", "xy"), ("x^3+x*y^3", "xy"),
    ("x^2+y^3+z^5", "xyz"), ("x^3+y^3+z^3", "xyz"), ("x^2*y+y^3+z^4", "xyz"),
])
def test_qh_spectrum_against_generating_function(text, vars_):
    f = parse_poly(text, list(vars_))
    w = quasi_homogeneous_weights(f)
    sp = spectrum_qh(f, w)
    assert Counter(sp.values) == _generating_function_spectrum(w)
    assert len(sp.values) == milnor_number(f)
    assert symmetry_check(sp)


def test_spectrum_goldens(t444):
    assert spectrum_qh(P("x^2+y^3", XY), [F(1, 2), F(1, 3)]).values == (F(5, 6), F(7, 6))
    ns = spectrum_newton(t444)
    assert ns.spectrum.multiplicities() == {F(1): 1, F(5, 4): 3, F(3, 2): 3, F(7, 4): 3, F(2): 1}
    assert ns.simplicial and ns.symmetric
    assert ns.spectrum.label == "spectrum"


def test_e7_graded_values_beat_naive_basis():
    f = P("x^3+x*y^3+y^7", XY)  # semi-quasi-homogeneous E7
    ns = spectrum_newton(f)
    e7 = [F(k, 18) for k in (10, 14, 16, 18, 20, 22, 26)]
    assert list(ns.spectrum.values) == e7


def test_newton_equals_qh_when_both_apply():
    for text in ["x^2+y^3+z^5", "x^3+y^3+z^3", "x^4+y^6"]:
        f = parse_poly(text, sorted({c for c in text if c.isalpha()}))
        w = quasi_homogeneous_weights(f)
        assert spectrum_newton(f).spectrum.same_values(spectrum_qh(f, w))


def test_spectrum_preconditions():
    with pytest.raises(ValueError):
        spectrum_qh(P("x^2+y^3", XY), [F(1, 2), F(1, 2)])
    with pytest.raises(PreconditionError):
        spectrum_newton(P("x^3+x*y^3", XY))


# ---------------------------------------------------------------------------
# Thom-Sebastiani
# ---------------------------------------------------------------------------

def test_thom_sebastiani_a1_cube():
    a1 = spectrum_qh(parse_poly("x^2", ["x"]), [F(1, 2)])
    assert a1.values == (F(1, 2),)
    two = thom_sebastiani(a1, spectrum_qh(parse_poly("y^2+z^2", ["y", "z"]), [F(1, 2)] * 2))
    assert two.values == (F(3, 2),)
    assert two.same_values(spectrum_qh(P("x^2+y^2+z^2"), [F(1, 2)] * 3))


def test_thom_sebastiani_random_pairs():
    rng = random.Random(9)
    for _ in range(6):
        a, b, c = rng.randint(2, 5), rng.randint(2, 5), rng.randint(2, 5)
        f = parse_poly(f"x^{a}", ["x"])
        g = parse_poly(f"y^{b}+z^{c}", ["y", "z"])
        h = join(f, g)
        sf = spectrum_qh(f, quasi_homogeneous_weights(f))
        sg = spectrum_qh(g, quasi_homogeneous_weights(g))
        sh = spectrum_qh(h, quasi_homogeneous_weights(h))
        assert sh.same_values(thom_sebastiani(sf, sg))
        assert minimal_exponent(h)[0] == ts_minimal_exponent(sf.minimum, sg.minimum)


# ---------------------------------------------------------------------------
# minimal exponent cascade and classification
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("text, vars_, alpha, method", [
    ("x^2+y^2+z^2", "xyz", F(3, 2), Method.QH),
    ("x^2+y^3", "xy", F(5, 6), Method.QH),
    ("x^4+y^4+z^4+x*y*z", "xyz", F(1), Method.NEWTON_DIAGONAL),
    ("x + y^2", "xy", INF, Method.SMOOTH),
    ("x^4+y^4", "xy", F(1, 2), Method.QH),
])
def test_minimal_exponent_routes(text, vars_, alpha, method):
    assert minimal_exponent(parse_poly(text, list(vars_))) == (alpha, method)


@pytest.mark.parametrize("text, alpha", [
    # semi-quasi-homogeneous: qh principal part plus terms of weight > 1,
    # so the minimal exponent is the weight sum of the principal part
    ("x^3+x*y^3+x^2*y^2", F(1, 3) + F(2, 9)),  # E7 + higher terms
    ("x^2*y+y^4+x^2*y^2", F(3, 8) + F(1, 4)),  # D5 + higher terms
])
def test_minimal_exponent_non_convenient_completion(text, alpha):
    f = P(text, XY)
    assert quasi_homogeneous_weights(f) is None
    assert minimal_exponent(f) == (alpha, Method.NEWTON_DIAGONAL_COMPLETED)


def test_minimal_exponent_non_isolated():
    with pytest.raises(NonIsolatedError):
        minimal_exponent(P("x^2*y^2", XY))


def test_classify_triple(t444):
    a1 = classify(P("x^2+y^2+z^2"))
    assert (a1.verdict, a1.minimal_exponent, a1.lct) == (Verdict.RATIONAL, F(3, 2), F(1))
    t = classify(t444)
    assert (t.verdict, t.minimal_exponent, t.lct) == (Verdict.DU_BOIS_NOT_RATIONAL, F(1), F(1))
    cusp = classify(P("x^2+y^3", XY))
    assert (cusp.verdict, cusp.minimal_exponent, cusp.lct) == (Verdict.NOT_DU_BOIS, F(5, 6), F(5, 6))


def test_verdict_thresholds():
    assert verdict_for(F(1)) is Verdict.DU_BOIS_NOT_RATIONAL
    assert verdict_for(F(1) + F(1, 10**9)) is Verdict.RATIONAL
    assert verdict_for(F(1) - F(1, 10**9)) is Verdict.NOT_DU_BOIS
    assert verdict_for(INF) is Verdict.RATIONAL
    assert lct_from_exponent(F(7, 4)) == 1
    assert lct(P("x^2+y^3", XY)) == F(5, 6)


def test_min_spectrum_is_minimal_exponent_random():
    for f in random_nondegenerate_germs(31, 10):
        alpha, method = minimal_exponent(f)
        ns = spectrum_newton(f)
        assert ns.spectrum.minimum == alpha
        assert len(ns.spectrum.values) == milnor_number(f)


# ---------------------------------------------------------------------------
# resolution data
# ---------------------------------------------------------------------------

def test_cusp_resolution():
    inv = resolution_invariants([Divisor(2, 1), Divisor(3, 2), Divisor(6, 4)])
    assert inv.alpha == F(5, 6) == lct(P("x^2+y^3", XY))
    assert inv.lct == F(5, 6)
    assert not inv.rational and not inv.du_bois


def test_resolution_alpha_prime_uses_only_divisors_meeting_the_proper_transform():
    inv = resolution_invariants([Divisor(2, 2, False), Divisor(1, 1)])
    assert inv.alpha == F(3, 2)
    assert inv.alpha_prime == F(2)
    assert inv.rational and inv.du_bois
    assert resolution_invariants([]).alpha is INF


def test_divisor_validation():
    with pytest.raises(ValueError):
        Divisor(0, 1)
    with pytest.raises(ValueError):
        Divisor(1, -1)


def test_discrepancy_classes():
    assert discrepancy_classify([0, 1]) is DiscrepancyClass.CANONICAL
    assert discrepancy_classify([F(-1, 2)]) is DiscrepancyClass.LOG_TERMINAL_NOT_CANONICAL
    assert discrepancy_classify([-1, 0]) is DiscrepancyClass.LOG_CANONICAL_NOT_LT
    assert discrepancy_classify([-2]) is DiscrepancyClass.NOT_LOG_CANONICAL
