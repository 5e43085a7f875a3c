from __future__ import annotations

import random

import pytest

from hypersing.newton import is_nondegenerate
from hypersing.poly import Poly, parse_poly

XYZ = ("x", "y", "z")

# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def P(text: str, variables=XYZ) -> Poly:
    return parse_poly(text, list(variables))


def random_convenient_germ(rng: random.Random, nvars: int, max_exp: int = 6) -> Poly:
    """Pure powers on every axis plus a few random interior monomials."""
    names = XYZ[:nvars]
    terms: dict = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = rng.randint(2, max_exp)
        terms[tuple(e)] = 1
    for _ in range(rng.randint(0, 3)):
        e = tuple(rng.randint(0, max_exp - 1) for _ in range(nvars))
        if sum(e) >= 2 and sum(1 for a in e if a) >= 2:
            terms[e] = rng.choice([1, 2, -1, 3])
    return Poly(names, terms)


def random_nondegenerate_germs(seed: int, count: int, max_vars: int = 3) -> list[Poly]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        f = random_convenient_germ(rng, rng.randint(2, max_vars))
        if is_nondegenerate(f):
            out.append(f)
    return out


@pytest.fixture
def t444() -> Poly:
    return P("x^4+y^4+z^4+x*y*z")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
