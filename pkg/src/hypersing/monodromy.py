"""Monodromy nilpotence witnesses from powers of ``f`` in the Milnor algebra.

If ``[f^k] != 0`` in ``Q{x}/(df)``, multiplication by ``f`` has a nonzero
``k``-th power on the Milnor algebra.  For convenient nondegenerate germs the
Newton filtration identifies its graded action with that of the monodromy
logarithm ``N`` on vanishing cohomology (up to nonzero constants), so
``N^k != 0`` there.  The witness is one-sided: it never claims an exact order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .localgb import MilnorAlgebra, multiplication_matrix, truncated_quotient
from .poly import Poly
from .spectra import fmt_rat, spectrum_newton


@dataclass(frozen=True)
class NilpotenceReport:
    f: Poly
    s: int  # least k with f^k in the Jacobian ideal
    witness: tuple[Fraction, ...]  # class of f^(s-1) on the Milnor basis
    implication: str

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "witness": [fmt_rat(c) for c in self.witness],
            "implication": self.implication,
        }


@dataclass(frozen=True)
class PowerMembership:
    member: bool
    witness: tuple[Fraction, ...] | None  # reduced class when not a member


def power_membership(f: Poly, k: int, ma: MilnorAlgebra | None = None) -> PowerMembership:
    """Whether ``f^k`` lies in the local Jacobian ideal.

    Membership is decided by Mora normal form on the polynomial ``f^k``;
    the witness coordinates come from the jet-truncated Milnor algebra.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    ma = ma or truncated_quotient(f)
    g = f ** k
    member = ma.jacobian.contains(g)
    witness = None if member else ma.reduce(g)
    return PowerMembership(member, witness)


def _implication(k: int, m: int) -> str:
    if k == 0:
        return "f lies in its Jacobian ideal: no witness for N != 0"
    return (
        f"[f^{k}] != 0 in the Milnor algebra, so (multiplication by f)^{k} != 0 "
        f"on the Newton-graded Milnor algebra; under the identification of that grading with "
        f"the Hodge grading of vanishing cohomology, N^{k} != 0 on H^{m - 1}_van"
    )


def nilpotence_index(f: Poly, ma: MilnorAlgebra | None = None) -> NilpotenceReport:
    """Least ``s`` with ``f^s`` in the Jacobian ideal, plus the class of ``f^(s-1)``."""
    ma = ma or truncated_quotient(f)
    prev = power_membership(f, 0, ma)
    for k in range(1, ma.mu + 2):
        cur = power_membership(f, k, ma)
        if cur.member:
            return NilpotenceReport(f, k, prev.witness, _implication(k - 1, f.nvars))
        prev = cur
    raise AssertionError("f is not nilpotent in its Milnor algebra")  # pragma: no cover


def matrix_power_is_zero(mat: list[list[Fraction]], k: int) -> bool:
    n = len(mat)
    res = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(k):
        res = [[sum(res[i][t] * mat[t][j] for t in range(n) if res[i][t]) for j in range(n)] for i in range(n)]
    return not any(any(row) for row in res)


def nilpotence_matrix_check(f: Poly, s: int, ma: MilnorAlgebra | None = None) -> bool:
    """True iff the multiplication-by-f matrix M has M^(s-1) != 0 and M^s = 0."""
    ma = ma or truncated_quotient(f)
    M = multiplication_matrix(ma, f)
    return (not matrix_power_is_zero(M, s - 1)) and matrix_power_is_zero(M, s)


def v_graded_dimensions(f: Poly, ma: MilnorAlgebra | None = None) -> dict[Fraction, int]:
    """Dimensions of the Newton-graded pieces of the Milnor algebra."""
    return spectrum_newton(f, ma).spectrum.multiplicities()


def corollary1_bound(n: int, j: int) -> int:
    """Exponent k with N^k = 0 on H^j of the limit when the special fibre has rational singularities."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= j <= 2 * n:
        raise ValueError(f"degree j={j} outside [0, {2 * n}]")
    return max(1, min(j - 1, 2 * n - j - 1))


def euler_smoothing(chi_singular: int, mu_total: int, n: int) -> int:
    """Euler characteristic of the nearby smooth fibre of an n-dimensional fibre."""
    if mu_total < 0:
        raise ValueError("total Milnor number must be nonnegative")
    return chi_singular + (-1) ** n * mu_total


def du_bois_family(n: int) -> Poly:
    """``y_1^(n+2) + ... + y_(n+1)^(n+2) + y_1 ... y_(n+1)``, a Du Bois degeneration."""
    if n < 1:
        raise ValueError("n must be positive")
    m = n + 1
    names = tuple(f"y{i}" for i in range(1, m + 1))
    terms = {tuple(n + 2 if j == i else 0 for j in range(m)): 1 for i in range(m)}
    terms[(1,) * m] = 1
    return Poly(names, terms)


def support_in_range(dims: dict[Fraction, int], lo, hi) -> bool:
    return all(lo <= a <= hi for a in dims)

