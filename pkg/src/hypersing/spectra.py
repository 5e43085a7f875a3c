"""Spectra, minimal exponents, log canonical thresholds and classification.

Spectral numbers live in ``(0, m)`` for a germ in ``m`` variables, are
symmetric about ``m/2`` and their minimum is the minimal exponent (the
convention in which the spectrum of ``x^4+y^4+z^4+xyz`` is
``1, 5/4 (x3), 3/2 (x3), 7/4 (x3), 2``).
"""

from __future__ import annotations

import enum
import functools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIsolatedError, PreconditionError, SmoothGermError
from .linalg import Echelon, rref, solve
from .localgb import MilnorAlgebra, truncated_quotient
from .newton import (
    NewtonPolyhedron,
    degenerate_faces,
    diagonal_minimal_exponent,
    is_convenient,
    newton_polyhedron,
)
from .poly import Poly, join, monomials_of_degree


@functools.total_ordering
class _Infinity:
    """Sentinel larger than every rational (minimal exponent of a smooth germ)."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("hypersing.INF")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


def fmt_rat(x) -> str:
    """Exact text form: ``"p/q"``, ``"n"`` or ``"inf"``."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# closed vocabularies -------------------------------------------------------


class Method(str, enum.Enum):
    SMOOTH = "smooth"
    QH = "qh"
    NEWTON_DIAGONAL = "newton-diagonal"
    NEWTON_DIAGONAL_COMPLETED = "newton-diagonal-completed"
    NEWTON_FILTRATION = "newton-filtration-lower-confidence"
    RESOLUTION = "resolution"


class Verdict(str, enum.Enum):
    RATIONAL = "Rational"
    DU_BOIS_NOT_RATIONAL = "DuBoisNotRational"
    NOT_DU_BOIS = "NotDuBois"


class DiscrepancyClass(str, enum.Enum):
    CANONICAL = "Canonical"
    LOG_TERMINAL_NOT_CANONICAL = "LogTerminalNotCanonical"
    LOG_CANONICAL_NOT_LT = "LogCanonicalNotLT"
    NOT_LOG_CANONICAL = "NotLogCanonical"


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Sorted multiset of spectral numbers of a germ in ``m`` variables.

    ``label`` is ``"spectrum"`` unless a caveat flag says the values are only
    Newton-filtration degrees.
    """

    m: int
    values: tuple[Fraction, ...]
    label: str = "spectrum"
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(Fraction(v) for v in self.values)))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def minimum(self) -> Fraction:
        return self.values[0]

    def multiplicities(self) -> dict[Fraction, int]:
        return dict(sorted(Counter(self.values).items()))

    def same_values(self, other: "Spectrum") -> bool:
        return self.m == other.m and self.values == other.values

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "label": self.label,
            "values": [
                {"value": fmt_rat(v), "multiplicity": k} for v, k in self.multiplicities().items()
            ],
            "flags": list(self.flags),
        }


def symmetry_check(sp: Spectrum) -> bool:
    """True iff the multiset is invariant under ``a -> m - a``."""
    return sorted(sp.m - v for v in sp.values) == list(sp.values)


def thom_sebastiani(spec_f: Spectrum, spec_g: Spectrum) -> Spectrum:
    """Spectrum of ``f(x) + g(y)``: all pairwise sums."""
    return Spectrum(spec_f.m + spec_g.m, tuple(a + b for a in spec_f.values for b in spec_g.values))


def ts_minimal_exponent(alpha_f, alpha_g):
    if alpha_f is INF or alpha_g is INF:
        return INF
    return Fraction(alpha_f) + Fraction(alpha_g)


def ts_join(f: Poly, g: Poly) -> Poly:
    return join(f, g)


# ---------------------------------------------------------------------------
# quasi-homogeneous route
# ---------------------------------------------------------------------------


def quasi_homogeneous_weights(f: Poly) -> tuple[Fraction, ...] | None:
    """Positive weights ``w`` with ``<w, a> = 1`` on the support, if any.

    When the weights are not unique (e.g. ``xy``), the free weights are set
    to 1/2, the value every splitting quadratic pair admits.
    """
    if f.is_zero() or f.constant_term():
        return None
    rows = [list(e) for e in f.support()]
    sol = solve(rows, [1] * len(rows))
    if sol is None:
        return None
    x, kernel = sol
    if kernel:
        # pin each free coordinate to 1/2 and re-solve
        pivots = rref(rows)[1]
        free = [i for i in range(f.nvars) if i not in pivots]
        extra = [[int(j == i) for j in range(f.nvars)] for i in free]
        sol = solve(rows + extra, [1] * len(rows) + [Fraction(1, 2)] * len(extra))
        if sol is None:
            return None
        x = sol[0]
    if all(v > 0 for v in x):
        return tuple(x)
    return None


def spectrum_qh(f: Poly, w: Sequence, ma: MilnorAlgebra | None = None) -> Spectrum:
    """Spectrum of a quasi-homogeneous isolated singularity with weights ``w``."""
    w = tuple(Fraction(x) for x in w)
    if len(w) != f.nvars:
        raise ValueError("weight vector length does not match the number of variables")
    for e in f.terms:
        if sum(a * b for a, b in zip(w, e)) != 1:
            raise ValueError(f"f is not quasi-homogeneous for weights {w}")
    ma = ma or truncated_quotient(f)
    vals = tuple(sum(wi * (bi + 1) for wi, bi in zip(w, b)) for b in ma.basis)
    return Spectrum(f.nvars, vals)


# ---------------------------------------------------------------------------
# Newton route
# ---------------------------------------------------------------------------


def newton_graded_dimensions(
    ma: MilnorAlgebra, npoly: NewtonPolyhedron
) -> dict[Fraction, int]:
    """Dimensions of the graded pieces of the Newton filtration on the Milnor algebra.

    The monomial ``x^b`` sits in degree ``nu(b + 1)``; the filtration on the
    quotient is the image of the monomial filtration, so the graded
    dimensions are rank jumps while adding monomial classes by decreasing degree.
    """
    n = ma.nvars
    levels: dict[Fraction, list] = {}
    for d in range(ma.determinacy):
        for b in monomials_of_degree(n, d):
            nu = npoly.filtration_value([x + 1 for x in b])
            levels.setdefault(nu, []).append(b)
    ech = Echelon()
    dims: dict[Fraction, int] = {}
    for nu in sorted(levels, reverse=True):
        before = len(ech)
        for b in levels[nu]:
            coords = ma.reduce(Poly.monomial(ma.f.vars, b))
            ech.add({i: c for i, c in enumerate(coords) if c})
        if len(ech) > before:
            dims[nu] = len(ech) - before
    assert len(ech) == ma.mu
    return dict(sorted(dims.items()))


@dataclass(frozen=True)
class NewtonSpectrum:
    spectrum: Spectrum
    simplicial: bool
    symmetric: bool
    basis_adapted: bool  # monomial-basis values agree with the graded dimensions
    basis_values: tuple[Fraction, ...] = field(default=())


def spectrum_newton(f: Poly, ma: MilnorAlgebra | None = None) -> NewtonSpectrum:
    """Spectral numbers from the Newton filtration (convenient nondegenerate germs)."""
    if not is_convenient(f):
        raise PreconditionError("spectrum_newton: f is not convenient")
    npoly = newton_polyhedron(f)
    bad = degenerate_faces(f, npoly)
    if bad:
        raise PreconditionError(
            f"spectrum_newton: degenerate face with exponents {sorted(bad[0].points)}"
        )
    return _newton_values(f, npoly, ma)


def _newton_values(f: Poly, npoly: NewtonPolyhedron, ma: MilnorAlgebra | None, extra=()) -> NewtonSpectrum:
    ma = ma or truncated_quotient(f)
    dims = newton_graded_dimensions(ma, npoly)
    values = tuple(v for v, k in dims.items() for _ in range(k))
    simplicial = npoly.all_faces_simplicial()
    basis_values = tuple(sorted(npoly.filtration_value([x + 1 for x in b]) for b in ma.basis))
    sp = Spectrum(f.nvars, values)
    symmetric = symmetry_check(sp)
    flags = list(extra)
    if not simplicial:
        flags.append("non-simplicial-diagram")
    if not symmetric:
        flags.append("asymmetric-values")
    label = "spectrum" if simplicial and symmetric and not extra else "newton-filtration-values"
    sp = Spectrum(f.nvars, values, label, tuple(flags))
    return NewtonSpectrum(sp, simplicial, symmetric, basis_values == sp.values, basis_values)


# ---------------------------------------------------------------------------
# minimal exponent, lct, classification
# ---------------------------------------------------------------------------


def is_smooth_at_origin(f: Poly) -> bool:
    return any(p.constant_term() for p in f.partials())


def _complete(f: Poly, mu: int) -> Poly:
    """Add pure powers of degree mu + 2; f is (mu+1)-determined, so the type is unchanged."""
    n = f.nvars
    extra = {tuple(mu + 2 if j == i else 0 for j in range(n)): 1 for i in range(n)}
    return f + Poly(f.vars, extra)


def minimal_exponent(f: Poly) -> tuple[object, Method]:
    """Minimal exponent and the route that produced it.

    Routes, in order: smooth germ (infinity), quasi-homogeneous isolated
    singularity (least spectral number), convenient nondegenerate germ
    (diagonal of the Newton polyhedron), convenient degenerate isolated germ
    (least Newton-filtration value, lower confidence).  Isolated germs that
    are not convenient are first completed by high pure powers.
    """
    if f.is_zero() or f.constant_term():
        raise PreconditionError("f must vanish at the origin and be nonzero")
    if is_smooth_at_origin(f):
        return INF, Method.SMOOTH
    w = quasi_homogeneous_weights(f)
    if w is not None:
        try:
            return spectrum_qh(f, w).minimum, Method.QH
        except NonIsolatedError:
            pass
    if is_convenient(f):
        npoly = newton_polyhedron(f)
        if not degenerate_faces(f, npoly):
            return diagonal_minimal_exponent(npoly), Method.NEWTON_DIAGONAL
        ma = truncated_quotient(f)
        return _newton_values(f, npoly, ma).spectrum.minimum, Method.NEWTON_FILTRATION
    ma = truncated_quotient(f)  # raises for non-isolated germs
    g = _complete(f, ma.mu)
    npoly = newton_polyhedron(g)
    if not degenerate_faces(g, npoly):
        return diagonal_minimal_exponent(npoly), Method.NEWTON_DIAGONAL_COMPLETED
    return _newton_values(g, npoly, None).spectrum.minimum, Method.NEWTON_FILTRATION


def lct_from_exponent(alpha) -> Fraction:
    return Fraction(1) if alpha is INF or alpha >= 1 else Fraction(alpha)


def lct(f: Poly) -> Fraction:
    """Log canonical threshold ``min(minimal exponent, 1)``."""
    return lct_from_exponent(minimal_exponent(f)[0])


def verdict_for(alpha) -> Verdict:
    if alpha is INF or alpha > 1:
        return Verdict.RATIONAL
    if alpha == 1:
        return Verdict.DU_BOIS_NOT_RATIONAL
    return Verdict.NOT_DU_BOIS


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    minimal_exponent: object  # Fraction or INF
    lct: Fraction
    method: Method

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "minimal_exponent": fmt_rat(self.minimal_exponent),
            "lct": fmt_rat(self.lct),
            "method": self.method.value,
        }


def classify(f: Poly) -> Classification:
    """Rational / Du Bois / neither, from the minimal exponent.

    The germ is taken as given; reducedness is a documented precondition.
    """
    alpha, method = minimal_exponent(f)
    return Classification(verdict_for(alpha), alpha, lct_from_exponent(alpha), method)


# ---------------------------------------------------------------------------
# resolution and discrepancy data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Divisor:
    """Exceptional divisor: multiplicities of the pulled-back function and volume form."""

    m: int
    nu: int
    meets_proper_transform: bool = True

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"divisor multiplicity must be positive, got {self.m}")
        if self.nu < 0:
            raise ValueError(f"volume-form multiplicity must be nonnegative, got {self.nu}")

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.nu + 1, self.m)


@dataclass(frozen=True)
class ResolutionInvariants:
    alpha: object
    alpha_prime: object
    rational: bool
    du_bois: bool

    @property
    def lct(self) -> Fraction:
        return lct_from_exponent(self.alpha)

    def to_dict(self) -> dict:
        return {
            "alpha": fmt_rat(self.alpha),
            "alpha_prime": fmt_rat(self.alpha_prime),
            "lct": fmt_rat(self.lct),
            "rational": self.rational,
            "du_bois": self.du_bois,
        }


def resolution_invariants(divisors: Iterable[Divisor]) -> ResolutionInvariants:
    divisors = list(divisors)
    alpha = min((d.alpha for d in divisors), default=INF)
    alpha_prime = min((d.alpha for d in divisors if d.meets_proper_transform), default=INF)
    rational = alpha_prime is INF or alpha_prime > 1
    du_bois = alpha is INF or alpha >= 1
    return ResolutionInvariants(alpha, alpha_prime, rational, du_bois)


def discrepancy_classify(discrepancies: Iterable[int]) -> DiscrepancyClass:
    """Strongest of canonical / log terminal / log canonical satisfied by all discrepancies.

    For hypersurfaces, log terminal is equivalent to rational.
    """
    mus = list(discrepancies)
    if all(x >= 0 for x in mus):
        return DiscrepancyClass.CANONICAL
    if all(x > -1 for x in mus):
        return DiscrepancyClass.LOG_TERMINAL_NOT_CANONICAL
    if all(x >= -1 for x in mus):
        return DiscrepancyClass.LOG_CANONICAL_NOT_LT
    return DiscrepancyClass.NOT_LOG_CANONICAL
