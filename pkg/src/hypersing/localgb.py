"""Groebner and standard bases, ideal membership and the Milnor algebra.

Global orders use Buchberger's algorithm with ordinary division.  Local orders
use Mora's tangent-cone normal form, which only returns a *weak* normal form
(the input times a unit, modulo the ideal) but decides membership exactly.
Once the leading ideal of a local computation contains a pure power of every
variable, all monomials of some degree ``D`` lie in the ideal (highest corner),
so from then on terms of degree ``>= D`` are dropped and plain division in the
finite-dimensional truncation replaces Mora's algorithm.

Exact class arithmetic in the Milnor algebra is done in the jet truncation
``Q[x] / ((df) + m^K)`` where ``K`` is a verified determinacy degree, so every
quotient class has well defined coordinates on the standard monomials.
"""

from __future__ import annotations

import heapq
import itertools
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ArityError, NonIsolatedError, SmoothGermError
from .linalg import Echelon
from .poly import (
    DEGREVLEX,
    NEGDEGREVLEX,
    Exponent,
    MonomialOrder,
    Poly,
    Terms,
    divides,
    lcm_exp,
    monomials_of_degree,
    shift_terms,
    sub_exp,
)


class _Gen:
    """Polynomial together with cached leading data for one order."""

    __slots__ = ("terms", "lm", "lc", "ecart")

    def __init__(self, terms: Terms, order: MonomialOrder):
        self.terms = terms
        self.lm = max(terms, key=order.key)
        self.lc = terms[self.lm]
        if order.is_local:
            self.ecart = max(order.degree(e) for e in terms) - order.degree(self.lm)
        else:
            self.ecart = 0


def _monic(terms: Terms, lc: Fraction) -> Terms:
    if lc == 1:
        return terms
    inv = 1 / lc
    return {e: c * inv for e, c in terms.items()}


def _reduce_step(h: _Gen, g: _Gen, order: MonomialOrder) -> Terms:
    """``h - (lt(h)/lt(g)) * g``; cancels the leading term of ``h``."""
    mono = sub_exp(h.lm, g.lm)
    coeff = -h.lc / g.lc
    out = dict(h.terms)
    for e, c in g.terms.items():
        k = tuple(x + y for x, y in zip(e, mono))
        v = out.get(k, 0) + coeff * c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def _spoly(f: _Gen, g: _Gen) -> Terms:
    l = lcm_exp(f.lm, g.lm)
    a = shift_terms(f.terms, sub_exp(l, f.lm), 1 / f.lc)
    b = shift_terms(g.terms, sub_exp(l, g.lm), -1 / g.lc)
    for e, c in b.items():
        v = a.get(e, 0) + c
        if v:
            a[e] = v
        else:
            a.pop(e, None)
    return a


class _OutOfWork(Exception):
    pass


def _nf_global(terms: Terms, basis: Sequence[_Gen], order: MonomialOrder, work: list[int] | None = None) -> Terms:
    """Division remainder for a global order."""
    rem: Terms = {}
    p = dict(terms)
    while p:
        lm = max(p, key=order.key)
        for g in basis:
            if divides(g.lm, lm):
                if work is not None:
                    work[0] -= len(g.terms)
                    if work[0] < 0:
                        raise _OutOfWork
                p = _subtract_multiple(p, lm, g)
                break
        else:
            rem[lm] = p.pop(lm)
    return rem


def _nf_top(terms: Terms, basis: Sequence[_Gen], order: MonomialOrder, work: list[int] | None = None) -> Terms:
    """Reduce only leading terms; enough for a Groebner basis, and much cheaper on tails."""
    p = dict(terms)
    while p:
        lm = max(p, key=order.key)
        g = next((g for g in basis if divides(g.lm, lm)), None)
        if g is None:
            return p
        if work is not None:
            work[0] -= len(g.terms)
            if work[0] < 0:
                raise _OutOfWork
        p = _subtract_multiple(p, lm, g)
    return p


def _subtract_multiple(p: Terms, lm: Exponent, g: _Gen) -> Terms:
    mono = sub_exp(lm, g.lm)
    coeff = -p[lm] / g.lc
    for e, c in g.terms.items():
        k = tuple(x + y for x, y in zip(e, mono))
        v = p.get(k, 0) + coeff * c
        if v:
            p[k] = v
        else:
            del p[k]
    return p


def _nf_mora(terms: Terms, basis: Sequence[_Gen], order: MonomialOrder, work: list[int] | None = None) -> Terms:
    """Mora's weak normal form (ecart-driven tangent cone division).

    ``work`` is an optional one-element budget of term operations; running
    out raises ``_OutOfWork``.
    """
    if not terms:
        return {}
    h = _Gen(terms, order)
    pool = list(basis)
    while True:
        cands = [g for g in pool if divides(g.lm, h.lm)]
        if not cands:
            return h.terms
        g = min(cands, key=lambda c: c.ecart)
        if g.ecart > h.ecart:
            pool.append(h)
        if work is not None:
            work[0] -= len(h.terms) + len(g.terms)
            if work[0] < 0:
                raise _OutOfWork
        nxt = _reduce_step(h, g, order)
        if not nxt:
            return {}
        h = _Gen(nxt, order)


def _truncate(terms: Terms, bound: int) -> Terms:
    return {e: c for e, c in terms.items() if sum(e) < bound}


def _nf_truncated(terms: Terms, basis: Sequence[_Gen], order: MonomialOrder, bound: int) -> Terms:
    """Weak normal form modulo an ideal known to contain every monomial of degree ``bound``."""
    p = _truncate(terms, bound)
    while p:
        lm = max(p, key=order.key)
        g = next((g for g in basis if divides(g.lm, lm)), None)
        if g is None:
            return p
        p = _truncate(_subtract_multiple(p, lm, g), bound)
    return {}


def corner_bound(exponents, n: int) -> int | None:
    """Least ``D`` with every monomial of degree ``D`` in the monomial ideal, via its pure powers.

    None when some variable has no pure power (the ideal is not zero-dimensional).
    """
    powers: list[int | None] = [None] * n
    for e in exponents:
        nz = [i for i, a in enumerate(e) if a]
        if not nz:
            return 0
        if len(nz) == 1:
            i = nz[0]
            powers[i] = e[i] if powers[i] is None else min(powers[i], e[i])
    if any(a is None for a in powers):
        return None
    return sum(a - 1 for a in powers) + 1


def _local_nf(bound: int | None, work: list[int] | None = None):
    if bound is None:
        return lambda t, b, o: _nf_mora(t, b, o, work)
    return lambda t, b, o: _nf_truncated(t, b, o, bound)


@dataclass(frozen=True)
class StandardBasis:
    """Standard basis (Groebner basis for global orders) of an ideal."""

    order: MonomialOrder
    generators: tuple[Poly, ...]
    leading_exponents: frozenset[Exponent]
    input_generators: tuple[Poly, ...] = field(default=(), compare=False)
    # local orders: every monomial of this degree lies in the ideal
    degree_bound: int | None = field(default=None, compare=False)

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars if self.generators else self.input_generators[0].nvars

    def minimal_leading_exponents(self) -> list[Exponent]:
        """Minimal generators of the leading-term ideal."""
        lms = sorted(self.leading_exponents, key=lambda e: (sum(e), e))
        out: list[Exponent] = []
        for e in lms:
            if not any(divides(m, e) for m in out):
                out.append(e)
        return out

    def in_leading_ideal(self, e: Exponent) -> bool:
        return any(divides(m, e) for m in self.leading_exponents)

    def is_unit_ideal(self) -> bool:
        return (0,) * self.nvars in self.leading_exponents

    def _gens(self) -> list[_Gen]:
        return [_Gen(dict(g.terms), self.order) for g in self.generators]

    def normal_form(self, g: Poly) -> Poly:
        """Normal form (weak normal form for local orders)."""
        if g.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {g.nvars} vs {self.nvars} variables")
        if self.order.is_local:
            t = _local_nf(self.degree_bound)(dict(g.terms), self._gens(), self.order)
        else:
            t = _nf_global(dict(g.terms), self._gens(), self.order)
        return Poly(g.vars, t)

    def contains(self, g: Poly) -> bool:
        return self.normal_form(g).is_zero()

    def spair_residues(self) -> list[Poly]:
        """Normal forms of all S-polynomials; all zero for a valid basis."""
        gens = self._gens()
        nf = _local_nf(self.degree_bound) if self.order.is_local else _nf_global
        out = []
        for a, b in itertools.combinations(gens, 2):
            r = nf(_spoly(a, b), gens, self.order)
            if r:
                out.append(Poly(self.generators[0].vars, r))
        return out


# truncated local computations stop doubling D beyond this many monomials
_TRUNCATION_CAP = 60000
# term operations granted to the budgeted Mora attempt
_MORA_WORK = 200000


def standard_basis(
    gens: Sequence[Poly],
    order: MonomialOrder | None = None,
    *,
    stop_on_unit: bool = False,
) -> StandardBasis:
    """Compute a standard basis of the ideal generated by ``gens``.

    Pairs are processed by the normal strategy (smallest lcm degree first,
    then age).  With ``stop_on_unit`` the computation returns as soon as a
    constant appears, which is all a unit-ideal test needs.

    For local orders the ideal ``I + m^D`` is computed in the truncation
    ``Q[x]/m^D``; once every monomial of degree ``D - 1`` is a leading
    monomial, Nakayama's lemma gives ``m^(D-1)`` inside ``I`` and the result
    is a standard basis of ``I`` itself.  Truncation is tried for the first
    two values of D (from 8, doubling), then Mora's algorithm with a work
    budget, then larger D, and finally Mora without a budget, which always
    decides.  For the local degree order Lazard's method (a global Groebner
    basis of the homogenized generators, dehomogenized) runs with a budget
    before Mora and replaces the final unbudgeted Mora; it is usually far
    quicker on ideals that are not
    zero-dimensional.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("standard_basis needs at least one nonzero generator")
    n = gens[0].nvars
    for g in gens:
        if g.nvars != n:
            raise ArityError("generators have different numbers of variables")
    if order is None:
        order = DEGREVLEX
    variables = gens[0].vars
    if not order.is_local:
        basis, _ = _buchberger(gens, order, stop_on_unit=stop_on_unit)
        return _finish(order, basis, variables, gens)

    ladder = []
    D = max(8, 2 * max(g.order() for g in gens) + 2)
    while comb(D + n - 1, n) <= _TRUNCATION_CAP:
        ladder.append(D)
        D *= 2
    for D in ladder[:2]:
        sb = _settled_truncation(gens, order, D)
        if sb is not None:
            return sb
    lazard = order.kind == "negdegrevlex"
    if lazard:
        try:
            return _finish(order, _lazard(gens, work=[_MORA_WORK]), variables, gens)
        except _OutOfWork:
            pass
    try:
        basis, bound = _buchberger(gens, order, stop_on_unit=stop_on_unit, work=[_MORA_WORK])
        return _finish(order, basis, variables, gens, bound)
    except _OutOfWork:
        pass
    for D in ladder[2:]:
        sb = _settled_truncation(gens, order, D)
        if sb is not None:
            return sb
    if lazard:
        return _finish(order, _lazard(gens), variables, gens)
    basis, bound = _buchberger(gens, order, stop_on_unit=stop_on_unit)
    return _finish(order, basis, variables, gens, bound)


class _HomogenizedOrder:
    """Order on ``k[x, t]`` for Lazard's method: degree, then the power of ``t``,
    then the local degree order on the ``x`` part."""

    is_local = False

    def key(self, a: Exponent) -> tuple:
        return (sum(a), a[-1], NEGDEGREVLEX.key(a[:-1]))

    def degree(self, a: Exponent) -> int:
        return sum(a)


def _lazard(gens: Sequence[Poly], work: list[int] | None = None) -> list[_Gen]:
    """Local standard basis by dehomogenizing a homogeneous Groebner basis.

    Setting ``t = 1`` in a Groebner basis of the homogenized generators gives
    a standard basis for the local degree order; the largest power of ``t``
    marks the term of least degree, which becomes the leading term.
    """
    t = "t"
    while t in gens[0].vars:
        t += "_"
    hom = []
    for g in gens:
        d = g.degree()
        hom.append(Poly(g.vars + (t,), {e + (d - sum(e),): c for e, c in g.terms.items()}))
    basis, _ = _buchberger(hom, _HomogenizedOrder(), stop_on_unit=False, work=work, top_only=True)
    out = []
    for g in basis:
        terms: Terms = {}
        for e, c in g.terms.items():
            terms[e[:-1]] = terms.get(e[:-1], 0) + c
        out.append(_Gen({e: c for e, c in terms.items() if c}, NEGDEGREVLEX))
    return out


def _settled_truncation(gens: Sequence[Poly], order: MonomialOrder, D: int) -> StandardBasis | None:
    """Standard basis of ``I`` if ``I + m^D`` already contains ``m^(D-1)``, else None."""
    n = gens[0].nvars
    basis, _ = _buchberger(gens, order, stop_on_unit=False, truncate_at=D)
    lms = [g.lm for g in basis]
    if all(any(divides(m, e) for m in lms) for e in monomials_of_degree(n, D - 1)):
        return _finish(order, basis, gens[0].vars, gens, D - 1)
    return None


def _buchberger(
    gens: Sequence[Poly],
    order: MonomialOrder,
    *,
    stop_on_unit: bool,
    truncate_at: int | None = None,
    work: list[int] | None = None,
    top_only: bool = False,
) -> tuple[list[_Gen], int | None]:
    """Pair completion; returns the basis and, for local orders, a corner degree bound."""
    n = gens[0].nvars
    local = order.is_local
    unit = (0,) * n
    bound = truncate_at
    if local:
        nf = _local_nf(bound, work)
    else:
        reduce = _nf_top if top_only else _nf_global
        nf = lambda t, b, o: reduce(t, b, o, work)

    basis: list[_Gen] = []
    pairs: list = []
    counter = itertools.count()

    def push_pairs(k: int) -> None:
        new = basis[k]
        for i in range(k):
            old = basis[i]
            l = lcm_exp(old.lm, new.lm)
            if not local and all(min(a, b) == 0 for a, b in zip(old.lm, new.lm)):
                continue  # product criterion
            if bound is not None and sum(l) >= bound:
                continue  # the S-polynomial vanishes in the truncation
            heapq.heappush(pairs, (sum(l), next(counter), i, k))

    def insert(terms: Terms) -> bool:
        nonlocal bound, nf
        g = _Gen(terms, order)
        g = _Gen(_monic(g.terms, g.lc), order)
        basis.append(g)
        push_pairs(len(basis) - 1)
        if local and g.lm != unit:
            b = corner_bound([x.lm for x in basis], n)
            if b is not None and (bound is None or b < bound):
                bound = b
                nf = _local_nf(bound, work)
        return g.lm == unit

    for g in gens:
        r = nf(dict(g.terms), basis, order) if basis or bound is not None else dict(g.terms)
        if r and insert(r) and stop_on_unit:
            return basis, bound

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        a, b = basis[i], basis[j]
        l = lcm_exp(a.lm, b.lm)
        if bound is not None and sum(l) >= bound:
            continue  # bound shrank after the pair was queued
        # chain criterion: some other leading monomial divides the lcm and
        # both companion pairs are already dealt with
        if not local and _chain_skip(i, j, l, basis, pairs):
            continue
        r = nf(_spoly(a, b), basis, order)
        if r:
            if insert(r) and stop_on_unit:
                break
    return basis, bound


def _chain_skip(i: int, j: int, l: Exponent, basis: list[_Gen], pairs: list) -> bool:
    if len(basis) < 3:
        return False
    pending = {(p[2], p[3]) for p in pairs}
    for k, g in enumerate(basis):
        if k in (i, j) or not divides(g.lm, l):
            continue
        pik = (min(i, k), max(i, k))
        pjk = (min(j, k), max(j, k))
        if pik not in pending and pjk not in pending:
            return True
    return False


def _finish(order, basis: list[_Gen], variables, gens, bound: int | None = None) -> StandardBasis:
    if bound is not None:
        basis = [_Gen(_truncate(g.terms, bound), order) if sum(g.lm) < bound else g for g in basis]
    polys = tuple(Poly(variables, g.terms) for g in basis)
    return StandardBasis(
        order=order,
        generators=polys,
        leading_exponents=frozenset(g.lm for g in basis),
        input_generators=tuple(gens),
        degree_bound=bound,
    )


def ideal_membership(g: Poly, sb: StandardBasis) -> bool:
    """True iff ``g`` lies in the ideal (local ring for local orders)."""
    return sb.contains(g)


def is_unit_ideal(gens: Sequence[Poly]) -> bool:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    if any(g.degree() == 0 for g in gens):
        return True
    return standard_basis(gens, DEGREVLEX, stop_on_unit=True).is_unit_ideal()


# ---------------------------------------------------------------------------
# Milnor algebra
# ---------------------------------------------------------------------------


def jacobian_basis(f: Poly, order: MonomialOrder = NEGDEGREVLEX) -> StandardBasis:
    if f.constant_term():
        raise SmoothGermError("f does not vanish at the origin")
    parts = [p for p in f.partials() if not p.is_zero()]
    if not parts:
        raise SmoothGermError("f is constant")
    if any(p.constant_term() for p in parts):
        raise SmoothGermError("f is smooth at the origin (a partial derivative is a unit)")
    return standard_basis(parts, order)


def standard_monomials(sb: StandardBasis) -> list[Exponent]:
    """Monomials outside the leading-term ideal; requires a zero-dimensional ideal."""
    n = sb.nvars
    minimal = sb.minimal_leading_exponents()
    names = sb.generators[0].vars if sb.generators else tuple(f"x{i + 1}" for i in range(n))
    for i in range(n):
        if not any(sum(e) == e[i] for e in minimal):
            raise NonIsolatedError(
                f"no pure power of {names[i]} in the leading-term ideal: "
                "the singularity is not isolated"
            )
    out = []
    d = 0
    while True:
        level = [e for e in monomials_of_degree(n, d) if not any(divides(m, e) for m in minimal)]
        if not level:
            return out
        out.extend(level)
        d += 1


@dataclass(frozen=True)
class MilnorAlgebra:
    """The Milnor algebra ``Q{x}/(df)`` with exact class arithmetic.

    ``basis`` lists the standard monomials of the Jacobian standard basis
    (local degree reverse lexicographic order).  Classes are represented by
    coordinate tuples over ``basis``.
    """

    f: Poly
    jacobian: StandardBasis
    basis: tuple[Exponent, ...]
    determinacy: int
    _echelon: Echelon = field(repr=False, compare=False)
    _columns: dict = field(repr=False, compare=False)

    @property
    def mu(self) -> int:
        return len(self.basis)

    @property
    def nvars(self) -> int:
        return self.f.nvars

    def basis_polys(self) -> list[Poly]:
        return [Poly.monomial(self.f.vars, e) for e in self.basis]

    def reduce(self, g: Poly) -> tuple[Fraction, ...]:
        """Coordinates of the class of ``g`` on ``basis``."""
        if g.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {g.nvars} vs {self.nvars} variables")
        K = self.determinacy
        vec = {self._columns[e]: c for e, c in g.terms.items() if sum(e) < K}
        r = self._echelon.reduce(vec)
        mu = self.mu
        assert all(c < mu for c in r), "truncation did not reach the standard monomials"
        return tuple(r.get(i, Fraction(0)) for i in range(mu))

    def is_zero_class(self, g: Poly) -> bool:
        return not any(self.reduce(g))

    def multiplication_matrix(self, g: Poly) -> list[list[Fraction]]:
        return multiplication_matrix(self, g)


def truncated_quotient(f: Poly) -> MilnorAlgebra:
    """Build the Milnor algebra of an isolated singular germ ``f``."""
    sb = jacobian_basis(f)
    basis = standard_monomials(sb)
    n = f.nvars
    minimal = sb.minimal_leading_exponents()
    K = 1 + max(sum(e) for e in minimal)
    while not all(any(divides(m, e) for m in minimal) for e in monomials_of_degree(n, K)):
        K += 1

    # columns: standard monomials first, then the rest of the jets below K
    std = set(basis)
    columns: dict[Exponent, int] = {e: i for i, e in enumerate(basis)}
    for d in range(K):
        for e in monomials_of_degree(n, d):
            if e not in std:
                columns[e] = len(columns)
    ech = Echelon()
    gens = [dict(p.terms) for p in f.partials() if not p.is_zero()]
    for d in range(K):
        for mono in monomials_of_degree(n, d):
            for g in gens:
                vec = {}
                for e, c in g.items():
                    k = tuple(x + y for x, y in zip(e, mono))
                    if sum(k) < K:
                        vec[columns[k]] = c
                if vec:
                    ech.add(vec)
    mu = len(basis)
    if len(columns) - len(ech) != mu or any(p < mu for p in ech.rows):
        raise AssertionError(
            f"jet truncation at degree {K} inconsistent with the standard basis "
            f"(quotient dim {len(columns) - len(ech)}, expected {mu})"
        )
    return MilnorAlgebra(f, sb, tuple(basis), K, ech, columns)


def milnor_number(f: Poly) -> int:
    """Milnor number from the local standard basis (no linear algebra)."""
    return len(standard_monomials(jacobian_basis(f)))


def multiplication_matrix(ma: MilnorAlgebra, g: Poly) -> list[list[Fraction]]:
    """Matrix of multiplication by ``g``; column j is the class of ``g * basis_j``."""
    cols = [ma.reduce(g * b) for b in ma.basis_polys()]
    mu = ma.mu
    return [[cols[j][i] for j in range(mu)] for i in range(mu)]


def truncated_membership(g: Poly, f: Poly, degree: int) -> bool:
    """Brute-force test ``g in (df) + m^degree`` by linear algebra on jets.

    Independent of the standard-basis machinery; used as a test oracle.
    """
    n = f.nvars
    columns: dict[Exponent, int] = {}
    for d in range(degree):
        for e in monomials_of_degree(n, d):
            columns[e] = len(columns)
    ech = Echelon()
    for p in f.partials():
        for d in range(degree):
            for mono in monomials_of_degree(n, d):
                vec = {}
                for e, c in p.terms.items():
                    k = tuple(x + y for x, y in zip(e, mono))
                    if sum(k) < degree:
                        vec[columns[k]] = c
                if vec:
                    ech.add(vec)
    target = {columns[e]: c for e, c in g.terms.items() if sum(e) < degree}
    return not ech.reduce(target)
