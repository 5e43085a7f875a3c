"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` maps exponent tuples to :class:`fractions.Fraction` coefficients
and remembers its variable names.  Values are immutable; every arithmetic
operation returns a new polynomial.

>>> f = parse_poly("x^4+y^4+z^4+x*y*z", ["x", "y", "z"])
>>> [str(p) for p in f.partials()]
['4*x^3 + y*z', '4*y^3 + x*z', '4*z^3 + x*y']
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ArityError, ParseError

Exponent = tuple[int, ...]
Terms = dict[Exponent, Fraction]


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    ``kind`` is ``"degrevlex"`` (global), ``"negdegrevlex"`` (local) or
    ``"weighted"``.  A weighted order compares ``sum(w_i * a_i)`` first and
    falls back to ``tiebreak``.  All positive weights give a global order, all
    negative weights a local one.
    """

    kind: str
    weights: tuple[Fraction, ...] | None = None
    tiebreak: "MonomialOrder | None" = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "negdegrevlex", "weighted"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted":
            if not self.weights:
                raise ValueError("weighted order needs a weight vector")
            w = tuple(Fraction(x) for x in self.weights)
            if not (all(x > 0 for x in w) or all(x < 0 for x in w)):
                raise ValueError("weights must be all positive (global) or all negative (local)")
            object.__setattr__(self, "weights", w)
            if self.tiebreak is None:
                tb = DEGREVLEX if w[0] > 0 else NEGDEGREVLEX
                object.__setattr__(self, "tiebreak", tb)

    @property
    def is_local(self) -> bool:
        if self.kind == "weighted":
            return self.weights[0] < 0
        return self.kind == "negdegrevlex"

    def key(self, a: Exponent) -> tuple:
        if self.kind == "degrevlex":
            return (sum(a), tuple(-e for e in reversed(a)))
        if self.kind == "negdegrevlex":
            return (-sum(a), tuple(-e for e in reversed(a)))
        return (sum(w * e for w, e in zip(self.weights, a)), self.tiebreak.key(a))

    def degree(self, a: Exponent):
        """Positive grading used for ecart computations."""
        if self.kind == "weighted":
            return abs(sum(w * e for w, e in zip(self.weights, a)))
        return sum(a)

    def compare(self, a: Exponent, b: Exponent) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


DEGREVLEX = MonomialOrder("degrevlex")
NEGDEGREVLEX = MonomialOrder("negdegrevlex")


def weighted_order(weights: Sequence, tiebreak: MonomialOrder | None = None) -> MonomialOrder:
    return MonomialOrder("weighted", tuple(Fraction(w) for w in weights), tiebreak)


# ---------------------------------------------------------------------------
# raw term-dict helpers (shared with the Groebner code, which works on dicts)
# ---------------------------------------------------------------------------


def add_terms(a: Terms, b: Terms, scale: Fraction = Fraction(1)) -> Terms:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def mul_terms(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def shift_terms(a: Terms, mono: Exponent, coeff: Fraction) -> Terms:
    """Multiply by the term ``coeff * x^mono``."""
    return {tuple(x + y for x, y in zip(e, mono)): c * coeff for e, c in a.items()}


def divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------


def default_vars(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


class Poly:
    """Immutable sparse polynomial over Q in a fixed list of variables."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a polynomial needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names in {variables}")
        n = len(variables)
        clean: Terms = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ArityError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._vars = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: Terms) -> "Poly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p._vars = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "Poly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, c=1) -> "Poly":
        return cls(variables, {tuple(exp): c})

    @classmethod
    def variable(cls, variables: Sequence[str], i: int) -> "Poly":
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    # -- accessors -------------------------------------------------------

    @property
    def vars(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_exponent(self, order: MonomialOrder = DEGREVLEX) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=order.key)

    def with_vars(self, variables: Sequence[str]) -> "Poly":
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise ArityError(f"cannot rename {self.nvars} variables to {len(variables)}")
        return Poly._raw(variables, self._terms)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self._vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self._vars, add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self._vars, add_terms(self._terms, other._terms, Fraction(-1)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self._vars, mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly._raw(self._vars, {})
        return Poly._raw(self._vars, {e: v * c for e, v in self._terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self, i: int) -> "Poly":
        out: Terms = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly._raw(self._vars, out)

    def partials(self) -> list["Poly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def truncate(self, degree: int) -> "Poly":
        """Drop every term of total degree >= ``degree``."""
        return Poly._raw(self._vars, {e: c for e, c in self._terms.items() if sum(e) < degree})

    def restrict(self, keep: Sequence[int]) -> "Poly":
        """Set the variables outside ``keep`` to zero and drop them."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        out = {
            tuple(e[i] for i in keep): c
            for e, c in self._terms.items()
            if all(e[j] == 0 for j in drop)
        }
        return Poly._raw(tuple(self._vars[i] for i in keep), out)

    def evaluate_at_origin(self) -> Fraction:
        return self.constant_term()

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- printing -------------------------------------------------------

    def format(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms(order)):
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self._vars, e) if x
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r}, vars={list(self._vars)})"


def join(f: Poly, g: Poly) -> Poly:
    """Thom-Sebastiani sum ``f(x) + g(y)`` in disjoint variable sets."""
    overlap = set(f.vars) & set(g.vars)
    if overlap:
        raise ValueError(f"overlapping variable names: {sorted(overlap)}")
    nf, ng = f.nvars, g.nvars
    terms: Terms = {}
    for e, c in f.terms.items():
        terms[e + (0,) * ng] = c
    for e, c in g.terms.items():
        k = (0,) * nf + e
        terms[k] = terms.get(k, 0) + c
    return Poly(f.vars + g.vars, terms)


def monomials_of_degree(n: int, d: int) -> Iterator[Exponent]:
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomials_up_to(n: int, d: int) -> Iterator[Exponent]:
    """All exponents of total degree <= d, by increasing degree."""
    for k in range(d + 1):
        yield from monomials_of_degree(n, k)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.vars)}

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Terms:
        terms: Terms = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            e, c = self.term()
            v = terms.get(e, 0) + sign * c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
            kind = self.peek()[0]
            if kind == "end":
                return terms
            if kind not in "+-":
                tok = self.peek()
                raise ParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            sign = -1 if self.take()[0] == "-" else 1

    def term(self) -> tuple[Exponent, Fraction]:
        coeff = Fraction(1)
        have_coeff = False
        if self.peek()[0] == "int":
            num = int(self.take()[1])
            if self.peek()[0] == "/":
                self.take()
                tok = self.take("int")
                den = int(tok[1])
                if den == 0:
                    raise ParseError("zero denominator", tok[2])
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            have_coeff = True
        if self.peek()[0] == "*":
            star = self.take()
            if not have_coeff or self.peek()[0] != "name":
                raise ParseError("misplaced '*'", star[2])
        exp = [0] * len(self.vars)
        if self.peek()[0] == "name":
            self.factor(exp)
            while self.peek()[0] == "*":
                self.take()
                if self.peek()[0] != "name":
                    tok = self.peek()
                    raise ParseError("expected a variable after '*'", tok[2])
                self.factor(exp)
        elif not have_coeff:
            tok = self.peek()
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected a term, found {what}", tok[2])
        return tuple(exp), coeff

    def factor(self, exp: list[int]) -> None:
        tok = self.take("name")
        if tok[1] not in self.index:
            raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
        power = 1
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] == "-":
                raise ParseError("negative exponent", self.peek()[2])
            power = int(self.take("int")[1])
        exp[self.index[tok[1]]] += power


def parse_poly(text: str, variables: Sequence[str] | None = None) -> Poly:
    """Parse ``text`` into a :class:`Poly` over ``variables``.

    Grammar: ``expr := term (('+'|'-') term)*`` with an optional leading sign;
    ``term := [coeff] ['*'] [monomial]``; ``coeff := int | int '/' posint``;
    ``monomial := var ['^' int] ('*' var ['^' int])*``.
    """
    if variables is None:
        found = []
        for kind, val, _ in _tokenize(text):
            if kind == "name" and val not in found:
                found.append(val)
        variables = sorted(found) or ["x"]
    variables = [v.strip() for v in variables]
    return Poly._raw(tuple(variables), _Parser(text, variables).parse())


def parse_vars(text: str) -> list[str]:
    names = [v.strip() for v in text.split(",") if v.strip()]
    if not names:
        raise ParseError("empty variable list", 0)
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
            raise ParseError(f"invalid variable name {v!r}", text.find(v))
    dup = sorted({v for v in names if names.count(v) > 1})
    if dup:
        raise ParseError(f"repeated variable name(s) {', '.join(dup)}", text.find(dup[0]))
    return names


def polys_from_lines(lines: Iterable[str]) -> Iterator[tuple[int, str, str]]:
    """Yield ``(line_number, vars_text, poly_text)`` from a germ file.

    Each non-blank, non-comment line has the form ``x,y,z | polynomial``.
    """
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "|" not in line:
            yield lineno, "", line
            continue
        v, p = line.split("|", 1)
        yield lineno, v.strip(), p.strip()
