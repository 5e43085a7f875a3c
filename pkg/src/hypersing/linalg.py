"""Exact linear algebra over Q (dense small systems, sparse incremental echelon)."""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Sequence

Vector = dict[int, Fraction]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b``; returns ``(particular, nullspace basis)`` or ``None``."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x, nullspace(rows, ncols)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


class Echelon:
    """Incrementally built sparse echelon form.

    Each stored row has its pivot at its largest column index, so callers
    control which coordinates get eliminated first by how they number columns.
    """

    def __init__(self):
        self.rows: dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector) -> Vector:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        heap = [-c for c in v if c in self.rows]
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            coef = v.get(c)
            if not coef:
                continue
            for k, x in self.rows[c].items():
                nv = v.get(k, 0) - coef * x
                if nv:
                    if k not in v and k in self.rows:
                        heapq.heappush(heap, -k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Vector) -> bool:
        """Insert ``vec``; return True if it was independent of the stored rows."""
        v = self.reduce(vec)
        if not v:
            return False
        p = max(v)
        inv = 1 / v[p]
        self.rows[p] = {k: x * inv for k, x in v.items()}
        return True
