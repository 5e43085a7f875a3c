"""Consistency checks for limit mixed Hodge data of degenerations with rational singularities.

Tables are external data; nothing here computes a limit mixed Hodge
structure.  Each validator returns a list of :class:`Violation` records and
an empty list means the data are consistent with the checked constraint.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

import jsonschema

from .monodromy import corollary1_bound

UNIPOTENT = "unipotent"
NON_UNIPOTENT = "non-unipotent"
ALL = "all"


@dataclass(frozen=True)
class HodgeEntry:
    j: int
    p: int
    q: int
    part: str
    dim: int

    @property
    def weight(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class NilpotentRank:
    j: int
    k: int
    rank: int


@dataclass(frozen=True)
class HodgeDeligneTable:
    n: int
    entries: tuple[HodgeEntry, ...] = ()
    n_ranks: tuple[NilpotentRank, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("fibre dimension n must be positive")
        for e in self.entries:
            if e.dim < 0:
                raise ValueError(f"negative dimension in {e}")
            if not 0 <= e.j <= 2 * self.n:
                raise ValueError(f"degree j={e.j} outside [0, {2 * self.n}]")
            if e.part not in (UNIPOTENT, NON_UNIPOTENT):
                raise ValueError(f"unknown part {e.part!r}")


@dataclass(frozen=True)
class FrontierComparison:
    n: int
    limit: Mapping[tuple[int, int], int]
    resolution: Mapping[tuple[int, int], int]


@dataclass(frozen=True, order=True)
class Violation:
    rule: str  # "region", "non-unipotent-corner", "nilpotence", "weight-symmetry", "frontier"
    j: int | None
    p: int | None
    q: int | None
    detail: str

    def to_dict(self) -> dict:
        return {"rule": self.rule, "j": self.j, "p": self.p, "q": self.q, "detail": self.detail}


# ---------------------------------------------------------------------------
# allowed regions
# ---------------------------------------------------------------------------


def _square(lo: int, hi: int) -> set[tuple[int, int]]:
    # empty when lo > hi (happens at j = 0, 1, 2n - 1, 2n)
    return {(p, q) for p in range(lo, hi + 1) for q in range(lo, hi + 1)}


def corner_pairs(n: int, j: int) -> set[tuple[int, int]]:
    if j <= n:
        return {(j, 0), (0, j)}
    return {(j - n, n), (n, j - n)}


def allowed_region(n: int, j: int, part: str = ALL) -> frozenset[tuple[int, int]]:
    """Pairs (p, q) where Gr_F^p Gr^W_{p+q} H^j_lim may be nonzero.

    ``part`` is ``"all"`` (equivalently ``"unipotent"``) or ``"non-unipotent"``;
    the non-unipotent part additionally loses the two corner pairs.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= j <= 2 * n:
        raise ValueError(f"degree j={j} outside [0, {2 * n}]")
    if part not in (ALL, UNIPOTENT, NON_UNIPOTENT):
        raise ValueError(f"unknown part {part!r}")
    if j <= n:
        inner = _square(1, j - 1)
    else:
        inner = _square(j - n + 1, n - 1)
    if part == NON_UNIPOTENT:
        return frozenset(inner - corner_pairs(n, j))
    return frozenset(inner | corner_pairs(n, j))


# ---------------------------------------------------------------------------
# validators
# ---------------------------------------------------------------------------


def validate_table(t: HodgeDeligneTable) -> list[Violation]:
    out = []
    for e in t.entries:
        if e.dim <= 0:
            continue
        if (e.p, e.q) not in allowed_region(t.n, e.j, ALL):
            out.append(Violation(
                "region", e.j, e.p, e.q,
                f"{e.part} Gr_F^{e.p} Gr^W_{e.weight} H^{e.j} has dim {e.dim} outside the allowed region",
            ))
        elif e.part == NON_UNIPOTENT and (e.p, e.q) in corner_pairs(t.n, e.j):
            out.append(Violation(
                "non-unipotent-corner", e.j, e.p, e.q,
                f"non-unipotent part has dim {e.dim} at corner ({e.p},{e.q})",
            ))
    return sorted(out)


def validate_nilpotence(t: HodgeDeligneTable) -> list[Violation]:
    out = []
    for r in t.n_ranks:
        bound = corollary1_bound(t.n, r.j)
        if r.k >= bound and r.rank > 0:
            out.append(Violation(
                "nilpotence", r.j, None, None,
                f"rank N^{r.k} = {r.rank} on H^{r.j} but N^{bound} must vanish",
            ))
    return sorted(out)


def validate_weight_symmetry(t: HodgeDeligneTable) -> list[Violation]:
    """Dimension shadow of ``N^k : Gr^W_{j+k} -> Gr^W_{j-k}(-k)`` being an isomorphism."""
    totals: dict[tuple[int, int, int], int] = {}
    for e in t.entries:
        key = (e.j, e.p, e.q)
        totals[key] = totals.get(key, 0) + e.dim
    out = []
    seen = set()
    for (j, p, q) in sorted(totals):
        k = p + q - j
        if k == 0:
            continue
        upper = (j, p, q) if k > 0 else (j, p - k, q - k)
        lower = (j, p - k, q - k) if k > 0 else (j, p, q)
        if upper in seen:
            continue
        seen.add(upper)
        a, b = totals.get(upper, 0), totals.get(lower, 0)
        if a != b:
            kk = abs(k)
            out.append(Violation(
                "weight-symmetry", j, upper[1], upper[2],
                f"H^{j}: dim at ({upper[1]},{upper[2]}) weight {j + kk} is {a}, "
                f"but ({lower[1]},{lower[2]}) weight {j - kk} is {b}",
            ))
    return sorted(out)


def is_frontier(n: int, p: int, q: int) -> bool:
    return p * q * (n - p) * (n - q) == 0


def frontier_check(fc: FrontierComparison) -> list[Violation]:
    """Frontier Hodge numbers of the limit must match those of the resolution."""
    out = []
    for (p, q) in sorted(set(fc.limit) | set(fc.resolution)):
        if not is_frontier(fc.n, p, q):
            continue
        a, b = fc.limit.get((p, q), 0), fc.resolution.get((p, q), 0)
        if a != b:
            out.append(Violation(
                "frontier", p + q, p, q,
                f"limit Gr_F^{p} H^{p + q} has dim {a}, resolution h^({p},{q}) = {b}",
            ))
    return out


def validate_all(t: HodgeDeligneTable) -> list[Violation]:
    return validate_table(t) + validate_nilpotence(t) + validate_weight_symmetry(t)


# ---------------------------------------------------------------------------
# JSON ingestion
# ---------------------------------------------------------------------------

TABLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "HodgeDeligneTable",
    "type": "object",
    "additionalProperties": False,
    "required": ["n", "entries"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["j", "p", "q", "part", "dim"],
                "properties": {
                    "j": {"type": "integer", "minimum": 0},
                    "p": {"type": "integer"},
                    "q": {"type": "integer"},
                    "part": {"enum": [UNIPOTENT, NON_UNIPOTENT]},
                    "dim": {"type": "integer", "minimum": 0},
                },
            },
        },
        "n_ranks": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["j", "k", "rank"],
                "properties": {
                    "j": {"type": "integer", "minimum": 0},
                    "k": {"type": "integer", "minimum": 1},
                    "rank": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}

_HODGE_NUMBER = {
    "type": "object",
    "additionalProperties": False,
    "required": ["p", "q", "dim"],
    "properties": {
        "p": {"type": "integer", "minimum": 0},
        "q": {"type": "integer", "minimum": 0},
        "dim": {"type": "integer", "minimum": 0},
    },
}

FRONTIER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FrontierComparison",
    "type": "object",
    "additionalProperties": False,
    "required": ["n", "limit", "resolution"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "limit": {"type": "array", "items": _HODGE_NUMBER},
        "resolution": {"type": "array", "items": _HODGE_NUMBER},
    },
}


def table_from_dict(doc: dict) -> HodgeDeligneTable:
    jsonschema.validate(doc, TABLE_SCHEMA)
    return HodgeDeligneTable(
        n=doc["n"],
        entries=tuple(HodgeEntry(**e) for e in doc["entries"]),
        n_ranks=tuple(NilpotentRank(**r) for r in doc.get("n_ranks", [])),
    )


def _hodge_map(items: Iterable[dict]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for it in items:
        key = (it["p"], it["q"])
        if key in out:
            raise ValueError(f"duplicate Hodge number ({key[0]},{key[1]})")
        out[key] = it["dim"]
    return out


def frontier_from_dict(doc: dict) -> FrontierComparison:
    jsonschema.validate(doc, FRONTIER_SCHEMA)
    return FrontierComparison(doc["n"], _hodge_map(doc["limit"]), _hodge_map(doc["resolution"]))


def load_document(text: str) -> HodgeDeligneTable | FrontierComparison:
    """Parse a table or frontier-comparison JSON document (kind decided by its keys)."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("expected a JSON object")
    if "entries" in doc:
        return table_from_dict(doc)
    if "limit" in doc or "resolution" in doc:
        return frontier_from_dict(doc)
    raise ValueError("document is neither a Hodge-Deligne table nor a frontier comparison")
