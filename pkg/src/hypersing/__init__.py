"""Exact invariants of isolated hypersurface singularities."""

from __future__ import annotations

__version__ = "0.1.0"

from .poly import Poly, parse_poly  # noqa: E402
from .spectra import Spectrum, classify, minimal_exponent  # noqa: E402
from .localgb import milnor_number  # noqa: E402
from .newton import kouchnirenko_mu, newton_polyhedron  # noqa: E402

__all__ = [
    "Poly",
    "Spectrum",
    "classify",
    "kouchnirenko_mu",
    "milnor_number",
    "minimal_exponent",
    "newton_polyhedron",
    "parse_poly",
]
