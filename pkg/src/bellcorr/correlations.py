"""Closed-form correlation quantifiers for Bell-diagonal states.

Entropic quantifiers (T, D, C) are relative-entropy distances in bits;
geometric ones (T_g, D_g, C_g) are squared Hilbert-Schmidt distances.
For Bell-diagonal states the closest product state is I/4 under both
distances and the closest classical state keeps only the dominant
correlation coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import xlog2x
from .qstate import MAXIMALLY_MIXED, BellDiagonalState, bell_eigenvalues, require_physical


def dominant(s: BellDiagonalState) -> tuple[int, float]:
    """Index k (1-based) and value c = max |c_i|; ties go to the smallest index."""
    mags = [abs(x) for x in s]
    c = max(mags)
    return mags.index(c) + 1, c


def _classical_correlations(c: float) -> float:
    # sum_{i=1,2} (1 + (-1)^i c)/2 * log2(1 + (-1)^i c)
    lo, hi = 1.0 - c, 1.0 + c
    return float(0.5 * (xlog2x(lo) + xlog2x(hi)))


def reb_quantifiers(s: BellDiagonalState) -> tuple[float, float, float]:
    """Relative-entropy total correlations, discord and classical correlations."""
    require_physical(s)
    lam = np.clip(bell_eigenvalues(s), 0.0, None)
    total = 2.0 + float(np.sum(xlog2x(lam)))
    _, c = dominant(s)
    classical = _classical_correlations(c)
    return total, total - classical, classical


def geometric_quantifiers(s: BellDiagonalState) -> tuple[float, float, float]:
    """Hilbert-Schmidt total correlations, discord and classical correlations."""
    require_physical(s)
    _, c = dominant(s)
    total = s.norm_sq / 4
    classical = c * c / 4
    return total, total - classical, classical


def closest_classical_state(s: BellDiagonalState) -> BellDiagonalState:
    require_physical(s)
    k, _ = dominant(s)
    coeffs = [0.0, 0.0, 0.0]
    coeffs[k - 1] = (s.c1, s.c2, s.c3)[k - 1]
    return BellDiagonalState(*coeffs)


def closest_product_state(s: BellDiagonalState) -> np.ndarray:
    require_physical(s)
    return MAXIMALLY_MIXED.copy()


@dataclass(frozen=True)
class CorrelationReport:
    T: float
    D: float
    C: float
    T_g: float
    D_g: float
    C_g: float
    dominant_index: int
    dominant_c: float

    @property
    def T_g2(self) -> float:
        return 2 * self.T_g

    @property
    def D_g2(self) -> float:
        return 2 * self.D_g

    @property
    def C_g2(self) -> float:
        return 2 * self.C_g

    def quantifier(self, name: str, geometric: bool = False) -> float:
        """Look up ``"T"``, ``"D"`` or ``"C"``; ``geometric`` picks the raw HS value."""
        if name not in ("T", "D", "C"):
            raise KeyError(name)
        return getattr(self, f"{name}_g" if geometric else name)


def full_report(s: BellDiagonalState) -> CorrelationReport:
    t, d, c = reb_quantifiers(s)
    tg, dg, cg = geometric_quantifiers(s)
    k, cmax = dominant(s)
    return CorrelationReport(t, d, c, tg, dg, cg, k, cmax)


def is_classical(s: BellDiagonalState, tol: float = 0.0) -> bool:
    """At most one coefficient is nonzero."""
    return sum(abs(x) > tol for x in s) <= 1


__all__ = [
    "CorrelationReport",
    "closest_classical_state",
    "closest_product_state",
    "dominant",
    "full_report",
    "geometric_quantifiers",
    "is_classical",
    "reb_quantifiers",
]
