"""Scans through Bell-diagonal states of fixed |c|^2 and ordering comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .correlations import CorrelationReport, full_report
from .errors import NonPhysicalState
from .qstate import BellDiagonalState, is_physical

INVERSION_TOL = 1e-9


@dataclass(frozen=True)
class ScanSpec:
    """States with fixed ``c3`` and ``c2 = +sqrt(r^2 - c1^2)`` as ``c1`` sweeps a grid."""

    c3: float = 0.2
    radius: float = 0.5
    c1_min: float = -0.5
    c1_max: float = 0.5
    steps: int = 101

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        for bound in (self.c1_min, self.c1_max):
            if abs(bound) > self.radius + 1e-15:
                raise ValueError(f"|c1| bound {bound} exceeds radius {self.radius}")
        if self.c1_min > self.c1_max:
            raise ValueError("c1_min must not exceed c1_max")

    def c1_grid(self) -> np.ndarray:
        return np.linspace(self.c1_min, self.c1_max, self.steps)

    def states(self) -> list[BellDiagonalState]:
        out = []
        for c1 in self.c1_grid():
            c2 = math.sqrt(max(0.0, self.radius**2 - c1 * c1))
            s = BellDiagonalState(float(c1), c2, self.c3)
            if not is_physical(s):
                raise NonPhysicalState(f"scan state {tuple(s)} is not physical")
            out.append(s)
        return out


def scan(spec: ScanSpec = ScanSpec()) -> list[tuple[BellDiagonalState, CorrelationReport]]:
    return [(s, full_report(s)) for s in spec.states()]


@dataclass(frozen=True)
class InversionRecord:
    quantifier: str
    c1_first: float
    c1_second: float
    reb_first: float
    reb_second: float
    geo_first: float
    geo_second: float

    @property
    def reb_order(self) -> str:
        return "<" if self.reb_first < self.reb_second else ">"

    @property
    def geo_order(self) -> str:
        return "<" if self.geo_first < self.geo_second else ">"


def inversions(spec: ScanSpec, quantifier: str, tol: float = INVERSION_TOL) -> list[InversionRecord]:
    """All scan pairs ordered one way by the entropic quantifier and the other way by the geometric one.

    Geometric values are the raw squared HS distances.
    """
    if quantifier not in ("T", "D", "C"):
        raise ValueError(f"quantifier must be T, D or C, got {quantifier!r}")
    rows = scan(spec)
    found = []
    for (s1, r1), (s2, r2) in combinations(rows, 2):
        d_reb = r1.quantifier(quantifier) - r2.quantifier(quantifier)
        d_geo = r1.quantifier(quantifier, geometric=True) - r2.quantifier(quantifier, geometric=True)
        if abs(d_reb) > tol and abs(d_geo) > tol and np.sign(d_reb) == -np.sign(d_geo):
            found.append(
                InversionRecord(
                    quantifier,
                    s1.c1,
                    s2.c1,
                    r1.quantifier(quantifier),
                    r2.quantifier(quantifier),
                    r1.quantifier(quantifier, geometric=True),
                    r2.quantifier(quantifier, geometric=True),
                )
            )
    return found
