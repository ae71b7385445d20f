"""Bell-diagonal states under identical local random-telegraph phase flips.

Time is the dimensionless ``nu = t / (2 tau)``. The transverse
coefficients decay as ``c_{1,2}(nu) = c_{1,2}(0) * Lambda(nu)**2`` with

    Lambda(nu) = exp(-nu) * (cos(mu nu) + sin(mu nu) / mu),
    mu = sqrt((4 |alpha| tau)**2 - 1),

and ``c3`` stays fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .correlations import CorrelationReport, full_report
from .qstate import BellDiagonalState, is_physical, require_physical

CROSSING_STEP = 1e-4
CROSSING_NU_MAX = 20.0
CROSSING_XTOL = 1e-12


@dataclass(frozen=True)
class PhaseFlipParams:
    tau: float = 5.0
    alpha_abs: float = 1.0

    def __post_init__(self):
        if not (self.tau > 0 and self.alpha_abs > 0):
            raise ValueError("tau and |alpha| must be positive")
        if 4 * self.alpha_abs * self.tau <= 1:
            raise ValueError(
                f"4*|alpha|*tau = {4 * self.alpha_abs * self.tau:g} <= 1: only the oscillatory regime is supported"
            )

    @property
    def mu(self) -> float:
        return math.sqrt((4 * self.alpha_abs * self.tau) ** 2 - 1)


def lambda_factor(nu, p: PhaseFlipParams = PhaseFlipParams()):
    """Decay factor Lambda(nu); accepts scalars or arrays."""
    nu_arr = np.asarray(nu, dtype=float)
    if np.any(nu_arr < 0):
        raise ValueError("nu must be non-negative")
    mu = p.mu
    out = np.exp(-nu_arr) * (np.cos(mu * nu_arr) + np.sin(mu * nu_arr) / mu)
    return float(out) if out.ndim == 0 else out


def evolve(s0: BellDiagonalState, nu: float, p: PhaseFlipParams = PhaseFlipParams()) -> BellDiagonalState:
    require_physical(s0)
    decay = lambda_factor(nu, p) ** 2
    return BellDiagonalState(s0.c1 * decay, s0.c2 * decay, s0.c3)


@dataclass(frozen=True)
class TrajectorySample:
    nu: float
    state: BellDiagonalState
    report: CorrelationReport


@dataclass(frozen=True)
class Trajectory:
    params: PhaseFlipParams
    samples: tuple[TrajectorySample, ...]

    def __len__(self):
        return len(self.samples)

    def column(self, name: str) -> np.ndarray:
        """Report attribute (``"D"``, ``"D_g2"``, ...) or ``"nu"`` along the trajectory."""
        if name == "nu":
            return np.array([smp.nu for smp in self.samples])
        return np.array([getattr(smp.report, name) for smp in self.samples])


def trajectory(
    s0: BellDiagonalState,
    nu_max: float = 3.0,
    steps: int = 601,
    p: PhaseFlipParams = PhaseFlipParams(),
) -> Trajectory:
    require_physical(s0)
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if not nu_max > 0:
        raise ValueError("nu_max must be positive")
    samples = []
    for nu in np.linspace(0.0, nu_max, steps):
        state = evolve(s0, float(nu), p)
        if not is_physical(state):
            raise AssertionError(f"evolution left the physical region at nu={nu}")
        samples.append(TrajectorySample(float(nu), state, full_report(state)))
    return Trajectory(p, tuple(samples))


def _dominance_gap(s0: BellDiagonalState, p: PhaseFlipParams):
    transverse = max(abs(s0.c1), abs(s0.c2))
    c3 = abs(s0.c3)

    def gap(nu):
        return transverse * lambda_factor(nu, p) ** 2 - c3

    return gap


def first_crossing(
    s0: BellDiagonalState,
    p: PhaseFlipParams = PhaseFlipParams(),
    nu_max: float = CROSSING_NU_MAX,
    step: float = CROSSING_STEP,
) -> float | None:
    """First nu > 0 where max(|c1|, |c2|) passes through |c3|.

    Lambda^2 oscillates, so the sign of the gap is sampled on a fine grid
    before the bracketing root search.
    """
    require_physical(s0)
    gap = _dominance_gap(s0, p)
    nus = np.arange(0.0, nu_max + step / 2, step)
    signs = np.sign(gap(nus))
    nonzero = np.flatnonzero(signs)
    if nonzero.size == 0:
        return None
    ref = signs[nonzero[0]]
    flips = np.flatnonzero(signs[nonzero[0] :] == -ref)
    if flips.size == 0:
        return None
    hi = nonzero[0] + flips[0]
    lo = hi - 1
    if signs[lo] == 0:
        # the gap vanishes exactly on a grid point
        while signs[lo - 1] == 0:
            lo -= 1
        return float(nus[lo])
    return float(brentq(gap, nus[lo], nus[hi], xtol=CROSSING_XTOL))
