"""Brute-force cross-checks for the closed-form quantifiers.

* ``original_discord``: measurement-based discord, minimised over von
  Neumann measurements on qubit A (theta x phi grid, then bounded 1-D
  polishing of each angle in turn).
* ``geometric_discord_bruteforce``: min over the same measurements of
  ``||rho - Pi_A(rho)||^2``.
* ``minimize_product_distance``: multi-start search for the product
  state closest (in HS norm) to a Bell-diagonal state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .entropy import hs_distance_sq, mutual_information, von_neumann_entropy, xlog2x
from .errors import AppendixViolation, NotConverged
from .qstate import (
    I2,
    PAULI,
    BellDiagonalState,
    check_density_matrix,
    partial_trace_b,
    qubit_state,
    require_physical,
    to_density_matrix,
)

REFINE_TOL = 1e-9
FIXED_POINT_TOL = 1e-12
FIXED_POINT_MAX_ITER = 10_000
PRODUCT_SLACK = 1e-9


@dataclass(frozen=True)
class Measurement:
    """Projective measurement on qubit A along ``n = (sin t cos p, sin t sin p, cos t)``."""

    theta: float
    phi: float

    @property
    def axis(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @classmethod
    def along(cls, n) -> "Measurement":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(math.acos(max(-1.0, min(1.0, n[2]))), math.atan2(n[1], n[0]))

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        ns = sum(x * sig for x, sig in zip(self.axis, PAULI))
        return (I2 + ns) / 2, (I2 - ns) / 2


@dataclass(frozen=True)
class GridSpec:
    theta_steps: int = 181
    phi_steps: int = 361

    def __post_init__(self):
        if self.theta_steps < 2 or self.phi_steps < 2:
            raise ValueError("grid needs at least two samples per angle")


@dataclass
class MinimizationResult:
    value: float
    argmin: object
    evaluations: int
    converged: bool
    info: dict = field(default_factory=dict)


def _projectors(theta, phi) -> np.ndarray:
    """Stack of ``(I + s n.sigma)/2`` for s = +1, -1; shape (N, 2, 2, 2)."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    n = np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)
    ns = np.einsum("ni,ijk->njk", n.astype(complex), np.array(PAULI))
    return np.stack([(I2 + ns) / 2, (I2 - ns) / 2], axis=1)


def _measure_batch(rho: np.ndarray, proj: np.ndarray) -> np.ndarray:
    r = rho.reshape(2, 2, 2, 2)
    out = np.einsum("nsax,xbyc,nsyz->nabzc", proj, r, proj, optimize=True)
    return out.reshape(proj.shape[0], 4, 4)


def measure_A(rho, m: Measurement) -> np.ndarray:
    """Post-measurement state ``sum_s (P_s x I) rho (P_s x I)``."""
    rho = check_density_matrix(rho)
    return _measure_batch(rho, _projectors(m.theta, m.phi))[0]


def _conditional_block_spectra(rho: np.ndarray, proj: np.ndarray):
    """Probabilities and eigenvalues of the unnormalised conditional states of B.

    ``Pi_A(rho)`` is block diagonal in the measured basis with blocks
    ``Tr_A[(P_s x I) rho]``; their eigenvalues are the spectrum of the
    post-measurement state.
    """
    r = rho.reshape(2, 2, 2, 2)
    blocks = np.einsum("nsax,xbay->nsby", proj, r)
    d0 = np.real(blocks[..., 0, 0])
    d1 = np.real(blocks[..., 1, 1])
    half_gap = np.sqrt(((d0 - d1) / 2) ** 2 + np.abs(blocks[..., 0, 1]) ** 2)
    mid = (d0 + d1) / 2
    eig = np.stack([mid + half_gap, mid - half_gap], axis=-1)
    return d0 + d1, np.clip(eig, 0.0, None)


def _discord_objective(rho: np.ndarray, s_a: float, s_rho: float):
    def objective(theta, phi):
        probs, eig = _conditional_block_spectra(rho, _projectors(theta, phi))
        h_probs = -np.sum(xlog2x(probs), axis=-1)
        s_measured = -np.sum(xlog2x(eig), axis=(-1, -2))
        return s_a - s_rho - h_probs + s_measured

    return objective


def discord_gap(rho, m: Measurement) -> float:
    """``I(rho) - I(Pi_A(rho))`` evaluated from full 4x4 spectra."""
    return mutual_information(rho) - mutual_information(measure_A(rho, m))


def _geometric_objective(rho: np.ndarray):
    def objective(theta, phi):
        measured = _measure_batch(rho, _projectors(theta, phi))
        return np.sum(np.abs(measured - rho) ** 2, axis=(-1, -2))

    return objective


def _grid_then_refine(objective, grid: GridSpec) -> MinimizationResult:
    thetas = np.linspace(0.0, math.pi, grid.theta_steps)
    phis = np.linspace(0.0, 2 * math.pi, grid.phi_steps)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = objective(tt.ravel(), pp.ravel())
    evaluations = values.size
    best = int(np.argmin(values))
    theta, phi, value = float(tt.ravel()[best]), float(pp.ravel()[best]), float(values[best])

    d_theta = thetas[1] - thetas[0]
    d_phi = phis[1] - phis[0]
    converged = False
    last_change = math.inf
    for _ in range(50):
        start = value
        res = minimize_scalar(
            lambda t: float(objective(t, phi)[0]),
            bounds=(max(0.0, theta - d_theta), min(math.pi, theta + d_theta)),
            method="bounded",
            options={"xatol": 1e-11},
        )
        evaluations += res.nfev
        if res.fun < value:
            theta, value = float(res.x), float(res.fun)
        res = minimize_scalar(
            lambda p: float(objective(theta, p)[0]),
            bounds=(phi - d_phi, phi + d_phi),
            method="bounded",
            options={"xatol": 1e-11},
        )
        evaluations += res.nfev
        if res.fun < value:
            phi, value = float(res.x), float(res.fun)
        last_change = start - value
        if last_change < REFINE_TOL:
            converged = True
            break
    if not converged:
        raise NotConverged(f"angle refinement still moving by {last_change:.3g}")
    return MinimizationResult(
        value=value,
        argmin=Measurement(theta, math.remainder(phi, 2 * math.pi)),
        evaluations=evaluations,
        converged=True,
        info={"last_change": last_change},
    )


def original_discord(rho, grid: GridSpec = GridSpec()) -> MinimizationResult:
    """``min_Pi [I(rho) - I(Pi_A(rho))]`` over projective measurements on A."""
    rho = check_density_matrix(rho)
    s_a = von_neumann_entropy(partial_trace_b(rho))
    s_rho = von_neumann_entropy(rho)
    result = _grid_then_refine(_discord_objective(rho, s_a, s_rho), grid)
    result.value = discord_gap(rho, result.argmin)
    return result


def geometric_discord_bruteforce(rho, grid: GridSpec = GridSpec()) -> MinimizationResult:
    """``min_Pi ||rho - Pi_A(rho)||^2`` over projective measurements on A."""
    rho = check_density_matrix(rho)
    result = _grid_then_refine(_geometric_objective(rho), grid)
    result.value = hs_distance_sq(rho, measure_A(rho, result.argmin))
    return result


def product_distance(s: BellDiagonalState, a, b) -> float:
    """HS distance squared between ``s`` and the product of Bloch states ``a``, ``b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = s.coefficients
    a2, b2 = a @ a, b @ b
    return float((a2 + b2 + a2 * b2 + c @ c - 2 * np.sum(c * a * b)) / 4)


def product_distance_matrix(s: BellDiagonalState, a, b) -> float:
    """Same quantity as :func:`product_distance`, from explicit 4x4 matrices."""
    return hs_distance_sq(to_density_matrix(s), np.kron(qubit_state(a), qubit_state(b)))


def _stationarity_map(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    a, b = x[:3], x[3:]
    return np.concatenate([c * b / (1 + b @ b), c * a / (1 + a @ a)])


def _stationarity_jacobian(c: np.ndarray, x: np.ndarray) -> np.ndarray:
    a, b = x[:3], x[3:]
    jac = np.zeros((6, 6))
    nb = 1 + b @ b
    na = 1 + a @ a
    jac[0:3, 3:6] = np.diag(c) / nb - 2 * np.outer(c * b, b) / nb**2
    jac[3:6, 0:3] = np.diag(c) / na - 2 * np.outer(c * a, a) / na**2
    return jac


def solve_stationarity(c, x0, tol: float = FIXED_POINT_TOL, max_iter: int = FIXED_POINT_MAX_ITER):
    """Iterate ``a <- c*b/(1+|b|^2), b <- c*a/(1+|a|^2)`` to a fixed point.

    When a coefficient has modulus one the plain map only shrinks that
    direction like ``1/sqrt(n)``, so each step first tries a Newton step on
    ``x - G(x) = 0`` and keeps it only if it reduces the residual.

    Returns ``(x, iterations, converged)``.
    """
    c = np.asarray(c, dtype=float)
    x = np.asarray(x0, dtype=float).copy()
    for it in range(1, max_iter + 1):
        gx = _stationarity_map(c, x)
        resid = x - gx
        rnorm = np.linalg.norm(resid)
        if rnorm == 0.0:
            return x, it, True
        new = gx
        try:
            step = np.linalg.solve(np.eye(6) - _stationarity_jacobian(c, x), -resid)
            trial = x + step
            if np.linalg.norm(trial - _stationarity_map(c, trial)) < rnorm:
                new = trial
        except np.linalg.LinAlgError:
            pass
        moved = np.max(np.abs(new - x))
        x = new
        if moved < tol:
            return x, it, True
    return x, max_iter, False


def _ball_sample(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v) * rng.random() ** (1 / 3)


def _sphere_samples(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def minimize_product_distance(
    s: BellDiagonalState,
    starts: int = 20,
    border_samples: int = 2000,
    rng: np.random.Generator | None = None,
) -> MinimizationResult:
    """Multi-start search for the closest product state to ``s``.

    Every start is driven to a stationary point of the distance; the
    border ``|a| = |b| = 1`` is scanned separately (random unit pairs plus
    the aligned pairs ``a = +-e_i, b = +-e_i``). ``info["starts"]`` holds
    ``(value, max |x_i|)`` at the end point of every start.
    """
    require_physical(s)
    rng = np.random.default_rng(0) if rng is None else rng
    c = s.coefficients
    floor = s.norm_sq / 4

    best_x, best_val = None, math.inf
    evaluations = 0
    per_start = []
    for _ in range(starts):
        x0 = np.concatenate([_ball_sample(rng), _ball_sample(rng)])
        x, iters, ok = solve_stationarity(c, x0)
        evaluations += iters
        if not ok:
            raise NotConverged(f"fixed-point iteration hit the {FIXED_POINT_MAX_ITER} cap from {x0}")
        val = product_distance(s, x[:3], x[3:])
        if val < floor - PRODUCT_SLACK:
            raise AppendixViolation(f"start {x0} reached {val!r} < |c|^2/4 = {floor!r}")
        per_start.append((val, float(np.max(np.abs(x)))))
        if val < best_val:
            best_x, best_val = x, val

    aa = _sphere_samples(rng, border_samples)
    bb = _sphere_samples(rng, border_samples)
    axes = np.eye(3)
    aligned = [(sa * e, sb * e) for e in axes for sa in (1, -1) for sb in (1, -1)]
    border = [product_distance(s, a, b) for a, b in zip(aa, bb)]
    border += [product_distance(s, a, b) for a, b in aligned]
    border_min = min(border)
    evaluations += len(border)
    if border_min <= floor:
        raise AppendixViolation(f"border value {border_min!r} does not exceed |c|^2/4 = {floor!r}")

    return MinimizationResult(
        value=best_val,
        argmin=(best_x[:3], best_x[3:]),
        evaluations=evaluations,
        converged=True,
        info={"border_min": border_min, "floor": floor, "starts": per_start},
    )
