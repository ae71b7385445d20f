"""Two-qubit Bell-diagonal states and general density matrices.

Matrices use the computational basis ordered ``|11>, |10>, |01>, |00>``.
That is the Kronecker product of the single-qubit basis ``(|1>, |0>)``
with qubit A as the left factor, so ``np.kron`` works unchanged as long as
the single-qubit operators below are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPhysicalState, NotBellDiagonal

EPS_PHYS = 1e-12
PATTERN_TOL = 1e-10

# single-qubit basis order (|1>, |0>)
KET1 = np.array([1.0, 0.0], dtype=complex)
KET0 = np.array([0.0, 1.0], dtype=complex)
I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SZ = np.array([[-1, 0], [0, 1]], dtype=complex)
PAULI = (SX, SY, SZ)
I4 = np.eye(4, dtype=complex)
MAXIMALLY_MIXED = I4 / 4


@dataclass(frozen=True)
class BellDiagonalState:
    """Bell-diagonal state ``[I + sum_j c_j sigma_j x sigma_j] / 4``."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or abs(value) > 1.0 + EPS_PHYS:
                raise ValueError(f"{name}={value!r} outside [-1, 1]")
            object.__setattr__(self, name, value)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    @property
    def norm_sq(self) -> float:
        """|c|^2 = c1^2 + c2^2 + c3^2."""
        return self.c1**2 + self.c2**2 + self.c3**2

    def to_csv(self) -> str:
        return ",".join(repr(v) for v in (self.c1, self.c2, self.c3))

    @classmethod
    def from_csv(cls, text: str) -> "BellDiagonalState":
        parts = [p.strip() for p in text.strip().split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'c1,c2,c3', got {text!r}")
        return cls(*(float(p) for p in parts))

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))


def bell_eigenvalues(s: BellDiagonalState) -> tuple[float, float, float, float]:
    """Bell-basis eigenvalues ``(l1+, l1-, l2+, l2-)``.

    ``l1+-`` belong to ``(|01> +- |10>)/sqrt2`` and ``l2+-`` to
    ``(|00> +- |11>)/sqrt2``.
    """
    c1, c2, c3 = s
    return (
        (1 + c1 + c2 - c3) / 4,
        (1 - c1 - c2 - c3) / 4,
        (1 + c1 - c2 + c3) / 4,
        (1 - c1 + c2 + c3) / 4,
    )


def from_bell_eigenvalues(lam) -> BellDiagonalState:
    """Inverse of :func:`bell_eigenvalues`."""
    l1p, l1m, l2p, l2m = (float(x) for x in lam)
    d1 = l1p - l1m
    d2 = l2p - l2m
    return BellDiagonalState(d1 + d2, d1 - d2, (l2p + l2m) - (l1p + l1m))


def to_density_matrix(s: BellDiagonalState) -> np.ndarray:
    c1, c2, c3 = s
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = (1 + c3) / 4
    rho[1, 1] = rho[2, 2] = (1 - c3) / 4
    rho[0, 3] = rho[3, 0] = (c1 - c2) / 4
    rho[1, 2] = rho[2, 1] = (c1 + c2) / 4
    return rho


def pauli_sum_matrix(s: BellDiagonalState) -> np.ndarray:
    """Build ``[I + sum_j c_j sigma_j x sigma_j] / 4`` from Kronecker products.

    Independent of the entry-wise construction in :func:`to_density_matrix`.
    """
    rho = I4.copy()
    for c, sigma in zip(s, PAULI):
        rho = rho + c * np.kron(sigma, sigma)
    return rho / 4


def from_density_matrix(rho, tol: float = PATTERN_TOL) -> BellDiagonalState:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise NotBellDiagonal(f"expected a 4x4 matrix, got shape {rho.shape}")
    allowed = np.zeros((4, 4), dtype=bool)
    allowed[np.diag_indices(4)] = True
    allowed[0, 3] = allowed[3, 0] = allowed[1, 2] = allowed[2, 1] = True
    checks = {
        "entries outside the X pattern": np.max(np.abs(rho[~allowed])),
        "rho11 != rho44": abs(rho[0, 0] - rho[3, 3]),
        "rho22 != rho33": abs(rho[1, 1] - rho[2, 2]),
        "complex diagonal": np.max(np.abs(np.diag(rho).imag)),
        "complex off-diagonal": max(abs(rho[0, 3].imag), abs(rho[1, 2].imag)),
        "non-Hermitian off-diagonal": max(abs(rho[0, 3] - rho[3, 0]), abs(rho[1, 2] - rho[2, 1])),
        "trace != 1": abs(np.trace(rho) - 1),
    }
    for what, err in checks.items():
        if err > tol:
            raise NotBellDiagonal(f"{what} (deviation {err:.3g})")

    c3 = 2 * (rho[0, 0].real - rho[1, 1].real)
    a = 4 * rho[0, 3].real  # c1 - c2
    b = 4 * rho[1, 2].real  # c1 + c2
    return BellDiagonalState((a + b) / 2, (b - a) / 2, c3)


def is_physical(s: BellDiagonalState) -> bool:
    return min(bell_eigenvalues(s)) >= -EPS_PHYS


def require_physical(s: BellDiagonalState) -> None:
    if not is_physical(s):
        raise NonPhysicalState(f"non-physical state {tuple(s)}: eigenvalues {bell_eigenvalues(s)}")


def is_entangled(s: BellDiagonalState) -> bool:
    """Largest Bell eigenvalue strictly above 1/2."""
    require_physical(s)
    return max(bell_eigenvalues(s)) > 0.5


def partial_trace_b(rho) -> np.ndarray:
    return np.einsum("...ijkj->...ik", np.asarray(rho).reshape(*np.shape(rho)[:-2], 2, 2, 2, 2))


def partial_trace_a(rho) -> np.ndarray:
    return np.einsum("...ijil->...jl", np.asarray(rho).reshape(*np.shape(rho)[:-2], 2, 2, 2, 2))


def marginals(rho) -> tuple[np.ndarray, np.ndarray]:
    """Reduced states ``(Tr_B rho, Tr_A rho)``."""
    check_density_matrix(rho)
    return partial_trace_b(rho), partial_trace_a(rho)


def qubit_state(r) -> np.ndarray:
    """Single-qubit density matrix ``(I + r.sigma)/2`` for a Bloch vector ``r``."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("Bloch vector must have three components")
    if r @ r > 1 + EPS_PHYS:
        raise ValueError(f"Bloch vector {r} lies outside the unit ball")
    return (I2 + sum(x * sig for x, sig in zip(r, PAULI))) / 2


def check_density_matrix(rho, eps: float = EPS_PHYS) -> np.ndarray:
    """Return ``rho`` as a complex array or raise :class:`NonPhysicalState`."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NonPhysicalState(f"not a square matrix: shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise NonPhysicalState("matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > 1e-12:
        raise NonPhysicalState(f"trace {np.trace(rho).real!r} != 1")
    return rho


def random_physical_state(rng: np.random.Generator) -> BellDiagonalState:
    """Bell-diagonal state with eigenvalues drawn uniformly from the simplex."""
    return from_bell_eigenvalues(rng.dirichlet(np.ones(4)))


def random_density_matrix(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> np.ndarray:
    """Random mixed state ``G G^dag / Tr(G G^dag)`` with complex Gaussian ``G``."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def pure_product(a_ket, b_ket) -> np.ndarray:
    psi = np.kron(a_ket, b_ket)
    return np.outer(psi, psi.conj())
