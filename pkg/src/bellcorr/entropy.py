"""Entropies and distances between density matrices (logarithms base 2)."""

from __future__ import annotations

import math

import numpy as np

from .errors import NonPhysicalState
from .linalg import jacobi_eigh, jacobi_eigvalsh
from .qstate import EPS_PHYS, check_density_matrix, partial_trace_a, partial_trace_b

EPS_SUPP = 1e-12


def xlog2x(p) -> np.ndarray:
    """Elementwise ``p log2 p`` with ``0 log 0 = 0`` below ``EPS_SUPP``."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > EPS_SUPP
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def spectrum(rho) -> np.ndarray:
    """Eigenvalues of a density matrix, ascending.

    Raises :class:`NonPhysicalState` if any eigenvalue is below ``-EPS_PHYS``.
    """
    rho = check_density_matrix(rho)
    w = jacobi_eigvalsh(rho)
    if w[0] < -EPS_PHYS:
        raise NonPhysicalState(f"negative eigenvalue {w[0]!r}")
    return w


def shannon_entropy(probs) -> float:
    return float(-np.sum(xlog2x(probs)))


def von_neumann_entropy(rho) -> float:
    return shannon_entropy(spectrum(rho))


def relative_entropy(rho, sigma) -> float:
    """``S(rho||sigma) = -Tr(rho log2 sigma) - S(rho)``.

    Returns ``math.inf`` when the support of ``rho`` is not inside that of
    ``sigma``.
    """
    s_rho = von_neumann_entropy(rho)
    sigma = check_density_matrix(sigma)
    w, v = jacobi_eigh(sigma)
    if w[0] < -EPS_PHYS:
        raise NonPhysicalState(f"negative eigenvalue {w[0]!r}")
    rho = np.asarray(rho, dtype=complex)
    # weight of rho on each eigenvector of sigma
    weights = np.real(np.einsum("ik,ij,jk->k", v.conj(), rho, v))
    cross = 0.0
    for lam, wt in zip(w, weights):
        if lam < EPS_SUPP:
            if wt > EPS_SUPP:
                return math.inf
            continue
        cross -= wt * math.log2(lam)
    return cross - s_rho


def linear_entropy(rho) -> float:
    rho = check_density_matrix(rho)
    return float(1.0 - np.real(np.trace(rho @ rho)))


def linear_relative_entropy(rho, sigma) -> float:
    """``Tr[rho (rho - sigma)]``; can be negative."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    return float(np.real(np.trace(rho @ (rho - sigma))))


def symmetrized_lre(rho, sigma) -> float:
    return linear_relative_entropy(rho, sigma) + linear_relative_entropy(sigma, rho)


def antisymmetrized_lre(rho, sigma) -> float:
    return linear_relative_entropy(rho, sigma) - linear_relative_entropy(sigma, rho)


def hs_distance_sq(rho, sigma) -> float:
    """Squared Hilbert-Schmidt distance ``sum_ij |rho_ij - sigma_ij|^2``."""
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    return float(np.sum(np.abs(rho - sigma) ** 2))


def product_of_marginals(rho) -> np.ndarray:
    rho = check_density_matrix(rho)
    return np.kron(partial_trace_b(rho), partial_trace_a(rho))


def linear_mutual_information(rho) -> float:
    """``S_L(rho_A x rho_B) - S_L(rho)``."""
    return linear_entropy(product_of_marginals(rho)) - linear_entropy(rho)


def mutual_information(rho) -> float:
    """``S(rho_A) + S(rho_B) - S(rho)``."""
    rho = check_density_matrix(rho)
    return (
        von_neumann_entropy(partial_trace_b(rho))
        + von_neumann_entropy(partial_trace_a(rho))
        - von_neumann_entropy(rho)
    )
