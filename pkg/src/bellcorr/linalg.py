"""Cyclic Jacobi eigendecomposition for small Hermitian matrices.

Works on a single matrix or on a stack of shape ``(..., n, n)``; every
rotation is applied to the whole stack at once, so large batches of 4x4
matrices (measurement grids) cost a few dozen numpy calls per sweep.
"""

from __future__ import annotations

import numpy as np

OFF_TOL = 1e-13
MAX_SWEEPS = 60


def _off_norm(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., mask]) ** 2, axis=-1))


def jacobi_eigh(h, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues and eigenvectors of Hermitian matrices.

    Parameters
    ----------
    h : array_like, shape (..., n, n)
        Hermitian input. Only Hermitian-ness up to rounding is assumed.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm of every matrix
        in the stack is below ``tol * max(1, ||h||_F)``.

    Returns
    -------
    w : ndarray, shape (..., n)
        Eigenvalues in ascending order.
    v : ndarray, shape (..., n, n)
        Unitary whose columns are the matching eigenvectors.
    """
    a = np.array(h, dtype=complex, copy=True)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()

    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2))))
    for _ in range(max_sweeps):
        if np.all(_off_norm(a) < tol * scale):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:
        if not np.all(_off_norm(a) < tol * scale):
            raise RuntimeError("Jacobi sweeps did not converge")

    w = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    order = np.argsort(w, axis=-1)
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, v


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[..., p, q]
    mag = np.abs(apq)
    active = mag > 0.0
    safe_mag = np.where(active, mag, 1.0)
    # phase that makes a_pq real and positive once column q is rotated by it
    phase = np.where(active, np.conj(apq) / safe_mag, 1.0)

    app = np.real(a[..., p, p])
    aqq = np.real(a[..., q, q])
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        theta = (aqq - app) / (2.0 * safe_mag)
        t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(theta == 0.0, 1.0, t)
    t = np.where(active & np.isfinite(theta), t, 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    # U restricted to (p, q): [[c, s], [-s*phase, c*phase]]
    upp, upq = c, s
    uqp, uqq = -s * phase, c * phase

    col_p = a[..., :, p].copy()
    col_q = a[..., :, q].copy()
    a[..., :, p] = col_p * upp[..., None] + col_q * uqp[..., None]
    a[..., :, q] = col_p * upq[..., None] + col_q * uqq[..., None]

    row_p = a[..., p, :].copy()
    row_q = a[..., q, :].copy()
    a[..., p, :] = np.conj(upp)[..., None] * row_p + np.conj(uqp)[..., None] * row_q
    a[..., q, :] = np.conj(upq)[..., None] * row_p + np.conj(uqq)[..., None] * row_q
    a[..., p, q] = 0.0
    a[..., q, p] = 0.0

    vp = v[..., :, p].copy()
    vq = v[..., :, q].copy()
    v[..., :, p] = vp * upp[..., None] + vq * uqp[..., None]
    v[..., :, q] = vp * upq[..., None] + vq * uqq[..., None]


def jacobi_eigvalsh(h, tol: float = OFF_TOL) -> np.ndarray:
    """Eigenvalues only (ascending)."""
    return jacobi_eigh(h, tol=tol)[0]
