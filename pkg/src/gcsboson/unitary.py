"""Haar-random unitaries, phase (generator) matrices and fractional powers.

Every routine is a pure function of its arguments. Randomness is confined to
:func:`haar_unitary`, which builds its own generator from the seed it is given.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as la

from .exceptions import DimensionError, PreconditionError

UNITARITY_TOL = 1e-10
PRECONDITION_TOL = 1e-8


def unitarity_defect(U: np.ndarray) -> float:
    """Return ``max |U^dagger U - I|``."""
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def hermiticity_defect(H: np.ndarray) -> float:
    H = np.asarray(H)
    return float(np.max(np.abs(H - H.conj().T)))


def haar_unitary(dim: int, seed: int | None = None) -> np.ndarray:
    """Sample an ``dim x dim`` unitary from the Haar measure.

    A Ginibre matrix of i.i.d. standard complex Gaussians is QR-factorised and
    the phases of ``R``'s diagonal are moved onto ``Q`` so the result is
    distributed according to the Haar measure rather than biased by the
    LAPACK sign convention.

    Parameters
    ----------
    dim : int
        Matrix dimension, ``dim >= 1``.
    seed : int, optional
        Seed for a private :class:`numpy.random.Generator`. Identical
        ``(dim, seed)`` pairs give bitwise identical matrices.
    """
    if int(dim) != dim or dim < 1:
        raise DimensionError(f"invalid dimension {dim!r}; need a positive integer")
    dim = int(dim)
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))[np.newaxis, :]


def _eig_unitary(U: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Unitary eigendecomposition ``U = V diag(exp(i theta)) V^dagger``.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors are an orthonormal eigenbasis even for degenerate spectra.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {U.shape}")
    defect = unitarity_defect(U)
    if defect > tol:
        raise PreconditionError(f"matrix is not unitary (defect {defect:.3e} > {tol:.1e})")
    T, V = la.schur(U, output="complex")
    theta = np.angle(np.diagonal(T))
    # np.angle returns [-pi, pi]; move -pi onto the principal branch (-pi, pi]
    theta = np.where(theta <= -np.pi, theta + 2 * np.pi, theta)
    return theta, V


def phase_matrix(U: np.ndarray, tol: float = PRECONDITION_TOL) -> np.ndarray:
    """Hermitian generator ``Phi = i ln U^dagger`` on the principal branch.

    The returned matrix satisfies ``expm(-1j * Phi) == U.conj().T`` and has
    eigenvalues in ``(-pi, pi]``.
    """
    theta, V = _eig_unitary(U, tol)
    # U^dagger has eigenphases -theta, so ln U^dagger = -i theta and Phi = theta;
    # -theta is principal except on the measure-zero edge theta = pi.
    Phi = (V * theta[np.newaxis, :]) @ V.conj().T
    return 0.5 * (Phi + Phi.conj().T)


def fractional_power(U: np.ndarray, t: float, tol: float = PRECONDITION_TOL) -> np.ndarray:
    """Principal fractional power ``U**t`` for ``0 <= t <= 1``."""
    if not 0.0 <= t <= 1.0:
        raise PreconditionError(f"exponent t={t} outside [0, 1]")
    if t in (0.0, 1.0):
        defect = unitarity_defect(U)
        if defect > tol:
            raise PreconditionError(f"matrix is not unitary (defect {defect:.3e} > {tol:.1e})")
    if t == 0.0:
        return np.eye(np.asarray(U).shape[0], dtype=complex)
    if t == 1.0:
        return np.array(U, dtype=complex)
    theta, V = _eig_unitary(U, tol)
    return (V * np.exp(1j * t * theta)[np.newaxis, :]) @ V.conj().T
