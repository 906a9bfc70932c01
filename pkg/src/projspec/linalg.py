"""Dense complex linear algebra kernels.

Thin contracts over LAPACK (through numpy/scipy) with the singularity and
dimension checks the rest of the package relies on. All functions are pure.
Desk scale is k <= 128; larger inputs work but emit a warning.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, DimensionError, SingularMatrixError

DESK_SCALE = 128


def as_matrix(M, *, square: bool = True) -> np.ndarray:
    """Coerce to a finite complex128 2-D array."""
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {M.shape}")
    if square and M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def default_rcond(k: int) -> float:
    return 1e-12 * max(k, 1)


def singular_values(M) -> np.ndarray:
    return np.linalg.svd(as_matrix(M, square=False), compute_uv=False)


def sigma_min(M) -> float:
    """Smallest singular value of a square matrix."""
    M = as_matrix(M)
    if M.shape[0] == 0:
        return 0.0
    return float(singular_values(M)[-1])


def condition_margin(M) -> float:
    """sigma_min / sigma_max, the reciprocal 2-norm condition number (0 for M = 0)."""
    s = singular_values(as_matrix(M))
    if s.size == 0 or s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def _check_invertible(M: np.ndarray, rcond: float | None) -> None:
    if rcond is None:
        rcond = default_rcond(M.shape[0])
    margin = condition_margin(M)
    if margin <= rcond:
        raise SingularMatrixError("matrix is numerically singular", margin)


def determinant(M) -> complex:
    """Determinant from a partially pivoted LU factorization.

    The permutation sign is read off the pivot vector exactly.
    """
    M = as_matrix(M)
    k = M.shape[0]
    if k == 0:
        return 1.0 + 0.0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    swaps = int(np.count_nonzero(piv != np.arange(k)))
    sign = -1.0 if swaps % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))


def solve(M, rhs, *, rcond: float | None = None) -> np.ndarray:
    """Solve M X = rhs; ``rhs`` may be a vector or a matrix.

    Raises
    ------
    SingularMatrixError
        If sigma_min(M)/sigma_max(M) <= rcond (default 1e-12 * k).
    """
    M = as_matrix(M)
    rhs = np.asarray(rhs, dtype=np.complex128)
    if rhs.shape[0] != M.shape[0]:
        raise DimensionError(f"rhs has {rhs.shape[0]} rows, matrix has {M.shape[0]}")
    _check_invertible(M, rcond)
    return np.linalg.solve(M, rhs)


def inverse(M, *, rcond: float | None = None, return_residual: bool = False):
    """Matrix inverse with a singularity guard.

    With ``return_residual`` the pair ``(inv, ||M inv - I||_F)`` is returned.
    """
    M = as_matrix(M)
    _check_invertible(M, rcond)
    inv = np.linalg.inv(M)
    if return_residual:
        resid = float(np.linalg.norm(M @ inv - np.eye(M.shape[0])))
        return inv, resid
    return inv


def eigenvalues(M) -> np.ndarray:
    """All eigenvalues with multiplicity (Hessenberg + shifted QR in LAPACK)."""
    M = as_matrix(M)
    if M.shape[0] > DESK_SCALE:
        warnings.warn(
            f"eigenvalues of a {M.shape[0]}x{M.shape[0]} matrix exceed the desk scale "
            f"k <= {DESK_SCALE}; accuracy is not tested there",
            RuntimeWarning,
            stacklevel=2,
        )
    try:
        return np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration did not converge: {exc}") from exc


def eig(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors (columns)."""
    M = as_matrix(M)
    try:
        return np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration did not converge: {exc}") from exc


def null_space(M, *, rtol: float = 1e-8, scale: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Right singular vectors whose singular value is <= rtol * scale.

    ``scale`` defaults to sigma_max. Pass the size of the operator's building
    blocks when M itself may be zero up to roundoff, since sigma_max then
    measures only the roundoff. Returns ``(basis, singular_values)`` with
    basis vectors as columns.
    """
    M = np.asarray(M, dtype=np.complex128)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    full = np.zeros(vh.shape[0])
    full[: s.size] = s
    if scale is None:
        scale = s[0] if s.size else 0.0
    mask = full <= rtol * scale
    return vh[mask].conj().T, full


def random_unitary(k: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    Z = (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))
