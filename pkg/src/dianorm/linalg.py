"""Dense complex linear algebra: decompositions, matrix functions and Schatten norms.

Matrices are plain ``numpy`` arrays; every public function accepts anything
``np.asarray`` understands and works in ``complex128``.
"""
from typing import NamedTuple

import numpy as np

from .exceptions import DimensionError, NotPSDError, NumericalFailure

#: absolute tolerance on decomposition residuals
TOL_LIN = 1e-10
#: relative tolerance (times the spectral norm) for clamping negative eigenvalues
TOL_PSD_REL = 1e-8

_JACOBI_MAX_SWEEPS = 100


class SvdResult(NamedTuple):
    """Full singular value decomposition ``X = left @ diag(singular_values) @ right^H``."""

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray


class HermEigResult(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(X) -> np.ndarray:
    """Return ``X`` as a finite 2-d complex array."""
    M = np.asarray(X, dtype=complex)
    if M.ndim != 2 or 0 in M.shape:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def _as_square(X) -> np.ndarray:
    M = as_matrix(X)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    return M


def dagger(X) -> np.ndarray:
    return np.asarray(X).conj().T


def _fix_phases(U, V, k):
    # first non-negligible entry of each right singular vector made real nonnegative;
    # the same phase multiplies the paired left vector so U S V^H is unchanged
    for j in range(k):
        col = V[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-8)
        if idx.size == 0:
            continue
        z = col[idx[0]]
        phase = np.conj(z) / abs(z)
        V[:, j] *= phase
        U[:, j] *= phase
    return U, V


def svd(X) -> SvdResult:
    """Full SVD with square unitary factors and a deterministic phase gauge.

    Singular values are sorted nonincreasing.  For every index below
    ``min(rows, cols)`` the first entry of the right singular vector whose
    modulus exceeds 1e-8 is real and positive.
    """
    M = as_matrix(X)
    try:
        U, s, Vh = np.linalg.svd(M, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc
    U, V = _fix_phases(U.copy(), Vh.conj().T.copy(), s.size)
    return SvdResult(U, s, V)


def singular_values(X) -> np.ndarray:
    """Singular values of ``X`` in nonincreasing order (length ``min(rows, cols)``)."""
    M = as_matrix(X)
    try:
        return np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc


def _jacobi_eigh(H):
    """Cyclic Jacobi eigensolver for a Hermitian matrix (ascending order not enforced)."""
    H = H.copy()
    n = H.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(H)
    if scale == 0.0:
        return np.zeros(n), V
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(H - np.diag(np.diag(H)))
        if off <= 1e-15 * scale:
            return np.real(np.diag(H)), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = H[p, q]
                mag = abs(h)
                if mag <= 1e-300:
                    continue
                tau = (H[q, q].real - H[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                e = h / mag
                # unitary acting on columns p, q; zeroes H[p, q]
                J = np.array([[c, s], [-s * np.conj(e), c * np.conj(e)]])
                idx = [p, q]
                H[:, idx] = H[:, idx] @ J
                H[idx, :] = J.conj().T @ H[idx, :]
                H[p, q] = H[q, p] = 0.0
                V[:, idx] = V[:, idx] @ J
    raise NumericalFailure(f"Jacobi eigensolver did not converge in {_JACOBI_MAX_SWEEPS} sweeps")


def herm_eig(H, method: str = "lapack") -> HermEigResult:
    """Eigendecomposition of the Hermitian part ``(H + H^H)/2``.

    Eigenvalues are returned nonincreasing with eigenvectors as matching
    columns.  ``method="jacobi"`` selects the pure-numpy cyclic Jacobi
    solver instead of LAPACK.
    """
    M = _as_square(H)
    M = 0.5 * (M + M.conj().T)
    if method == "lapack":
        try:
            w, V = np.linalg.eigh(M)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"eigh did not converge: {exc}") from exc
    elif method == "jacobi":
        w, V = _jacobi_eigh(M)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return HermEigResult(w[order], V[:, order])


def matrix_sqrt_psd(H, tol_psd: float = None) -> np.ndarray:
    """Positive semidefinite square root of a PSD matrix.

    Eigenvalues in ``[-tol_psd, 0)`` are clamped to zero; anything more
    negative raises :class:`NotPSDError`.  The default ``tol_psd`` is
    ``1e-8 * ||H||_inf``.
    """
    w, V = herm_eig(H)
    if tol_psd is None:
        tol_psd = TOL_PSD_REL * max(abs(w[0]), abs(w[-1]))
    if w[-1] < -tol_psd:
        raise NotPSDError(f"smallest eigenvalue {w[-1]:.3e} below -{tol_psd:.3e}")
    root = np.sqrt(np.clip(w, 0.0, None))
    S = (V * root) @ V.conj().T
    return 0.5 * (S + S.conj().T)


def sqrt_gram_right(X) -> np.ndarray:
    """``sqrt(X^H X)``, evaluated through the SVD of ``X``."""
    U, s, V = svd(X)
    k = s.size
    R = (V[:, :k] * s) @ V[:, :k].conj().T
    return 0.5 * (R + R.conj().T)


def sqrt_gram_left(X) -> np.ndarray:
    """``sqrt(X X^H)``, evaluated through the SVD of ``X``."""
    U, s, V = svd(X)
    k = s.size
    L = (U[:, :k] * s) @ U[:, :k].conj().T
    return 0.5 * (L + L.conj().T)


def sign_matrix(X) -> np.ndarray:
    """Sign matrix ``V U^H`` of a square matrix with SVD ``X = U S V^H``.

    It is unitary and satisfies ``X @ S = sqrt(X X^H)`` and
    ``S @ X = sqrt(X^H X)``.  On degenerate or null singular subspaces the
    matrix itself is gauge dependent; only those identities are guaranteed.
    The zero matrix maps to the identity.
    """
    M = _as_square(X)
    if not np.any(M):
        return np.eye(M.shape[0], dtype=complex)
    U, _, V = svd(M)
    return V @ U.conj().T


def nuclear_norm(X) -> float:
    return float(np.sum(singular_values(X)))


def frobenius_norm(X) -> float:
    return float(np.linalg.norm(as_matrix(X)))


def spectral_norm(X) -> float:
    return float(singular_values(X)[0])


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary."""
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Matrix with i.i.d. standard complex Gaussian entries."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
