"""Saturation certificates for the bounds ||X||_1 <= sq(X) <= n ||X||_1 and for Hoelder.

Both bounds on the square norm ``sq(X)`` are decided from the two partial
traces ``Tr_W sqrt(X X^H)`` and ``Tr_W sqrt(X^H X)``:

* lower bound tight  <=>  both partials equal ``(||X||_1 / n) * 1``;
* upper bound tight  <=>  the partials are ``||X||_1`` times rank-1 projectors.

Residuals are relative to ``||X||_1`` so thresholds do not depend on scale.
"""
import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bipartite import BipartiteOperator, choi_from_kraus, kron, partial_trace_w
from .exceptions import DegenerateInputError, DimensionError
from .linalg import (
    TOL_LIN,
    as_matrix,
    herm_eig,
    random_gaussian,
    singular_values,
    spectral_norm,
    svd,
)

DEFAULT_TOL = 1e-8
#: relative cutoff on singular values when computing the range of a matrix
TOL_RANK = 1e-10


class Verdict(str, enum.Enum):
    LOWER_SATURATED = "LowerSaturated"
    UPPER_SATURATED = "UpperSaturated"
    NEITHER = "Neither"
    DEGENERATE = "Degenerate"


@dataclass
class SaturationCertificate:
    verdict: Verdict
    nuclear_norm: float
    #: Tr_W sqrt(X X^H)
    left_partial: np.ndarray
    #: Tr_W sqrt(X^H X)
    right_partial: np.ndarray
    lower_residual: float
    upper_residual: float
    psi: Optional[np.ndarray] = None
    phi: Optional[np.ndarray] = None

    @property
    def saturated(self) -> bool:
        return self.verdict in (Verdict.LOWER_SATURATED, Verdict.UPPER_SATURATED)


@dataclass
class HolderReport:
    """Diagnostics for ``||AB||_1 <= ||A||_inf ||B||_1``.

    ``saturated`` is decided by the equality gap (condition i).  ``singular_check``
    is condition ii: every vector of ran(B) is a right singular vector of A for
    the top singular value.  ``isometry_residual`` measures condition iii: how far
    ``A / ||A||_inf`` restricted to ran(B) is from an isometry.
    """

    equality_gap: float
    singular_check: bool
    isometry_residual: float
    saturated: bool
    tol: float
    rank: int

    @property
    def gap_check(self) -> bool:
        return self.saturated

    @property
    def isometry_check(self) -> bool:
        return self.isometry_residual <= self.tol

    @property
    def conditions_agree(self) -> bool:
        return self.gap_check == self.singular_check == self.isometry_check


@dataclass
class IteratedHolderReport:
    """Diagnostics for ``||ABC||_1 <= ||A||_inf ||B||_1 ||C||_inf``.

    ``left`` checks ran(B) against the right singular vectors of A; ``right``
    checks ran(B^H) against the left singular vectors of C (evaluated as the
    pair ``(C^H, B^H)``).
    """

    equality_gap: float
    saturated: bool
    left: HolderReport
    right: HolderReport

    def __bool__(self):
        return self.saturated

    @property
    def conditions_hold(self) -> bool:
        return self.left.singular_check and self.right.singular_check


def _partials(X: BipartiteOperator):
    U, s, V = svd(X.matrix)
    k = s.size
    left = (U[:, :k] * s) @ U[:, :k].conj().T
    right = (V[:, :k] * s) @ V[:, :k].conj().T
    left = partial_trace_w(X.with_matrix(0.5 * (left + left.conj().T)))
    right = partial_trace_w(X.with_matrix(0.5 * (right + right.conj().T)))
    return float(s.sum()), 0.5 * (left + left.conj().T), 0.5 * (right + right.conj().T)


def _fix_phase(v):
    idx = np.flatnonzero(np.abs(v) > 1e-8)
    z = v[idx[0]]
    return v * (np.conj(z) / abs(z))


def _residuals(X: BipartiteOperator):
    nuc, left, right = _partials(X)
    n = X.dim_v
    if nuc <= TOL_LIN:
        return nuc, left, right, 0.0, 0.0, None, None
    target = (nuc / n) * np.eye(n)
    lower = max(np.linalg.norm(left - target), np.linalg.norm(right - target)) / nuc
    upper = 0.0
    tops = []
    for P in (left, right):
        w, V = herm_eig(P)
        tail = float(np.sum(w[1:]))
        upper = max(upper, (nuc - w[0]) / nuc, tail / nuc)
        tops.append(_fix_phase(V[:, 0]))
    return nuc, left, right, float(lower), float(upper), tops[0], tops[1]


def certify_lower(X: BipartiteOperator, tol: float = DEFAULT_TOL) -> SaturationCertificate:
    """Decide ``||X||_1 == sq(X)``: both W-partial traces of |X| proportional to identity."""
    nuc, left, right, lower, upper, _, _ = _residuals(X)
    if nuc <= TOL_LIN:
        verdict = Verdict.DEGENERATE
    elif lower <= tol:
        verdict = Verdict.LOWER_SATURATED
    else:
        verdict = Verdict.NEITHER
    return SaturationCertificate(verdict, nuc, left, right, lower, upper)


def certify_upper(X: BipartiteOperator, tol: float = DEFAULT_TOL) -> SaturationCertificate:
    """Decide ``sq(X) == n ||X||_1``: both partials are ``||X||_1`` times a rank-1 projector.

    ``psi`` and ``phi`` are the top eigenvectors of the left and right partials,
    phase-fixed so that their first non-negligible entry is real positive.
    """
    nuc, left, right, lower, upper, psi, phi = _residuals(X)
    if nuc <= TOL_LIN:
        verdict = Verdict.DEGENERATE
    elif upper <= tol:
        verdict = Verdict.UPPER_SATURATED
    else:
        verdict = Verdict.NEITHER
    return SaturationCertificate(verdict, nuc, left, right, lower, upper, psi, phi)


def norm12_saturation(X, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``||X||_2 == ||X||_1 / sqrt(n)``, i.e. ``n X / ||X||_1`` is unitary."""
    M = as_matrix(X)
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    s = singular_values(M)
    nuc = float(s.sum())
    if nuc <= TOL_LIN * max(1.0, float(np.linalg.norm(M))):
        raise DegenerateInputError("zero matrix")
    n = M.shape[0]
    Q = (n / nuc) * M
    return bool(np.linalg.norm(Q @ Q.conj().T - np.eye(n)) <= tol)


def norm12_gap(X) -> float:
    """``||X||_2 - ||X||_1 / sqrt(n)`` (nonnegative up to rounding)."""
    M = as_matrix(X)
    s = singular_values(M)
    return float(np.sqrt(np.sum(s * s)) - s.sum() / np.sqrt(M.shape[0]))


def range_basis(B, tol_rank: float = TOL_RANK) -> np.ndarray:
    """Orthonormal basis of ran(B): left singular vectors with sigma > tol_rank * sigma_1."""
    U, s, _ = svd(B)
    if s.size == 0 or s[0] == 0.0:
        return U[:, :0]
    r = int(np.sum(s > tol_rank * s[0]))
    return U[:, :r]


def holder_saturation(A, B, tol: float = DEFAULT_TOL) -> HolderReport:
    """Evaluate all three equivalent forms of equality in Hoelder's inequality."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise DimensionError(f"need square matrices of equal size, got {A.shape}, {B.shape}")
    a_inf = spectral_norm(A)
    if a_inf <= 0.0:
        raise DegenerateInputError("A is zero")
    b_nuc = float(np.sum(singular_values(B)))
    gap = a_inf * b_nuc - float(np.sum(singular_values(A @ B)))
    saturated = gap <= tol * a_inf * b_nuc

    P = range_basis(B)
    AP = A @ P
    col_norms = np.linalg.norm(AP, axis=0)
    eig_res = np.linalg.norm(A.conj().T @ AP - a_inf**2 * P, axis=0)
    singular_check = bool(
        np.all(np.abs(col_norms - a_inf) <= tol * a_inf)
        and np.all(eig_res <= tol * a_inf**2))
    G = AP.conj().T @ AP / a_inf**2
    iso = float(np.linalg.norm(G - np.eye(P.shape[1])))
    return HolderReport(float(gap), singular_check, iso, bool(saturated), tol, P.shape[1])


def iterated_holder(A, B, C, tol: float = DEFAULT_TOL) -> IteratedHolderReport:
    """Equality test for ``||ABC||_1 <= ||A||_inf ||B||_1 ||C||_inf``."""
    A, B, C = as_matrix(A), as_matrix(B), as_matrix(C)
    if not (A.shape == B.shape == C.shape and A.shape[0] == A.shape[1]):
        raise DimensionError("need square matrices of equal size")
    a_inf, c_inf = spectral_norm(A), spectral_norm(C)
    if a_inf <= 0.0 or c_inf <= 0.0:
        raise DegenerateInputError("A and C must be nonzero")
    bound = a_inf * float(np.sum(singular_values(B))) * c_inf
    gap = bound - float(np.sum(singular_values(A @ B @ C)))
    left = holder_saturation(A, B, tol)
    right = holder_saturation(C.conj().T, B.conj().T, tol)
    return IteratedHolderReport(float(gap), bool(gap <= tol * bound), left, right)


def gen_cptp_choi(dim_w: int, dim_v: int, kraus_count: int, seed) -> BipartiteOperator:
    """Choi matrix of a random channel ``L(V) -> L(W)`` with ``kraus_count`` Kraus operators.

    A complex Gaussian ``(kraus_count * dim_w) x dim_v`` matrix is replaced by its
    polar isometry; its row blocks are the Kraus operators, so they sum to the
    identity in the ``K^H K`` sense exactly up to rounding.
    """
    if kraus_count < 1:
        raise ValueError("kraus_count must be at least 1")
    if kraus_count * dim_w < dim_v:
        raise DimensionError(
            f"kraus_count * dim_w = {kraus_count * dim_w} < dim_v = {dim_v}: no isometry")
    rng = np.random.default_rng(seed)
    G = random_gaussian((kraus_count * dim_w, dim_v), rng)
    U, _, Vh = np.linalg.svd(G, full_matrices=False)
    iso = U @ Vh
    kraus = [iso[k * dim_w:(k + 1) * dim_w] for k in range(kraus_count)]
    return choi_from_kraus(kraus).choi


def gen_upper_saturator(Y, psi, phi, dim_v: int = None) -> BipartiteOperator:
    """``Y (x) psi phi^H`` for nonzero square ``Y`` and unit vectors ``psi``, ``phi``."""
    Y = as_matrix(Y)
    if Y.shape[0] != Y.shape[1]:
        raise DimensionError("Y must be square")
    if not np.any(Y):
        raise DegenerateInputError("Y must be nonzero")
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if dim_v is None:
        dim_v = psi.size
    if psi.size != dim_v or phi.size != dim_v:
        raise DimensionError("psi and phi must have length dim_v")
    for name, v in (("psi", psi), ("phi", phi)):
        if abs(np.linalg.norm(v) - 1.0) > TOL_LIN:
            raise ValueError(f"{name} is not unit-normalized")
    return BipartiteOperator(kron(Y, np.outer(psi, phi.conj())), Y.shape[0], dim_v)
