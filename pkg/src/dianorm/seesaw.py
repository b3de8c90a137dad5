"""Alternating maximization for the square norm of a bipartite operator.

The square norm of X on W (x) V, with ``n = dim V``, is

    sup { ||(1 (x) A) X (1 (x) B)||_1 : ||A||_2 = ||B||_2 = sqrt(n) }.

Every run starts with closed-form partial-trace updates

    B ~ Tr_W sqrt(X_A^H X_A),   X_A = (1 (x) A) X,
    A ~ Tr_W sqrt(X_B X_B^H),   X_B = X (1 (x) B),

and then polishes with a polar ascent step: with ``S`` the sign matrix of the
current product ``Z``, ``||Z||_1 = Tr[S Z]`` is linear in each factor, so the
Frobenius-constrained maximizer of that linear form is available in closed
form and can never lower the objective.  The partial-trace updates alone
tend to stall a few percent below the supremum on generic inputs.

Every objective value is attained at a feasible pair, so the reported value
is a lower bound on the square norm.  The identity start makes it at least
``||X||_1``.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .bipartite import BipartiteOperator, lift
from .exceptions import DegenerateInputError, DimensionError, NumericalFailure
from .linalg import as_matrix, random_gaussian

_ZERO_REL = 1e-14
#: singular values of a converged factor below this fraction of the largest are
#: treated as belonging to a rank-deficient optimum
_FACE_CUT = 0.1


@dataclass(frozen=True)
class SeesawConfig:
    rel_tol: float = 1e-9
    max_iter: int = 1000
    restarts: int = 16
    seed: int = 0
    sample_count: int = 10000
    #: cap on worker threads for restarts; None reads DIANORM_THREADS, then the CPU count
    threads: int = None

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.sample_count < 0:
            raise ValueError("sample_count must be nonnegative")


@dataclass
class SquareNormResult:
    """Best value found over all restarts.

    ``value`` is attained at ``(a_opt, b_opt)`` and is therefore a certified
    lower bound on the square norm; it is not a certified upper bound.
    """

    value: float
    a_opt: np.ndarray
    b_opt: np.ndarray
    iterations: int
    converged: bool
    objective_trace: List[float] = field(default_factory=list)


def _ptw(M, dw, dv):
    return np.einsum("iaib->ab", M.reshape(dw, dv, dw, dv))


def _left(A, M, dw, dv):
    # (1_W (x) A) M without forming the Kronecker product
    N = M.shape[0]
    return (A @ M.reshape(dw, dv, N)).reshape(N, N)


def _right(M, B, dw, dv):
    # M (1_W (x) B)
    N = M.shape[0]
    return (M.reshape(N, dw, dv) @ B).reshape(N, N)


def _normalize(M, n):
    return np.sqrt(n) * M / np.linalg.norm(M)


def _check_factor(M, dv, name):
    M = as_matrix(M)
    if M.shape != (dv, dv):
        raise DimensionError(f"{name} has shape {M.shape}, expected {(dv, dv)}")
    return M


def _svd(M):
    try:
        return np.linalg.svd(M)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge: {exc}") from exc


def objective(X: BipartiteOperator, A, B) -> float:
    """``||(1_W (x) A) X (1_W (x) B)||_1``; no normalization of A, B is applied."""
    A = _check_factor(A, X.dim_v, "A")
    B = _check_factor(B, X.dim_v, "B")
    Z = lift(A, X.dim_w) @ X.matrix @ lift(B, X.dim_w)
    return float(np.sum(np.linalg.svd(Z, compute_uv=False)))


def _ptrace_b(M, A, dw, dv):
    XA = _left(A, M, dw, dv)
    if np.linalg.norm(XA) <= _ZERO_REL * np.linalg.norm(M) * np.linalg.norm(A):
        raise DegenerateInputError("(1 (x) A) X is numerically zero")
    _, s, Vh = _svd(XA)
    P = _ptw((Vh.conj().T * s) @ Vh, dw, dv)
    return _normalize(0.5 * (P + P.conj().T), dv)


def _ptrace_a(M, B, dw, dv):
    XB = _right(M, B, dw, dv)
    if np.linalg.norm(XB) <= _ZERO_REL * np.linalg.norm(M) * np.linalg.norm(B):
        raise DegenerateInputError("X (1 (x) B) is numerically zero")
    U, s, _ = _svd(XB)
    P = _ptw((U * s) @ U.conj().T, dw, dv)
    return _normalize(0.5 * (P + P.conj().T), dv)


def update_b(X: BipartiteOperator, A) -> np.ndarray:
    """PSD ``B`` proportional to ``Tr_W sqrt(X_A^H X_A)`` with ``||B||_2 = sqrt(n)``."""
    A = _check_factor(A, X.dim_v, "A")
    return _ptrace_b(X.matrix, A, X.dim_w, X.dim_v)


def update_a(X: BipartiteOperator, B) -> np.ndarray:
    """PSD ``A`` proportional to ``Tr_W sqrt(X_B X_B^H)`` with ``||A||_2 = sqrt(n)``."""
    B = _check_factor(B, X.dim_v, "B")
    return _ptrace_a(X.matrix, B, X.dim_w, X.dim_v)


def _polar_b(M, A, U, Vh, dw, dv):
    # Tr[S Z] = Tr[Tr_W(S (1 x A) X) B] with S = V U^H
    G = _ptw(Vh.conj().T @ (U.conj().T @ _left(A, M, dw, dv)), dw, dv)
    if not np.any(G):
        return None
    return _normalize(G.conj().T, dv)


def _polar_a(M, B, U, Vh, dw, dv):
    # Tr[S Z] = Tr[A Tr_W(X (1 x B) S)]
    G = _ptw(_right(M, B, dw, dv) @ Vh.conj().T @ U.conj().T, dw, dv)
    if not np.any(G):
        return None
    return _normalize(G.conj().T, dv)


def refine_b(X: BipartiteOperator, A, B) -> np.ndarray:
    """Polar ascent step in ``B``: never decreases the objective at fixed ``A``."""
    A = _check_factor(A, X.dim_v, "A")
    B = _check_factor(B, X.dim_v, "B")
    U, _, Vh = _svd(lift(A, X.dim_w) @ X.matrix @ lift(B, X.dim_w))
    out = _polar_b(X.matrix, A, U, Vh, X.dim_w, X.dim_v)
    return B.copy() if out is None else out


def refine_a(X: BipartiteOperator, A, B) -> np.ndarray:
    """Polar ascent step in ``A``: never decreases the objective at fixed ``B``."""
    A = _check_factor(A, X.dim_v, "A")
    B = _check_factor(B, X.dim_v, "B")
    U, _, Vh = _svd(lift(A, X.dim_w) @ X.matrix @ lift(B, X.dim_w))
    out = _polar_a(X.matrix, B, U, Vh, X.dim_w, X.dim_v)
    return A.copy() if out is None else out


def _run(M, dw, dv, A0, cfg):
    """One seesaw run from ``(A0, 1)``; returns (value, A, B, sweeps, converged, trace)."""
    I = np.eye(dv, dtype=complex)
    A, B = A0, I
    U, s, Vh = _svd(_left(A, M, dw, dv))
    best = float(s.sum())
    trace = [best]
    sweeps = 0

    # partial-trace sweeps; stop on a decrease or a stall
    while sweeps < cfg.max_iter:
        sweeps += 1
        try:
            B_new = _ptrace_b(M, A, dw, dv)
            A_new = _ptrace_a(M, B_new, dw, dv)
        except DegenerateInputError:
            break
        U_new, s_new, Vh_new = _svd(_right(_left(A_new, M, dw, dv), B_new, dw, dv))
        value = float(s_new.sum())
        if value < best:
            break
        gain = value - best
        A, B, U, Vh, best = A_new, B_new, U_new, Vh_new, value
        trace.append(best)
        if gain <= cfg.rel_tol * best:
            break

    # polar ascent to convergence
    best, A, B, U, Vh, k, converged, values = _polar_phase(
        M, dw, dv, A, B, U, Vh, best, cfg, cfg.max_iter - sweeps)
    sweeps += k
    trace.extend(values)

    # Optima on a rank-deficient face are reached only sublinearly (the small
    # singular values of A, B decay like 1/k), so jump onto the face spanned by
    # the dominant singular directions and polish there.  Kept only if better.
    A_face, B_face = _truncate(A, dv), _truncate(B, dv)
    if (A_face is not None or B_face is not None) and sweeps < cfg.max_iter:
        A_face = A if A_face is None else A_face
        B_face = B if B_face is None else B_face
        U2, s2, Vh2 = _svd(_right(_left(A_face, M, dw, dv), B_face, dw, dv))
        start = float(s2.sum())
        value, A2, B2, _, _, k, conv2, values = _polar_phase(
            M, dw, dv, A_face, B_face, U2, Vh2, start, cfg, cfg.max_iter - sweeps)
        sweeps += k
        if value > best:
            best, A, B, converged = value, A2, B2, conv2
            floor = trace[-1]
            trace.extend(v for v in [start, *values] if v > floor)
    return best, A, B, sweeps, converged, trace


def _polar_phase(M, dw, dv, A, B, U, Vh, best, cfg, budget):
    """Polar ascent sweeps from ``(A, B)`` whose product has SVD ``U, Vh``."""
    converged = False
    values = []
    sweeps = 0
    while sweeps < budget:
        sweeps += 1
        B_new = _polar_b(M, A, U, Vh, dw, dv)
        if B_new is None:
            converged = True
            break
        U1, _, Vh1 = _svd(_right(_left(A, M, dw, dv), B_new, dw, dv))
        A_new = _polar_a(M, B_new, U1, Vh1, dw, dv)
        if A_new is None:
            converged = True
            break
        U_new, s_new, Vh_new = _svd(_right(_left(A_new, M, dw, dv), B_new, dw, dv))
        value = float(s_new.sum())
        if value < best:
            # rounding-level decrease at a stationary point
            converged = True
            break
        gain = value - best
        A, B, U, Vh, best = A_new, B_new, U_new, Vh_new, value
        values.append(best)
        if gain <= cfg.rel_tol * best:
            converged = True
            break
    return best, A, B, U, Vh, sweeps, converged, values


def _truncate(A, n, cut=_FACE_CUT):
    """``A`` with singular values below ``cut * sigma_1`` zeroed, or None if there are none."""
    U, s, Vh = np.linalg.svd(A)
    keep = s > cut * s[0]
    if keep.all():
        return None
    return _normalize((U * np.where(keep, s, 0.0)) @ Vh, n)


def _thread_count(cfg):
    if cfg.threads is not None:
        n = cfg.threads
    else:
        env = os.environ.get("DIANORM_THREADS")
        n = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(n, cfg.restarts))


def _initial_factors(dv, cfg):
    starts = [np.eye(dv, dtype=complex)]
    for child in np.random.SeedSequence(cfg.seed).spawn(cfg.restarts - 1):
        rng = np.random.default_rng(child)
        starts.append(_normalize(random_gaussian((dv, dv), rng), dv))
    return starts


def square_norm(X: BipartiteOperator, cfg: SeesawConfig = None) -> SquareNormResult:
    """Estimate the square norm of ``X`` by multi-restart alternating maximization.

    The first restart starts from ``A = B = 1``, the others from complex
    Gaussian ``A`` normalized to ``||A||_2 = sqrt(n)``.  Restarts may run on
    several threads; the result does not depend on the thread count.
    """
    cfg = cfg or SeesawConfig()
    M, dw, dv = X.matrix, X.dim_w, X.dim_v
    if not np.any(M):
        I = np.eye(dv, dtype=complex)
        return SquareNormResult(0.0, I, I.copy(), 0, True, [0.0])

    starts = _initial_factors(dv, cfg)
    threads = _thread_count(cfg)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(lambda A0: _run(M, dw, dv, A0, cfg), starts))
    else:
        runs = [_run(M, dw, dv, A0, cfg) for A0 in starts]

    # max value; ties go to the earliest restart
    best = max(range(len(runs)), key=lambda k: (runs[k][0], -k))
    value, A, B, _, converged, trace = runs[best]
    return SquareNormResult(
        value=value,
        a_opt=A,
        b_opt=B,
        iterations=sum(r[3] for r in runs),
        converged=converged,
        objective_trace=trace,
    )


def sampled_lower_bound(X: BipartiteOperator, cfg: SeesawConfig = None,
                        chunk: int = 2000) -> float:
    """Best objective over ``cfg.sample_count`` random feasible pairs (A, B).

    Both factors have i.i.d. complex Gaussian entries rescaled to
    ``||.||_2 = sqrt(n)``.  Deterministic for a fixed seed.
    """
    cfg = cfg or SeesawConfig()
    dw, dv = X.dim_w, X.dim_v
    N = dw * dv
    T = X.matrix.reshape(dw, dv, dw, dv)
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, 0x5A17]))
    best = 0.0
    remaining = cfg.sample_count
    while remaining > 0:
        k = min(chunk, remaining)
        remaining -= k
        A = random_gaussian((k, dv, dv), rng)
        B = random_gaussian((k, dv, dv), rng)
        A *= np.sqrt(dv) / np.linalg.norm(A, axis=(1, 2), keepdims=True)
        B *= np.sqrt(dv) / np.linalg.norm(B, axis=(1, 2), keepdims=True)
        Z = np.einsum("kab,wbxd,kdc->kwaxc", A, T, B, optimize=True).reshape(k, N, N)
        values = np.linalg.svd(Z, compute_uv=False).sum(axis=1)
        best = max(best, float(values.max()))
    return best


def anchor_values(X: BipartiteOperator) -> Tuple[float, float]:
    """Objective values at the two closed-form starting points.

    Returns ``(identity, partial_trace)``: the objective at ``A = B = 1``
    (which equals ``||X||_1``) and the better of ``(1, update_b(X, 1))`` and
    ``(update_a(X, 1), 1)``.  Both are lower bounds on the square norm.
    """
    I = np.eye(X.dim_v, dtype=complex)
    identity = objective(X, I, I)
    if not np.any(X.matrix):
        return identity, identity
    partial = max(objective(X, I, update_b(X, I)), objective(X, update_a(X, I), I))
    return identity, partial
