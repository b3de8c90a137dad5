"""Operators on W (x) V: Kronecker products, partial trace over W, Choi matrices.

Conventions used throughout the package:

* basis of W (x) V ordered W-major, i.e. row index ``w * dim_v + v``;
* the Choi matrix of ``M: L(V) -> L(W)`` is unnormalized,
  ``J(M) = sum_ij M(|i><j|) (x) |i><j|``, so the output factor W comes first.
"""
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .exceptions import DimensionError
from .linalg import as_matrix


@dataclass(frozen=True)
class BipartiteOperator:
    """Square matrix on W (x) V together with its factor dimensions."""

    matrix: np.ndarray
    dim_w: int
    dim_v: int

    def __post_init__(self):
        if int(self.dim_w) < 1 or int(self.dim_v) < 1:
            raise DimensionError("factor dimensions must be positive")
        M = as_matrix(self.matrix)
        side = self.dim_w * self.dim_v
        if M.shape != (side, side):
            raise DimensionError(
                f"matrix of shape {M.shape} does not match dim_w * dim_v = {side}")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "dim_w", int(self.dim_w))
        object.__setattr__(self, "dim_v", int(self.dim_v))

    @property
    def shape(self):
        return self.matrix.shape

    def with_matrix(self, matrix) -> "BipartiteOperator":
        return BipartiteOperator(matrix, self.dim_w, self.dim_v)


@dataclass(frozen=True)
class LinearMapRep:
    """A linear map ``L(V) -> L(W)`` stored through its Choi matrix on W (x) V."""

    choi: BipartiteOperator

    @property
    def in_dim(self) -> int:
        return self.choi.dim_v

    @property
    def out_dim(self) -> int:
        return self.choi.dim_w


def kron(A, B) -> np.ndarray:
    """Kronecker product; ``(A (x) B)[i*p + k, j*q + l] = A[i, j] * B[k, l]``."""
    return np.kron(as_matrix(A), as_matrix(B))


def lift(A, dim_w: int) -> np.ndarray:
    """``1_W (x) A``."""
    return np.kron(np.eye(dim_w), as_matrix(A))


def partial_trace_w(X: BipartiteOperator) -> np.ndarray:
    """Trace out the W factor: ``Tr_W[A (x) B] = Tr[A] B``."""
    T = X.matrix.reshape(X.dim_w, X.dim_v, X.dim_w, X.dim_v)
    return np.einsum("iaib->ab", T)


def _partial_trace_v(M, dim_w, dim_v):
    return np.einsum("aibi->ab", M.reshape(dim_w, dim_v, dim_w, dim_v))


def choi_from_kraus(kraus: Sequence) -> LinearMapRep:
    """Choi matrix of ``rho -> sum_k K_k rho K_k^H``; each ``K_k`` is ``out_dim x in_dim``."""
    ops = [as_matrix(K) for K in kraus]
    if not ops:
        raise DimensionError("need at least one Kraus operator")
    out_dim, in_dim = ops[0].shape
    if any(K.shape != (out_dim, in_dim) for K in ops):
        raise DimensionError("Kraus operators have inconsistent shapes")
    vecs = np.stack([K.reshape(-1) for K in ops])
    J = vecs.T @ vecs.conj()
    return LinearMapRep(BipartiteOperator(J, out_dim, in_dim))


def choi_from_map(channel: Union[Callable, Sequence], in_dim: int = None,
                  out_dim: int = None) -> LinearMapRep:
    """Choi representation of a linear map.

    ``channel`` is either a sequence of Kraus operators or a callable taking an
    ``in_dim x in_dim`` matrix to an ``out_dim x out_dim`` one.  For a callable
    ``in_dim`` is required; ``out_dim`` is inferred when omitted.
    """
    if not callable(channel):
        rep = choi_from_kraus(channel)
        if in_dim is not None and rep.in_dim != in_dim:
            raise DimensionError(f"Kraus input dimension {rep.in_dim} != {in_dim}")
        if out_dim is not None and rep.out_dim != out_dim:
            raise DimensionError(f"Kraus output dimension {rep.out_dim} != {out_dim}")
        return rep
    if in_dim is None:
        raise DimensionError("in_dim is required when the map is given as a callable")
    blocks = {}
    for i in range(in_dim):
        for j in range(in_dim):
            E = np.zeros((in_dim, in_dim), dtype=complex)
            E[i, j] = 1.0
            image = as_matrix(channel(E))
            if out_dim is None:
                out_dim = image.shape[0]
            if image.shape != (out_dim, out_dim):
                raise DimensionError(
                    f"map output has shape {image.shape}, expected {(out_dim, out_dim)}")
            blocks[i, j] = image
    J = np.zeros((out_dim * in_dim,) * 2, dtype=complex)
    for (i, j), image in blocks.items():
        J[i::in_dim, j::in_dim] = image
    return LinearMapRep(BipartiteOperator(J, out_dim, in_dim))


def map_from_choi(rep: LinearMapRep) -> Callable[[np.ndarray], np.ndarray]:
    """Return the action ``rho -> Tr_V[J (1_W (x) rho^T)]`` of the represented map."""
    J = rep.choi.matrix
    dw, dv = rep.out_dim, rep.in_dim

    def apply(rho):
        R = as_matrix(rho)
        if R.shape != (dv, dv):
            raise DimensionError(f"input of shape {R.shape}, expected {(dv, dv)}")
        return _partial_trace_v(J @ lift(R.T, dw), dw, dv)

    return apply


def diamond_norm(m: LinearMapRep, cfg=None) -> float:
    """Diamond norm of the map, equal to the square norm of its Choi matrix over ``in_dim``."""
    from .seesaw import square_norm

    return square_norm(m.choi, cfg).value / m.in_dim
