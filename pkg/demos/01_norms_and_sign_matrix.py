"""Schatten norms, the sign matrix, and when ||X||_1 = sqrt(n) ||X||_2.

Run:  python demos/01_norms_and_sign_matrix.py
"""
import numpy as np

from dianorm import frobenius_norm, nuclear_norm, sign_matrix, spectral_norm
from dianorm.certify import norm12_gap, norm12_saturation
from dianorm.linalg import matrix_sqrt_psd, random_gaussian, random_unitary

rng = np.random.default_rng(0)

# %% The three norms of a random 4x4 matrix
X = random_gaussian((4, 4), rng)
print("nuclear   ", nuclear_norm(X))
print("frobenius ", frobenius_norm(X))
print("spectral  ", spectral_norm(X))
# ||X||_inf <= ||X||_2 <= ||X||_1 <= sqrt(n) ||X||_2
print("sqrt(n)*frobenius", 2 * frobenius_norm(X))

# %% The sign matrix turns X into its left / right moduli
S = sign_matrix(X)
print("|X S - sqrt(X X^H)| =", np.linalg.norm(X @ S - matrix_sqrt_psd(X @ X.conj().T)))
print("|S X - sqrt(X^H X)| =", np.linalg.norm(S @ X - matrix_sqrt_psd(X.conj().T @ X)))
print("S unitary:", np.allclose(S.conj().T @ S, np.eye(4)))

# %% ||X||_1 = sqrt(n) ||X||_2 exactly for multiples of unitaries
U = (2 - 1j) * random_unitary(4, rng)
for name, M in [("scaled unitary", U), ("gaussian", X), ("diag(2,1)", np.diag([2.0, 1.0]))]:
    print(f"{name:15s} saturated={norm12_saturation(M)!s:5s}  gap={norm12_gap(M):.3e}")
