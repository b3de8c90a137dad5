"""When is ||AB||_1 = ||A||_inf ||B||_1?

Exactly when A, rescaled by its spectral norm, acts isometrically on the range
of B.  holder_saturation() evaluates the equality gap, the singular-vector
condition and the isometry residual side by side.

Run:  python demos/05_holder_saturation.py
"""
import numpy as np

from dianorm import holder_saturation, iterated_holder
from dianorm.linalg import random_gaussian, random_unitary

rng = np.random.default_rng(5)
n = 4

W = random_unitary(n, rng)
A = random_unitary(n, rng) @ np.diag([2.0, 2.0, 1.0, 0.5]) @ W.conj().T
B_inside = W[:, :2] @ random_gaussian((2, n), rng)   # ran(B) in A's top singular subspace
B_outside = W[:, 1:3] @ random_gaussian((2, n), rng)  # leaks into a smaller singular value

for name, B in [("range inside", B_inside), ("range leaks", B_outside)]:
    r = holder_saturation(A, B)
    print(f"{name:13s} gap={r.equality_gap:.3e} saturated={r.saturated!s:5s} "
          f"singular_check={r.singular_check!s:5s} isometry_residual={r.isometry_residual:.3e}")

# %% Iterated version: both outer factors must be tight on B's range and co-range
e1 = np.diag([1.0, 0.0])
print("iterated diag(2,1), e1, e1:", bool(iterated_holder(np.diag([2.0, 1.0]), e1, e1)))
print("iterated diag(2,1), 1, 1:  ", bool(iterated_holder(np.diag([2.0, 1.0]), np.eye(2), np.eye(2))))
