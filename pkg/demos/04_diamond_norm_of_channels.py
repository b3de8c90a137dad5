"""Diamond norms of channels and of channel differences.

The diamond norm of a map equals the square norm of its Choi matrix divided
by the input dimension.  Every channel has diamond norm 1; the norm of a
difference of channels is a worst-case distinguishability measure.

Run:  python demos/04_diamond_norm_of_channels.py
"""
import numpy as np

from dianorm import BipartiteOperator, LinearMapRep, SeesawConfig, choi_from_kraus, choi_from_map, diamond_norm

cfg = SeesawConfig(restarts=4)


def amplitude_damping(gamma):
    return [np.array([[1, 0], [0, np.sqrt(1 - gamma)]]), np.array([[0, np.sqrt(gamma)], [0, 0]])]


identity = choi_from_kraus([np.eye(2)])
depolarizing = choi_from_map(lambda rho: np.trace(rho) * np.eye(2) / 2, in_dim=2)
print("||identity||_diamond     =", diamond_norm(identity, cfg))
print("||depolarizing||_diamond =", diamond_norm(depolarizing, cfg))

# %% Distance between the identity and amplitude damping as gamma grows
for gamma in [0.0, 0.1, 0.5, 0.9, 1.0]:
    J = identity.choi.matrix - choi_from_kraus(amplitude_damping(gamma)).choi.matrix
    d = diamond_norm(LinearMapRep(BipartiteOperator(J, 2, 2)), cfg)
    print(f"gamma={gamma:.1f}  ||id - AD||_diamond = {d:.8f}")

# %% Unitary rotations: the distance is twice the half-width of the spectral arc
theta = 0.3
U = np.diag([1, np.exp(1j * theta)])
J = identity.choi.matrix - choi_from_kraus([U]).choi.matrix
print("||id - U||_diamond =", diamond_norm(LinearMapRep(BipartiteOperator(J, 2, 2)), cfg),
      " expected", 2 * np.sin(theta / 2))
