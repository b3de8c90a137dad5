"""Which operators reach the lower or the upper norm bound?

* lower bound ||X||_1: both W-partial traces of |X| are multiples of 1_V;
  Choi matrices of channels are the standard example.
* upper bound dim(V) ||X||_1: the partials are rank one; X = Y (x) psi phi^H.

Run:  python demos/03_saturation_certificates.py
"""
import numpy as np

from dianorm import (
    BipartiteOperator,
    SeesawConfig,
    certify_lower,
    certify_upper,
    gen_cptp_choi,
    gen_upper_saturator,
    nuclear_norm,
    square_norm,
)
from dianorm.linalg import random_gaussian

rng = np.random.default_rng(7)
cfg = SeesawConfig(restarts=4)


def unit(n):
    v = random_gaussian(n, rng)
    return v / np.linalg.norm(v)


def show(name, X):
    lo, up = certify_lower(X), certify_upper(X)
    ratio = square_norm(X, cfg).value / nuclear_norm(X.matrix)
    print(f"{name:22s} sq/||X||_1={ratio:.8f}  lower: {lo.verdict.value:15s} "
          f"(res {lo.lower_residual:.1e})  upper: {up.verdict.value:15s} (res {up.upper_residual:.1e})")
    return up


# %% A random channel L(C^3) -> L(C^2): lower bound is tight
show("CPTP Choi (2,3)", gen_cptp_choi(2, 3, kraus_count=3, seed=11))

# %% A product operator: upper bound dim(V) = 3 is tight, witnesses recovered
psi, phi = unit(3), unit(3)
up = show("Y (x) psi phi^H", gen_upper_saturator(random_gaussian((2, 2), rng), psi, phi))
print("   |<psi_found, psi>| =", abs(np.vdot(up.psi, psi)), " |<phi_found, phi>| =", abs(np.vdot(up.phi, phi)))

# %% A generic operator saturates neither bound
show("gaussian (2,3)", BipartiteOperator(random_gaussian((6, 6), rng), 2, 3))
