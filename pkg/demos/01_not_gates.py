"""
NOT gates on the great circle
=============================

The operator -i sigma_y flips every real-amplitude qubit state to an
orthogonal one. For arbitrary Bloch-sphere states only an approximate
(universal) NOT exists, with fidelity 2/3 for a single copy.
"""

import numpy as np

from circlegate import gates, statekit

# every state on the x-z great circle is sent to an orthogonal state
angles = np.linspace(0, 2 * np.pi, 12, endpoint=False)
for a in angles:
    psi = statekit.make_circle_state(a)
    print(f"alpha={a:5.3f}  <psi|NOT|psi> = {np.vdot(psi, gates.exact_not() @ psi).real:+.1e}")

# a state with a complex phase is not
psi = np.array([np.cos(0.4), 1j * np.sin(0.4)])
print("off-circle overlap:", abs(np.vdot(psi, gates.exact_not() @ psi)))

# the universal NOT channel: output fidelity with the flipped state
psi = statekit.make_circle_state(1.1)
rho = gates.universal_not_channel(psi)
print("F_NOT =", statekit.fidelity_pure(rho, gates.orthogonal(psi)))

# more copies help: (N + 1)/(N + 2)
for n in (1, 2, 5, 20, 1000):
    print(f"N={n:5d}  F = {gates.ensemble_unot_fidelity(n):.6f}")
