"""
Standard versus idealized C-NOT
===============================

The computational-basis C-NOT entangles a superposed control with the
target. The idealized universal C-NOT instead keeps the two qubits separable
and rotates the target by the control's angle.
"""

import numpy as np

from circlegate import analysis, gates, statekit

u = gates.standard_cnot()
for theta in (0.0, np.pi / 3, np.pi / 2, np.pi):
    state = statekit.tensor(statekit.make_circle_state(theta), statekit.basis_state(0))
    out = statekit.apply_operator(u, state, unitary=True)
    print(f"control angle {theta:5.3f}: reduced purity {analysis.separability_measure(out):.4f}")

# the basis branches |0>chi -> |0>chi, |1>chi -> |1>NOT chi, applied to a superposed control
theta0, chi0 = np.pi / 3, 0.8
state = statekit.tensor(statekit.make_circle_state(theta0), statekit.make_circle_state(chi0))
out = statekit.apply_operator(gates.controlled_exact_not(), state, unitary=True)
p0, p1 = statekit.measure_in_basis(statekit.partial_trace(out, keep=[1]), chi0)
print(f"target outcomes: {p0:.6f} {p1:.6f}  vs  cos^2, sin^2 = "
      f"{np.cos(theta0 / 2) ** 2:.6f} {np.sin(theta0 / 2) ** 2:.6f}")

# the idealized reference rotates chi(phi) to chi(phi + theta)
control, target = gates.ideal_cnot_reference(0.4, 0.7)
print("ideal target overlap with chi(1.1):",
      statekit.overlap(target, statekit.make_circle_state(1.1)))
