"""
The optimal universal C-NOT
===========================

Both qubits leave the optimal gate with fidelity 1/2 + sqrt(1/8), whatever
the two great-circle inputs are. The reduced control channel behaves like one
output of the equatorial cloner.
"""

import numpy as np

from circlegate import analysis, gates

v = gates.optimal_cnot_isometry()
k = gates.OptimalGateCoefficients()
print(f"a={k.a:.10f} b={k.b:.10f} c={k.c:.10f}  a^2 + b^2 = {k.fidelity:.10f}")

report = analysis.fidelity_sweep(v, analysis.AngleGrid(32))
print(f"mean F = {report.mean_F:.12f}, spread = {report.spread:.1e}")
print("QCM analogy residual:", analysis.qcm_analogy_check(v, analysis.AngleGrid(32)))

# the per-target conditions hold...
print("branch conditions:", analysis.branch_condition_residual(v, analysis.AngleGrid(90)))
# ...but the four-column Gram matrix is not the identity
print(np.round((v.conj().T @ v).real, 3))
print("norm^2 of the image of (|00> - |11>)/sqrt 2:",
      np.linalg.norm(v @ (np.array([1, 0, 0, -1]) / np.sqrt(2))) ** 2)

# plot-ready data: the first few rows of the sweep
print(report.to_csv().splitlines()[:4])
