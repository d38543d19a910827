"""
Searching over isometries
=========================

Gradient ascent on the grid-averaged fidelity over 8x4 isometries (control,
target and one device qubit), from several random starts.
"""

import logging

from circlegate import analysis, gates, optimizer

logging.basicConfig(level=logging.DEBUG, format="%(message)s")

cfg = optimizer.OptimizerConfig(grid_size=16, restarts=4, rng_seed=42)
result = optimizer.optimize(cfg)
print("per-restart objectives:", [f"{f:.8f}" for f in result.per_restart_objectives])
print("best:", result.best_objective, "iterations:", result.iterations_used)
print("unitarity residual of the best:", analysis.unitarity_residual(result.best_isometry))

# compare by fidelity profile, which ignores device-side gauge freedom
grid = analysis.AngleGrid(16)
print("profile distance to the optimal gate:",
      optimizer.profile_distance(result.best_isometry, gates.optimal_cnot_isometry(), grid))
fc, ft = analysis.gate_fidelities(result.best_isometry, 1.0, 2.0)
print(f"found gate at (1, 2): F_c = {fc:.6f}, F_t = {ft:.6f}")
