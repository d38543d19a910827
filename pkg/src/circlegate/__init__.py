"""Universal C-NOT gate simulation and optimization for great-circle qubits."""

from . import analysis, gates, optimizer, statekit
from .analysis import AngleGrid, FidelityReport
from .gates import OPTIMAL_FIDELITY, OptimalGateCoefficients
from .optimizer import OptimizationResult, OptimizerConfig

__all__ = [
    "analysis",
    "gates",
    "optimizer",
    "statekit",
    "AngleGrid",
    "FidelityReport",
    "OPTIMAL_FIDELITY",
    "OptimalGateCoefficients",
    "OptimizationResult",
    "OptimizerConfig",
]
