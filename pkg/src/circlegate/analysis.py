"""
Fidelity bookkeeping for candidate C-NOT gates on great-circle inputs.

Two independent routes compute the same numbers:

* ``gate_fidelities`` simulates one input pair through the full three-qubit
  register, reduces it and scores it against ``ideal_cnot_reference``.
* ``average_fidelity`` contracts the gate with a grid-averaged kernel, so the
  mean over the whole grid costs one 32x32 quadratic form.
"""

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gates, statekit
from .statekit import StateError, TWO_PI


@dataclass(frozen=True)
class AngleGrid:
    """K uniformly spaced great-circle angles, optionally shifted by ``offset``."""

    size: int = 64
    offset: float = 0.0

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.size!r}")

    @property
    def points(self):
        return np.mod(self.offset + TWO_PI * np.arange(self.size) / self.size, TWO_PI)

    def pairs(self):
        """All (theta, phi) pairs in row-major order, theta outer."""
        p = self.points
        return [(t, f) for t in p for f in p]


def gate_fidelities(v, theta, phi):
    """(F_c, F_t) of gate ``v`` for control chi(theta) and target chi(phi)."""
    out = gates.apply_gate(v, theta, phi)
    ideal_c, ideal_t = gates.ideal_cnot_reference(theta, phi)
    rho_c = statekit.partial_trace(out, keep=[0])
    rho_t = statekit.partial_trace(out, keep=[1])
    return statekit.fidelity_pure(rho_c, ideal_c), statekit.fidelity_pure(rho_t, ideal_t)


def _projector(x):
    return np.outer(x, x.conj())


@lru_cache(maxsize=32)
def _kernel(size, offset):
    grid = AngleGrid(size, offset)
    pts = grid.points
    chis = np.stack([np.cos(pts / 2), np.sin(pts / 2)], axis=1).astype(np.complex128)
    eye2 = np.eye(2)
    k = np.zeros((32, 32), dtype=np.complex128)
    for i, th in enumerate(pts):
        ctrl = _projector(chis[i])
        # the ideal target for every phi at this theta is U(theta) chi(phi)
        ideal_t = chis @ gates.control_rotation(th).T
        # sum over phi of |ideal_t><ideal_t| (x) X^T, X = |in><in|
        inputs = np.einsum("a,fb->fab", chis[i], chis).reshape(size, 4)
        m_ctrl = np.kron(np.kron(ctrl, eye2), eye2)
        x_sum = np.einsum("fi,fj->ij", inputs, inputs.conj())
        k += np.kron(m_ctrl, x_sum.T)
        for f in range(size):
            m_t = np.kron(np.kron(eye2, _projector(ideal_t[f])), eye2)
            k += np.kron(m_t, np.outer(inputs[f].conj(), inputs[f]))
    k /= 2.0 * size * size
    k = 0.5 * (k + k.conj().T)
    k.flags.writeable = False
    return k


def fidelity_kernel(grid):
    """Hermitian 32x32 matrix H with average_fidelity(V) = vec(V)^H H vec(V).

    ``vec`` is row-major flattening of the 8x4 matrix.
    """
    return _kernel(int(grid.size), float(grid.offset))


def average_fidelity(v, grid):
    """Uniform mean of (F_c + F_t)/2 over every (theta, phi) pair of ``grid``."""
    v = gates.check_isometry_shape(v)
    x = v.reshape(-1)
    return float(np.real(x.conj() @ fidelity_kernel(grid) @ x))


def unitarity_residual(v):
    """max |V^H V - I| over all entries."""
    v = np.asarray(v, dtype=np.complex128)
    return float(np.abs(v.conj().T @ v - np.eye(v.shape[1])).max())


def branch_condition_residual(v, grid):
    """Worst violation of the per-target unitarity conditions over the grid.

    For each target chi the images of |0>|chi> and |1>|chi> must be unit
    vectors and mutually orthogonal. These conditions only pair inputs with
    the same target, so they can hold while ``unitarity_residual`` does not.
    """
    v = gates.check_isometry_shape(v)
    worst = 0.0
    for phi in grid.points:
        chi = statekit.make_circle_state(phi)
        b0 = v @ np.kron([1, 0], chi)
        b1 = v @ np.kron([0, 1], chi)
        worst = max(worst,
                    abs(np.vdot(b0, b0) - 1.0),
                    abs(np.vdot(b1, b1) - 1.0),
                    abs(np.vdot(b0, b1)))
    return float(worst)


def separability_measure(two_qubit):
    """Purity of the reduced control state: 1 for product states, 1/2 for maximally entangled."""
    psi = np.asarray(two_qubit)
    if psi.ndim != 1 or psi.shape[0] != 4:
        raise StateError("separability_measure needs a two-qubit state vector")
    return statekit.purity(statekit.partial_trace(psi, keep=[0]))


@dataclass
class FidelityReport:
    rows: list = field(default_factory=list)
    mean_Fc: float = 0.0
    mean_Ft: float = 0.0
    mean_F: float = 0.0
    min_F: float = 0.0
    max_F: float = 0.0
    grid_size: int = 0

    @property
    def spread(self):
        return self.max_F - self.min_F

    def summary(self):
        return {
            "mean_Fc": self.mean_Fc,
            "mean_Ft": self.mean_Ft,
            "mean_F": self.mean_F,
            "min_F": self.min_F,
            "max_F": self.max_F,
            "grid_size": self.grid_size,
        }

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta", "phi", "F_c", "F_t"])
        for row in self.rows:
            w.writerow([f"{x:.12g}" for x in row])
        return buf.getvalue()

    def to_json(self):
        return json.dumps(self.summary(), indent=2)


def fidelity_sweep(v, grid):
    """Tabulate gate_fidelities over the grid.

    min_F / max_F range over every individual F_c and F_t value, so
    ``max_F - min_F`` bounds how far either fidelity moves across the grid.
    """
    rows = []
    for theta, phi in grid.pairs():
        fc, ft = gate_fidelities(v, theta, phi)
        rows.append((float(theta), float(phi), fc, ft))
    arr = np.array(rows)
    fc, ft = arr[:, 2], arr[:, 3]
    both = arr[:, 2:]
    return FidelityReport(
        rows=rows,
        mean_Fc=float(fc.mean()),
        mean_Ft=float(ft.mean()),
        mean_F=float(both.mean()),
        min_F=float(both.min()),
        max_F=float(both.max()),
        grid_size=int(grid.size),
    )


def qcm_analogy_check(v, grid):
    """Largest deviation of the control's self-fidelity from 1/2 + sqrt(1/8).

    The reduced control channel of the optimal gate should act like one
    output of the equatorial cloner, so its fidelity with the control input
    sits at the cloner value for every input pair.
    """
    worst = 0.0
    for theta, phi in grid.pairs():
        out = gates.apply_gate(v, theta, phi)
        rho_c = statekit.partial_trace(out, keep=[0])
        f = statekit.fidelity_pure(rho_c, statekit.make_circle_state(theta))
        worst = max(worst, abs(f - gates.OPTIMAL_FIDELITY))
    return worst
