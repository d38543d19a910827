"""
Gates and reference maps for great-circle qubits.

Isometries are 8x4 complex arrays. Column ``2*m + n`` is the image of the
input |m>_c|n>_t and rows index |m>_c|n>_t|q>_d, so the device qubit is the
least significant output factor. The initial device state is absorbed into
the isometry.
"""

from dataclasses import dataclass

import numpy as np

from . import statekit
from .statekit import StateError, make_circle_state

SQRT_EIGHTH = np.sqrt(1.0 / 8.0)
OPTIMAL_FIDELITY = 0.5 + SQRT_EIGHTH

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
NOT = np.array([[0, -1], [1, 0]], dtype=np.complex128)  # -i * sigma_y
for _m in (SIGMA_X, NOT):
    _m.flags.writeable = False


@dataclass(frozen=True)
class OptimalGateCoefficients:
    """Amplitudes of the optimal gate's branch expansions."""

    a: float = 0.5 + SQRT_EIGHTH
    b: float = SQRT_EIGHTH
    c: float = 0.5 - SQRT_EIGHTH

    @property
    def fidelity(self):
        # weight of the branches that leave the judged qubit in its ideal state
        return self.a ** 2 + self.b ** 2


def exact_not():
    return NOT


def orthogonal(chi):
    """NOT applied to a great-circle state; fixes the sign of chi-perp."""
    return NOT @ np.asarray(chi, dtype=np.complex128)


def universal_not_channel(psi):
    """Single-copy universal NOT output (2/3)|psi_perp><psi_perp| + (1/3)|psi><psi|."""
    psi = statekit.as_state(psi)
    if psi.shape != (2,):
        raise StateError("universal NOT acts on a single qubit")
    perp = orthogonal(psi)
    rho = (2.0 / 3.0) * np.outer(perp, perp.conj()) + (1.0 / 3.0) * np.outer(psi, psi.conj())
    return rho


def ensemble_unot_fidelity(n):
    """Fidelity (n+1)/(n+2) of the optimal universal NOT on n identical copies."""
    if int(n) != n or n < 1:
        raise ValueError(f"need a positive number of copies, got {n!r}")
    n = int(n)
    return (n + 1) / (n + 2)


def standard_cnot():
    p0 = np.diag([1, 0]).astype(np.complex128)
    p1 = np.diag([0, 1]).astype(np.complex128)
    return np.kron(p0, np.eye(2)) + np.kron(p1, SIGMA_X)


def controlled_exact_not():
    """|0><0| (x) I + |1><1| (x) NOT: the basis branches a universal C-NOT must reproduce."""
    p0 = np.diag([1, 0]).astype(np.complex128)
    p1 = np.diag([0, 1]).astype(np.complex128)
    return np.kron(p0, np.eye(2)) + np.kron(p1, NOT)


def control_rotation(theta):
    """Target rotation applied by an ideal universal C-NOT with control angle theta."""
    t = statekit.canonical_angle(theta)
    c, s = np.cos(t / 2), np.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def ideal_cnot_reference(theta, phi):
    """Ideal (unreachable) outputs for control chi(theta) and target chi(phi).

    The control is returned unchanged and the target becomes
    cos(theta/2) chi(phi) + sin(theta/2) NOT chi(phi).
    """
    control = make_circle_state(theta)
    chi = make_circle_state(phi)
    t = statekit.canonical_angle(theta)
    target = np.cos(t / 2) * chi + np.sin(t / 2) * orthogonal(chi)
    return control, statekit.as_state(target)


def _ket(m, n_vec, q):
    e = np.eye(2, dtype=np.complex128)
    return np.kron(np.kron(e[m], n_vec), e[q])


def optimal_branches(chi, coeffs=None):
    """Images of |0>|chi> and |1>|chi> under the optimal gate, evaluated directly."""
    k = coeffs or OptimalGateCoefficients()
    chi = np.asarray(chi, dtype=np.complex128)
    perp = orthogonal(chi)
    zero = (k.a * _ket(0, chi, 0)
            + k.b * (_ket(0, perp, 1) + _ket(1, chi, 1))
            + k.c * _ket(1, perp, 0))
    one = (k.a * _ket(1, perp, 1)
           + k.b * (_ket(0, perp, 0) + _ket(1, chi, 0))
           + k.c * _ket(0, chi, 1))
    return zero, one


def optimal_cnot_isometry(coeffs=None):
    """8x4 matrix of the optimal universal C-NOT, built on the computational target basis.

    The branch map is linear in the target state, so this matrix reproduces
    the branch formulas for every great-circle target. Its Gram matrix is the
    identity on the diagonal and on the (0|chi, 1|chi) pairs, but carries
    +-1/2 between |0>|0> and |1>|1> and between |0>|1> and |1>|0>; see
    ``analysis.unitarity_residual``.
    """
    e = np.eye(2, dtype=np.complex128)
    cols = [None] * 4
    for n in range(2):
        cols[n], cols[2 + n] = optimal_branches(e[n], coeffs)
    v = np.column_stack(cols)
    v.flags.writeable = False
    return v


def identity_embedding():
    """The do-nothing gate |m>|n> -> |m>|n>|0>; a convenient non-optimal baseline."""
    v = np.zeros((8, 4), dtype=np.complex128)
    v[np.arange(4) * 2, np.arange(4)] = 1.0
    return v


def check_isometry_shape(v):
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (8, 4):
        raise StateError(f"expected an 8x4 matrix, got {v.shape}")
    return v


def apply_gate(v, control, target):
    """Three-qubit output V (chi(control) (x) chi(target))."""
    v = check_isometry_shape(v)
    x = statekit.tensor(make_circle_state(control), make_circle_state(target))
    out = v @ x
    norm = np.linalg.norm(out)
    if norm == 0 or not np.isfinite(norm):
        raise StateError("gate annihilated the input")
    return out / norm
