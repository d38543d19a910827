"""
Dense state-vector and density-matrix helpers for up to three qubits.

States are plain 1-D complex numpy arrays and density matrices / operators
are 2-D complex arrays. Multi-qubit registers are ordered
control (x) target (x) device, with the leftmost factor most significant.
"""

import numpy as np

TWO_PI = 2.0 * np.pi
MAX_QUBITS = 3

# tolerance ladder
EXACT_TOL = 1e-12
EIG_TOL = 1e-10
ACCUM_TOL = 1e-9


class StateError(ValueError):
    """Raised on malformed states, operators or subsystem selections."""


def canonical_angle(alpha):
    """Map any real angle into [0, 2*pi)."""
    a = float(np.mod(alpha, TWO_PI))
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    return 0.0 if a >= TWO_PI else a


def qubit_count(x):
    """Number of qubits of a state vector or square matrix."""
    dim = np.shape(x)[0]
    n = int(round(np.log2(dim))) if dim > 0 else 0
    if dim < 2 or 2 ** n != dim or n > MAX_QUBITS:
        raise StateError(f"dimension {dim} is not 2, 4 or 8")
    return n


def as_state(amplitudes, tol=EXACT_TOL):
    """Validate and freeze a pure state vector."""
    psi = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    qubit_count(psi)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > tol:
        raise StateError(f"state is not normalized (norm {norm!r})")
    psi.flags.writeable = False
    return psi


def make_circle_state(alpha):
    """Real-amplitude great-circle state cos(a/2)|0> + sin(a/2)|1>."""
    a = canonical_angle(alpha)
    return as_state([np.cos(a / 2), np.sin(a / 2)])


def basis_state(index, n_qubits=1):
    psi = np.zeros(2 ** n_qubits, dtype=np.complex128)
    psi[index] = 1.0
    return as_state(psi)


def tensor(*states):
    """Kronecker product of states, leftmost factor most significant."""
    if not states:
        raise StateError("tensor needs at least one state")
    total = sum(qubit_count(s) for s in states)
    if total > MAX_QUBITS:
        raise StateError(f"combined register of {total} qubits exceeds {MAX_QUBITS}")
    out = np.ones(1, dtype=np.complex128)
    for s in states:
        out = np.kron(out, s)
    return as_state(out, tol=ACCUM_TOL)


def is_unitary(op, tol=EXACT_TOL):
    op = np.asarray(op)
    return op.shape[0] == op.shape[1] and \
        np.abs(op.conj().T @ op - np.eye(op.shape[0])).max() < tol


def apply_operator(op, state, unitary=False):
    """Apply a square operator to a state vector.

    With ``unitary=True`` the result must already have unit norm (within
    1e-9) and is renormalized to remove round-off; otherwise the raw product
    is returned.
    """
    op = np.asarray(op, dtype=np.complex128)
    psi = np.asarray(state, dtype=np.complex128)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[1] != psi.shape[0]:
        raise StateError(f"operator of shape {op.shape} cannot act on state of length {psi.shape[0]}")
    out = op @ psi
    if unitary:
        norm = np.linalg.norm(out)
        if abs(norm - 1.0) > ACCUM_TOL:
            raise StateError(f"norm drift {abs(norm - 1.0):.3e} under a unitary operator")
        out = out / norm
    out.flags.writeable = False
    return out


def density(state):
    """|psi><psi| for a state vector; density matrices pass through."""
    x = np.asarray(state, dtype=np.complex128)
    if x.ndim == 1:
        return np.outer(x, x.conj())
    if x.ndim == 2 and x.shape[0] == x.shape[1]:
        return x
    raise StateError(f"expected a state vector or square matrix, got shape {x.shape}")


def partial_trace(state_or_dm, keep):
    """Reduced density matrix over the qubits listed in ``keep``.

    ``keep`` is a non-empty proper subset of qubit indices (0 = control).
    Kept qubits appear in ascending index order.
    """
    rho = density(state_or_dm)
    n = qubit_count(rho)
    keep = sorted(set(int(k) for k in np.atleast_1d(keep)))
    if not keep or len(keep) >= n or keep[0] < 0 or keep[-1] >= n:
        raise StateError(f"keep={keep} is not a non-empty proper subset of range({n})")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # trace highest indices first so the remaining axis numbers stay valid
    for q in sorted(traced, reverse=True):
        m = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + m)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def check_density(rho, tol=EXACT_TOL):
    """Raise StateError unless rho is Hermitian, unit trace and PSD."""
    rho = np.asarray(rho)
    if np.abs(rho - rho.conj().T).max() > tol:
        raise StateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise StateError(f"density matrix trace is {np.trace(rho).real!r}")
    if np.linalg.eigvalsh(rho).min() < -EIG_TOL:
        raise StateError("density matrix has a negative eigenvalue")
    return rho


def fidelity_pure(rho, target):
    """<target|rho|target>, clamped to [0, 1]."""
    rho = density(rho)
    t = np.asarray(target, dtype=np.complex128)
    if rho.shape[0] != t.shape[0]:
        raise StateError(f"density matrix of size {rho.shape[0]} vs target of length {t.shape[0]}")
    f = np.real(t.conj() @ rho @ t)
    return float(min(1.0, max(0.0, f)))


def overlap(a, b):
    """|<a|b>|, the phase-insensitive comparison used for state equality."""
    return float(abs(np.vdot(a, b)))


def purity(rho):
    rho = density(rho)
    return float(np.real(np.trace(rho @ rho)))


def measure_in_basis(state, basis_angle):
    """Outcome probabilities for the projective measurement {chi, NOT chi}.

    ``state`` is a single-qubit state vector or 2x2 density matrix; chi is
    the great-circle state at ``basis_angle``. Returns (p0, p1) where p0 is
    the probability of finding chi.
    """
    rho = density(state)
    if rho.shape != (2, 2):
        raise StateError("measure_in_basis needs a single-qubit input; reduce first")
    chi = make_circle_state(basis_angle)
    chi_perp = np.array([-chi[1], chi[0]])
    p0 = fidelity_pure(rho, chi)
    p1 = fidelity_pure(rho, chi_perp)
    return p0, p1
