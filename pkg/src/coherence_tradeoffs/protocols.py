"""Dense-coding capacities and the three-qubit teleportation circuit."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .channels import encoding_unitary, is_unital, tensor_channel
from .exceptions import CovarianceViolation, DimensionMismatch, DomainError, NotUnital
from .linalg import partial_trace
from .states import DensityMatrix, as_density, binary_entropy, bloch_pure_state, von_neumann_entropy

COVARIANCE_TOL = 1e-8
QUADRATURE_NODES = 32
FIDELITY_TOL = 1e-12


@dataclass(frozen=True)
class CapacityBreakdown:
    """Capacity as ``entropy_avg_state - entropy_signal``, all in bits."""

    capacity: float
    entropy_avg_state: float
    entropy_signal: float
    log2_d: float


def _bipartite(rho):
    rho = as_density(rho)
    return rho, rho.bipartite_dims()


def _joint_channel(channels, dims):
    if channels is None:
        return None
    lambda_a, lambda_b = channels
    if (lambda_a.dim, lambda_b.dim) != tuple(dims):
        raise DimensionMismatch(
            f"channel dimensions {(lambda_a.dim, lambda_b.dim)} vs subsystem dims {tuple(dims)}"
        )
    return tensor_channel(lambda_a, lambda_b)


def _signal_states(rho, channels=None):
    """All d_A^2 encoded states ``Lambda[(U_mn (x) I) rho (U_mn^dag (x) I)]`` as raw matrices."""
    rho, (da, db) = _bipartite(rho)
    joint = _joint_channel(channels, (da, db))
    eye_b = np.eye(db)
    out = []
    for m in range(da):
        for n in range(da):
            u = np.kron(encoding_unitary(m, n, da), eye_b)
            encoded = u @ rho.mat @ u.conj().T
            out.append(encoded if joint is None else joint.apply_matrix(encoded))
    return out


def ensemble_average_state(rho, channels=None):
    """Average of the equiprobable encoded ensemble, summed by brute force.

    ``channels`` is an optional ``(Lambda_A, Lambda_B)`` pair applied after
    encoding.
    """
    rho, dims = _bipartite(rho)
    signals = _signal_states(rho, channels)
    return DensityMatrix(sum(signals) / len(signals), dims)


def dense_coding_capacity(rho):
    """``log2 d + S(rho_B) - S(rho_AB)`` for encodings on subsystem A."""
    rho, (da, db) = _bipartite(rho)
    log2_d = float(np.log2(da))
    s_b = von_neumann_entropy(partial_trace(rho.mat, (da, db), keep="B"))
    s_ab = von_neumann_entropy(rho)
    return CapacityBreakdown(log2_d + s_b - s_ab, log2_d + s_b, s_ab, log2_d)


def verify_entropy_covariance(rho, channels):
    """Spread (max - min) of the output entropy over all d^2 encodings."""
    entropies = [von_neumann_entropy(s) for s in _signal_states(rho, channels)]
    return float(max(entropies) - min(entropies))


def dense_coding_capacity_noisy(rho, lambda_a, lambda_b, covariance_tol=COVARIANCE_TOL):
    """Capacity ``log2 d + S(Lambda_B(rho_B)) - S(Lambda_AB(rho_AB))`` over unital noise.

    Raises NotUnital if either channel is not unital and CovarianceViolation
    if the output entropy depends on the encoding by more than
    ``covariance_tol`` bits; the closed form is only the optimum otherwise.
    """
    rho, (da, db) = _bipartite(rho)
    for side, ch in (("A", lambda_a), ("B", lambda_b)):
        if not is_unital(ch):
            raise NotUnital(f"channel on {side} ({ch.label}) is not unital")
    spread = verify_entropy_covariance(rho, (lambda_a, lambda_b))
    if spread > covariance_tol:
        raise CovarianceViolation(f"output entropy spread {spread:.3e} bits exceeds {covariance_tol:.0e}")
    joint = _joint_channel((lambda_a, lambda_b), (da, db))
    out = joint.apply_matrix(rho.mat)
    rho_b = lambda_b.apply_matrix(partial_trace(rho.mat, (da, db), keep="B"))
    log2_d = float(np.log2(da))
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(out)
    return CapacityBreakdown(log2_d + s_b - s_ab, log2_d + s_b, s_ab, log2_d)


def holevo_from_ensemble(rho, channels=None):
    """Holevo quantity of the equiprobable encoded ensemble, by brute force."""
    signals = _signal_states(rho, channels)
    average = sum(signals) / len(signals)
    mean_entropy = sum(von_neumann_entropy(s) for s in signals) / len(signals)
    return von_neumann_entropy(average) - mean_entropy


# --- teleportation -----------------------------------------------------------

_I2 = np.eye(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.diag([1.0, -1.0]).astype(complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_P0 = np.diag([1.0, 0.0])
_P1 = np.diag([0.0, 1.0])


def _on_wires(*ops):
    """Kronecker product over the wires (a, A, B), ``a`` most significant."""
    out = np.eye(1)
    for op in ops:
        out = np.kron(out, op)
    return out


@lru_cache(maxsize=1)
def teleportation_unitary():
    """C^Z_{aB} C^X_{AB} H_a C^X_{aA}; the rightmost gate acts first."""
    cx_a_to_A = _on_wires(_P0, _I2, _I2) + _on_wires(_P1, _X, _I2)
    h_a = _on_wires(_H, _I2, _I2)
    cx_A_to_B = _on_wires(_I2, _P0, _I2) + _on_wires(_I2, _P1, _X)
    cz_a_to_B = _on_wires(_P0, _I2, _I2) + _on_wires(_P1, _I2, _Z)
    u = cz_a_to_B @ cx_A_to_B @ h_a @ cx_a_to_A
    u.setflags(write=False)
    return u


def _two_qubit_resource(resource):
    resource = as_density(resource)
    if resource.dim != 4:
        raise DimensionMismatch(f"two-qubit resource required, got dimension {resource.dim}")
    return resource


def _run_circuit(input_op, resource_mat):
    u = teleportation_unitary()
    full = u @ np.kron(input_op, resource_mat) @ u.conj().T
    return np.einsum("xyixyj->ij", full.reshape(2, 2, 2, 2, 2, 2))


def teleport_output(resource, alpha, beta):
    """State on wire B after the circuit, with qubits a and A traced out."""
    resource = _two_qubit_resource(resource)
    psi = bloch_pure_state(alpha, beta).amplitudes
    return DensityMatrix(_run_circuit(np.outer(psi, psi.conj()), resource.mat))


def teleportation_fidelity_point(resource, alpha, beta):
    psi = bloch_pure_state(alpha, beta).amplitudes
    out = teleport_output(resource, alpha, beta)
    return float(np.real(psi.conj() @ out.mat @ psi))


def teleportation_transfer(resource):
    """Outputs ``T[i, j] = circuit(|i><j|)``, shape (2, 2, 2, 2).

    The circuit is linear in the input, so ``rho_out = sum_ij psi_i psi_j* T[i, j]``.
    """
    resource = _two_qubit_resource(resource)
    t = np.empty((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2))
            e[i, j] = 1.0
            t[i, j] = _run_circuit(e, resource.mat)
    return t


@lru_cache(maxsize=8)
def sphere_quadrature(nodes=QUADRATURE_NODES):
    """Nodes ``(alpha, beta)`` and weights for ``(1/4pi) * integral over the sphere``.

    Gauss-Legendre in alpha over (0, pi) with the sin(alpha) Jacobian in the
    weights, uniform trapezoid in beta over (0, 2pi).
    """
    x, w = leggauss(nodes)
    alpha = 0.5 * np.pi * (x + 1.0)
    w_alpha = 0.5 * np.pi * w * np.sin(alpha)
    beta = 2.0 * np.pi * np.arange(nodes) / nodes
    w_beta = np.full(nodes, 2.0 * np.pi / nodes)
    aa, bb = np.meshgrid(alpha, beta, indexing="ij")
    weights = np.outer(w_alpha, w_beta) / (4.0 * np.pi)
    return aa.ravel(), bb.ravel(), weights.ravel()


@lru_cache(maxsize=8)
def _quadrature_moments(nodes):
    # sum_n w_n psi_i psi_j^* psi_k^* psi_l, so F = sum_ijkl T[i,j,k,l] M[i,j,k,l]
    alpha, beta, weights = sphere_quadrature(nodes)
    psi = np.stack(
        [np.cos(alpha / 2) * np.exp(0.5j * beta), np.sin(alpha / 2) * np.exp(-0.5j * beta)],
        axis=1,
    )
    return np.einsum("n,ni,nj,nk,nl->ijkl", weights, psi, psi.conj(), psi.conj(), psi)


def average_fidelity(resource, nodes=QUADRATURE_NODES):
    """Sphere-averaged teleportation fidelity of the circuit, by quadrature.

    The point fidelity is a quartic form in the input amplitudes, so the
    quadrature sum is contracted once into a 2x2x2x2 moment tensor.
    """
    t = teleportation_transfer(resource)
    return float(np.real(np.sum(t * _quadrature_moments(nodes))))


def fidelity_closed_form(theta, p):
    """Average fidelity of the depolarized cos/sin Bell-superposition resource."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise parameter p={p!r} outside [0, 1]")
    return (4.0 + (-2.0 + p) * p + 2.0 * (1.0 - p) ** 2 * np.cos(2.0 * theta)) / 6.0


def fidelity_bound_entropy(f):
    """``h((1 + sqrt(1 - (3f - 2)^2)) / 2)`` for ``f`` in [2/3, 1]."""
    if f < 2.0 / 3.0 - FIDELITY_TOL or f > 1.0 + FIDELITY_TOL:
        raise DomainError(f"fidelity {f!r} outside [2/3, 1]")
    x = min(max(3.0 * f - 2.0, 0.0), 1.0)
    return binary_entropy((1.0 + np.sqrt(1.0 - x * x)) / 2.0)


def is_useful_for_teleportation(f):
    """True when ``f >= 2/3`` up to rounding."""
    return f >= 2.0 / 3.0 - FIDELITY_TOL
