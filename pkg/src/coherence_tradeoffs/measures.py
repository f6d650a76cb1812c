"""Coherence and two-qubit entanglement quantifiers."""

import numpy as np

from .exceptions import DimensionMismatch
from .linalg import partial_transpose, trace_norm_hermitian
from .states import as_density, binary_entropy, entropy_from_eigenvalues, von_neumann_entropy

_SY_SY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def relative_entropy_coherence(rho):
    """Relative entropy of coherence in the computational basis.

    The closest incoherent state is the diagonal part of ``rho``, so the
    measure reduces to ``S(diag(rho)) - S(rho)``.
    """
    rho = as_density(rho)
    diag = np.real(np.diag(rho.mat))
    return entropy_from_eigenvalues(diag) - von_neumann_entropy(rho)


def _two_qubit(rho):
    rho = as_density(rho)
    if rho.dim != 4:
        raise DimensionMismatch(f"two-qubit state required, got dimension {rho.dim}")
    return rho


def concurrence(rho):
    """Wootters concurrence of a two-qubit state."""
    m = _two_qubit(rho).mat
    # with rho = X X^dag, the square roots of eig(rho rho~) are the singular
    # values of X^T (sy (x) sy) X; this avoids square roots of noisy zeros
    w, v = np.linalg.eigh(m)
    x = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(x.T @ _SY_SY @ x, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def negativity(rho):
    """``max(0, ||rho^{T_A}||_1 - 1)``, the two-qubit normalization."""
    m = _two_qubit(rho).mat
    return max(0.0, trace_norm_hermitian(partial_transpose(m, (2, 2), "A")) - 1.0)


def entanglement_of_formation(rho):
    c = min(concurrence(rho), 1.0)
    return binary_entropy((1.0 + np.sqrt(1.0 - c * c)) / 2.0)
