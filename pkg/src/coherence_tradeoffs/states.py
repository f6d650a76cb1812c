"""Quantum states, named constructors and entropies (all logarithms base 2)."""

import numpy as np

from .exceptions import DimensionMismatch, DomainError, ValidationFailure
from .linalg import HERMITIAN_TOL, as_matrix, eigvalsh, hermitian_deviation

STATE_TOL = 1e-10
NORM_TOL = 1e-12


class DensityMatrix:
    """A validated density matrix.

    Parameters
    ----------
    mat : array_like
        Square complex matrix. Checked for Hermiticity, unit trace and
        positivity (each within ``1e-10``) and stored symmetrized.
    subsystem_dims : tuple of int, optional
        ``(dA, dB)`` for bipartite states, with ``dA * dB == dim``.
    """

    __slots__ = ("mat", "subsystem_dims")

    def __init__(self, mat, subsystem_dims=None):
        m = as_matrix(mat)
        if m.shape[0] != m.shape[1]:
            raise ValidationFailure(f"density matrix must be square, got {m.shape}")
        dev = hermitian_deviation(m)
        if dev > HERMITIAN_TOL:
            raise ValidationFailure(f"not Hermitian (max deviation {dev:.3e})")
        m = 0.5 * (m + m.conj().T)
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TOL:
            raise ValidationFailure(f"trace {tr!r} differs from 1")
        lam_min = np.linalg.eigvalsh(m)[0]
        if lam_min < -STATE_TOL:
            raise ValidationFailure(f"negative eigenvalue {lam_min:.3e}")
        if subsystem_dims is not None:
            subsystem_dims = tuple(int(d) for d in subsystem_dims)
            if len(subsystem_dims) != 2 or subsystem_dims[0] * subsystem_dims[1] != m.shape[0]:
                raise DimensionMismatch(
                    f"subsystem dims {subsystem_dims} incompatible with dimension {m.shape[0]}"
                )
        m.setflags(write=False)
        self.mat = m
        self.subsystem_dims = subsystem_dims

    @property
    def dim(self):
        return self.mat.shape[0]

    def bipartite_dims(self):
        """``subsystem_dims``, defaulting to a square split ``(d, d)``."""
        if self.subsystem_dims is not None:
            return self.subsystem_dims
        d = int(round(np.sqrt(self.dim)))
        if d * d != self.dim:
            raise DimensionMismatch(f"dimension {self.dim} is not a d x d bipartition")
        return (d, d)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, subsystem_dims={self.subsystem_dims})"


class PureState:
    """A normalized state vector."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes):
        v = np.asarray(amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationFailure(f"state norm {norm!r} differs from 1")
        v.setflags(write=False)
        self.amplitudes = v

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"PureState({np.array2string(self.amplitudes, precision=4)})"


_BELL = {
    "phi+": (1, 0, 0, 1),
    "phi-": (1, 0, 0, -1),
    "psi+": (0, 1, 1, 0),
    "psi-": (0, 1, -1, 0),
}
_BELL_ALIASES = {"Φ⁺": "phi+", "Φ⁻": "phi-", "Ψ⁺": "psi+", "Ψ⁻": "psi-"}


def bell_state(kind="phi+"):
    """One of the four Bell vectors; ``kind`` is ``phi+``, ``phi-``, ``psi+`` or ``psi-``."""
    key = _BELL_ALIASES.get(kind, str(kind).lower())
    if key not in _BELL:
        raise ValueError(f"unknown Bell state {kind!r}")
    return PureState(np.array(_BELL[key], dtype=complex) / np.sqrt(2.0))


def resource_state(theta):
    """cos(theta)|Phi+> + sin(theta)|Psi+>."""
    c, s = np.cos(theta), np.sin(theta)
    return PureState(np.array([c, s, s, c], dtype=complex) / np.sqrt(2.0))


def bloch_pure_state(alpha, beta):
    """cos(alpha/2) e^{i beta/2}|0> + sin(alpha/2) e^{-i beta/2}|1>."""
    return PureState(
        np.array(
            [np.cos(alpha / 2) * np.exp(0.5j * beta), np.sin(alpha / 2) * np.exp(-0.5j * beta)]
        )
    )


def densify(psi, subsystem_dims=None):
    v = np.asarray(psi, dtype=complex).ravel()
    if subsystem_dims is None and v.shape[0] == 4:
        subsystem_dims = (2, 2)
    return DensityMatrix(np.outer(v, v.conj()), subsystem_dims)


def as_density(rho, subsystem_dims=None):
    """Accept a DensityMatrix, PureState or raw matrix and return a DensityMatrix."""
    if isinstance(rho, DensityMatrix):
        return rho
    if isinstance(rho, PureState):
        return densify(rho, subsystem_dims)
    return DensityMatrix(rho, subsystem_dims)


def entropy_from_eigenvalues(lam):
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < -STATE_TOL):
        raise ValidationFailure(f"eigenvalue {lam.min():.3e} below -{STATE_TOL:.0e}")
    lam = np.clip(lam, 0.0, 1.0)
    lam = lam[lam > 0.0]
    return float(-np.sum(lam * np.log2(lam)))


def von_neumann_entropy(rho):
    """-tr(rho log2 rho), with eigenvalues clamped to [0, 1]."""
    m = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)
    return entropy_from_eigenvalues(eigvalsh(m))


def binary_entropy(x):
    if x < -1e-12 or x > 1 + 1e-12:
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def overlap(psi, rho):
    """<psi|rho|psi> as a real number."""
    v = np.asarray(psi, dtype=complex).ravel()
    m = rho.mat if isinstance(rho, DensityMatrix) else as_matrix(rho)
    if m.shape != (v.shape[0], v.shape[0]):
        raise DimensionMismatch(f"state of dimension {v.shape[0]} vs matrix {m.shape}")
    return float(np.real(v.conj() @ m @ v))
