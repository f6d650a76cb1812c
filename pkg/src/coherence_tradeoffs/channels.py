"""Kraus channels, the clock-and-shift unitary families, and depolarizing noise."""

import numpy as np

from .exceptions import DimensionMismatch, DomainError, IndexOutOfRange, ValidationFailure
from .linalg import as_matrix
from .states import DensityMatrix, as_density

CHANNEL_TOL = 1e-10


class KrausChannel:
    """A CPTP map ``rho -> sum_i K_i rho K_i^dag``.

    Kraus operators carry their probability weights (``sqrt(q) * V``), so
    ``apply`` needs no separate bookkeeping.
    """

    __slots__ = ("dim", "kraus_ops", "label")

    def __init__(self, kraus_ops, label=""):
        ops = [as_matrix(k) for k in kraus_ops]
        if not ops:
            raise ValueError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(k.shape != (dim, dim) for k in ops):
            raise DimensionMismatch("Kraus operators must be square and of equal size")
        stack = np.stack(ops)
        completeness = np.einsum("kji,kjl->il", stack.conj(), stack)
        dev = np.max(np.abs(completeness - np.eye(dim)))
        if dev > CHANNEL_TOL:
            raise ValidationFailure(f"Kraus operators are not trace preserving (deviation {dev:.3e})")
        stack.setflags(write=False)
        self.dim = dim
        self.kraus_ops = stack
        self.label = label

    def apply_matrix(self, m):
        """Channel action on a raw matrix, no validation of the result."""
        k = self.kraus_ops
        return np.einsum("kij,jl,kml->im", k, m, k.conj())

    def __call__(self, rho):
        return apply(self, rho)

    def __len__(self):
        return self.kraus_ops.shape[0]

    def __repr__(self):
        return f"KrausChannel(dim={self.dim}, n_ops={len(self)}, label={self.label!r})"


def _check_index(name, value, d):
    if not 0 <= value < d:
        raise IndexOutOfRange(f"{name}={value} outside [0, {d})")


def encoding_unitary(m, n, d):
    """U_{m,n}|j> = exp(2 pi i m j / d) |j + n mod d>."""
    _check_index("m", m, d)
    _check_index("n", n, d)
    u = np.zeros((d, d), dtype=complex)
    j = np.arange(d)
    u[(j + n) % d, j] = np.exp(2j * np.pi * m * j / d)
    return u


def heisenberg_weyl(mu, nu, d):
    """V_{mu nu} = sum_k exp(2 pi i k nu / d) |k><k + mu mod d|."""
    _check_index("mu", mu, d)
    _check_index("nu", nu, d)
    v = np.zeros((d, d), dtype=complex)
    k = np.arange(d)
    v[k, (k + mu) % d] = np.exp(2j * np.pi * k * nu / d)
    return v


def depolarizing_weights(p, d):
    """q_{mu nu}, indexed ``[mu, nu]``: 1 - (d^2-1)p/d^2 at the origin, p/d^2 elsewhere."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise parameter p={p!r} outside [0, 1]")
    q = np.full((d, d), p / d**2)
    q[0, 0] = 1.0 - (d**2 - 1) * p / d**2
    return q


def depolarizing_channel(p, d=2):
    q = depolarizing_weights(p, d)
    ops = [
        np.sqrt(q[mu, nu]) * heisenberg_weyl(mu, nu, d)
        for mu in range(d)
        for nu in range(d)
        if q[mu, nu] > 0.0
    ]
    return KrausChannel(ops, label=f"depolarizing(p={p}, d={d})")


def identity_channel(d):
    return KrausChannel([np.eye(d)], label=f"identity(d={d})")


def unitary_channel(u, label="unitary"):
    return KrausChannel([u], label=label)


def tensor_channel(lambda_a, lambda_b):
    """Kraus list {K_i (x) L_j}: the two channels acting independently on A and B."""
    ops = [np.kron(ka, kb) for ka in lambda_a.kraus_ops for kb in lambda_b.kraus_ops]
    return KrausChannel(ops, label=f"{lambda_a.label} (x) {lambda_b.label}")


def two_sided_depolarizing(p, d=2):
    """The pair (Lambda_A, Lambda_B) of equal-strength depolarizing channels."""
    ch = depolarizing_channel(p, d)
    return ch, ch


def apply(channel, rho):
    """Apply ``channel`` and revalidate the output as a DensityMatrix."""
    rho = as_density(rho)
    if rho.dim != channel.dim:
        raise DimensionMismatch(f"channel dimension {channel.dim} vs state dimension {rho.dim}")
    return DensityMatrix(channel.apply_matrix(rho.mat), rho.subsystem_dims)


def is_unital(channel, tol=CHANNEL_TOL):
    k = channel.kraus_ops
    image = np.einsum("kij,klj->il", k, k.conj())
    return bool(np.max(np.abs(image - np.eye(channel.dim))) <= tol)


def is_trace_preserving(channel, tol=CHANNEL_TOL):
    k = channel.kraus_ops
    image = np.einsum("kji,kjl->il", k.conj(), k)
    return bool(np.max(np.abs(image - np.eye(channel.dim))) <= tol)
