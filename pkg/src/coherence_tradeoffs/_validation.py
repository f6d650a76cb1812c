"""Input checks shared by the estimator layer and the CLI."""

import numpy as np

from .exceptions import DimensionMismatch, DomainError
from .states import DensityMatrix, PureState, as_density


def check_noise_parameter(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"noise parameter p={p!r} outside [0, 1]")
    return p


def check_density_batch(X, subsystem_dims=None):
    """Normalize ``X`` into a list of DensityMatrix.

    Accepts a sequence of DensityMatrix / PureState objects, an array of
    matrices with shape ``(n, D, D)``, or flattened rows of shape ``(n, D*D)``.
    Every entry is validated and they must all have the same dimension.
    """
    if isinstance(X, (DensityMatrix, PureState)):
        raise DimensionMismatch("expected a batch of states, got a single state")
    if isinstance(X, np.ndarray):
        arr = np.asarray(X, dtype=complex)
        if arr.ndim == 2:
            side = int(round(np.sqrt(arr.shape[1])))
            if side * side != arr.shape[1]:
                raise DimensionMismatch(f"row length {arr.shape[1]} is not a square number")
            arr = arr.reshape(arr.shape[0], side, side)
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
            raise DimensionMismatch(f"expected shape (n, D, D) or (n, D*D), got {arr.shape}")
        X = list(arr)
    states = [as_density(x, subsystem_dims) for x in X]
    if not states:
        raise ValueError("empty batch")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed state dimensions in batch: {sorted(dims)}")
    return states
