"""scikit-learn transformers over batches of bipartite states.

Both transformers are stateless: ``fit`` only validates the batch and
records its dimension, so they drop into a ``Pipeline`` unchanged.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_density_batch, check_noise_parameter
from .exceptions import DimensionMismatch
from .states import DensityMatrix
from .verify import check_ef_coherence, check_theorem1, check_theorem2, compute_record

_RECORD_FIELDS = (
    "capacity",
    "coherence_b",
    "fidelity",
    "h_of_f",
    "coherence_a",
    "margin_t1",
    "margin_t2",
)


def _nan_if_none(x):
    return np.nan if x is None else x


class _StateTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        states = check_density_batch(X, self.subsystem_dims)
        self.n_dim_ = states[0].dim
        self.subsystem_dims_ = states[0].bipartite_dims()
        return self

    def _validated(self, X):
        check_is_fitted(self)
        states = check_density_batch(X, self.subsystem_dims)
        if states[0].dim != self.n_dim_:
            raise DimensionMismatch(f"fitted on dimension {self.n_dim_}, got {states[0].dim}")
        return [DensityMatrix(s.mat, self.subsystem_dims_) for s in states]

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self._feature_names, dtype=object)


class ComplementarityTransformer(_StateTransformer):
    """Map states to capacity, coherence and teleportation quantities.

    Each state passes through the two-sided depolarizing channel of
    strength ``p`` first. Columns follow ``get_feature_names_out``; entries
    that do not apply (teleportation terms for non-qubit pairs, the
    fidelity bound when ``F < 2/3``) are NaN.
    """

    _feature_names = _RECORD_FIELDS

    def __init__(self, p=0.0, subsystem_dims=None):
        self.p = p
        self.subsystem_dims = subsystem_dims

    def transform(self, X):
        p = check_noise_parameter(self.p)
        rows = []
        for rho in self._validated(X):
            record = compute_record(rho, p)
            rows.append([_nan_if_none(getattr(record, f)) for f in _RECORD_FIELDS])
        return np.asarray(rows, dtype=float)


class InequalityMargins(_StateTransformer):
    """Noiseless margins of the three complementarity inequalities.

    Columns: dense coding vs local coherence on B, teleportation bound vs
    local coherence on A (NaN when F < 2/3), entanglement of formation vs
    local coherence on A. Negative values below -1e-9 are violations.
    """

    _feature_names = ("margin_t1", "margin_t2", "margin_ef")

    def __init__(self, subsystem_dims=None):
        self.subsystem_dims = subsystem_dims

    def transform(self, X):
        states = self._validated(X)
        if self.subsystem_dims_ != (2, 2):
            raise DimensionMismatch("teleportation margins need two-qubit states")
        return np.asarray(
            [
                [check_theorem1(rho), _nan_if_none(check_theorem2(rho)), check_ef_coherence(rho)]
                for rho in states
            ],
            dtype=float,
        )
