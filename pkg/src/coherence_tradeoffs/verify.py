"""Margin checks for the complementarity inequalities, seeded samplers and sweeps.

Randomness comes from numpy's PCG64 generator. Each sample ``i`` of a run
with root seed ``s`` draws from ``SeedSequence(s, spawn_key=(i,))``, so any
sample can be regenerated on its own and parallel evaluation matches serial.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .channels import apply, tensor_channel, two_sided_depolarizing
from .exceptions import DomainError
from .linalg import partial_trace
from .measures import entanglement_of_formation, relative_entropy_coherence
from .protocols import (
    average_fidelity,
    dense_coding_capacity,
    dense_coding_capacity_noisy,
    fidelity_bound_entropy,
    is_useful_for_teleportation,
)
from .states import DensityMatrix, PureState, as_density, bell_state, densify, resource_state

VIOLATION_THRESHOLD = -1e-9
_FULL_RANK_FLOOR = 1e-12
_MAX_REDRAWS = 100


def sample_rng(seed, index=None):
    """PCG64 generator for ``seed``, or for sample ``index`` of a run seeded with ``seed``."""
    if isinstance(seed, np.random.Generator):
        return seed
    key = () if index is None else (int(index),)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=key)))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def sample_random_pure(dims, seed):
    """Haar-random pure state on ``dA x dB``: a normalized complex Gaussian vector."""
    rng = sample_rng(seed)
    v = _ginibre(rng, int(np.prod(dims)), 1).ravel()
    return PureState(v / np.linalg.norm(v))


def sample_random_mixed(dim, rank, seed, subsystem_dims=None):
    """``G G^dag / tr(G G^dag)`` with ``G`` a ``dim x rank`` complex Gaussian matrix.

    Full-rank requests whose draw is numerically singular are redrawn.
    """
    if not 1 <= rank <= dim:
        raise DomainError(f"rank {rank} outside [1, {dim}]")
    rng = sample_rng(seed)
    for _ in range(_MAX_REDRAWS):
        g = _ginibre(rng, dim, rank)
        m = g @ g.conj().T
        m /= np.trace(m).real
        if rank < dim or np.linalg.eigvalsh(m)[0] > _FULL_RANK_FLOOR:
            break
    if subsystem_dims is None and dim == 4:
        subsystem_dims = (2, 2)
    return DensityMatrix(m, subsystem_dims)


_FAMILIES = ("pure", "rank1", "rank2", "rank3", "rank4", "bell_mixture", "bell_perturbed")


def sample_two_qubit_state(seed, index):
    """Sample ``index`` of the two-qubit test population.

    Families rotate with the index: Haar pure states, Ginibre mixed states of
    rank 1 to 4, mixtures ``w|Phi+><Phi+| + (1 - w) sigma`` and normalized
    perturbations of ``|Phi+>``. The last two populate the ``F >= 2/3``
    region, which Ginibre sampling alone rarely reaches.
    """
    rng = sample_rng(seed, index)
    family = _FAMILIES[index % len(_FAMILIES)]
    if family == "pure":
        return densify(sample_random_pure((2, 2), rng))
    if family.startswith("rank"):
        return sample_random_mixed(4, int(family[-1]), rng)
    bell = bell_state("phi+").amplitudes
    if family == "bell_mixture":
        w = rng.uniform()
        sigma = sample_random_mixed(4, int(rng.integers(1, 5)), rng)
        return DensityMatrix(w * np.outer(bell, bell.conj()) + (1 - w) * sigma.mat, (2, 2))
    v = bell + rng.uniform(0.0, 1.5) * _ginibre(rng, 4, 1).ravel() / 2.0
    return densify(PureState(v / np.linalg.norm(v)))


def sample_ginibre_two_qubit(seed, index):
    """Haar pure or Ginibre rank 1-4 two-qubit state; the family rotates with ``index``."""
    return sample_two_qubit_state(seed, (index // 5) * len(_FAMILIES) + index % 5)


def _log2_dims(dims):
    return float(np.log2(dims[0]) + np.log2(dims[1]))


def check_theorem1(rho, channels=None):
    """``2 log2 d - [capacity + C_re(rho_B)]``, optionally after unital noise ``(Lambda_A, Lambda_B)``."""
    rho = as_density(rho)
    dims = rho.bipartite_dims()
    if channels is None:
        capacity = dense_coding_capacity(rho).capacity
        rho_b = partial_trace(rho.mat, dims, keep="B")
    else:
        lambda_a, lambda_b = channels
        capacity = dense_coding_capacity_noisy(rho, lambda_a, lambda_b).capacity
        rho_b = lambda_b.apply_matrix(partial_trace(rho.mat, dims, keep="B"))
    return _log2_dims(dims) - (capacity + relative_entropy_coherence(DensityMatrix(rho_b)))


def check_theorem2(rho):
    """``1 - [h-bound(F) + C_re(rho_A)]``, or ``None`` when ``F < 2/3``."""
    rho = as_density(rho, (2, 2))
    f = average_fidelity(rho)
    if not is_useful_for_teleportation(f):
        return None
    rho_a = DensityMatrix(partial_trace(rho.mat, (2, 2), keep="A"))
    return 1.0 - (fidelity_bound_entropy(f) + relative_entropy_coherence(rho_a))


def check_ef_coherence(rho):
    """``log2 2 - [E_F(rho_AB) + C_re(rho_A)]``."""
    rho = as_density(rho, (2, 2))
    rho_a = DensityMatrix(partial_trace(rho.mat, (2, 2), keep="A"))
    return 1.0 - (entanglement_of_formation(rho) + relative_entropy_coherence(rho_a))


def serialize_density(rho):
    """Matrix-file dictionary: ``dim``, ``subsystem_dims`` and row-major ``[re, im]`` entries."""
    rho = as_density(rho)
    return {
        "dim": rho.dim,
        "subsystem_dims": list(rho.subsystem_dims) if rho.subsystem_dims else None,
        "entries": [[float(z.real), float(z.imag)] for z in rho.mat.ravel()],
    }


def deserialize_density(data):
    dim = int(data["dim"])
    entries = np.asarray(data["entries"], dtype=float)
    if entries.shape != (dim * dim, 2):
        raise DomainError(f"expected {dim * dim} [re, im] pairs, got array of shape {entries.shape}")
    mat = (entries[:, 0] + 1j * entries[:, 1]).reshape(dim, dim)
    return DensityMatrix(mat, data.get("subsystem_dims"))


@dataclass
class MarginReport:
    name: str
    samples: int
    min_margin: float
    violations: int
    worst_state: dict
    seed: int
    draws: int

    def to_dict(self):
        return asdict(self)


def margin_report(check, samples, seed, name="", sampler=sample_two_qubit_state, max_draws=None):
    """Run ``check`` on seeded samples until ``samples`` of them yield a margin.

    ``check`` may return ``None`` for states outside its scope; those draws are
    skipped. At most ``max_draws`` (default ``100 * samples``) states are drawn.
    """
    max_draws = 100 * samples if max_draws is None else max_draws
    checked = violations = draws = 0
    worst_margin, worst_state = np.inf, None
    while checked < samples and draws < max_draws:
        rho = sampler(seed, draws)
        draws += 1
        margin = check(rho)
        if margin is None:
            continue
        checked += 1
        if margin < VIOLATION_THRESHOLD:
            violations += 1
        if margin < worst_margin:
            worst_margin, worst_state = margin, rho
    return MarginReport(
        name=name,
        samples=checked,
        min_margin=float(worst_margin) if checked else float("nan"),
        violations=violations,
        worst_state=serialize_density(worst_state) if worst_state is not None else None,
        seed=int(seed),
        draws=draws,
    )


@dataclass
class SweepRecord:
    """All quantities at one (theta, p) point; the t2 fields are None when F < 2/3."""

    theta: float
    p: float
    capacity: float
    coherence_b: float
    fidelity: float
    h_of_f: float
    coherence_a: float
    margin_t1: float
    margin_t2: float

    @property
    def sum_t1(self):
        return self.capacity + self.coherence_b

    @property
    def sum_t2(self):
        return None if self.h_of_f is None else self.h_of_f + self.coherence_a

    def to_dict(self):
        return asdict(self)


def compute_record(rho, p, theta=None):
    """SweepRecord for ``rho`` sent through the two-sided depolarizing channel of strength ``p``.

    Teleportation fields are None for states other than two qubits.
    """
    rho = as_density(rho)
    dims = rho.bipartite_dims()
    rho = DensityMatrix(rho.mat, dims)
    lambda_a, lambda_b = two_sided_depolarizing(p, dims[0])
    if dims[1] != dims[0]:
        lambda_b = two_sided_depolarizing(p, dims[1])[1]
    noisy = apply(tensor_channel(lambda_a, lambda_b), rho)
    capacity = dense_coding_capacity_noisy(rho, lambda_a, lambda_b).capacity
    coherence_b = relative_entropy_coherence(DensityMatrix(partial_trace(noisy.mat, dims, "B")))
    coherence_a = relative_entropy_coherence(DensityMatrix(partial_trace(noisy.mat, dims, "A")))
    fidelity = h_of_f = margin_t2 = None
    if dims == (2, 2):
        fidelity = average_fidelity(noisy)
        if is_useful_for_teleportation(fidelity):
            h_of_f = fidelity_bound_entropy(fidelity)
            margin_t2 = 1.0 - (h_of_f + coherence_a)
    return SweepRecord(
        theta=None if theta is None else float(theta),
        p=float(p),
        capacity=capacity,
        coherence_b=coherence_b,
        fidelity=fidelity,
        h_of_f=h_of_f,
        coherence_a=coherence_a,
        margin_t1=_log2_dims(dims) - (capacity + coherence_b),
        margin_t2=margin_t2,
    )


def theta_grid(steps):
    if steps < 2:
        raise DomainError("theta grid needs at least 2 points")
    return np.linspace(0.0, np.pi, steps)


def p_grid(steps):
    if steps < 2:
        raise DomainError("p grid needs at least 2 points")
    return np.linspace(0.0, 1.0, steps)


def sweep(theta_steps=61, p_steps=41, p_values=None):
    """Records over the uniform grid theta in [0, pi] (outer) and p in [0, 1] (inner).

    ``p_values`` overrides the p grid, e.g. ``[0.0]`` for the noiseless cuts.
    """
    ps = p_grid(p_steps) if p_values is None else np.asarray(p_values, dtype=float)
    return [
        compute_record(densify(resource_state(theta)), p, theta)
        for theta in theta_grid(theta_steps)
        for p in ps
    ]
