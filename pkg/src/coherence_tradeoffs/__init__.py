"""Local coherence versus dense-coding capacity and teleportation fidelity.

Closed-form capacities and fidelities for bipartite states, brute-force
oracles for each of them, and Monte Carlo margin checks of the
complementarity inequalities linking them to the relative entropy of
coherence.
"""

from .channels import (
    KrausChannel,
    apply,
    depolarizing_channel,
    encoding_unitary,
    heisenberg_weyl,
    is_unital,
    tensor_channel,
    two_sided_depolarizing,
)
from .estimators import ComplementarityTransformer, InequalityMargins
from .measures import (
    concurrence,
    entanglement_of_formation,
    negativity,
    relative_entropy_coherence,
)
from .protocols import (
    CapacityBreakdown,
    average_fidelity,
    dense_coding_capacity,
    dense_coding_capacity_noisy,
    ensemble_average_state,
    fidelity_bound_entropy,
    fidelity_closed_form,
    holevo_from_ensemble,
    teleport_output,
    teleportation_fidelity_point,
    verify_entropy_covariance,
)
from .states import (
    DensityMatrix,
    PureState,
    bell_state,
    binary_entropy,
    bloch_pure_state,
    densify,
    overlap,
    resource_state,
    von_neumann_entropy,
)
from .verify import (
    MarginReport,
    SweepRecord,
    check_ef_coherence,
    check_theorem1,
    check_theorem2,
    sample_random_mixed,
    sample_random_pure,
    sweep,
)

__version__ = "0.1.0"
