import hashlib

import numpy as np
import pytest

from coherence_tradeoffs.channels import two_sided_depolarizing
from coherence_tradeoffs.exceptions import DomainError
from coherence_tradeoffs.linalg import partial_trace
from coherence_tradeoffs.states import DensityMatrix, bell_state, densify, resource_state
from coherence_tradeoffs.verify import (
    check_ef_coherence,
    check_theorem1,
    check_theorem2,
    compute_record,
    deserialize_density,
    margin_report,
    sample_random_mixed,
    sample_random_pure,
    sample_two_qubit_state,
    serialize_density,
    sweep,
)

BELL = densify(bell_state())
PLUS_PLUS = densify(resource_state(np.pi / 4))


def test_random_pure_golden_hash():
    v = sample_random_pure((2, 2), 7).amplitudes
    assert hashlib.sha256(v.tobytes()).hexdigest() == (
        "c502212605a43709bb7b2b2ce38de59c2b4863a78a0749f759c658e9106305b8"
    )
    assert abs(np.linalg.norm(v) - 1) <= 1e-12


def test_haar_mean_reduced_purity():
    purities = []
    for seed in range(10_000):
        v = sample_random_pure((2, 2), seed).amplitudes
        rho_b = partial_trace(np.outer(v, v.conj()), (2, 2), "B")
        purities.append(np.trace(rho_b @ rho_b).real)
    assert np.mean(purities) == pytest.approx(4 / 5, abs=0.01)


def test_random_mixed():
    pure = sample_random_mixed(4, 1, 3)
    assert np.trace(pure.mat @ pure.mat).real == pytest.approx(1.0, abs=1e-10)
    for seed in range(200):
        rho = sample_random_mixed(3, 3, seed)
        ev = np.linalg.eigvalsh(rho.mat)
        assert ev[0] > 0 and np.sum(ev) == pytest.approx(1.0, abs=1e-12)
    assert np.array_equal(sample_random_mixed(4, 2, 5).mat, sample_random_mixed(4, 2, 5).mat)
    with pytest.raises(DomainError):
        sample_random_mixed(4, 5, 0)


def test_two_qubit_samples_are_independent_of_draw_order():
    forward = [sample_two_qubit_state(9, i).mat for i in range(14)]
    backward = [sample_two_qubit_state(9, i).mat for i in reversed(range(14))][::-1]
    for a, b in zip(forward, backward):
        assert np.array_equal(a, b)


def test_theorem1_equality_cases():
    assert check_theorem1(BELL) == pytest.approx(0.0, abs=1e-9)
    assert check_theorem1(PLUS_PLUS) == pytest.approx(0.0, abs=1e-9)
    assert check_theorem1(BELL, two_sided_depolarizing(0.3)) > 0


def test_theorem2_cases():
    assert check_theorem2(BELL) == pytest.approx(0.0, abs=1e-9)
    assert check_theorem2(PLUS_PLUS) == pytest.approx(0.0, abs=1e-9)
    assert check_theorem2(densify(resource_state(np.pi / 2))) is None
    # depolarized Bell state at F = 2/3: the bound term vanishes, rho_A = I/2
    p = 1 - 1 / np.sqrt(3)
    from coherence_tradeoffs.channels import tensor_channel

    rho = DensityMatrix(tensor_channel(*two_sided_depolarizing(p)).apply_matrix(BELL.mat), (2, 2))
    assert check_theorem2(rho) == pytest.approx(1.0, abs=1e-6)


def test_ef_coherence_equality_cases():
    assert check_ef_coherence(BELL) == pytest.approx(0.0, abs=1e-9)
    assert check_ef_coherence(PLUS_PLUS) == pytest.approx(0.0, abs=1e-9)


def test_margin_report_small_run_is_deterministic():
    a = margin_report(check_theorem1, 200, 42, "t1")
    b = margin_report(check_theorem1, 200, 42, "t1")
    assert a == b
    assert a.samples == 200 and a.violations == 0 and a.min_margin >= -1e-9
    assert deserialize_density(a.worst_state).dim == 4


def test_margin_report_filters_out_of_scope_states():
    report = margin_report(check_theorem2, 50, 1, "t2")
    assert report.samples == 50
    assert report.draws >= 50


def test_serialization_roundtrip(rng):
    rho = sample_random_mixed(4, 3, 8)
    back = deserialize_density(serialize_density(rho))
    assert np.array_equal(back.mat, rho.mat) and back.subsystem_dims == (2, 2)
    with pytest.raises(DomainError):
        deserialize_density({"dim": 2, "entries": [[1, 0]]})


def test_record_invariants():
    for theta in np.linspace(0, np.pi, 7):
        for p in (0.0, 0.2, 0.9):
            rec = compute_record(densify(resource_state(theta)), p, theta)
            assert rec.margin_t1 == pytest.approx(2 - (rec.capacity + rec.coherence_b), abs=1e-12)
            if rec.margin_t2 is not None:
                assert rec.margin_t2 == pytest.approx(1 - (rec.h_of_f + rec.coherence_a), abs=1e-12)
            else:
                assert rec.fidelity < 2 / 3


def test_record_for_qutrit_pair_skips_teleportation():
    rho = sample_random_mixed(9, 9, 4, (3, 3))
    rec = compute_record(rho, 0.2)
    assert rec.fidelity is None and rec.margin_t2 is None
    assert rec.margin_t1 >= -1e-9


@pytest.fixture(scope="module")
def noiseless_cut():
    return sweep(61, 2, p_values=[0.0])


def test_sweep_endpoints(noiseless_cut):
    first = noiseless_cut[0]
    assert first.capacity == pytest.approx(2.0, abs=1e-9)
    assert first.coherence_b == pytest.approx(0.0, abs=1e-9)
    assert first.h_of_f == pytest.approx(1.0, abs=1e-9)
    assert first.coherence_a == pytest.approx(0.0, abs=1e-9)
    quarter = noiseless_cut[15]
    assert quarter.theta == pytest.approx(np.pi / 4)
    assert quarter.capacity == pytest.approx(1.0, abs=1e-9)
    assert quarter.coherence_b == pytest.approx(1.0, abs=1e-9)


def test_sweep_symmetry_and_complementarity(noiseless_cut):
    caps = np.array([r.capacity for r in noiseless_cut])
    coh = np.array([r.coherence_b for r in noiseless_cut])
    assert np.max(np.abs(caps - caps[::-1])) <= 1e-9
    assert np.max(np.abs(coh - coh[::-1])) <= 1e-9
    assert set(np.flatnonzero(np.isclose(caps, caps.min(), atol=1e-9))) == set(
        np.flatnonzero(np.isclose(coh, coh.max(), atol=1e-9))
    )


def test_sweep_grid_shape_and_margins():
    records = sweep(5, 4)
    assert len(records) == 20
    assert [r.p for r in records[:4]] == pytest.approx([0, 1 / 3, 2 / 3, 1])
    assert all(r.margin_t1 >= -1e-9 for r in records)
    with pytest.raises(DomainError):
        sweep(1, 4)
