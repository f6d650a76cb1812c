import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from coherence_tradeoffs import ComplementarityTransformer, InequalityMargins
from coherence_tradeoffs._validation import check_density_batch
from coherence_tradeoffs.exceptions import DimensionMismatch, DomainError, ValidationFailure
from coherence_tradeoffs.states import bell_state, densify, resource_state
from coherence_tradeoffs.verify import compute_record, sample_random_mixed


@pytest.fixture
def batch():
    return np.stack([densify(resource_state(t)).mat for t in np.linspace(0, np.pi / 2, 5)])


def test_check_density_batch_accepts_layouts(batch):
    as_objects = check_density_batch([densify(resource_state(0.2)), resource_state(0.4)])
    assert [s.dim for s in as_objects] == [4, 4]
    assert len(check_density_batch(batch)) == 5
    assert len(check_density_batch(batch.reshape(5, 16))) == 5
    with pytest.raises(DimensionMismatch):
        check_density_batch(np.zeros((2, 15)))
    with pytest.raises(ValidationFailure):
        check_density_batch(np.ones((1, 2, 2)))
    with pytest.raises(DimensionMismatch):
        check_density_batch([np.eye(2) / 2, np.eye(3) / 3])


def test_transformer_matches_records(batch):
    est = ComplementarityTransformer(p=0.2).fit(batch)
    out = est.transform(batch)
    assert out.shape == (5, 7)
    rec = compute_record(batch[1], 0.2)
    assert out[1, 0] == pytest.approx(rec.capacity)
    assert out[1, 5] == pytest.approx(rec.margin_t1)
    assert list(est.get_feature_names_out()) == [
        "capacity", "coherence_b", "fidelity", "h_of_f", "coherence_a", "margin_t1", "margin_t2",
    ]
    # theta = pi/2 gives F = (2 + cos pi)/3 < 2/3 at any noise
    assert np.isnan(out[-1, 3]) and np.isnan(out[-1, 6])


def test_transformer_sklearn_protocol(batch):
    est = ComplementarityTransformer(p=0.5)
    assert est.get_params() == {"p": 0.5, "subsystem_dims": None}
    assert clone(est).set_params(p=0.1).p == 0.1
    with pytest.raises(NotFittedError):
        est.transform(batch)
    with pytest.raises(DomainError):
        ComplementarityTransformer(p=2).fit(batch).transform(batch)
    with pytest.raises(DimensionMismatch):
        est.fit(batch).transform([np.eye(9) / 9])


def test_pipeline_composition(batch):
    pipe = make_pipeline(ComplementarityTransformer(), FunctionTransformer(lambda x: x[:, :2].sum(axis=1)))
    sums = pipe.fit_transform(batch)
    assert np.all(sums <= 2 + 1e-9)


def test_inequality_margins():
    states = [densify(bell_state()), sample_random_mixed(4, 2, 0), densify(resource_state(np.pi / 4))]
    margins = InequalityMargins().fit_transform(states)
    assert margins.shape == (3, 3)
    np.testing.assert_allclose(margins[0], 0, atol=1e-9)
    assert np.nanmin(margins) >= -1e-9
    with pytest.raises(DimensionMismatch):
        InequalityMargins().fit_transform([sample_random_mixed(9, 9, 1, (3, 3))])


def test_qutrit_batch_through_transformer():
    states = [sample_random_mixed(9, 9, s, (3, 3)) for s in range(3)]
    out = ComplementarityTransformer(p=0.1, subsystem_dims=(3, 3)).fit_transform(np.stack([s.mat for s in states]))
    assert np.all(np.isnan(out[:, 2]))
    assert np.all(out[:, 5] >= -1e-9)
