"""Dense complex linear algebra for small bipartite systems.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Composite basis
states ``|i_A i_B>`` map to row ``i_A * d_B + i_B`` throughout the package.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
JACOBI_REL_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
_TIE_TOL = 1e-12
_NEGLIGIBLE = 1e-6


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a):
    """Coerce ``a`` to a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a):
    return as_matrix(a).conj().T


def hermitian_deviation(h):
    h = as_matrix(h)
    return float(np.max(np.abs(h - h.conj().T), initial=0.0))


def _check_hermitian(h, tol=HERMITIAN_TOL):
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {h.shape}")
    dev = hermitian_deviation(h)
    if dev > tol:
        raise NotHermitian(f"max |H - H^dag| = {dev:.3e} exceeds {tol:.0e}")
    return 0.5 * (h + h.conj().T)


def _jacobi(h):
    a = h.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = JACOBI_REL_TOL * np.linalg.norm(a)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= threshold:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= _NEGLIGIBLE * threshold:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(tau) + np.sqrt(tau * tau + 1.0))
                if tau < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[q, p] = 0.0
                a[p, q] = 0.0
                v[:, idx] = v[:, idx] @ rot
    raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")


def _fix_phase(vec):
    nz = np.flatnonzero(np.abs(vec) > 1e-12)
    if nz.size == 0:
        return vec
    lead = vec[nz[0]]
    out = vec * (abs(lead) / lead)
    out[nz[0]] = abs(lead)
    return out


def _canonical_order(vals, vecs):
    vecs = np.column_stack([_fix_phase(vecs[:, k]) for k in range(vecs.shape[1])])
    order = list(np.argsort(vals, kind="stable"))
    # clusters of (near-)degenerate eigenvalues are ordered by the phase-fixed vector
    result, cluster = [], [order[0]]
    for k in order[1:]:
        if vals[k] - vals[cluster[-1]] <= _TIE_TOL:
            cluster.append(k)
        else:
            result.extend(sorted(cluster, key=lambda j: _vector_key(vecs[:, j])))
            cluster = [k]
    result.extend(sorted(cluster, key=lambda j: _vector_key(vecs[:, j])))
    return vals[result], vecs[:, result]


def _vector_key(vec):
    return tuple(np.round(np.column_stack([vec.real, vec.imag]).ravel(), 12))


def eigh(h, method="jacobi"):
    """Hermitian eigendecomposition with a deterministic, phase-fixed output.

    ``method="jacobi"`` runs cyclic complex Jacobi rotations;
    ``method="lapack"`` delegates to :func:`numpy.linalg.eigh`. Both return
    eigenvalues ascending and eigenvectors whose first non-negligible
    component is real and positive.
    """
    h = _check_hermitian(h)
    if method == "jacobi":
        vals, vecs = _jacobi(h)
    elif method == "lapack":
        try:
            vals, vecs = np.linalg.eigh(h)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
    else:
        raise ValueError(f"unknown method {method!r}")
    vals, vecs = _canonical_order(np.asarray(vals, dtype=float), vecs)
    return Spectrum(vals, vecs)


def eigvalsh(h):
    """Ascending eigenvalues only. Fast path used by the entropy functions."""
    return np.linalg.eigvalsh(_check_hermitian(h))


def _split(rho, dims):
    rho = as_matrix(rho)
    da, db = (int(d) for d in dims)
    if rho.shape != (da * db, da * db):
        raise DimensionMismatch(f"matrix shape {rho.shape} does not match dims {(da, db)}")
    return rho.reshape(da, db, da, db)


def _label(which):
    label = str(which).upper()
    if label not in ("A", "B"):
        raise ValueError(f"subsystem must be 'A' or 'B', got {which!r}")
    return label


def partial_trace(rho, dims, keep="B"):
    """Reduced operator on subsystem ``keep`` of a ``dims = (dA, dB)`` operator."""
    t = _split(rho, dims)
    if _label(keep) == "B":
        return np.einsum("ijik->jk", t)
    return np.einsum("ijkj->ik", t)


def partial_transpose(rho, dims, subsystem="A"):
    t = _split(rho, dims)
    da, db = (int(d) for d in dims)
    if _label(subsystem) == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(da * db, da * db)


def trace_norm_hermitian(a):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(a))))
