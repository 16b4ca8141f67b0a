"""Dense complex linear algebra for the small (dim <= 8) model matrices.

Everything is a plain ``numpy.ndarray`` with ``complex128`` entries.  The
helpers here add the shape discipline the model code relies on (square,
dimension cap, finite entries) and a numerical eigensolver that is used as an
independent cross-check against the analytic eigensystems.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError, ShapeError

MAX_DIM = 8

# Pauli matrices sigma_0..sigma_3 and the antisymmetric unit e2 = i*sigma_2.
SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)
E2 = 1j * SIGMA2

DEFAULT_TOL = 1e-10


def as_cmatrix(a, max_dim: int | None = MAX_DIM) -> np.ndarray:
    """Coerce to a finite 2-d complex array, enforcing the dimension cap."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={a.ndim}")
    if max_dim is not None and max(a.shape) > max_dim:
        raise ShapeError(f"matrix shape {a.shape} exceeds supported dimension {max_dim}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ShapeError("matrix entries must be finite")
    return a


def as_cvector(v, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ShapeError(f"expected a vector, got ndim={v.ndim}")
    if dim is not None and v.shape[0] != dim:
        raise ShapeError(f"expected dimension {dim}, got {v.shape[0]}")
    if not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
        raise ShapeError("vector entries must be finite")
    return v


def require_square(a: np.ndarray) -> np.ndarray:
    a = as_cmatrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return a


def mat_mul(a, b) -> np.ndarray:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_cmatrix(a).conj().T


def kron(a, b) -> np.ndarray:
    a, b = as_cmatrix(a, max_dim=None), as_cmatrix(b, max_dim=None)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > MAX_DIM:
        raise ShapeError(f"Kronecker product shape ({rows}, {cols}) exceeds dimension {MAX_DIM}")
    return np.kron(a, b)


def det(a) -> complex:
    """Determinant (LAPACK LU with partial pivoting)."""
    return complex(np.linalg.det(require_square(a)))


def operator_norm(a) -> float:
    """Largest singular value; the defect measure used throughout."""
    return float(np.linalg.norm(np.asarray(a, dtype=complex), 2))


@dataclass
class Eigendecomposition:
    """Numerically computed spectrum with degeneracy bookkeeping.

    ``values`` are sorted ascending by real part; ``vectors[:, k]`` is the
    (unit Euclidean norm) eigenvector of ``values[k]``; ``clusters`` partitions
    the index range into groups of numerically degenerate eigenvalues.
    """

    values: np.ndarray
    vectors: np.ndarray
    clusters: list[list[int]] = field(default_factory=list)

    def cluster_projector(self, cluster: list[int]) -> np.ndarray:
        """Euclidean orthogonal projector onto the span of a cluster."""
        q, _ = np.linalg.qr(self.vectors[:, cluster])
        return q @ q.conj().T


def cluster_indices(values: np.ndarray, scale: float, rel_tol: float = 1e-8) -> list[list[int]]:
    """Group sorted eigenvalues that lie within ``rel_tol * scale`` of each other."""
    gap = rel_tol * max(scale, 1.0)
    clusters: list[list[int]] = []
    for k, lam in enumerate(values):
        if clusters and abs(lam - values[clusters[-1][0]]) <= gap:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return clusters


def eig_oracle(a, tol: float = DEFAULT_TOL) -> Eigendecomposition:
    """Full eigendecomposition of a general complex matrix.

    Serves as the independent numerical oracle for the analytic eigensystems:
    it never sees the closed forms.  Residuals ``||A v - lam v||`` are checked
    against ``tol * ||A||`` and a failure raises :class:`NumericalError`.
    """
    a = require_square(a)
    try:
        values, vectors = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(values.real, kind="stable")
    values, vectors = values[order], vectors[:, order]
    scale = operator_norm(a)
    worst = 0.0
    for k in range(len(values)):
        worst = max(worst, float(np.linalg.norm(a @ vectors[:, k] - values[k] * vectors[:, k])))
    if worst > tol * max(scale, 1.0):
        raise NumericalError("eigenpair residual exceeds tolerance", residual=worst)
    return Eigendecomposition(values, vectors, cluster_indices(values, scale))


def random_cmatrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_cvector(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
