"""Parity and time-reversal operators for the T-odd (T^2 = -1) bases.

Parity acts as a linear matrix S with S^2 = 1.  Time reversal is antilinear,
T = Z K with K complex conjugation, and is deliberately never materialized as
a matrix: only :func:`apply_T` / :func:`apply_PT` exist.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, ShapeError
from .linalg import E2, as_cvector, kron, operator_norm, require_square

PAIR_TOL = 1e-14


@dataclass(frozen=True)
class SymmetryPair:
    """The linear parts (S, Z) of parity and time reversal for one basis.

    Construction validates the defining algebra:
    S^2 = 1, Z conj(Z) = -1 (T odd), S Z = Z conj(S) ([P, T] = 0) and
    Z antisymmetric, each to 1e-14 in operator norm.  It also spot-checks
    that the two equivalent forms of the PT inner product,
    (PT a)^T Z b and a^dag S b, agree on random vectors.
    """

    s: np.ndarray
    z: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        s = require_square(self.s)
        z = require_square(self.z)
        if s.shape != z.shape:
            raise ShapeError(f"S and Z shapes differ: {s.shape} vs {z.shape}")
        n = s.shape[0]
        if n % 2:
            raise ParameterError("T-odd symmetry pairs require even dimension")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "dim", n)
        eye = np.eye(n)
        defects = {
            "S^2 = 1": operator_norm(s @ s - eye),
            "Z conj(Z) = -1": operator_norm(z @ z.conj() + eye),
            "S Z = Z conj(S)": operator_norm(s @ z - z @ s.conj()),
            "Z^T = -Z": operator_norm(z.T + z),
        }
        for name, defect in defects.items():
            if defect > PAIR_TOL:
                raise ParameterError(f"symmetry pair violates {name} (defect {defect:.3e})")
        rng = np.random.default_rng(0x5A)
        for _ in range(2):
            a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            lhs = apply_PT(self, a) @ z @ b
            rhs = a.conj() @ s @ b
            if abs(lhs - rhs) > 1e-12 * (1 + abs(rhs)):
                raise ParameterError("(PT a)^T Z b does not reproduce a^dag S b in this basis")


def build_canonical_Z(n_pairs: int) -> np.ndarray:
    """Block-diagonal Z = diag(e2, ..., e2) with n_pairs blocks of e2 = i sigma_2."""
    if n_pairs < 1:
        raise ParameterError("n_pairs must be positive")
    if 2 * n_pairs > 8:
        raise ShapeError("canonical Z limited to dimension 8")
    return kron(np.eye(n_pairs), E2)


def build_canonical_S(m: int, dim: int) -> np.ndarray:
    """Diagonal parity diag(+1 x m, -1 x (dim - m))."""
    if dim % 2 or dim < 2 or dim > 8:
        raise ParameterError(f"dim must be even and <= 8, got {dim}")
    if not 0 < m <= dim:
        raise ParameterError(f"m must lie in 1..{dim}, got {m}")
    if m % 2:
        # parity must be scalar on each Kramers doublet or S Z = Z conj(S) fails
        raise ParameterError(f"m must be even, got {m}")
    return np.diag(np.concatenate([np.ones(m), -np.ones(dim - m)])).astype(complex)


def canonical_pair(n_pairs: int, m: int | None = None) -> SymmetryPair:
    """Canonical-basis pair: S = diag(1...,-1...), Z = diag(e2,...)."""
    dim = 2 * n_pairs
    if m is None:
        m = dim // 2
    return SymmetryPair(build_canonical_S(m, dim), build_canonical_Z(n_pairs))


def build_dirac_S() -> np.ndarray:
    """8x8 parity in the Dirac-representation momentum basis.

    Identity 2x2 blocks swap the upper and lower pairs of spinor blocks.
    """
    swap = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
    return kron(swap, np.eye(2))


def dirac_pair() -> SymmetryPair:
    """8D Dirac-basis pair; Z acts as e2 on each spin doublet."""
    return SymmetryPair(build_dirac_S(), kron(np.eye(4), E2))


def block_pair() -> SymmetryPair:
    """4x4 pair for the helicity-reduced Dirac blocks.

    S is the block-swap parity (the 8D Dirac S at block level) and Z is the
    canonical diag(e2, e2).
    """
    swap = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=complex)
    return SymmetryPair(swap, build_canonical_Z(2))


def apply_T(sym: SymmetryPair, v) -> np.ndarray:
    """Antilinear time reversal: T v = Z conj(v)."""
    return sym.z @ as_cvector(v, sym.dim).conj()


def apply_PT(sym: SymmetryPair, v) -> np.ndarray:
    """Combined PT action: S Z conj(v)."""
    return sym.s @ sym.z @ as_cvector(v, sym.dim).conj()
