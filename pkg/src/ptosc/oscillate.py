"""Flavour bases, spectral time evolution and transition-probability tables.

Flavour states are the equal-weight superpositions of negative- and
positive-eigenvalue kets (f'1 = (e1 + e3)/sqrt(2), ...).  Evolution is
spectral — exact for diagonalizable H — and probabilities are squared CPT
amplitudes, which makes every table row-stochastic.  ``naive_flavour_B``
reproduces the diagnostic showing that coordinate-basis flavour kets fail
the canonical completeness relation (B != 1 generically).
"""

import io as _io
import math
from dataclasses import dataclass

import numpy as np

from .errors import BrokenPTError, ConstructionError, NumericalError
from .coperator import COperator
from .inner import MomentumState, cpt_ip, cpt_ip_momentum, superpose
from .linalg import as_cvector
from .symmetry import SymmetryPair

#: Probabilities below this are clamped to zero in emitted tables.
CLAMP = 1e-14

ROW_SUM_TOL = 1e-10


@dataclass(frozen=True)
class FlavourBasis:
    """Four CPT-orthonormal flavour kets and the eigen/flavour mixing matrix.

    ``mixing[l, j]`` is the coefficient of flavour ket j in eigenket l, so
    for the standard basis it is a (1/sqrt(2))-scaled signed permutation.
    ``states`` carries the momentum-state form of each ket when the
    eigensystem provides one.
    """

    kets: tuple[np.ndarray, ...]
    mixing: np.ndarray
    states: tuple[MomentumState, ...] | None = None


@dataclass(frozen=True)
class TransitionTable:
    """P(f_i -> f_j) on a time grid; every row sums to 1.

    ``probs[k]`` is the 4x4 matrix at ``t_grid[k]`` with rows indexed by the
    initial flavour.  Construction enforces row-stochasticity to 1e-10 and
    clamps entries below 1e-14 to exactly 0.
    """

    t_grid: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        if probs.shape != (len(t), 4, 4):
            raise NumericalError(f"probability array shape {probs.shape} != ({len(t)}, 4, 4)")
        worst = float(np.max(np.abs(probs.sum(axis=2) - 1.0)))
        if worst > ROW_SUM_TOL:
            raise NumericalError("transition rows are not stochastic", residual=worst)
        if probs.min() < -ROW_SUM_TOL or probs.max() > 1 + ROW_SUM_TOL:
            raise NumericalError("transition probabilities leave [0, 1]")
        probs = np.clip(probs, 0.0, 1.0)
        probs[probs < CLAMP] = 0.0
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "probs", probs)

    def to_csv(self) -> str:
        """CSV with header t,P11,...,P44 and 12-significant-digit floats."""
        buf = _io.StringIO()
        header = ["t"] + [f"P{i}{j}" for i in range(1, 5) for j in range(1, 5)]
        buf.write(",".join(header) + "\n")
        for t, mat in zip(self.t_grid, self.probs):
            row = [f"{t:.12g}"] + [f"{x:.12g}" for x in mat.reshape(-1)]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "t_grid": [float(t) for t in self.t_grid],
            "probs": [[[float(x) for x in row] for row in mat] for mat in self.probs],
        }


def _require_real_spectrum(eigsys) -> np.ndarray:
    values = eigsys.values
    if np.max(np.abs(np.imag(values))) > 1e-12 * max(1.0, float(np.max(np.abs(values)))):
        raise BrokenPTError("cannot evolve with a complex spectrum", values)
    return np.real(values)


def _cpt_coefficient(sym: SymmetryPair, c: COperator, eigsys, j: int, v) -> complex:
    """CPT expansion coefficient of v on eigenket j."""
    state = eigsys.states[j]
    if state is not None and isinstance(v, MomentumState):
        return cpt_ip_momentum(sym, c.at, state, v)
    return cpt_ip(sym, c.matrix, eigsys.kets[j], as_cvector(v, sym.dim))


def evolve(sym: SymmetryPair, eigsys, c: COperator, v, t: float) -> np.ndarray:
    """U(t) v = sum_j exp(-i lam_j t) c_j e_j with CPT coefficients c_j."""
    values = _require_real_spectrum(eigsys)
    out = np.zeros(sym.dim, dtype=complex)
    for j, lam in enumerate(values):
        out += np.exp(-1j * lam * t) * _cpt_coefficient(sym, c, eigsys, j, v) * eigsys.kets[j]
    return out


def standard_flavour_basis(sym: SymmetryPair, eigsys, c: COperator) -> FlavourBasis:
    """The (e1 +/- e3)/sqrt(2), (e2 +/- e4)/sqrt(2) flavour combinations.

    Validates that the input eigenkets are CPT-orthonormal (to 1e-10) and
    returns kets ordered f'1 = (e1+e3), f'2 = (e2+e4), f'3 = (e1-e3),
    f'4 = (e2-e4), all over sqrt(2).
    """
    if len(eigsys.pairs) != 4:
        raise ConstructionError("flavour bases require a 4-level eigensystem")
    gram = np.array(
        [
            [_cpt_coefficient(sym, c, eigsys, j, eigsys.kets[k]) for k in range(4)]
            for j in range(4)
        ]
    )
    if eigsys.states is not None and all(st is not None for st in eigsys.states):
        gram = np.array(
            [
                [cpt_ip_momentum(sym, c.at, eigsys.states[j], eigsys.states[k]) for k in range(4)]
                for j in range(4)
            ]
        )
    defect = float(np.max(np.abs(gram - np.eye(4))))
    if defect > 1e-10:
        raise ConstructionError(f"eigenkets are not CPT-orthonormal (defect {defect:.3e})")
    r = 1.0 / math.sqrt(2.0)
    combos = ((0, 2, 1.0), (1, 3, 1.0), (0, 2, -1.0), (1, 3, -1.0))
    kets = tuple(r * (eigsys.kets[a] + sgn * eigsys.kets[b]) for a, b, sgn in combos)
    # mixing[l, j]: coefficient of flavour ket j in eigenket l
    # e1 = (f'1 + f'3)/sqrt(2), e3 = (f'1 - f'3)/sqrt(2), similarly e2/e4.
    mixing = r * np.array(
        [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]], dtype=complex
    )
    states = None
    if all(st is not None for st in eigsys.states):
        states = tuple(
            superpose([r, sgn * r], [eigsys.states[a], eigsys.states[b]])
            for a, b, sgn in combos
        )
    return FlavourBasis(kets=kets, mixing=mixing, states=states)


def transition_table(sym: SymmetryPair, basis: FlavourBasis, eigsys, c: COperator, t_grid) -> TransitionTable:
    """P(f_i -> f_j)(t) = |((f'_j | f'_i(t)))|^2 with the CPT inner product."""
    values = _require_real_spectrum(eigsys)
    sources = basis.states if basis.states is not None else basis.kets
    coeff = np.array(
        [[_cpt_coefficient(sym, c, eigsys, j, sources[i]) for i in range(4)] for j in range(4)]
    )
    # CPT-Hermiticity: ((f'_m | e_j)) = conj(((e_j | f'_m))).
    bra = coeff.conj().T
    t_grid = np.asarray(t_grid, dtype=float)
    probs = np.empty((len(t_grid), 4, 4))
    for k, t in enumerate(t_grid):
        phases = np.exp(-1j * values * t)
        amp = bra @ (phases[:, None] * coeff)
        probs[k] = np.abs(amp.T) ** 2  # rows: initial flavour i
    return TransitionTable(t_grid=t_grid, probs=probs)


def naive_flavour_B(sym: SymmetryPair, eigsys, c: COperator) -> np.ndarray:
    """B_jk = sum_l alpha_lj conj(alpha_lk) for coordinate flavour kets.

    alpha_lk is the CPT coefficient of the k-th coordinate basis vector on
    eigenket l.  B equals the identity only when the eigenbasis is
    Dirac-orthonormal; its deviation from 1 quantifies the failure of the
    canonical completeness relation in the coordinate flavour basis.
    """
    dim = sym.dim
    alpha = np.array(
        [
            [_cpt_coefficient(sym, c, eigsys, l, np.eye(dim)[:, k]) for k in range(dim)]
            for l in range(dim)
        ]
    )
    return alpha.T @ alpha.conj()


def default_t_grid(eigsys, n: int = 64) -> np.ndarray:
    """64 uniform points on [0, 2 pi / min_gap] (one full oscillation period)."""
    values = np.sort(np.real(eigsys.values))
    gaps = np.diff(values)
    gaps = gaps[gaps > 1e-12 * max(1.0, float(np.max(np.abs(values))))]
    if len(gaps) == 0:
        raise ConstructionError("spectrum has no nonzero gap; no oscillation period")
    return np.linspace(0.0, 2.0 * math.pi / float(gaps.min()), n)
