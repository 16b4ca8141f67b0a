"""Construction and validation of the C operator.

C is built spectrally from a PT-orthonormal eigenbasis as

    C = sum_j e_j (e_j^dag S)        (static kets), or
    C(p) = sum_j e_j(p) (e_j(-p)^dag S)   (momentum kets, CS convention),

with *no* PT-sign weights: acting on the basis this gives C e_k = s_k e_k,
so C has eigenvalues equal to the PT signs, squares to the identity and
commutes with the Hamiltonian.  The sign-weighted sum
sum_j s_j e_j (e_j^dag S) is instead the resolution of the identity in the
CPT inner product, measured by :func:`completeness_defect`.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConstructionError
from .linalg import operator_norm, require_square
from .symmetry import SymmetryPair


@dataclass(frozen=True)
class COperator:
    """A validated C operator.

    ``matrix`` is C at the working momentum; ``matrix_at`` (present when the
    eigenbasis carries momentum states) evaluates C at any signed momentum,
    as needed for the bra side of CPT products.
    """

    matrix: np.ndarray
    matrix_at: Callable[[float], np.ndarray] | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def at(self, q: float) -> np.ndarray:
        if self.matrix_at is None:
            return self.matrix
        return self.matrix_at(q)


def _spectral_sum(sym: SymmetryPair, kets, bra_kets, weights=None) -> np.ndarray:
    total = np.zeros((sym.dim, sym.dim), dtype=complex)
    for j, (ket, bra_ket) in enumerate(zip(kets, bra_kets)):
        w = 1.0 if weights is None else weights[j]
        total += w * np.outer(ket, bra_ket.conj() @ sym.s)
    return total


def build_C(sym: SymmetryPair, eigensystem, hamiltonian=None, tol: float = 1e-10) -> COperator:
    """Assemble C from a PT-orthonormal eigensystem and validate it.

    Checks C^2 = 1 and, when the Hamiltonian is supplied, [C, H] = 0, both
    to ``tol`` in operator norm; a violation raises
    :class:`ConstructionError`.  If every eigenpair carries a momentum state
    the returned operator can also be evaluated at reflected momenta.
    """
    kets = eigensystem.kets
    states = eigensystem.states
    momentum = all(st is not None for st in states)
    if momentum:
        p = states[0].p
        bra_kets = [st.spinor_at(-p) for st in states]
    else:
        bra_kets = kets
    c = _spectral_sum(sym, kets, bra_kets)
    defect = operator_norm(c @ c - np.eye(sym.dim))
    if defect > tol:
        raise ConstructionError(f"C^2 != 1 (defect {defect:.3e} > {tol:.1e})")
    if hamiltonian is not None:
        h = require_square(hamiltonian)
        comm = operator_norm(c @ h - h @ c)
        if comm > tol * max(1.0, operator_norm(h)):
            raise ConstructionError(f"[C, H] != 0 (defect {comm:.3e})")
    matrix_at = None
    if momentum:
        def matrix_at(q: float) -> np.ndarray:
            return _spectral_sum(
                sym,
                [st.spinor_at(q) for st in states],
                [st.spinor_at(-q) for st in states],
            )
    return COperator(matrix=c, matrix_at=matrix_at)


def closed_form_C_h8v(m0: float, m2: float, p: float) -> np.ndarray:
    """Analytic C of the reduced h8v block: H(p) / eps.

    Independent of the spectral construction; used as its cross-check.  As
    p -> infinity this tends to diag(1, 1, -1, -1) + O(1/p).
    """
    from .models import effective_mass, h8v_reduced_hamiltonian

    eps = float(np.hypot(p, effective_mass(m0, m2)))
    return h8v_reduced_hamiltonian(m0, m2, p) / eps


def completeness_defect(sym: SymmetryPair, eigensystem, drop: int | None = None) -> float:
    """Operator-norm defect of the CPT resolution of the identity.

    ``sum_j s_j e_j (e_j(-p)^dag S)`` should equal the identity; dropping any
    term (``drop`` = index) makes the defect at least 1.
    """
    kets = eigensystem.kets
    states = eigensystem.states
    signs = eigensystem.signs
    if all(st is not None for st in states):
        p = states[0].p
        bra_kets = [st.spinor_at(-p) for st in states]
    else:
        bra_kets = kets
    if drop is not None:
        kets = [k for j, k in enumerate(kets) if j != drop]
        bra_kets = [k for j, k in enumerate(bra_kets) if j != drop]
        signs = [s for j, s in enumerate(signs) if j != drop]
    total = _spectral_sum(sym, kets, bra_kets, weights=signs)
    return operator_norm(total - np.eye(sym.dim))
