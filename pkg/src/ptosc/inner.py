"""Inner products: Dirac, PT (indefinite), momentum-space PT and CPT.

The PT product is evaluated in its matrix form a^dag S b, which the symmetry
pair construction has already checked to agree with the formal antilinear
expression (PT a)^T Z b.  For momentum-carrying states the CS convention is
used: the bra spinor is evaluated at -p (parity flips the momentum), so a
state has a nonvanishing overlap with itself.  The historical JSM convention,
under which that self-overlap vanishes, survives only inside
:func:`jsm_cs_comparison`.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateNormError, ShapeError
from .linalg import adjoint, as_cvector, require_square
from .symmetry import SymmetryPair

#: PT self-overlaps smaller than this are treated as vanishing norm.
NORM_FLOOR = 1e-12


@dataclass(frozen=True)
class MomentumState:
    """A reduced-subspace spinor parametrized by a signed momentum scalar.

    ``spinor_at(q)`` evaluates the 4-component spinor at momentum ``q`` along
    the direction of motion; reflections (parity) are realized as evaluation
    at ``-p``.  The helicity factor is carried separately: overlaps between
    opposite-helicity states vanish and same-helicity spinor factors
    contribute xi^dag xi = 1.
    """

    spinor_at: Callable[[float], np.ndarray]
    p: float
    helicity: int = +1


def superpose(coeffs: Sequence[complex], states: Sequence[MomentumState]) -> MomentumState:
    """Linear combination of momentum states sharing the same (p, helicity)."""
    ps = {s.p for s in states}
    hs = {s.helicity for s in states}
    if len(ps) != 1 or len(hs) != 1:
        raise ShapeError("can only superpose states with identical momentum and helicity")
    coeffs = [complex(c) for c in coeffs]
    members = list(states)

    def spinor_at(q: float) -> np.ndarray:
        return sum(c * s.spinor_at(q) for c, s in zip(coeffs, members))

    return MomentumState(spinor_at=spinor_at, p=ps.pop(), helicity=hs.pop())


def dirac_ip(a, b) -> complex:
    """Conventional Dirac inner product a^dag b (antilinear in the first slot)."""
    a, b = as_cvector(a), as_cvector(b)
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(a.conj() @ b)


def pt_ip(sym: SymmetryPair, a, b) -> complex:
    """Indefinite PT inner product a^dag S b."""
    a = as_cvector(a, sym.dim)
    b = as_cvector(b, sym.dim)
    return complex(a.conj() @ sym.s @ b)


def pt_ip_momentum(sym: SymmetryPair, a: MomentumState, b: MomentumState) -> complex:
    """CS momentum-space PT product: a(-p)^dag S b(p), delta on p and helicity."""
    if a.helicity != b.helicity or a.p != b.p:
        return 0j
    bra = as_cvector(a.spinor_at(-a.p), sym.dim)
    ket = as_cvector(b.spinor_at(b.p), sym.dim)
    return complex(bra.conj() @ sym.s @ ket)


@dataclass(frozen=True)
class InnerProductComparison:
    """Self-overlap of a momentum state under the JSM and CS conventions."""

    p: float
    jsm_self: complex
    cs_self: complex

    @property
    def conventions_coincide(self) -> bool:
        return abs(self.jsm_self - self.cs_self) < 1e-12


def jsm_cs_comparison(sym: SymmetryPair, a: MomentumState) -> InnerProductComparison:
    """Contrast the JSM and CS self-overlaps of a momentum state.

    JSM pairs momenta k and -k, so for p != 0 the self-overlap is identically
    zero (the selection rule k = -p is never met by the state itself); CS
    pairs equal momenta and gives a finite value.  At p = 0 both coincide.
    """
    spinor = as_cvector(a.spinor_at(-a.p), sym.dim)
    cs = complex(spinor.conj() @ sym.s @ as_cvector(a.spinor_at(a.p), sym.dim))
    jsm = cs if a.p == 0 else 0j
    return InnerProductComparison(p=a.p, jsm_self=jsm, cs_self=cs)


def pt_adjoint(sym: SymmetryPair, h) -> np.ndarray:
    """PT adjoint S^-1 H^dag S (S is involutive, so S^-1 = S)."""
    h = require_square(h)
    if h.shape[0] != sym.dim:
        raise ShapeError(f"operator dimension {h.shape[0]} != symmetry dimension {sym.dim}")
    return sym.s @ adjoint(h) @ sym.s


def pt_normalize(sym: SymmetryPair, v) -> tuple[np.ndarray, int]:
    """Scale v to unit |PT norm| and return (ket, sign of the PT norm).

    The overall phase is fixed by making the first component of magnitude
    above 1e-12 real and positive, so normalized kets are reproducible.
    """
    v = as_cvector(v, sym.dim)
    norm = pt_ip(sym, v, v).real
    if abs(norm) <= NORM_FLOOR * float((v.conj() @ v).real):
        raise DegenerateNormError("vector has vanishing PT norm")
    out = v / np.sqrt(abs(norm))
    nz = int(np.argmax(np.abs(out) > 1e-12))
    out = out * np.exp(-1j * np.angle(out[nz]))
    return out, (1 if norm > 0 else -1)


def cpt_ip(sym: SymmetryPair, c, a, b) -> complex:
    """Positive-definite CPT inner product (C a)^dag S b.

    ``c`` is a valid C operator for the model the vectors live in; with
    [C, PT] = 0 this equals the formal (CPT a)^T Z b.
    """
    c = require_square(c)
    a = as_cvector(a, sym.dim)
    b = as_cvector(b, sym.dim)
    return complex((c @ a).conj() @ sym.s @ b)


def cpt_ip_momentum(
    sym: SymmetryPair,
    c_at: Callable[[float], np.ndarray],
    a: MomentumState,
    b: MomentumState,
) -> complex:
    """CPT product for momentum states: (C(-p) a(-p))^dag S b(p)."""
    if a.helicity != b.helicity or a.p != b.p:
        return 0j
    bra = require_square(c_at(-a.p)) @ as_cvector(a.spinor_at(-a.p), sym.dim)
    ket = as_cvector(b.spinor_at(b.p), sym.dim)
    return complex(bra.conj() @ sym.s @ ket)
