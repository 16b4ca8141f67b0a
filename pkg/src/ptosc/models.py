"""Model Hamiltonians and their closed-form eigensystems.

Covers the canonical-basis 4D model (``sfdm``), the generic T-odd block form,
and the 8D Dirac-representation family ``h8`` with its restrictions
``h8r`` (m3 = 0) and ``h8v`` (m1 = m3 = 0), at zero and nonzero momentum.

Closed-form eigenvectors follow the published displays with two corrections,
both fixed against the numerical eigensolver:

* the 4D model's second eigenvalue pair is +1 (the appendix restates -1);
* the ``h8r`` kets' third component carries an overall sign flip relative to
  the printed form; the constants collapse to a = (sqrt(m0^2 - m2^2) + i m2)/m0
  and its conjugate, and the printed normalization n is then exact.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BrokenPTError,
    DegenerateCombinationError,
    ParameterError,
    ShapeError,
)
from .inner import MomentumState, pt_normalize
from .io import matrix_from_json, matrix_to_json
from .linalg import (
    SIGMA,
    SIGMA0,
    adjoint,
    as_cmatrix,
    cluster_indices,
    eig_oracle,
    kron,
    operator_norm,
)
from .symmetry import SymmetryPair, block_pair, canonical_pair, dirac_pair

# ---------------------------------------------------------------------------
# eigensystem containers


@dataclass(frozen=True)
class EigenPair:
    value: float
    ket: np.ndarray
    pt_sign: int
    state: MomentumState | None = None


@dataclass(frozen=True)
class EigenSystem:
    """Ordered eigenvalues with PT-normalized kets and degeneracy clusters.

    Pairs are sorted ascending by eigenvalue; ``clusters`` partitions the
    index range into groups of equal eigenvalues.
    """

    pairs: tuple[EigenPair, ...]
    clusters: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if not self.clusters:
            values = np.array([p.value for p in self.pairs])
            scale = float(np.max(np.abs(values))) if len(values) else 1.0
            groups = cluster_indices(values, scale)
            object.__setattr__(self, "clusters", tuple(tuple(g) for g in groups))

    @property
    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.pairs])

    @property
    def kets(self) -> list[np.ndarray]:
        return [p.ket for p in self.pairs]

    @property
    def signs(self) -> list[int]:
        return [p.pt_sign for p in self.pairs]

    @property
    def states(self) -> list[MomentumState | None]:
        return [p.state for p in self.pairs]

    @property
    def dim(self) -> int:
        return self.pairs[0].ket.shape[0]

    def cluster_projector(self, cluster) -> np.ndarray:
        q, _ = np.linalg.qr(np.column_stack([self.pairs[k].ket for k in cluster]))
        return q @ q.conj().T


# ---------------------------------------------------------------------------
# quaternion helpers


def real_quaternion(b0: float, b1: float, b2: float, b3: float) -> np.ndarray:
    """2x2 complex form b0 sigma_0 + i (b1 sigma_1 + b2 sigma_2 + b3 sigma_3)."""
    return b0 * SIGMA[0] + 1j * (b1 * SIGMA[1] + b2 * SIGMA[2] + b3 * SIGMA[3])


def quaternion_coefficients(b) -> np.ndarray:
    """Inverse of :func:`real_quaternion`; raises if b is not a real quaternion."""
    b = as_cmatrix(b)
    if b.shape != (2, 2):
        raise ShapeError("quaternions are 2x2 complex matrices")
    coeffs = np.array([np.trace(s @ b) / 2 for s in SIGMA])
    q = np.array([coeffs[0].real, coeffs[1].imag, coeffs[2].imag, coeffs[3].imag])
    if operator_norm(real_quaternion(*q) - b) > 1e-12 * max(1.0, operator_norm(b)):
        raise ParameterError("matrix is not a real quaternion")
    return q


# ---------------------------------------------------------------------------
# SFDM (canonical-basis 4D model)


@dataclass(frozen=True)
class SfdmParams:
    """Hyperbolic parametrization of the det = 1 canonical 4D family.

    a0 = cosh(chi) and the quaternion components b0..b3 sit on the unit
    hyperboloid a0^2 - b0^2 - b1^2 - b2^2 - b3^2 = 1 by construction.
    """

    chi: float
    psi: float
    theta: float
    phi: float

    @property
    def a0(self) -> float:
        return math.cosh(self.chi)

    @property
    def b(self) -> np.ndarray:
        """Quaternion coefficients (b0, b1, b2, b3)."""
        sh = math.sinh(self.chi)
        return np.array(
            [
                sh * math.cos(self.psi),
                sh * math.sin(self.psi) * math.sin(self.theta) * math.cos(self.phi),
                sh * math.sin(self.psi) * math.sin(self.theta) * math.sin(self.phi),
                sh * math.sin(self.psi) * math.cos(self.theta),
            ]
        )


def sfdm_hamiltonian(params: SfdmParams) -> np.ndarray:
    """4x4 block matrix [[a0, i b], [i b^dag, -a0]] in the canonical basis."""
    b = real_quaternion(*params.b)
    a = params.a0 * SIGMA0
    return np.block([[a, 1j * b], [1j * adjoint(b), -a]])


def sfdm_eigensystem(params: SfdmParams) -> EigenSystem:
    """Closed-form eigensystem: eigenvalues (-1, -1, +1, +1).

    At chi = 0 the parametrization of the eigenvectors degenerates (the
    Hamiltonian is diag(1, 1, -1, -1)); coordinate eigenvectors are used.
    """
    sym = canonical_pair(2)
    chi, psi, th, ph = params.chi, params.psi, params.theta, params.phi
    if abs(math.sinh(chi / 2)) < 1e-12:
        kets = [
            np.array([0, 0, 1, 0], dtype=complex),
            np.array([0, 0, 0, 1], dtype=complex),
            np.array([1, 0, 0, 0], dtype=complex),
            np.array([0, 1, 0, 0], dtype=complex),
        ]
        raw = kets
    else:
        sech = 1 / math.cosh(chi / 2)
        csch = 1 / math.sinh(chi / 2)
        sh = math.sinh(chi)
        e1 = np.array(
            [
                math.sin(th) * np.exp(-1j * ph) * math.sin(psi) * math.sinh(chi / 2),
                -0.5j * sech * sh * (math.cos(psi) - 1j * math.sin(psi) * math.cos(th)),
                0,
                math.cosh(chi / 2),
            ]
        )
        e2 = np.array(
            [
                0.5 * sech * (-1j * math.cos(psi) + math.sin(psi) * math.cos(th)) * sh,
                math.sin(th) * np.exp(1j * ph) * math.sin(psi) * math.sinh(chi / 2),
                math.cosh(chi / 2),
                0,
            ]
        )
        e3 = np.array(
            [
                math.cosh(chi / 2) * math.sin(th) * math.sin(psi) * np.exp(-1j * ph),
                -0.5j * csch * (math.cos(psi) - 1j * math.cos(th) * math.sin(psi)) * sh,
                0,
                math.sinh(chi / 2),
            ]
        )
        e4 = np.array(
            [
                0.5 * csch * (-1j * math.cos(psi) + math.cos(th) * math.sin(psi)) * sh,
                math.cosh(chi / 2) * math.sin(th) * math.sin(psi) * np.exp(1j * ph),
                math.sinh(chi / 2),
                0,
            ]
        )
        raw = [e1, e2, e3, e4]
    pairs = []
    for lam, ket in zip((-1.0, -1.0, 1.0, 1.0), raw):
        normed, sign = pt_normalize(sym, ket)
        pairs.append(EigenPair(lam, normed, sign))
    return EigenSystem(tuple(pairs))


# ---------------------------------------------------------------------------
# generic T-odd block form


@dataclass(frozen=True)
class GenericTOddParams:
    """Blocks of the generic T-odd Hamiltonian [[A, iB], [iB^dag, D]].

    A and D must be Hermitian 2x2 matrices and B a real quaternion.  Note
    that PT commutation additionally requires A and D to be real multiples
    of the identity (Hermitian and quaternion-real at once); pseudo-
    Hermiticity alone holds for any Hermitian A, D.
    """

    a: np.ndarray
    d: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a, d, b = (as_cmatrix(m) for m in (self.a, self.d, self.b))
        for name, m in (("A", a), ("D", d), ("B", b)):
            if m.shape != (2, 2):
                raise ShapeError(f"{name} must be 2x2")
        for name, m in (("A", a), ("D", d)):
            if operator_norm(m - adjoint(m)) > 1e-12 * max(1.0, operator_norm(m)):
                raise ParameterError(f"{name} must be Hermitian")
        quaternion_coefficients(b)  # raises if not a real quaternion
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "b", b)


def generic_t_odd_hamiltonian(params: GenericTOddParams) -> np.ndarray:
    return np.block(
        [[params.a, 1j * params.b], [1j * adjoint(params.b), params.d]]
    )


# ---------------------------------------------------------------------------
# 8D Dirac-representation family


@dataclass(frozen=True)
class Dirac8Params:
    """Masses, momentum magnitude and direction for the 8D family."""

    m0: float
    m1: float = 0.0
    m2: float = 0.0
    m3: float = 0.0
    p: float = 0.0
    theta_p: float = 0.0
    phi_p: float = 0.0


def sigma_dot_n(theta: float, phi: float) -> np.ndarray:
    """sigma . n_hat for the unit direction (theta, phi)."""
    n = (
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    )
    return n[0] * SIGMA[1] + n[1] * SIGMA[2] + n[2] * SIGMA[3]


def mass_block(m0: float, m1: float, m2: float, m3: float) -> np.ndarray:
    """Block-level (4x4) mass matrix of the 8D Hamiltonian."""
    return np.array(
        [
            [0, 0, m0 + m3, m1 - 1j * m2],
            [0, 0, m1 + 1j * m2, m0 - m3],
            [m0 + m3, m1 + 1j * m2, 0, 0],
            [m1 - 1j * m2, m0 - m3, 0, 0],
        ],
        dtype=complex,
    )


def h8_hamiltonian(params: Dirac8Params) -> np.ndarray:
    """Full 8x8 Hamiltonian in the momentum basis."""
    sp = params.p * sigma_dot_n(params.theta_p, params.phi_p)
    alpha_part = kron(np.diag([1.0, 1.0, -1.0, -1.0]), sp)
    mass_part = kron(mass_block(params.m0, params.m1, params.m2, params.m3), np.eye(2))
    return alpha_part + mass_part


def h8r_params(m0: float, m1: float, m2: float, p: float = 0.0, theta_p: float = 0.0, phi_p: float = 0.0) -> Dirac8Params:
    return Dirac8Params(m0=m0, m1=m1, m2=m2, m3=0.0, p=p, theta_p=theta_p, phi_p=phi_p)


def h8v_params(m0: float, m2: float, p: float = 0.0, theta_p: float = 0.0, phi_p: float = 0.0) -> Dirac8Params:
    return Dirac8Params(m0=m0, m1=0.0, m2=m2, m3=0.0, p=p, theta_p=theta_p, phi_p=phi_p)


def h8_alphas() -> list[np.ndarray]:
    """The three 8x8 velocity matrices (coefficients of the momentum components)."""
    block = np.diag([1.0, 1.0, -1.0, -1.0])
    return [kron(block, SIGMA[i]) for i in (1, 2, 3)]


def h8_beta() -> np.ndarray:
    """Coefficient matrix of m0; squares to the identity."""
    return kron(mass_block(1.0, 0.0, 0.0, 0.0), np.eye(2))


def effective_mass(m0: float, m2: float) -> float:
    return math.sqrt(m0 * m0 - m2 * m2)


def _require_unbroken(m0: float, m2: float, p: float = 0.0) -> None:
    if m0 <= abs(m2):
        imag = math.sqrt(m2 * m2 - m0 * m0)
        lam = complex(0.0, math.hypot(imag, 0.0))
        eigs = [p + lam, p - lam, -p + lam, -p - lam] if p else [lam, lam, -lam, -lam]
        raise BrokenPTError(
            f"PT-broken regime: |m2| = {abs(m2)} >= m0 = {m0}", eigenvalues=eigs
        )


def h8v_reduced_hamiltonian(m0: float, m2: float, p: float) -> np.ndarray:
    """4x4 helicity-reduced block of h8v at signed momentum p."""
    return np.array(
        [
            [p, 0, m0, -1j * m2],
            [0, p, 1j * m2, m0],
            [m0, 1j * m2, -p, 0],
            [-1j * m2, m0, 0, -p],
        ],
        dtype=complex,
    )


def h8v_p0_eigensystem(m0: float, m2: float) -> EigenSystem:
    """Closed-form eigensystem of the h8v block at p = 0.

    Eigenvalues are +/- sqrt(m0^2 - m2^2), each doubly degenerate.  The
    second ket of each pair is the combination u1 + (i m0 / m2) u2', which is
    singular at m2 = 0: use :func:`h8v_reduced_eigensystem` with m2 = 0 for
    the Hermitian limit.
    """
    _require_unbroken(m0, m2)
    if m2 == 0:
        raise DegenerateCombinationError(
            "the paired-ket combination has a 1/m2 pole at m2 = 0; "
            "use the Hermitian-limit eigenbasis (h8v_reduced_eigensystem with p = 0)"
        )
    sym = block_pair()
    b2 = effective_mass(m0, m2)
    v1 = np.array([1j * m2 / b2, -m0 / b2, 0, 1], dtype=complex)
    v2p = np.array([-m0 / b2, -1j * m2 / b2, 1, 0], dtype=complex)
    u1 = np.array([-1j * m2 / b2, m0 / b2, 0, 1], dtype=complex)
    u2p = np.array([m0 / b2, 1j * m2 / b2, 1, 0], dtype=complex)
    u2 = u1 + (1j * m0 / m2) * u2p
    v2 = v1 + (1j * m0 / m2) * v2p
    pairs = []
    for lam, ket in ((-b2, v1), (-b2, v2), (b2, u1), (b2, u2)):
        normed, sign = pt_normalize(sym, ket)
        pairs.append(EigenPair(lam, normed, sign))
    return EigenSystem(tuple(pairs))


def h8r_p0_eigensystem(m0: float, m1: float, m2: float) -> EigenSystem:
    """Closed-form eigensystem of the h8r block at p = 0.

    Eigenvalues +/-m1 +/- sqrt(m0^2 - m2^2); kets built from
    a = (sqrt(m0^2 - m2^2) + i m2) / m0 with normalization
    n = 1 / (2 (1 - m2^2/m0^2)^(1/4)).
    """
    _require_unbroken(m0, m2)
    sq = effective_mass(m0, m2)
    a = (sq + 1j * m2) / m0
    n = 1.0 / (2.0 * (1.0 - (m2 / m0) ** 2) ** 0.25)
    tv1 = n * np.array([-1, -a, a, 1], dtype=complex)
    tv2 = n * np.array([1, -a.conjugate(), -a.conjugate(), 1], dtype=complex)
    tu1 = n * np.array([-1, a.conjugate(), -a.conjugate(), 1], dtype=complex)
    tu2 = n * np.array([1, a, a, 1], dtype=complex)
    sym = block_pair()
    entries = [(-m1 - sq, tv1), (m1 - sq, tv2), (sq - m1, tu1), (sq + m1, tu2)]
    entries.sort(key=lambda t: t[0])
    pairs = []
    for lam, ket in entries:
        normed, sign = pt_normalize(sym, ket)
        pairs.append(EigenPair(lam, normed, sign))
    return EigenSystem(tuple(pairs))


def helicity_spinors(theta_p: float, phi_p: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors xi_+/- of sigma . n_hat with eigenvalues +/-1."""
    half = theta_p / 2.0
    xi_plus = np.array([math.cos(half), np.exp(1j * phi_p) * math.sin(half)], dtype=complex)
    xi_minus = np.array([-np.exp(-1j * phi_p) * math.sin(half), math.cos(half)], dtype=complex)
    return xi_plus, xi_minus


def h8v_reduced_eigensystem(m0: float, m2: float, p: float, helicity: int = +1) -> EigenSystem:
    """Closed-form eigensystem of the 4x4 reduced h8v block at momentum p.

    Eigenvalues -eps (v kets) and +eps (u kets) with
    eps = sqrt(p^2 + m0^2 - m2^2); the kets carry the 1/sqrt(2 m0 eps)
    normalization and are exposed as momentum states whose spinors evaluate
    the closed form at any signed momentum (the bra side uses -p).
    """
    _require_unbroken(m0, m2, p)
    meff = effective_mass(m0, m2)
    eps = math.hypot(p, meff)

    def make(kind: str) -> MomentumState:
        def spinor_at(q: float) -> np.ndarray:
            norm = 1.0 / math.sqrt(2.0 * m0 * eps)
            if kind == "v1":
                vec = [1j * m2 * (eps - q) / meff, m0 * (q - eps) / meff, 0, meff]
            elif kind == "v2":
                vec = [1j * (q - eps), 0, 1j * m0, m2]
            elif kind == "u1":
                vec = [-1j * m2 * (eps + q) / meff, m0 * (q + eps) / meff, 0, meff]
            else:  # u2
                vec = [1j * (q + eps), 0, 1j * m0, m2]
            return norm * np.array(vec, dtype=complex)

        return MomentumState(spinor_at=spinor_at, p=p, helicity=helicity)

    pairs = []
    for lam, kind, sign in ((-eps, "v1", -1), (-eps, "v2", -1), (eps, "u1", +1), (eps, "u2", +1)):
        state = make(kind)
        pairs.append(EigenPair(lam, state.spinor_at(p), sign, state=state))
    return EigenSystem(tuple(pairs))


def lift_reduced_ket(spinor: np.ndarray, theta_p: float, phi_p: float, helicity: int = +1) -> np.ndarray:
    """Tensor a reduced 4-spinor with a helicity spinor into the full 8D basis."""
    xi_plus, xi_minus = helicity_spinors(theta_p, phi_p)
    xi = xi_plus if helicity > 0 else xi_minus
    return np.kron(np.asarray(spinor, dtype=complex), xi)


# ---------------------------------------------------------------------------
# oracle-backed PT-orthonormal eigensystems


def pt_orthonormal_eigensystem(sym: SymmetryPair, h: np.ndarray, tol: float = 1e-10) -> EigenSystem:
    """PT-orthonormalize the numerical eigenvectors of a matrix.

    Used for family members without closed forms (h8 with m3 != 0).  Within
    each degenerate cluster the indefinite Gram matrix V^dag S V is
    diagonalized, which yields PT-orthogonal kets with signs even when the
    cluster mixes positive and negative PT norms.  Raises
    :class:`BrokenPTError` if the spectrum is complex.
    """
    decomp = eig_oracle(h, tol=tol)
    scale = max(operator_norm(h), 1.0)
    if np.max(np.abs(decomp.values.imag)) > tol * scale:
        raise BrokenPTError("complex spectrum: no PT-orthonormal basis", decomp.values)
    pairs = []
    for cluster in decomp.clusters:
        block = decomp.vectors[:, list(cluster)]
        gram = block.conj().T @ sym.s @ block
        evals, u = np.linalg.eigh(gram)
        rotated = block @ u
        for k, g in enumerate(evals):
            normed, sign = pt_normalize(sym, rotated[:, k])
            if sign != (1 if g > 0 else -1):  # pragma: no cover - defensive
                sign = 1 if g > 0 else -1
            pairs.append(EigenPair(float(decomp.values[cluster[0]].real), normed, sign))
    pairs.sort(key=lambda pr: pr.value)
    return EigenSystem(tuple(pairs))


# ---------------------------------------------------------------------------
# model specification records

MODEL_NAMES = ("sfdm", "generic", "h8", "h8r", "h8v")


@dataclass(frozen=True)
class ModelSpec:
    """Serializable record selecting a model and its parameters.

    JSON layout::

        {"model": "sfdm" | "generic" | "h8" | "h8r" | "h8v",
         "params": {...},
         "momentum": {"p": x, "theta": t, "phi": f}}

    ``momentum`` is optional and applies to the h8 family only; ``generic``
    serializes its blocks as complex matrices.
    """

    model: str
    params: dict
    momentum: dict | None = None

    def __post_init__(self):
        if self.model not in MODEL_NAMES:
            raise ParameterError(f"unknown model {self.model!r}; expected one of {MODEL_NAMES}")

    def to_json_dict(self) -> dict:
        params = dict(self.params)
        if self.model == "generic":
            params = {key: matrix_to_json(np.asarray(val, dtype=complex)) for key, val in params.items()}
        doc = {"model": self.model, "params": params}
        if self.momentum is not None:
            doc["momentum"] = dict(self.momentum)
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "ModelSpec":
        if not isinstance(doc, dict) or "model" not in doc:
            raise ParameterError("model document must be an object with a 'model' key")
        params = dict(doc.get("params", {}))
        if doc["model"] == "generic":
            params = {key: matrix_from_json(val) for key, val in params.items()}
        momentum = doc.get("momentum")
        return cls(model=doc["model"], params=params, momentum=None if momentum is None else dict(momentum))

    @property
    def p(self) -> float:
        return float((self.momentum or {}).get("p", self.params.get("p", 0.0)))

    @property
    def direction(self) -> tuple[float, float]:
        mom = self.momentum or {}
        return float(mom.get("theta", 0.0)), float(mom.get("phi", 0.0))


def model_hamiltonian(spec: ModelSpec) -> np.ndarray:
    """Working-space Hamiltonian for a model spec.

    4x4 for sfdm/generic and for the helicity-reduced h8 family; momentum
    enters the reduced block as the signed scalar p.
    """
    if spec.model == "sfdm":
        return sfdm_hamiltonian(SfdmParams(**spec.params))
    if spec.model == "generic":
        return generic_t_odd_hamiltonian(GenericTOddParams(**spec.params))
    m0 = float(spec.params["m0"])
    m1 = float(spec.params.get("m1", 0.0))
    m2 = float(spec.params.get("m2", 0.0))
    m3 = float(spec.params.get("m3", 0.0))
    if spec.model == "h8v":
        m1 = m3 = 0.0
    elif spec.model == "h8r":
        m3 = 0.0
    p = spec.p
    block = mass_block(m0, m1, m2, m3)
    block = block + p * np.diag([1.0, 1.0, -1.0, -1.0])
    return block


def model_full_hamiltonian(spec: ModelSpec) -> np.ndarray | None:
    """Full 8x8 Hamiltonian for the h8 family; None for 4D models."""
    if spec.model in ("sfdm", "generic"):
        return None
    theta, phi = spec.direction
    m0 = float(spec.params["m0"])
    m1 = float(spec.params.get("m1", 0.0))
    m2 = float(spec.params.get("m2", 0.0))
    m3 = float(spec.params.get("m3", 0.0))
    if spec.model == "h8v":
        m1 = m3 = 0.0
    elif spec.model == "h8r":
        m3 = 0.0
    return h8_hamiltonian(Dirac8Params(m0=m0, m1=m1, m2=m2, m3=m3, p=spec.p, theta_p=theta, phi_p=phi))


def model_symmetry(spec: ModelSpec) -> SymmetryPair:
    """Symmetry pair of the working space."""
    if spec.model in ("sfdm", "generic"):
        return canonical_pair(2)
    return block_pair()


def model_full_symmetry(spec: ModelSpec) -> SymmetryPair | None:
    if spec.model in ("sfdm", "generic"):
        return None
    return dirac_pair()
