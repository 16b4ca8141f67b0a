"""The axiom suite: every algebraic condition the framework requires.

Each check measures the operator-norm defect of one identity and reports it
against a tolerance; the suite never mutates or repairs its inputs.  Two
convention notes, both validated numerically:

* pseudo-Hermiticity at nonzero momentum relates H(p) to H(-p):
  S^-1 H(p)^dag S = H(-p).  ``check_pseudo_hermiticity`` accepts the
  reflected Hamiltonian for that case and defaults to H itself at p = 0.
* T-conjugation of the boost generators holds as
  Z conj(K_i) conj(Z) = -K_i; the variant with an extra overall minus sign
  on conj(Z) fails for every valid representation.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .coperator import COperator, build_C, completeness_defect
from .errors import BrokenPTError, DegenerateCombinationError, PtoscError
from .inner import cpt_ip, cpt_ip_momentum, pt_ip_momentum, superpose
from .linalg import adjoint, eig_oracle, operator_norm, require_square, random_cvector
from .models import (
    EigenSystem,
    ModelSpec,
    h8r_p0_eigensystem,
    h8v_reduced_eigensystem,
    model_full_hamiltonian,
    model_full_symmetry,
    model_hamiltonian,
    model_symmetry,
    pt_orthonormal_eigensystem,
    sfdm_eigensystem,
)
from .oscillate import default_t_grid, standard_flavour_basis, transition_table
from .symmetry import SymmetryPair

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check: passed iff defect <= tolerance."""

    name: str
    passed: bool
    defect: float
    tolerance: float
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "defect": self.defect,
            "tolerance": self.tolerance,
            "note": self.note,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_dict())


def _report(name: str, defect: float, tol: float, note: str = "") -> CheckReport:
    return CheckReport(name=name, passed=bool(defect <= tol), defect=float(defect), tolerance=float(tol), note=note)


def check_pt_commute(sym: SymmetryPair, h, tol: float = DEFAULT_TOL) -> CheckReport:
    """[H, PT] = 0 in matrix form: H S Z = S Z conj(H)."""
    h = require_square(h)
    defect = operator_norm(h @ sym.s @ sym.z - sym.s @ sym.z @ h.conj())
    return _report("pt_commute", defect, tol * max(1.0, operator_norm(h)))


def check_pseudo_hermiticity(sym: SymmetryPair, h, h_reflected=None, tol: float = DEFAULT_TOL) -> CheckReport:
    """S^-1 H^dag S = H (or H(-p) when the reflected Hamiltonian is given)."""
    h = require_square(h)
    target = h if h_reflected is None else require_square(h_reflected)
    defect = operator_norm(sym.s @ adjoint(h) @ sym.s - target)
    note = "" if h_reflected is None else "compared against the momentum-reflected Hamiltonian"
    return _report("pseudo_hermiticity", defect, tol * max(1.0, operator_norm(h)), note)


def check_real_spectrum(h, tol: float = DEFAULT_TOL) -> CheckReport:
    """max |Im lambda| over the numerically computed spectrum."""
    values = eig_oracle(h).values
    defect = float(np.max(np.abs(values.imag)))
    return _report("real_spectrum", defect, tol * max(1.0, operator_norm(h)))


def check_alpha_beta_conditions(alphas, beta, sym: SymmetryPair, tol: float = 1e-12) -> list[CheckReport]:
    """The full set of representation identities for (alpha_i, beta)."""
    alphas = [require_square(a) for a in alphas]
    beta = require_square(beta)
    s, z = sym.s, sym.z
    eye = np.eye(sym.dim)
    reports = []

    def add(name, defect, note=""):
        reports.append(_report(name, defect, tol, note))

    add("S_alpha_anticommute", max(operator_norm(s @ a + a @ s) for a in alphas))
    add("Z_alpha_conjugation", max(operator_norm(z @ a.conj() + a @ z) for a in alphas))
    add("alpha_PT_commute", max(operator_norm(a @ s @ z - s @ z @ a.conj()) for a in alphas))
    add("alpha_self_adjoint", max(operator_norm(-adjoint(a) @ adjoint(s) - adjoint(s) @ a) for a in alphas))
    add("beta_self_adjoint", operator_norm(adjoint(beta) @ adjoint(s) - adjoint(s) @ beta))
    add("beta_quaternion", operator_norm(beta + z.T @ beta.T @ adjoint(z)))
    add("alpha_quaternion", max(operator_norm(a - z.T @ a.T @ adjoint(z)) for a in alphas))
    clifford = 0.0
    for i, a in enumerate(alphas):
        for j, b in enumerate(alphas):
            target = 2.0 * eye if i == j else np.zeros_like(eye)
            clifford = max(clifford, operator_norm(a @ b + b @ a - target))
        clifford = max(clifford, operator_norm(a @ beta + beta @ a))
    clifford = max(clifford, operator_norm(beta @ beta - eye))
    add("clifford_algebra", clifford)
    add("alpha_hermitian", max(operator_norm(a - adjoint(a)) for a in alphas), "derived consequence")
    return reports


def check_generator_constraints(alphas, sym: SymmetryPair, tol: float = 1e-12) -> list[CheckReport]:
    """Boost generators K_i = (i/2) alpha_i and rotation closure.

    Checks P-conjugation S K_i S = -K_i, antilinear T-conjugation
    Z conj(K_i) conj(Z) = -K_i, and so(3) closure [J_x, J_y] = i J_z for the
    spin matrices J_i = -(i/4) eps_ijk alpha_j alpha_k.
    """
    alphas = [require_square(a) for a in alphas]
    s, z = sym.s, sym.z
    ks = [0.5j * a for a in alphas]
    reports = [
        _report("boost_P_conjugation", max(operator_norm(s @ k @ s + k) for k in ks), tol),
        _report(
            "boost_T_conjugation",
            max(operator_norm(z @ k.conj() @ z.conj() + k) for k in ks),
            tol,
            "antilinear convention: Z conj(K) conj(Z) = -K",
        ),
    ]
    js = [
        -0.25j * (alphas[1] @ alphas[2] - alphas[2] @ alphas[1]),
        -0.25j * (alphas[2] @ alphas[0] - alphas[0] @ alphas[2]),
        -0.25j * (alphas[0] @ alphas[1] - alphas[1] @ alphas[0]),
    ]
    closure = max(
        operator_norm(js[i] @ js[j] - js[j] @ js[i] - 1j * js[k])
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    )
    reports.append(_report("rotation_so3_closure", closure, tol))
    return reports


# ---------------------------------------------------------------------------
# model realization


@dataclass(frozen=True)
class Realization:
    """Everything run_full_suite needs for one model."""

    spec: ModelSpec
    sym: SymmetryPair
    hamiltonian: np.ndarray
    hamiltonian_reflected: np.ndarray
    full_sym: SymmetryPair | None = None
    full_hamiltonian: np.ndarray | None = None
    full_hamiltonian_reflected: np.ndarray | None = None
    eigensystem: EigenSystem | None = None
    eigensystem_note: str = ""


def _reflect(spec: ModelSpec) -> ModelSpec:
    if spec.p == 0:
        return spec
    mom = dict(spec.momentum or {})
    params = dict(spec.params)
    if "p" in params:
        params["p"] = -float(params["p"])
    if "p" in mom:
        mom["p"] = -float(mom["p"])
    return ModelSpec(model=spec.model, params=params, momentum=mom or None)


def realize(spec: ModelSpec) -> Realization:
    """Build the symmetry pair, Hamiltonians and eigensystem for a spec.

    The eigensystem uses the closed form where one exists (sfdm; h8v at any
    momentum; h8r at p = 0), the oracle-backed PT-orthonormalization for
    generic and for full h8 at p = 0, and is absent (with a note) otherwise.
    """
    sym = model_symmetry(spec)
    refl = _reflect(spec)
    h = model_hamiltonian(spec)
    h_r = model_hamiltonian(refl)
    full_sym = model_full_symmetry(spec)
    full_h = model_full_hamiltonian(spec)
    full_h_r = model_full_hamiltonian(refl)
    eigsys = None
    note = ""
    try:
        if spec.model == "sfdm":
            from .models import SfdmParams

            eigsys = sfdm_eigensystem(SfdmParams(**spec.params))
        elif spec.model == "generic":
            eigsys = pt_orthonormal_eigensystem(sym, h)
        elif spec.model == "h8v":
            m0 = float(spec.params["m0"])
            m2 = float(spec.params.get("m2", 0.0))
            eigsys = h8v_reduced_eigensystem(m0, m2, spec.p)
        elif spec.model == "h8r" and spec.p == 0:
            eigsys = h8r_p0_eigensystem(
                float(spec.params["m0"]),
                float(spec.params.get("m1", 0.0)),
                float(spec.params.get("m2", 0.0)),
            )
        elif spec.model == "h8" and spec.p == 0:
            eigsys = pt_orthonormal_eigensystem(sym, h)
        else:
            note = "no PT-orthonormal eigenbasis construction for this member at p != 0"
    except BrokenPTError as exc:
        note = f"broken PT phase: {exc}"
    except DegenerateCombinationError as exc:
        note = str(exc)
    return Realization(
        spec=spec,
        sym=sym,
        hamiltonian=h,
        hamiltonian_reflected=h_r,
        full_sym=full_sym,
        full_hamiltonian=full_h,
        full_hamiltonian_reflected=full_h_r,
        eigensystem=eigsys,
        eigensystem_note=note,
    )


def _skip(name: str, reason: str, tol: float) -> CheckReport:
    return CheckReport(name=name, passed=False, defect=math.inf, tolerance=tol, note=f"skipped: {reason}")


def _pt_gram_defect(sym: SymmetryPair, eigsys: EigenSystem) -> float:
    states = eigsys.states
    if all(st is not None for st in states):
        gram = np.array(
            [[pt_ip_momentum(sym, states[j], states[k]) for k in range(len(states))] for j in range(len(states))]
        )
    else:
        v = np.column_stack(eigsys.kets)
        gram = v.conj().T @ sym.s @ v
    return operator_norm(gram - np.diag(np.array(eigsys.signs, dtype=float)))


def _cpt_positivity_defect(sym: SymmetryPair, c: COperator, eigsys: EigenSystem, n_random: int, seed: int = 0xC0) -> float:
    """Worst deviation from positivity/reality of random CPT self-overlaps."""
    rng = np.random.default_rng(seed)
    states = eigsys.states
    momentum = all(st is not None for st in states)
    worst = 0.0
    for _ in range(n_random):
        coeffs = random_cvector(rng, sym.dim)
        if momentum:
            v = superpose(coeffs, states)
            norm = cpt_ip_momentum(sym, c.at, v, v)
        else:
            v = random_cvector(rng, sym.dim)
            norm = cpt_ip(sym, c.matrix, v, v)
        scale = float(np.vdot(coeffs, coeffs).real) if momentum else float(np.vdot(v, v).real)
        worst = max(worst, abs(norm.imag) / scale, max(0.0, -norm.real) / scale)
        if norm.real <= 0:
            worst = max(worst, 1.0)
    return worst


SUITE_NAMES = (
    "pt_commute",
    "pseudo_hermiticity",
    "real_spectrum",
    "pt_orthonormality",
    "c_squares_to_identity",
    "c_commutes_with_h",
    "cpt_positive_definite",
    "completeness",
    "row_stochastic_table",
)


def run_full_suite(spec: ModelSpec, tol: float = DEFAULT_TOL, n_random: int = 1000) -> list[CheckReport]:
    """Ordered axiom checks for one model; downstream checks are skipped
    (reported failed with a reason) when the spectrum is broken or no
    PT-orthonormal eigenbasis exists."""
    real = realize(spec)
    reports = []
    # Matrix-level symmetry checks run on the full 8D Hamiltonian for the h8
    # family (the reduced block loses PT covariance at p != 0) and on the
    # working 4D one otherwise.
    if real.full_hamiltonian is not None:
        sym_m, h_m, h_m_r = real.full_sym, real.full_hamiltonian, real.full_hamiltonian_reflected
    else:
        sym_m, h_m, h_m_r = real.sym, real.hamiltonian, real.hamiltonian_reflected
    reports.append(check_pt_commute(sym_m, h_m, tol))
    reports.append(
        check_pseudo_hermiticity(sym_m, h_m, h_reflected=None if spec.p == 0 else h_m_r, tol=tol)
    )
    spectrum = check_real_spectrum(real.hamiltonian, tol)
    reports.append(spectrum)
    if not spectrum.passed:
        for name in SUITE_NAMES[3:]:
            reports.append(_skip(name, "broken PT phase (complex spectrum)", tol))
        return reports
    if real.eigensystem is None:
        for name in SUITE_NAMES[3:]:
            reports.append(_skip(name, real.eigensystem_note or "no eigenbasis", tol))
        return reports
    eigsys = real.eigensystem
    sym = real.sym
    reports.append(_report("pt_orthonormality", _pt_gram_defect(sym, eigsys), tol))
    try:
        c = build_C(sym, eigsys, hamiltonian=real.hamiltonian, tol=tol)
    except PtoscError as exc:
        for name in SUITE_NAMES[4:]:
            reports.append(_skip(name, f"C construction failed: {exc}", tol))
        return reports
    eye = np.eye(sym.dim)
    reports.append(_report("c_squares_to_identity", operator_norm(c.matrix @ c.matrix - eye), tol))
    comm = operator_norm(c.matrix @ real.hamiltonian - real.hamiltonian @ c.matrix)
    reports.append(_report("c_commutes_with_h", comm, tol * max(1.0, operator_norm(real.hamiltonian))))
    reports.append(
        _report("cpt_positive_definite", _cpt_positivity_defect(sym, c, eigsys, n_random), tol)
    )
    reports.append(_report("completeness", completeness_defect(sym, eigsys), tol))
    try:
        basis = standard_flavour_basis(sym, eigsys, c)
        table = transition_table(sym, basis, eigsys, c, default_t_grid(eigsys))
        row_defect = float(np.max(np.abs(table.probs.sum(axis=2) - 1.0)))
        reports.append(_report("row_stochastic_table", row_defect, tol))
    except PtoscError as exc:
        reports.append(_skip("row_stochastic_table", f"oscillation table unavailable: {exc}", tol))
    return reports
