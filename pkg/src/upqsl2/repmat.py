"""Truncated matrix realizations of H, E+ and E-, and their verification.

Row/column ``n`` is the state of weight ``j - n``.  Truncating an infinite
ladder to ``N`` states clips E- on the last state, so ``[E+, E-]`` is wrong
there by exactly ``-c_{N-1}**2``.  That boundary defect is reported
separately and never counts as a failure.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ShapeMismatch
from .ladder import LadderSpectrum, Spin, classical_ladder, deformed_ladder
from .qnum import DeformationParams, cpow, pq_bracket, q_bracket, validate_params


@dataclass(frozen=True, eq=False)
class RepRealization:
    spectrum: LadderSpectrum
    H: np.ndarray
    Eplus: np.ndarray
    Eminus: np.ndarray

    @property
    def dim(self):
        return self.H.shape[0]

    @property
    def spin(self):
        return self.spectrum.spin

    def matrices(self):
        return {"H": self.H, "Eplus": self.Eplus, "Eminus": self.Eminus}


def build_rep(spectrum):
    c = spectrum.coeffs
    N = len(c)
    H = np.diag(spectrum.weights().astype(complex))
    Eplus = np.zeros((N, N), dtype=complex)
    Eminus = np.zeros((N, N), dtype=complex)
    idx = np.arange(N - 1)
    Eminus[idx + 1, idx] = c[:-1]
    Eplus[idx, idx + 1] = c[:-1]
    for m in (H, Eplus, Eminus):
        m.setflags(write=False)
    return RepRealization(spectrum, H, Eplus, Eminus)


def scaled_residual(residual, *terms):
    """``max|R| / (1 + max_i max|T_i|)``."""
    scale = max((np.max(np.abs(t)) if np.size(t) else 0.0) for t in terms) if terms else 0.0
    if np.size(residual) == 0:
        return 0.0
    return float(np.max(np.abs(residual)) / (1.0 + scale))


def _check_shapes(rep):
    shapes = {m.shape for m in rep.matrices().values()}
    if len(shapes) != 1:
        raise ShapeMismatch(f"inconsistent matrix shapes {sorted(shapes)}")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1] or shape[0] != rep.spectrum.truncation:
        raise ShapeMismatch(f"matrices of shape {shape} for truncation {rep.spectrum.truncation}")


def bracket_2h(rep, params):
    """Diagonal of ``[2H]_{p,q}`` (or ``2H`` when ``params`` is None)."""
    weights = rep.spectrum.weights()
    if params is None:
        return 2 * weights.astype(complex)
    return np.array([pq_bracket(2 * w, params) for w in weights])


@dataclass(frozen=True)
class RelationReport:
    max_residual_HEplus: float
    max_residual_HEminus: float
    max_residual_EpEm_interior: float
    boundary_defect: complex
    boundary_residual: float
    boundary_prediction_residual: float
    interior_range: tuple
    tol: float

    @property
    def max_residual_HEpm(self):
        return max(self.max_residual_HEplus, self.max_residual_HEminus)

    @property
    def verdict(self):
        return {
            "H_Eplus": self.max_residual_HEplus < self.tol,
            "H_Eminus": self.max_residual_HEminus < self.tol,
            "Eplus_Eminus_interior": self.max_residual_EpEm_interior < self.tol,
        }

    @property
    def passed(self):
        return all(self.verdict.values())


def check_relations(rep, params=None, tol=1e-10):
    """Residuals of ``[H, E±] = ±E±`` and ``[E+, E-] = [2H]_{p,q}``.

    The second relation is tested on rows ``0..N-2``; row ``N-1`` gives the
    boundary defect, whose predicted value ``-c_{N-1}**2`` is also checked
    (``boundary_prediction_residual``).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    _check_shapes(rep)
    H, Ep, Em = rep.H, rep.Eplus, rep.Eminus
    N = rep.dim

    res_plus = scaled_residual(H @ Ep - Ep @ H - Ep, H @ Ep, Ep @ H, Ep)
    res_minus = scaled_residual(H @ Em - Em @ H + Em, H @ Em, Em @ H, Em)

    EpEm, EmEp = Ep @ Em, Em @ Ep
    target = np.diag(bracket_2h(rep, params))
    comm = EpEm - EmEp
    R = comm - target
    scale_terms = (EpEm, EmEp, target)
    interior = scaled_residual(R[:, : N - 1], *scale_terms)

    defect = complex(R[N - 1, N - 1])
    c_last = rep.spectrum.coeffs[-1]
    predicted = -(c_last * c_last)
    scale = 1.0 + max(np.max(np.abs(t)) for t in scale_terms)
    # off-diagonal entries of the last column must vanish as well
    off = np.delete(R[:, N - 1], N - 1)
    prediction = max(abs(defect - predicted), float(np.max(np.abs(off))) if off.size else 0.0) / scale

    return RelationReport(
        max_residual_HEplus=res_plus,
        max_residual_HEminus=res_minus,
        max_residual_EpEm_interior=interior,
        boundary_defect=defect,
        boundary_residual=abs(defect),
        boundary_prediction_residual=float(prediction),
        interior_range=(0, N - 2),
        tol=tol,
    )


def _casimir_terms(rep, params):
    q, p = params.q, params.p
    weights = rep.spectrum.weights()
    k_q2 = np.diag([cpow(q, 2 * w) for w in weights])
    k_p2 = np.diag([cpow(p, -2 * w) for w in weights])
    return (
        k_q2 / (1 - q ** -2),
        -k_p2 / (1 - p ** 2),
        (q - 1 / p) * (rep.Eminus @ rep.Eplus),
    )


def casimir_matrix(rep, params):
    """``C = q^{2H}/(1-q^-2) - p^{-2H}/(1-p^2) + (q - 1/p) E- E+``.

    The ``E- E+`` ordering makes ``C`` exact on the truncated space: E+ never
    leaves it and E- only acts on states that E+ produced.
    """
    _check_shapes(rep)
    a, b, c = _casimir_terms(rep, params)
    return a + b + c


def casimir_highest_weight_value(spin, params):
    """Eigenvalue of ``C`` on the highest-weight vector."""
    two_j = spin.two_j if isinstance(spin, Spin) else complex(spin)
    q, p = params.q, params.p
    return cpow(q, two_j) / (1 - q ** -2) - cpow(p, -two_j) / (1 - p ** 2)


@dataclass(frozen=True)
class CasimirReport:
    eigenvalue: complex
    max_offdiag: float
    max_diag_deviation: float
    max_commutator_residual: float
    tol: float

    @property
    def passed(self):
        return max(self.max_offdiag, self.max_diag_deviation, self.max_commutator_residual) < self.tol


def check_casimir(rep, params, tol=1e-10):
    """Scalarity of ``C`` on the whole truncation and centrality on the interior.

    Residuals are scaled by the largest summand of ``C`` rather than by ``C``
    itself: ``C`` is a small difference of potentially huge terms.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    _check_shapes(rep)
    terms = _casimir_terms(rep, params)
    C = terms[0] + terms[1] + terms[2]
    N = rep.dim
    c_scale = max(float(np.max(np.abs(t))) for t in terms)
    denom = 1.0 + c_scale

    eig = complex(C[0, 0])
    off = C - np.diag(np.diag(C))
    max_off = float(np.max(np.abs(off))) / denom
    max_diag = float(np.max(np.abs(np.diag(C) - eig))) / denom

    comm = []
    H, Ep, Em = rep.H, rep.Eplus, rep.Eminus
    for X, cols in ((H, slice(None)), (Ep, slice(0, N - 1)), (Em, slice(0, N - 1))):
        R = (C @ X - X @ C)[:, cols]
        if R.size:
            x_scale = max(1.0, float(np.max(np.abs(X))))
            comm.append(float(np.max(np.abs(R))) / (1.0 + c_scale * x_scale))
    max_comm = max(comm) if comm else 0.0
    return CasimirReport(eig, max_off, max_diag, max_comm, tol)


@dataclass(frozen=True)
class LimitReport:
    one_parameter_deviation: float
    classical_deviation: float
    epsilon: float


def _rel_dev(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    out = np.zeros(a.shape)
    nz = b != 0
    out[nz] = np.abs(a[nz] - b[nz]) / np.abs(b[nz])
    out[~nz] = np.abs(a[~nz])
    return float(np.max(out)) if out.size else 0.0


def limit_compare(spin, q, N, epsilon=1e-6):
    """Compare deformed ladders against their one-parameter and classical limits.

    (a) ``p = q``: ``c_n**2`` against ``[n+1]_q [2j-n]_q``.
    (b) ``p = q = 1 + epsilon``: ``c_n**2`` against ``(n+1)(2j-n)``.
    Both deviations are maxima of relative differences of ``c_n**2``.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    spin = spin if isinstance(spin, Spin) else Spin(spin)
    params = validate_params(q, q)
    sq = deformed_ladder(spin, params, N).coeffs ** 2
    closed = [q_bracket(n + 1, params.q) * q_bracket(spin.two_j - n, params.q) for n in range(N)]
    one_param = _rel_dev(sq, closed)

    near = validate_params(1 + epsilon, 1 + epsilon)
    sq_near = deformed_ladder(spin, near, N).coeffs ** 2
    sq_classical = classical_ladder(spin, N).coeffs ** 2
    classical = _rel_dev(sq_near, sq_classical)
    return LimitReport(one_param, classical, epsilon)


def matrix_to_json(m):
    """Row-major nested list of ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(data):
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)


def export_rep(rep):
    return {name: matrix_to_json(m) for name, m in rep.matrices().items()}
