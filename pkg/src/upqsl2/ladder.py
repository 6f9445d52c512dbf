"""Weight-ladder coefficients for classical and deformed representations.

Basis states are indexed by ``n = j - m``, so ``n = 0`` is the highest-weight
state.  A ladder is the sequence ``c_n`` with

    E- |n>   = c_n |n+1>
    E+ |n+1> = c_n |n>

The same ``c_n`` serves both operators.  Only ``c_n**2`` is fixed by the
algebra; the phase of ``c_n`` is a gauge choice (principal square root here).
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NonFiniteError
from .qnum import DeformationParams, as_complex, csqrt

EXACT_TOL = 1e-12


@dataclass(frozen=True)
class Spin:
    """Highest weight ``j``, stored as ``two_j = 2j``."""

    two_j: complex

    def __post_init__(self):
        object.__setattr__(self, "two_j", as_complex(self.two_j))

    @classmethod
    def from_j(cls, j):
        return cls(2 * as_complex(j))

    @property
    def j(self):
        return self.two_j / 2

    @property
    def is_exact(self):
        """True when ``2j`` is a non-negative integer (within 1e-12)."""
        t = self.two_j
        return abs(t.imag) < EXACT_TOL and t.real > -EXACT_TOL and abs(t.real - round(t.real)) < EXACT_TOL

    @property
    def two_j_int(self):
        if not self.is_exact:
            raise DomainError(f"2j = {self.two_j} is not a non-negative integer")
        return int(round(self.two_j.real))


def _as_spin(spin):
    return spin if isinstance(spin, Spin) else Spin(spin)


@dataclass(frozen=True, eq=False)
class LadderSpectrum:
    spin: Spin
    params: Optional[DeformationParams]
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def truncation(self):
        return len(self.coeffs)

    @property
    def is_classical(self):
        return self.params is None

    def weights(self):
        """H eigenvalues ``j - n`` along the ladder."""
        return self.spin.j - np.arange(self.truncation)


def _sinh_ratio(m, l):
    """``sinh(m l) / sinh(l)``: the symmetric bracket ``[m]`` in log form."""
    return cmath.sinh(m * l) / cmath.sinh(l)


def _expm1(z):
    return 2 * cmath.sinh(z / 2) * cmath.exp(z / 2)


_BIG = 1e300


def weight_terms(x, two_j, params):
    """Split ``f(x) = A - B`` into its two terms.

    ``A = q**(2j-x) [x+1]_q`` and ``B = p**(x-2j) [x+1]_p``.  Returns
    ``(A * s, B * s, log_scale)`` with ``s = exp(-log_scale)``.  The brackets
    are evaluated as ``sinh`` ratios, which stay accurate as ``p, q -> 1``;
    ``log_scale`` is 0 unless that direct evaluation would overflow, in
    which case the exponential form
    ``A = (q**(2j+1) - q**(2j-2x-1)) / (q - 1/q)`` is rescaled instead.
    """
    x = as_complex(x)
    two_j = as_complex(two_j)
    lq, lp = params.log_q, params.log_p
    a = two_j - x
    try:
        A = cmath.exp(a * lq) * _sinh_ratio(x + 1, lq)
        B = cmath.exp(-a * lp) * _sinh_ratio(x + 1, lp)
        if max(abs(A), abs(B)) < _BIG:
            return A, B, 0.0
    except OverflowError:
        pass
    exps = (
        (two_j + 1) * lq,
        (two_j - 2 * x - 1) * lq,
        (2 * x - two_j + 1) * lp,
        (-two_j - 1) * lp,
    )
    shift = max(0.0, *(e.real for e in exps))
    e1, e2, e3, e4 = (cmath.exp(e - shift) for e in exps)
    q, p = params.q, params.p
    A = (e1 - e2) / (q - 1 / q)
    B = (e3 - e4) / (p - 1 / p)
    return A, B, shift


def weight_residual(x, two_j, params):
    """Scaled size of ``f(x)``: ``|A - B| / (|A| + |B| + 1)``, overflow-safe."""
    a, b, shift = weight_terms(x, two_j, params)
    floor = math.exp(-shift)
    return abs(a - b) / (abs(a) + abs(b) + floor)


def ladder_weight(x, two_j, params):
    """``F(x) = f(x) / (q - 1/p)``, the value of ``c_x**2``."""
    a, b, shift = weight_terms(x, two_j, params)
    lp = params.log_p
    # q - 1/p without cancellation near p, q -> 1
    den = cmath.exp(-lp) * _expm1(params.log_q + lp)
    try:
        value = (a - b) / den * math.exp(shift)
    except OverflowError:
        raise NonFiniteError(f"ladder weight overflows at x={x}") from None
    return as_complex(value)


def deformed_ladder(spin, params, N):
    """Ladder coefficients ``c_0 .. c_{N-1}`` of the deformed representation."""
    spin = _as_spin(spin)
    if N < 1:
        raise ValueError("truncation N must be >= 1")
    coeffs = [csqrt(ladder_weight(n, spin.two_j, params)) for n in range(N)]
    return LadderSpectrum(spin, params, coeffs)


def classical_ladder(spin, N):
    """Undeformed coefficients ``c_n = sqrt((n+1)(2j-n))``."""
    spin = _as_spin(spin)
    if N < 1:
        raise ValueError("truncation N must be >= 1")
    if spin.is_exact:
        tj = spin.two_j_int
        coeffs = [csqrt((n + 1) * (tj - n)) for n in range(N)]
    else:
        coeffs = [csqrt((n + 1) * (spin.two_j - n)) for n in range(N)]
    return LadderSpectrum(spin, None, coeffs)


def classical_norm_squared(n, spin):
    """Exact integer ``(2j)! n! / (2j-n)!``, the squared norm of ``E-**n |j,j>``."""
    spin = _as_spin(spin)
    tj = spin.two_j_int
    if n < 0 or n > tj:
        raise DomainError(f"n={n} outside 0..2j={tj}")
    return math.factorial(tj) * math.factorial(n) // math.factorial(tj - n)


def classical_state_norm(n, spin):
    """``sqrt((2j)! n! / (2j-n)!)``: the factor printed as the normalizer."""
    return math.sqrt(classical_norm_squared(n, spin))


def classical_normalizer(n, spin):
    """Coefficient ``A_n`` making ``A_n E-**n |j,j>`` a unit vector."""
    return 1 / classical_state_norm(n, spin)


def unitarizability_ratios(spin, params, N):
    """Required values of ``|A_{n-1}/A_n|**2`` for ``n = 1..N``.

    ``r_n = (q**(2j-n+1)[n]_q - p**(n-1-2j)[n]_p) / (q - 1/p)``, which is the
    same quantity as ``c_{n-1}**2``.
    """
    spin = _as_spin(spin)
    return np.array([ladder_weight(n - 1, spin.two_j, params) for n in range(1, N + 1)])


@dataclass(frozen=True)
class UnitarityReport:
    depth: int
    tol: float

    @property
    def unitarizable(self):
        return self.depth > 0

    @property
    def verdict(self):
        if self.depth == 0:
            return "NOT_UNITARIZABLE"
        return f"UNITARIZABLE_UP_TO({self.depth})"


def unitarizability_verdict(ratios, tol=1e-12):
    """Longest prefix ``r_1..r_k`` of real-positive ratios."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    depth = 0
    for r in ratios:
        r = complex(r)
        if abs(r.imag) / (1 + abs(r)) < tol and r.real > tol:
            depth += 1
        else:
            break
    return UnitarityReport(depth, tol)
