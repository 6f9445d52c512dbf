"""Finite-dimensional subrepresentations and complex spins.

The E- matrix element at ladder index ``n`` vanishes exactly when

    f(n) = q**(2j-n) [n+1]_q - p**(n-2j) [n+1]_p = 0,

and the smallest non-negative integer root ``n0`` cuts out an invariant
subspace of dimension ``n0 + 1``.  Conversely, for a prescribed dimension
``D`` the condition ``f(D-1) = 0`` can be solved for ``2j`` in closed form,
one solution per branch of the logarithm.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import LogUndefined
from .ladder import Spin, weight_residual
from .qnum import as_complex, cpow, q_bracket

DEFAULT_NMAX = 1000
DEFAULT_BRANCHES = 5
DEFAULT_SPIN_TOL = 1e-9


def _as_spin(spin):
    return spin if isinstance(spin, Spin) else Spin(spin)


def f_eval(x, spin, params):
    """Evaluate ``f(x)`` literally, term by term."""
    two_j = _as_spin(spin).two_j
    x = as_complex(x)
    p, q = params.p, params.q
    return cpow(q, two_j - x) * q_bracket(x + 1, q) - cpow(p, x - two_j) * q_bracket(x + 1, p)


def f_residual(x, spin, params):
    """``|f(x)| / (|q**(2j-x)[x+1]_q| + |p**(x-2j)[x+1]_p| + 1)``, overflow-safe."""
    return weight_residual(x, _as_spin(spin).two_j, params)


@dataclass(frozen=True)
class Root:
    n: int
    scaled_residual: float


@dataclass(frozen=True, eq=False)
class FiniteDimReport:
    spin: Spin
    params: object
    scan_limit: int
    tol: float
    roots: list
    residuals: np.ndarray = field(repr=False)

    @property
    def smallest_root(self):
        return self.roots[0].n if self.roots else None

    @property
    def dimension(self):
        return None if self.smallest_root is None else self.smallest_root + 1

    @property
    def is_finite(self):
        return bool(self.roots)

    @property
    def verdict(self):
        if self.roots:
            return f"FINITE({self.dimension})"
        return f"NO_ROOT_UP_TO({self.scan_limit})"

    @property
    def min_residual(self):
        return float(np.min(self.residuals))


def scan_integer_roots(spin, params, n_max=DEFAULT_NMAX, tol=1e-10):
    """Scan ``n = 0..n_max`` for integer roots of ``f``.

    A missing root is evidence, not proof, that the representation is
    unbounded below.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if not tol > 0:
        raise ValueError("tol must be positive")
    spin = _as_spin(spin)
    residuals = np.array([weight_residual(n, spin.two_j, params) for n in range(n_max + 1)])
    roots = [Root(int(n), float(residuals[n])) for n in np.flatnonzero(residuals < tol)]
    return FiniteDimReport(spin, params, n_max, tol, roots, residuals)


@dataclass(frozen=True)
class BranchSolution:
    k: int
    two_j: complex
    residual: float


@dataclass(frozen=True)
class SpinSolutionSet:
    dimension: int
    params: object
    branch_solutions: list
    tol: float

    def branch(self, k):
        for s in self.branch_solutions:
            if s.k == k:
                return s
        return None


def spin_for_dimension(D, params, branch_range=DEFAULT_BRANCHES, tol=DEFAULT_SPIN_TOL):
    """Spins ``2j`` whose representation has an invariant subspace of dimension ``D``.

    Solves ``(pq)**(2j-D+1) = [D]_p / [D]_q`` as

        2j = (Log([D]_p/[D]_q) + 2 pi i k) / (Log p + Log q) + D - 1

    for ``k = -K..K``.  ``Log p + Log q`` (not ``Log(pq)``) keeps the result
    consistent with the principal-branch powers used by :func:`f_eval`.
    Solutions whose scaled residual is not below ``tol`` are dropped.
    """
    if D < 1:
        raise ValueError("dimension D must be >= 1")
    if branch_range < 0:
        raise ValueError("branch_range must be >= 0")
    bp = q_bracket(D, params.p)
    bq = q_bracket(D, params.q)
    scale = 1 + abs(params.p) + abs(params.q)
    if abs(bp) < params.tol * scale or abs(bq) < params.tol * scale:
        raise LogUndefined(f"[D]_p or [D]_q vanishes for D={D}")
    log_ratio = cmath.log(bp / bq)
    log_pq = params.log_pq
    if abs(log_pq) < params.tol:
        raise LogUndefined("Log p + Log q vanishes")

    solutions = []
    for k in range(-branch_range, branch_range + 1):
        two_j = (log_ratio + 2j * math.pi * k) / log_pq + (D - 1)
        if not (math.isfinite(two_j.real) and math.isfinite(two_j.imag)):
            continue
        res = weight_residual(D - 1, two_j, params)
        if res < tol:
            solutions.append(BranchSolution(k, two_j, float(res)))
    return SpinSolutionSet(D, params, solutions, tol)


def spin_relation_residual(two_j, D, params):
    """Relative residual of ``(pq)**(2j-D+1) = [D]_p/[D]_q``."""
    lhs = cmath.exp((two_j - D + 1) * params.log_pq)
    rhs = q_bracket(D, params.p) / q_bracket(D, params.q)
    return abs(lhs - rhs) / abs(rhs)


@dataclass(frozen=True)
class RoundtripEntry:
    k: int
    two_j: complex
    is_root: bool
    smallest_root: Optional[int]
    is_smallest: bool
    residual: float


@dataclass(frozen=True)
class RoundtripReport:
    dimension: int
    entries: list

    @property
    def all_roots(self):
        return bool(self.entries) and all(e.is_root for e in self.entries)


def roundtrip_check(D, params, branch_range=DEFAULT_BRANCHES, n_max=None, tol=DEFAULT_SPIN_TOL):
    """Feed every branch spin back into :func:`scan_integer_roots`.

    ``D - 1`` being a root and being the smallest root are reported
    separately; the closed form guarantees only the former.
    """
    sols = spin_for_dimension(D, params, branch_range, tol)
    n_max = D - 1 if n_max is None else max(n_max, D - 1)
    entries = []
    for s in sols.branch_solutions:
        rep = scan_integer_roots(s.two_j, params, n_max, tol)
        root_ns = [r.n for r in rep.roots]
        entries.append(RoundtripEntry(
            k=s.k,
            two_j=s.two_j,
            is_root=(D - 1) in root_ns,
            smallest_root=rep.smallest_root,
            is_smallest=rep.smallest_root == D - 1,
            residual=float(rep.residuals[D - 1]),
        ))
    return RoundtripReport(D, entries)
