"""Deformed numbers and complex powers.

All powers are taken on the principal branch, ``z**w = exp(w * Log z)`` with
``Im Log z`` in ``(-pi, pi]``.  Because every power of a given base goes
through the same logarithm, identities such as ``q**a * q**b == q**(a+b)``
hold exactly in exact arithmetic, for any complex exponents.
"""

import cmath
import math
from dataclasses import dataclass, field

from .errors import NonFiniteError, SingularDenominator, ZeroBase, ZeroParameter

DEFAULT_PARAM_TOL = 1e-12


def as_complex(z):
    """Coerce ``z`` to a finite Python complex with signed zeros cleared."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite value {z!r}")
    # -0.0 imaginary parts would put negative reals on the wrong side of the cut
    return complex(z.real + 0.0, z.imag + 0.0)


def clog(z):
    """Principal logarithm, imaginary part in (-pi, pi]."""
    z = as_complex(z)
    if z == 0:
        raise ZeroBase("logarithm of zero")
    return cmath.log(z)


def cpow(z, w):
    """Principal-branch power ``exp(w * Log z)``."""
    z = as_complex(z)
    if z == 0:
        raise ZeroBase("zero base in complex power")
    return cmath.exp(as_complex(w) * cmath.log(z))


def csqrt(z):
    """Principal square root; negative reals map to the positive imaginary axis."""
    return cmath.sqrt(as_complex(z))


def _near_zero(value, scale, tol):
    return abs(value) < tol * scale


@dataclass(frozen=True)
class DeformationParams:
    """A validated pair of deformation parameters.

    Build instances through :func:`validate_params`; the constructor itself
    does not check anything.
    """

    p: complex
    q: complex
    tol: float = DEFAULT_PARAM_TOL
    flags: tuple = field(default=(), compare=False)

    @property
    def log_p(self):
        return cmath.log(self.p)

    @property
    def log_q(self):
        return cmath.log(self.q)

    @property
    def log_pq(self):
        """``Log p + Log q``: the logarithm of ``pq`` consistent with :func:`cpow`."""
        return cmath.log(self.p) + cmath.log(self.q)

    @property
    def denominator(self):
        return self.q - 1 / self.p

    @property
    def is_one_parameter(self):
        return self.p == self.q


def validate_params(p, q, tol=DEFAULT_PARAM_TOL):
    """Check ``(p, q)`` against every singular locus and return the params.

    A locus counts as hit when its denominator has modulus below
    ``tol * (1 + |p| + |q|)``.  ``p == q`` is allowed; ``p**2 == q**2`` is
    recorded in ``flags`` but not rejected.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    p = as_complex(p)
    q = as_complex(q)
    if p == 0 or q == 0:
        raise ZeroParameter("deformation parameters must be non-zero")
    scale = 1 + abs(p) + abs(q)
    if _near_zero(q - 1 / p, scale, tol):
        raise SingularDenominator("pq=1", f"p={p}, q={q}")
    if _near_zero(q * q - 1, scale, tol):
        raise SingularDenominator("q^2=1", f"q={q}")
    if _near_zero(p * p - 1, scale, tol):
        raise SingularDenominator("p^2=1", f"p={p}")
    flags = []
    if _near_zero(p * p - q * q, scale, tol):
        flags.append("p2_eq_q2")
    return DeformationParams(p, q, tol, tuple(flags))


def pq_bracket(x, params):
    """Two-parameter deformed number ``(q**x - p**-x) / (q - 1/p)``."""
    x = as_complex(x)
    return (cpow(params.q, x) - cpow(params.p, -x)) / params.denominator


def q_bracket(x, base, tol=DEFAULT_PARAM_TOL):
    """Symmetric one-parameter deformed number.

    ``(b**x - b**-x) / (b - 1/b)``; tends to ``x`` as ``b -> 1``.

    >>> round(q_bracket(2, 3).real, 12)
    3.333333333333
    """
    x = as_complex(x)
    b = as_complex(base)
    if b == 0:
        raise ZeroParameter("bracket base must be non-zero")
    den = b - 1 / b
    if _near_zero(den, 1 + abs(b), tol):
        raise SingularDenominator("base^2=1", f"base={b}")
    return (cpow(b, x) - cpow(b, -x)) / den
