import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from upqsl2.errors import SingularDenominator, ZeroBase, ZeroParameter
from upqsl2.qnum import cpow, pq_bracket, q_bracket, validate_params


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


class TestValidateParams:
    def test_generic_is_valid(self):
        params = validate_params(2, 3, tol=1e-12)
        assert params.p == 2 and params.q == 3
        assert params.flags == ()

    def test_pq_one_rejected(self):
        with pytest.raises(SingularDenominator) as exc:
            validate_params(2, 0.5, tol=1e-12)
        assert exc.value.locus == "pq=1"

    def test_near_classical_is_valid(self):
        # |p^2 - 1| ~ 2e-6, far above tol * (1 + |p| + |q|) ~ 3e-12
        eps = 1e-6
        assert abs((1 + eps) ** 2 - 1) > 1e-12 * (1 + 2 * (1 + eps))
        validate_params(1 + eps, 1 + eps, tol=1e-12)

    @pytest.mark.parametrize("p, q, locus", [(3, 1, "q^2=1"), (3, -1, "q^2=1"), (-1, 3, "p^2=1"), (1j, -1j, "pq=1")])
    def test_other_loci(self, p, q, locus):
        with pytest.raises(SingularDenominator) as exc:
            validate_params(p, q)
        assert exc.value.locus == locus

    def test_zero(self):
        with pytest.raises(ZeroParameter):
            validate_params(0, 2)

    def test_p_equals_q_allowed_but_flagged(self):
        params = validate_params(2, 2)
        assert "p2_eq_q2" in params.flags
        assert "p2_eq_q2" in validate_params(2, -2).flags

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            validate_params(2, 3, tol=0)


class TestCpow:
    def test_identity(self):
        assert cpow(math.e, 1) == pytest.approx(math.e, rel=1e-15)

    def test_sqrt(self):
        assert cpow(4, 0.5) == pytest.approx(2, rel=1e-15)

    def test_principal_branch_of_minus_one(self):
        independent = np.power(np.complex128(-1 + 0j), 0.5)
        assert abs(cpow(-1, 0.5) - 1j) < 1e-15
        assert abs(cpow(-1, 0.5) - independent) < 1e-15

    def test_negative_zero_imaginary_part_is_ignored(self):
        assert abs(cpow(complex(-1, -0.0), 0.5) - 1j) < 1e-15

    def test_zero_base(self):
        with pytest.raises(ZeroBase):
            cpow(0, 2)

    @settings(max_examples=200)
    @given(
        r=st.floats(0.1, 10), theta=st.floats(-3.1, 3.1),
        a=st.floats(-5, 5), b=st.floats(-5, 5),
    )
    def test_additive_exponents(self, r, theta, a, b):
        z = cmath.rect(r, theta)
        lhs = cpow(z, a) * cpow(z, b)
        assert rel(lhs, cpow(z, a + b)) < 1e-12


class TestBrackets:
    def test_pq_bracket_zero_and_one(self):
        params = validate_params(1.3 + 0.2j, -0.7 + 0.9j)
        assert pq_bracket(0, params) == 0
        assert abs(pq_bracket(1, params) - 1) < 1e-15

    def test_pq_bracket_two(self):
        # [2]_{p,q} = q + 1/p
        params = validate_params(2, 3)
        direct = (3 ** 2 - 2 ** -2) / (3 - 1 / 2)
        assert direct == pytest.approx(3.5)
        assert pq_bracket(2, params) == pytest.approx(3.5, rel=1e-14)

    def test_q_bracket_examples(self):
        assert q_bracket(1, 5) == pytest.approx(1, rel=1e-15)
        assert q_bracket(2, 3) == pytest.approx(3 + 1 / 3, rel=1e-14)
        assert abs(q_bracket(3, 1 + 1e-8) - 3) < 1e-6

    def test_q_bracket_singular(self):
        with pytest.raises(SingularDenominator):
            q_bracket(2, -1)

    @settings(max_examples=200)
    @given(
        rp=st.floats(0.5, 2), tp=st.floats(-3.1, 3.1),
        rq=st.floats(0.5, 2), tq=st.floats(-3.1, 3.1),
        xr=st.floats(-6, 6), xi=st.floats(-6, 6),
    )
    def test_defining_identity(self, rp, tp, rq, tq, xr, xi):
        p, q = cmath.rect(rp, tp), cmath.rect(rq, tq)
        try:
            params = validate_params(p, q, tol=1e-3)
        except SingularDenominator:
            return
        x = complex(xr, xi)
        lhs = pq_bracket(x, params) * (q - 1 / p) + cpow(p, -x)
        rhs = cpow(q, x)
        scale = abs(cpow(q, x)) + abs(cpow(p, -x))
        assert abs(lhs - rhs) / scale < 1e-12

    @settings(max_examples=200)
    @given(r=st.floats(0.5, 2), t=st.floats(-3.1, 3.1), xr=st.floats(-6, 6), xi=st.floats(-6, 6))
    def test_antisymmetry_and_reduction(self, r, t, xr, xi):
        b = cmath.rect(r, t)
        if abs(b * b - 1) < 1e-3:
            return
        x = complex(xr, xi)
        val = q_bracket(x, b)
        scale = (abs(cpow(b, x)) + abs(cpow(b, -x))) / abs(b - 1 / b)
        assert abs(val + q_bracket(-x, b)) / scale < 1e-12
        params = validate_params(b, b, tol=1e-3)
        assert abs(pq_bracket(x, params) - val) / scale < 1e-12
