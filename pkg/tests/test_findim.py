import cmath
import math

import pytest

from upqsl2.errors import LogUndefined
from upqsl2.findim import (
    f_eval,
    f_residual,
    roundtrip_check,
    scan_integer_roots,
    spin_for_dimension,
    spin_relation_residual,
)
from upqsl2.ladder import deformed_ladder
from upqsl2.qnum import q_bracket, validate_params

from conftest import random_params, random_two_j


class TestFEval:
    def test_formal_minus_one(self):
        assert f_eval(-1, 2.7 + 0.3j, validate_params(2, 3)) == 0

    def test_p_equals_q_root(self):
        assert abs(f_eval(2, 2, validate_params(2, 2))) < 1e-14

    def test_hand_value(self):
        assert (3 + 1 / 3) - (2 + 1 / 2) == pytest.approx(5 / 6)
        assert f_eval(1, 1, validate_params(2, 3)) == pytest.approx(5 / 6, rel=1e-14)

    def test_matches_ladder_weight(self, rng):
        for _ in range(50):
            params = random_params(rng)
            two_j = random_two_j(rng)
            n = int(rng.integers(0, 20))
            c = deformed_ladder(two_j, params, n + 1).coeffs[n]
            f = f_eval(n, two_j, params)
            assert abs(f - params.denominator * c * c) <= 1e-10 * (1 + abs(f))


class TestScan:
    def test_p_equals_q(self):
        r = scan_integer_roots(3, validate_params(2, 2), 20, 1e-12)
        assert r.verdict == "FINITE(4)"
        assert r.smallest_root == 3 and r.dimension == 4
        assert r.roots[0].scaled_residual < 1e-12
        assert all(r.residuals[n] > 1e-3 for n in range(3))

    def test_trivial(self):
        r = scan_integer_roots(0, validate_params(1.2 - 0.4j, 0.6j), 5)
        assert r.verdict == "FINITE(1)" and r.smallest_root == 0

    def test_generic_no_root(self):
        params = validate_params(2, 3)
        r = scan_integer_roots(1, params, 200)
        assert r.verdict == "NO_ROOT_UP_TO(200)"
        assert r.dimension is None
        # independent brute force on the equivalent condition (pq)^(2j-n) = [n+1]_p/[n+1]_q
        for n in range(0, 200):
            lhs = 6.0 ** (1 - n)
            rhs = q_bracket(n + 1, 2).real / q_bracket(n + 1, 3).real
            assert abs(lhs - rhs) > 1e-3 * max(lhs, rhs)

    def test_large_scan_does_not_overflow(self):
        r = scan_integer_roots(3, validate_params(2, 0.6 + 0.1j), 1000)
        assert len(r.residuals) == 1001
        assert all(math.isfinite(x) for x in r.residuals)

    def test_monotone_evidence(self, rng):
        for _ in range(10):
            params = random_params(rng)
            two_j = random_two_j(rng)
            small = scan_integer_roots(two_j, params, 50)
            big = scan_integer_roots(two_j, params, 300)
            assert [x.n for x in small.roots] == [x.n for x in big.roots if x.n <= 50]

    def test_detector_equivalence(self, rng):
        # f(n) ~ 0 exactly when the E- matrix element c_n vanishes
        cases = [(validate_params(q, q), 5) for q in (1.3, 0.8 + 0.5j)]
        cases += [(random_params(rng), 5) for _ in range(10)]
        for params, two_j in cases:
            spec = deformed_ladder(two_j, params, 12)
            for n in range(12):
                A = abs(cmath.exp((two_j - n) * params.log_q) * q_bracket(n + 1, params.q))
                B = abs(cmath.exp((n - two_j) * params.log_p) * q_bracket(n + 1, params.p))
                c_scaled = abs(spec.coeffs[n]) ** 2 * abs(params.denominator) / (A + B + 1)
                res = f_residual(n, two_j, params)
                assert (res < 1e-10) == (c_scaled < 1e-10)
                assert abs(res - c_scaled) < 1e-10


class TestSpinForDimension:
    @pytest.mark.parametrize("D", [1, 2, 5, 9])
    def test_p_equals_q(self, D):
        sols = spin_for_dimension(D, validate_params(1.8, 1.8))
        assert abs(sols.branch(0).two_j - (D - 1)) < 1e-12

    def test_dimension_one(self):
        sols = spin_for_dimension(1, validate_params(2, 3))
        assert abs(sols.branch(0).two_j) < 1e-15

    def test_complex_spin(self):
        sols = spin_for_dimension(2, validate_params(2, 3))
        expected = math.log(0.75) / math.log(6) + 1
        assert expected == pytest.approx(0.83944, abs=1e-5)
        s = sols.branch(0)
        assert abs(s.two_j - expected) < 1e-14
        assert f_residual(1, s.two_j, sols.params) < 1e-12
        assert len(sols.branch_solutions) == 11

    def test_log_undefined(self):
        # [2]_i = i + 1/i = 0
        with pytest.raises(LogUndefined):
            spin_for_dimension(2, validate_params(2, 1j))

    def test_branch_consistency(self, rng):
        for _ in range(20):
            params = random_params(rng)
            D = int(rng.integers(1, 10))
            for s in spin_for_dimension(D, params, 3).branch_solutions:
                assert spin_relation_residual(s.two_j, D, params) < 1e-10
                assert s.residual < 1e-9

    def test_principal_log_of_pq_would_fail(self):
        # Log p + Log q leaves the principal strip here; Log(pq) gives a non-root
        params = validate_params(cmath.rect(1.5, 2.5), cmath.rect(1.7, 2.0))
        assert abs((params.log_p + params.log_q).imag) > math.pi
        ratio = q_bracket(3, params.p) / q_bracket(3, params.q)
        naive = cmath.log(ratio) / cmath.log(params.p * params.q) + 2
        assert f_residual(2, naive, params) > 1e-6
        assert f_residual(2, spin_for_dimension(3, params).branch(0).two_j, params) < 1e-12


class TestRoundtrip:
    def test_p_equals_q(self):
        r = roundtrip_check(4, validate_params(2, 2), 0, 20)
        (e,) = r.entries
        assert e.is_root and e.is_smallest and e.smallest_root == 3

    def test_generic(self):
        params = validate_params(2, 3)
        r = roundtrip_check(2, params, 0, 50)
        (e,) = r.entries
        assert e.is_root and e.is_smallest
        assert f_residual(0, e.two_j, params) > 1e-3

    def test_dimension_one(self):
        r = roundtrip_check(1, validate_params(0.7, 1.9j), 2, 10)
        assert r.all_roots
        assert r.entries[[e.k for e in r.entries].index(0)].is_smallest
