import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l4norm.dalembert import (
    DAlembertSeries,
    FrequencyPair,
    apply_D,
    apply_poly_in_D,
    delta_operator,
    invert_delta,
    moser_check,
    small_divisor,
)
from l4norm.errors import ContractError, CriticalTermError, ParameterError, SmallDivisorError

W_CLASSICAL = FrequencyPair(0.9633268056899441, 0.26834972742935684)  # mu = 0.01


def valid_keys(max_degree=4):
    keys = []
    for j in range(0, max_degree + 1):
        for m in range(0, max_degree + 1 - j):
            for p in range(j % 2, j + 1, 2):
                for q in range(-m, m + 1, 2):
                    if p > 0 or q >= 0:
                        keys.append((j, m, p, q))
    return keys


KEYS = valid_keys()


def random_series(rng, nterms=20):
    s = DAlembertSeries()
    for _ in range(nterms):
        j, m, p, q = rng.choice(KEYS)
        s = s + DAlembertSeries.single(j, m, p, q,
                                       c=rng.uniform(-2, 2),
                                       s=0.0 if (p, q) == (0, 0) else rng.uniform(-2, 2))
    return s


class TestConstruction:
    def test_parity_enforced(self):
        with pytest.raises(ContractError):
            DAlembertSeries.single(2, 0, 1, 0, c=1.0)   # p parity breaks j
        with pytest.raises(ContractError):
            DAlembertSeries.single(1, 1, 1, 2, c=1.0)   # |q| > m
        with pytest.raises(ContractError):
            DAlembertSeries.single(1, 0, 3, 0, c=1.0)   # p > j

    def test_canonical_negative_harmonic(self):
        s = DAlembertSeries.single(1, 1, -1, -1, c=2.0, s=3.0)
        assert s.terms == {(1, 1, 1, 1): (2.0, -3.0)}

    def test_zero_harmonic_sine_dropped(self):
        # sin(0*phi) vanishes identically; its coefficient is not representable
        s = DAlembertSeries.single(2, 0, 0, 0, c=2.0, s=1.0)
        assert s.terms == {(2, 0, 0, 0): (2.0, 0.0)}

    def test_zero_coeffs_not_stored(self):
        s = DAlembertSeries.single(1, 0, 1, 0, c=1.0) \
            + DAlembertSeries.single(1, 0, 1, 0, c=-1.0)
        assert s.terms == {}

    def test_canonical_idempotence(self):
        rng = random.Random(7)
        s = random_series(rng)
        again = DAlembertSeries(s.terms)
        assert again == s


class TestOperatorD:
    def test_single_cosine(self):
        w = FrequencyPair(0.96, 0.27)
        s = DAlembertSeries.single(1, 0, 1, 0, c=1.0)
        d = apply_D(s, w)
        assert d.terms == {(1, 0, 1, 0): (0.0, -0.96)}

    def test_mixed_harmonic_multiplier(self):
        w = FrequencyPair(0.96, 0.27)
        s = DAlembertSeries.single(1, 1, 1, 1, c=1.0)
        d = apply_D(s, w)
        c, sv = d.terms[(1, 1, 1, 1)]
        assert c == 0.0
        assert sv == pytest.approx(-(0.96 - 0.27), abs=1e-15)

    def test_d_squared_is_eigenvalue(self):
        w = W_CLASSICAL
        for p in range(0, 5):
            for q in range(-4, 5):
                if (p, q) == (0, 0) or p < 0 or (p == 0 and q < 0):
                    continue
                j, m = p + 2, abs(q) + 2  # any parity-compatible grade
                if (j - p) % 2 or (m - abs(q)) % 2:
                    continue
                s = DAlembertSeries.single(j, m, p, q, c=1.3, s=-0.4 if (p, q) != (0, 0) else 0.0)
                dd = apply_D(apply_D(s, w), w)
                theta = w.theta(p, q)
                expected = s.scale(-theta * theta)
                assert dd.norm_of_difference(expected) < 1e-13

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6), st.floats(0.1, 2.0), st.floats(0.1, 2.0))
    def test_linearity(self, seed, ca, cb):
        rng = random.Random(seed)
        w = W_CLASSICAL
        a, b = random_series(rng, 8), random_series(rng, 8)
        left = apply_D(a.scale(ca) + b.scale(cb), w)
        right = apply_D(a, w).scale(ca) + apply_D(b, w).scale(cb)
        assert left.norm_of_difference(right) < 1e-13


class TestProducts:
    def test_cos_squared_expansion(self):
        s = DAlembertSeries.single(1, 0, 1, 0, c=1.0)
        sq = s * s
        assert sq.terms == {(2, 0, 0, 0): (0.5, 0.0), (2, 0, 2, 0): (0.5, 0.0)}

    def test_cos_times_sin(self):
        a = DAlembertSeries.single(1, 0, 1, 0, c=1.0)
        b = DAlembertSeries.single(0, 1, 0, 1, s=1.0)
        prod = a * b
        assert prod.terms == {(1, 1, 1, 1): (0.0, 0.5), (1, 1, 1, -1): (0.0, -0.5)}

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6))
    def test_parity_closure(self, seed):
        rng = random.Random(seed)
        prod = random_series(rng, 6) * random_series(rng, 6)
        # constructor revalidates every key; rebuilding must not raise
        DAlembertSeries(prod.terms)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10**6))
    def test_product_matches_pointwise_values(self, seed):
        rng = random.Random(seed)
        a, b = random_series(rng, 5), random_series(rng, 5)
        prod = a * b
        i1, i2 = 0.37, 0.21
        for phi1, phi2 in [(0.3, 1.1), (2.0, -0.7)]:
            va = series_value(a, i1, i2, phi1, phi2)
            vb = series_value(b, i1, i2, phi1, phi2)
            vp = series_value(prod, i1, i2, phi1, phi2)
            assert vp == pytest.approx(va * vb, rel=1e-10, abs=1e-10)


def series_value(s, i1, i2, phi1, phi2):
    total = 0.0
    for (j, m, p, q), (c, sv) in s.terms.items():
        amp = i1 ** (j / 2) * i2 ** (m / 2)
        ang = p * phi1 + q * phi2
        total += amp * (c * math.cos(ang) + sv * math.sin(ang))
    return total


class TestSmallDivisors:
    def test_critical_divisors_vanish(self):
        w = FrequencyPair(0.77, 0.31)
        assert small_divisor(1, 0, w) == pytest.approx(0.0, abs=1e-15)
        assert small_divisor(0, 1, w) == pytest.approx(0.0, abs=1e-15)

    def test_zero_harmonic(self):
        w = FrequencyPair(0.9, 0.2)
        assert small_divisor(0, 0, w) == pytest.approx(0.9**2 * 0.2**2, rel=1e-15)

    def test_mixed_harmonic_value(self):
        w = FrequencyPair(0.963327, 0.268353)
        theta = w.omega1 - w.omega2
        expected = (w.omega1**2 - theta**2) * (w.omega2**2 - theta**2)
        assert small_divisor(1, 1, w) == pytest.approx(expected, rel=1e-15)
        assert small_divisor(1, 1, w) == pytest.approx(-0.1829, abs=5e-4)

    def test_single_harmonic_division(self):
        w = W_CLASSICAL
        c = 1.7
        s = DAlembertSeries.single(2, 0, 2, 0, c=c)
        out = invert_delta(s, w)
        assert out.terms[(2, 0, 2, 0)][0] == pytest.approx(
            c / small_divisor(2, 0, w), rel=1e-15)

    def test_critical_term_rejected(self):
        s = DAlembertSeries.single(1, 0, 1, 0, c=1e-3)
        with pytest.raises(CriticalTermError):
            invert_delta(s, W_CLASSICAL)

    def test_small_divisor_error(self):
        w = FrequencyPair(0.8, 0.4)  # omega1 = 2 omega2: Delta_{1,-1}... pick (2,0)?
        # construct a harmonic whose divisor is tiny: theta = 2*0.4 = 0.8 = omega1
        s = DAlembertSeries.single(0, 2, 0, 2, c=1.0)
        with pytest.raises(SmallDivisorError):
            invert_delta(s, w)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10**6))
    def test_round_trip(self, seed):
        rng = random.Random(seed)
        w = W_CLASSICAL
        s = random_series(rng, 20)
        # remove critical harmonics before inversion
        clean = DAlembertSeries(
            {k: v for k, v in s.terms.items() if (k[2], k[3]) not in ((1, 0), (0, 1))})
        back = delta_operator(invert_delta(clean, w), w)
        assert back.norm_of_difference(clean) < 1e-12 * max(1.0, clean.max_abs())

    def test_poly_in_d_operator(self):
        w = W_CLASSICAL
        s = DAlembertSeries.single(2, 0, 2, 0, c=1.0, s=-0.5)
        out = apply_poly_in_D(s, w, c0=0.3, c1=2.0, c2=1.0)
        theta = w.theta(2, 0)
        c, sv = out.terms[(2, 0, 2, 0)]
        assert c == pytest.approx((0.3 - theta**2) * 1.0 + 2.0 * theta * (-0.5), rel=1e-14)
        assert sv == pytest.approx((0.3 - theta**2) * (-0.5) - 2.0 * theta * 1.0, rel=1e-14)


class TestMoser:
    def test_classical_pass(self):
        rep = moser_check(W_CLASSICAL, tol=1e-3)
        assert rep.passed
        assert rep.min_combination == pytest.approx(0.1583, abs=2e-4)
        assert tuple(sorted(abs(k) for k in rep.worst_pair)) == (1, 3)

    def test_exact_two_to_one_resonance(self):
        rep = moser_check(FrequencyPair(0.8, 0.4), tol=1e-8)
        assert not rep.passed
        assert rep.min_combination == pytest.approx(0.0, abs=1e-15)
        assert tuple(sorted(abs(k) for k in rep.worst_pair)) == (1, 2)

    def test_three_to_one_resonance(self):
        rep = moser_check(FrequencyPair(0.9, 0.3), tol=1e-8)
        assert not rep.passed
        assert tuple(sorted(abs(k) for k in rep.worst_pair)) == (1, 3)

    def test_frequency_pair_validation(self):
        with pytest.raises(ParameterError):
            FrequencyPair(0.3, 0.9)
        with pytest.raises(ParameterError):
            FrequencyPair(0.9, -0.1)


class TestPretty:
    def test_sorted_fixed_precision(self):
        s = DAlembertSeries.single(2, 0, 2, 0, c=1 / 3) \
            + DAlembertSeries.single(1, 0, 1, 0, c=1.0)
        text = s.pretty()
        lines = text.strip().splitlines()
        assert lines[0].startswith("I1^1/2 I2^0/2 (1,0)")
        assert "0.33333333333333331" in lines[1]


class TestDivisorLinksMoser:
    def test_delta_eigenaction_all_harmonics_up_to_four(self):
        w = W_CLASSICAL
        for p in range(0, 5):
            qlo = -4 if p > 0 else 0
            for q in range(qlo, 5):
                if p == 0 and q == 0:
                    continue
                j, m = p, abs(q)  # smallest parity-compatible grades
                s = DAlembertSeries.single(j, m, p, q, c=1.0,
                                           s=0.0 if (p, q) == (0, 0) else 0.5)
                out = apply_poly_in_D(
                    apply_poly_in_D(s, w, c0=w.omega1**2, c2=1.0),
                    w, c0=w.omega2**2, c2=1.0)
                expected = s.scale(small_divisor(p, q, w))
                assert out.norm_of_difference(expected) < 1e-13

    def test_moser_pass_implies_divisors_above_floor(self):
        # the gate's guarantee: the five divisors the second-order solve
        # needs all clear the floor once the combination check passes
        rep = moser_check(W_CLASSICAL, tol=1e-3)
        assert rep.passed
        for (p, q) in ((0, 0), (2, 0), (0, 2), (1, 1), (1, -1)):
            assert abs(small_divisor(p, q, W_CLASSICAL)) > 1e-8
