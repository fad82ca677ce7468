import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l4norm.equilibria import (
    OriginShift,
    offset_ab,
    shift_from_point,
    solve_triangular_numeric,
)
from l4norm.errors import ContractError
from l4norm.model import ModelParams, State, hamiltonian, lagrangian
from l4norm.polyalg import (
    TruncatedPoly,
    binomial_series,
    compare_h3,
    dump_poly,
    extract_EFG,
    oracle_t_coefficients,
    t_coefficients_closed_form,
    taylor_lagrangian,
)

SQRT3 = math.sqrt(3.0)


def energy_poly(lag: TruncatedPoly) -> TruncatedPoly:
    """sum_v v dL/dv - L: the energy function of a Lagrangian polynomial."""
    xid = TruncatedPoly.variable(2, lag.cap)
    etad = TruncatedPoly.variable(3, lag.cap)
    return xid * lag.partial(2) + etad * lag.partial(3) - lag


small = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False,
                  allow_infinity=False)


def poly_strategy(cap=3):
    mono = st.tuples(st.integers(0, 2), st.integers(0, 2),
                     st.integers(0, 2), st.integers(0, 2))
    return st.dictionaries(mono, small, max_size=6).map(
        lambda d: TruncatedPoly(cap, d))


class TestRingAxioms:
    @settings(max_examples=60, deadline=None)
    @given(poly_strategy(), poly_strategy(), poly_strategy())
    def test_associativity_and_distributivity(self, a, b, c):
        assoc = ((a * b) * c).norm_of_difference(a * (b * c))
        dist = (a * (b + c)).norm_of_difference(a * b + a * c)
        assert assoc < 1e-12
        assert dist < 1e-12

    @settings(max_examples=30, deadline=None)
    @given(poly_strategy())
    def test_truncation_closure(self, a):
        assert all(sum(m) <= a.cap for m in (a * a).coeffs)

    def test_product_truncates_never_extends(self):
        x = TruncatedPoly.variable(0, 2)
        assert (x * x * x).coeffs == {}  # degree 3 pruned at cap 2

    def test_partial_derivative(self):
        x = TruncatedPoly.variable(0, 3)
        e = TruncatedPoly.variable(1, 3)
        p = (x ** 2) * e
        assert p.partial(0).coefficient((1, 1, 0, 0)) == 2.0
        assert p.partial(1).coefficient((2, 0, 0, 0)) == 1.0

    def test_binomial_against_scalar(self):
        t = TruncatedPoly(6, {(1, 0, 0, 0): 0.02})
        series = binomial_series(t, -0.5)
        value = series(0.1, 0, 0, 0)   # here t = 0.002
        assert value == pytest.approx((1 + 0.02 * 0.1) ** -0.5, abs=1e-14)


class TestTaylorLagrangian:
    def test_classical_hessian(self):
        p = ModelParams(mu=0.01)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l2 = taylor_lagrangian(p, shift, 2).grade(2)
        assert 2 * l2.coefficient((2, 0, 0, 0)) == pytest.approx(0.75, abs=1e-11)
        assert 2 * l2.coefficient((0, 2, 0, 0)) == pytest.approx(2.25, abs=1e-11)
        assert l2.coefficient((1, 1, 0, 0)) == pytest.approx(
            (3 * SQRT3 / 4) * p.gamma, abs=1e-11)

    def test_classical_hessian_against_finite_differences(self):
        from l4norm.model import effective_potential
        p = ModelParams(mu=0.01)
        pt = solve_triangular_numeric(p)
        shift = shift_from_point(pt, p)
        l2 = taylor_lagrangian(p, shift, 2).grade(2)
        h = 1e-4
        def u(dx, dy):
            return effective_potential(State(pt.x + dx, pt.y + dy), p)
        uxx = (u(h, 0) - 2 * u(0, 0) + u(-h, 0)) / h**2
        uyy = (u(0, h) - 2 * u(0, 0) + u(0, -h)) / h**2
        uxy = (u(h, h) - u(h, -h) - u(-h, h) + u(-h, -h)) / (4 * h**2)
        assert 2 * l2.coefficient((2, 0, 0, 0)) == pytest.approx(uxx, abs=1e-6)
        assert 2 * l2.coefficient((0, 2, 0, 0)) == pytest.approx(uyy, abs=1e-6)
        assert l2.coefficient((1, 1, 0, 0)) == pytest.approx(uxy, abs=1e-6)

    def test_degree_zero_is_pointwise_lagrangian(self):
        p = ModelParams(mu=0.01, q1=0.999, A2=1e-4, cd=20.0)
        shift = offset_ab(p)
        lag = taylor_lagrangian(p, shift, 3)
        expected = lagrangian(State(shift.a - p.mu, shift.b), p)
        assert lag.coefficient((0, 0, 0, 0)) == pytest.approx(expected, rel=1e-13)

    def test_degree_one_force_vanishes_at_numeric_equilibrium(self):
        p = ModelParams(mu=0.01, q1=0.9995, A2=1e-4, cd=100.0)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l1 = taylor_lagrangian(p, shift, 3).grade(1).position_part()
        assert l1.max_abs() < 1e-10

    def test_degree_one_velocity_terms_are_equilibrium_momenta(self):
        from l4norm.model import momenta
        p = ModelParams(mu=0.01, q1=0.9995, cd=50.0)
        pt = solve_triangular_numeric(p)
        shift = shift_from_point(pt, p)
        l1 = taylor_lagrangian(p, shift, 3).grade(1)
        c = momenta(State(pt.x, pt.y), p)
        assert l1.coefficient((0, 0, 1, 0)) == pytest.approx(c.px, rel=1e-12)
        assert l1.coefficient((0, 0, 0, 1)) == pytest.approx(c.py, rel=1e-12)

    def test_degree_one_nonzero_off_equilibrium_equals_local_force(self):
        from l4norm.equilibria import equilibrium_force
        p = ModelParams(mu=0.01, q1=0.999, cd=30.0)
        pt = solve_triangular_numeric(p)
        shift = OriginShift(pt.x + p.mu + 0.01, pt.y - 0.005)
        l1 = taylor_lagrangian(p, shift, 3).grade(1)
        fx, fy = equilibrium_force(shift.a - p.mu, shift.b, p)
        assert l1.coefficient((1, 0, 0, 0)) == pytest.approx(fx, rel=1e-8)
        assert l1.coefficient((0, 1, 0, 0)) == pytest.approx(fy, rel=1e-8)

    def test_drag_free_degree_two_velocity_structure(self):
        p = ModelParams(mu=0.05)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l2 = taylor_lagrangian(p, shift, 2).grade(2)
        mixed = {m for m in l2.coeffs if (m[2] + m[3]) == 1}
        assert mixed == {(1, 0, 0, 1), (0, 1, 1, 0)}  # the Coriolis pair only
        assert l2.coefficient((1, 0, 0, 1)) == pytest.approx(p.n, abs=1e-13)
        assert l2.coefficient((0, 1, 1, 0)) == pytest.approx(-p.n, abs=1e-13)

    def test_drag_free_cubic_has_no_velocity_terms(self):
        p = ModelParams(mu=0.05, A2=1e-3)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l3 = taylor_lagrangian(p, shift, 3).grade(3)
        assert l3.velocity_part().coeffs == {}

    def test_truncation_consistency(self):
        p = ModelParams(mu=0.02, q1=0.999, A2=1e-4, cd=10.0)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l4 = taylor_lagrangian(p, shift, 4)
        l3 = taylor_lagrangian(p, shift, 3)
        assert l4.truncated(3).norm_of_difference(l3) < 1e-12

    def test_values_converge_to_pointwise_lagrangian(self):
        p = ModelParams(mu=0.01, q1=0.999, A2=1e-4, cd=10.0)
        pt = solve_triangular_numeric(p)
        shift = shift_from_point(pt, p)
        lag = taylor_lagrangian(p, shift, 4)
        for d in (0.01, 0.005):
            approx = lag(d, -d, d / 2, d / 3)
            exact = lagrangian(State(pt.x + d, pt.y - d, d / 2, d / 3), p)
            assert abs(approx - exact) < 40 * d**5
        # halving the displacement should shrink the error ~2^5
        e1 = abs(lag(0.01, -0.01, 0.005, 0.005)
                 - lagrangian(State(pt.x + 0.01, pt.y - 0.01, 0.005, 0.005), p))
        e2 = abs(lag(0.005, -0.005, 0.0025, 0.0025)
                 - lagrangian(State(pt.x + 0.005, pt.y - 0.005, 0.0025, 0.0025), p))
        assert e1 / e2 > 20

    def test_energy_cubic_drops_velocity_terms(self):
        p = ModelParams(mu=0.01, q1=0.999, cd=10.0)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        lag = taylor_lagrangian(p, shift, 3)
        h3 = energy_poly(lag).grade(3)
        assert h3.norm_of_difference(-lag.grade(3).position_part()) < 1e-13

    def test_energy_value_matches_hamiltonian(self):
        p = ModelParams(mu=0.01, q1=0.999, A2=1e-4, cd=10.0)
        pt = solve_triangular_numeric(p)
        shift = shift_from_point(pt, p)
        h = energy_poly(taylor_lagrangian(p, shift, 4))
        d = 0.004
        exact = hamiltonian(State(pt.x + d, pt.y + d, -d, d / 2), p)
        assert h(d, d, -d, d / 2) == pytest.approx(exact, abs=50 * d**5)


class TestExtractEFG:
    def test_classical_values(self):
        p = ModelParams(mu=0.01)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        efg = extract_EFG(taylor_lagrangian(p, shift, 2).grade(2), p)
        assert efg.E == pytest.approx(1 / 8, abs=1e-11)
        assert efg.F == pytest.approx(-5 / 8, abs=1e-11)
        assert efg.G == pytest.approx(-(3 * SQRT3 / 4) * p.gamma, abs=1e-11)

    def test_zero_polynomial(self):
        p = ModelParams(mu=0.3)
        efg = extract_EFG(TruncatedPoly(2), p)
        assert efg.E == efg.F == p.n**2 / 2
        assert efg.G == 0.0

    def test_linearized_equations_match_numeric_jacobian(self):
        # (2E - n^2), G must reproduce d(eom)/d(state) at the equilibrium
        from l4norm.model import eom_rhs
        p = ModelParams(mu=0.01, A2=1e-3)
        pt = solve_triangular_numeric(p)
        shift = shift_from_point(pt, p)
        efg = extract_EFG(taylor_lagrangian(p, shift, 2).grade(2), p)
        h = 1e-6
        ax_x = (eom_rhs(State(pt.x + h, pt.y), p)[0]
                - eom_rhs(State(pt.x - h, pt.y), p)[0]) / (2 * h)
        ax_y = (eom_rhs(State(pt.x, pt.y + h), p)[0]
                - eom_rhs(State(pt.x, pt.y - h), p)[0]) / (2 * h)
        ay_y = (eom_rhs(State(pt.x, pt.y + h), p)[1]
                - eom_rhs(State(pt.x, pt.y - h), p)[1]) / (2 * h)
        assert -(2 * efg.E - p.n**2) == pytest.approx(ax_x, abs=1e-7)
        assert -efg.G == pytest.approx(ax_y, abs=1e-7)
        assert -(2 * efg.F - p.n**2) == pytest.approx(ay_y, abs=1e-7)

    def test_oblateness_shifts_g(self):
        mu = 0.01
        def g_of(a2):
            p = ModelParams(mu=mu, A2=a2)
            shift = shift_from_point(solve_triangular_numeric(p), p)
            return extract_EFG(taylor_lagrangian(p, shift, 2).grade(2), p).G
        g0, g1, g2 = g_of(0.0), g_of(1e-3), g_of(5e-4)
        assert abs(g1 - g0) > 1e-5            # O(A2) shift present
        assert (g1 - g0) / (g2 - g0) == pytest.approx(2.0, rel=0.02)

    def test_rejects_non_quadratic_input(self):
        p = ModelParams(mu=0.1)
        with pytest.raises(ContractError):
            extract_EFG(TruncatedPoly(3, {(3, 0, 0, 0): 1.0}), p)


class TestClosedFormCubic:
    def test_gamma_zero_kills_t1(self):
        p = ModelParams(mu=0.5)
        t = t_coefficients_closed_form(p, offset_ab(p))
        assert t.T1 == pytest.approx(0.0, abs=1e-15)

    def test_classical_printed_values(self):
        p = ModelParams(mu=0.01)
        t = t_coefficients_closed_form(p, offset_ab(p))
        assert t.T1 == pytest.approx(21 * p.gamma / 8, rel=1e-13)
        assert t.T2 == pytest.approx(21 * SQRT3 / 8, rel=1e-13)
        assert t.T3 == pytest.approx(-9 * p.gamma / 8, rel=1e-13)
        assert t.T4 == pytest.approx(-9 * SQRT3 / 8, rel=1e-13)

    def test_t5_zero_without_drag(self):
        p = ModelParams(mu=0.2)
        t = t_coefficients_closed_form(p, offset_ab(p))
        assert t.T5.coeffs == {}

    def test_t5_matches_oracle_velocity_cubic_exactly(self):
        # corrected T5 must equal the Taylor gauge cubic at the same pivot
        p = ModelParams(mu=0.01, q1=0.999, cd=10.0)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        t5 = t_coefficients_closed_form(p, shift).T5
        oracle = taylor_lagrangian(p, shift, 3).grade(3).velocity_part()
        assert t5.norm_of_difference(oracle) < 1e-14 * max(1.0, oracle.max_abs())

    def test_t5_verbatim_misses_first_order_term(self):
        p = ModelParams(mu=0.01, q1=0.999, cd=10.0)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        t5v = t_coefficients_closed_form(p, shift, verbatim_t5=True).T5
        oracle = taylor_lagrangian(p, shift, 3).grade(3).velocity_part()
        assert t5v.norm_of_difference(oracle) > 0.1 * p.W1

    def test_oracle_t1_t4_match_closed_form_classically(self):
        # T1 and T4 of the printed table agree with the Taylor cubic; T2, T3
        # do not (registered zeroth-order discrepancies).
        p = ModelParams(mu=0.01)
        shift = shift_from_point(solve_triangular_numeric(p), p)
        l3 = taylor_lagrangian(p, shift, 3).grade(3)
        rep = compare_h3(l3, t_coefficients_closed_form(p, shift), p)
        assert rep.rel_diff["T1"] < 1e-10
        assert rep.rel_diff["T4"] < 1e-10
        assert rep.rel_diff["T2"] > 0.5
        assert rep.rel_diff["T3"] > 0.5
        t1o, t2o, t3o, t4o, _ = rep.oracle
        assert t2o == pytest.approx(-3 * SQRT3 / 8, abs=1e-11)
        assert t3o == pytest.approx(-33 * p.gamma / 8, abs=1e-10)


class TestDump:
    def test_deterministic_dump(self):
        poly = TruncatedPoly(2, {(1, 0, 0, 0): 0.5, (0, 1, 0, 0): -2.0})
        text = dump_poly(poly)
        assert text == "0 1 0 0 -2\n1 0 0 0 0.5\n"
        assert "0x1.0" in dump_poly(poly, hexfloat=True)

    def test_oracle_t_requires_cubic(self):
        with pytest.raises(ContractError):
            oracle_t_coefficients(TruncatedPoly(3, {(1, 0, 0, 0): 1.0}))
