"""Linear normal modes, first/second-order series components, and the
cubic normal-form coefficients.

The pipeline this module serves:

1. frequencies + symplectic normal-mode matrix J from the quadratic
   Lagrangian slice (exact eigenvector construction);
2. first-order components B1 from the (x, y) rows of J;
3. cubic forcing X2, Y2 by substituting B1 into the cubic slice;
4. second-order components B2 by harmonic division (the oracle), or from
   the printed coefficient tables (closed form, for comparison);
5. degree-3 energy coefficients after substituting x = B1 + B2, whose
   vanishing is the headline verification target.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .closedforms import JClosedForm, mode_scalars
from .dalembert import (
    CRITICAL_HARMONICS,
    DAlembertSeries,
    FrequencyPair,
    apply_D,
    apply_poly_in_D,
    invert_delta,
)
from .errors import ContractError, CriticalTermError, StabilityDomainError
from .model import ModelParams
from .polyalg import QuadraticCoefficients, TruncatedPoly

SIGMA = np.array([
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
])

_IMAG_TOL = 1e-9


def stiffness_matrix(efg: QuadraticCoefficients, n: float) -> np.ndarray:
    """Position block K of the quadratic Lagrangian, L2 = |v|^2/2 + v.C q + q.K q/2."""
    return np.array([[n * n - 2.0 * efg.E, -efg.G],
                     [-efg.G, n * n - 2.0 * efg.F]])


def velocity_coupling(l2: TruncatedPoly) -> np.ndarray:
    """Bilinear block C with C[i][j] = coefficient of v_i q_j in the degree-2
    slice (gyroscopic plus drag gauge terms)."""
    return np.array([
        [l2.coefficient((1, 0, 1, 0)), l2.coefficient((0, 1, 1, 0))],
        [l2.coefficient((1, 0, 0, 1)), l2.coefficient((0, 1, 0, 1))],
    ])


def gyroscopic_coupling(n: float) -> np.ndarray:
    return np.array([[0.0, -n], [n, 0.0]])


def frequencies(p: ModelParams, efg: QuadraticCoefficients) -> FrequencyPair:
    """Basic frequencies: positive imaginary parts of the linearized system.

    Only the antisymmetric part of the velocity coupling enters the
    equations of motion, and for this model that part is exactly the
    gyroscopic 2n block, so (E, F, G, n) determine the spectrum.
    """
    n = p.n
    K = stiffness_matrix(efg, n)
    M = np.zeros((4, 4))
    M[0:2, 2:4] = np.eye(2)
    M[2:4, 0:2] = K
    M[2:4, 2:4] = np.array([[0.0, 2.0 * n], [-2.0 * n, 0.0]])
    eigvals = np.linalg.eigvals(M)
    if np.any(np.abs(eigvals.real) > _IMAG_TOL * (1.0 + np.abs(eigvals))):
        raise StabilityDomainError(
            "linearized system is not center x center (eigenvalues leave the "
            "imaginary axis)", eigenvalues=tuple(eigvals))
    omegas = np.sort(eigvals.imag[eigvals.imag > 0.0])[::-1]
    if len(omegas) != 2:
        raise StabilityDomainError(
            f"expected two positive frequencies, got {omegas}",
            eigenvalues=tuple(eigvals))
    w1, w2 = float(omegas[0]), float(omegas[1])
    if w1 - w2 < 1e-6 * w1:
        warnings.warn(
            f"near-equal frequencies ({w1:.8f}, {w2:.8f}); labeling is fragile",
            stacklevel=2)
    return FrequencyPair(w1, w2)


def classical_frequencies(mu: float) -> FrequencyPair:
    """Drag-free frequencies from w^4 - w^2 + 27 mu (1-mu)/4 = 0."""
    disc = 1.0 - 27.0 * mu * (1.0 - mu)
    if disc < 0.0:
        raise StabilityDomainError(
            f"mu = {mu} beyond the critical mass ratio (discriminant {disc:.3e})")
    w1sq = 0.5 * (1.0 + math.sqrt(disc))
    return FrequencyPair(math.sqrt(w1sq), math.sqrt(1.0 - w1sq))


@dataclass(frozen=True)
class NormalModeData:
    """Exact symplectic normal-mode transformation of the quadratic part.

    X = J T maps (Q1, Q2, P1, P2) to (x, y, px, py); the transformed
    quadratic Hamiltonian is (P1^2 + w1^2 Q1^2)/2 - (P2^2 + w2^2 Q2^2)/2,
    i.e. w1 I1 - w2 I2 in action-angle form.
    """

    freq: FrequencyPair
    J: np.ndarray
    efg: QuadraticCoefficients
    n: float
    l1: float
    l2: float
    k1: float
    k2: float
    symplectic_defect: float
    h2_residual: float

    @property
    def J13(self):
        return self.J[0, 2]

    @property
    def J14(self):
        return self.J[0, 3]

    @property
    def J21(self):
        return self.J[1, 0]

    @property
    def J22(self):
        return self.J[1, 1]

    @property
    def J23(self):
        return self.J[1, 2]

    @property
    def J24(self):
        return self.J[1, 3]

    def printed_entries(self):
        return {"J13": self.J13, "J14": self.J14, "J21": self.J21,
                "J22": self.J22, "J23": self.J23, "J24": self.J24}


def hamiltonian_matrix(K: np.ndarray, C: np.ndarray) -> np.ndarray:
    """Hessian S of H2(q, p) = |p - C q|^2 / 2 - q.K q / 2."""
    S = np.zeros((4, 4))
    S[0:2, 0:2] = C.T @ C - K
    S[0:2, 2:4] = -C.T
    S[2:4, 0:2] = -C
    S[2:4, 2:4] = np.eye(2)
    return S


def j_numeric(p: ModelParams, efg: QuadraticCoefficients, w: FrequencyPair,
              l2: TruncatedPoly | None = None) -> NormalModeData:
    """Symplectic normalization of the quadratic Hamiltonian.

    Eigenvectors of the linear canonical flow are phase-rotated so the
    x row couples only to the P (cosine) variables, scaled so the
    transformation is symplectic, and signed so J13, J14 > 0.  The mode
    signs (+, -) are dictated by the symplectic invariants; a sign flip
    would mean the quadratic part is not of the expected type.
    """
    n = p.n
    K = stiffness_matrix(efg, n)
    C = velocity_coupling(l2) if l2 is not None else gyroscopic_coupling(n)
    S = hamiltonian_matrix(K, C)
    A = SIGMA @ S
    eigvals, eigvecs = np.linalg.eig(A)

    columns = {}
    for mode, (omega, target_sign) in enumerate(
            ((w.omega1, +1.0), (w.omega2, -1.0))):
        idx = int(np.argmin(np.abs(eigvals - 1j * omega)))
        if abs(eigvals[idx] - 1j * omega) > 1e-6 * (1.0 + omega):
            raise StabilityDomainError(
                f"no eigenvalue near i*{omega:.8f}", eigenvalues=tuple(eigvals))
        v = eigvecs[:, idx]
        pivot = v[0] if abs(v[0]) > 1e-12 else v[1]
        v = v * (pivot.conjugate() / abs(pivot))  # x component real
        u, wv = v.real, v.imag
        sigma = float(u @ SIGMA @ wv)
        if sigma * target_sign <= 0.0:
            raise StabilityDomainError(
                f"mode {mode + 1} has symplectic invariant {sigma:.3e}; "
                "quadratic part is not of the expected signature")
        c = 1.0 / math.sqrt(omega * abs(sigma))
        d = -target_sign * c * omega
        pcol, qcol = c * u, d * wv
        if pcol[0] < 0.0:
            pcol, qcol = -pcol, -qcol
        columns[mode] = (qcol, pcol)

    J = np.column_stack([columns[0][0], columns[1][0],
                         columns[0][1], columns[1][1]])

    defect = float(np.max(np.abs(J.T @ SIGMA @ J - SIGMA)))
    target = np.diag([w.omega1**2, -w.omega2**2, 1.0, -1.0])
    h2_res = float(np.max(np.abs(J.T @ S @ J - target)))
    l1, l2s, k1, k2 = mode_scalars(w)
    return NormalModeData(freq=w, J=J, efg=efg, n=n, l1=l1, l2=l2s, k1=k1,
                          k2=k2, symplectic_defect=defect, h2_residual=h2_res)


# -- first-order components ---------------------------------------------


def first_order_components(nm, verbatim_print: bool = False):
    """Degree-1 series (B1 for x, B1 for y) from the printed combination.

    `nm` needs J13..J24 attributes and `freq`; both NormalModeData and
    JClosedForm-with-frequencies work.  ``verbatim_print=True`` reproduces
    the printed weights for the last two y-row terms (omega * sqrt(2 I)
    and a sine on the J24 term) instead of the P/Q weights that annihilate
    the linearized equations.
    """
    w = nm.freq
    sq1, sq2 = math.sqrt(2.0 * w.omega1), math.sqrt(2.0 * w.omega2)
    iq1, iq2 = math.sqrt(2.0 / w.omega1), math.sqrt(2.0 / w.omega2)
    b1x = (DAlembertSeries.single(1, 0, 1, 0, c=nm.J13 * sq1)
           + DAlembertSeries.single(0, 1, 0, 1, c=nm.J14 * sq2))
    if verbatim_print:
        b1y = (DAlembertSeries.single(1, 0, 1, 0, s=nm.J21 * iq1,
                                      c=nm.J23 * math.sqrt(2.0) * w.omega1)
               + DAlembertSeries.single(0, 1, 0, 1, s=nm.J22 * iq2
                                        + nm.J24 * math.sqrt(2.0) * w.omega2))
    else:
        b1y = (DAlembertSeries.single(1, 0, 1, 0, s=nm.J21 * iq1, c=nm.J23 * sq1)
               + DAlembertSeries.single(0, 1, 0, 1, s=nm.J22 * iq2, c=nm.J24 * sq2))
    return b1x, b1y


@dataclass(frozen=True)
class ClosedFormModes:
    """Adapter exposing printed J entries alongside frequencies so the
    B1 builder accepts either source."""

    freq: FrequencyPair
    J13: float
    J14: float
    J21: float
    J22: float
    J23: float
    J24: float

    @classmethod
    def from_closed(cls, j: JClosedForm, w: FrequencyPair):
        return cls(w, j.J13, j.J14, j.J21, j.J22, j.J23, j.J24)


def linear_residual(b1x: DAlembertSeries, b1y: DAlembertSeries,
                    efg: QuadraticCoefficients, w: FrequencyPair,
                    n: float) -> float:
    """Sup-norm of the linearized equations applied to a degree-1 pair."""
    n2 = n * n
    r1 = apply_poly_in_D(b1x, w, c0=2.0 * efg.E - n2, c2=1.0) \
        - apply_poly_in_D(b1y, w, c0=-efg.G, c1=2.0 * n)
    r2 = apply_poly_in_D(b1x, w, c0=efg.G, c1=2.0 * n) \
        + apply_poly_in_D(b1y, w, c0=2.0 * efg.F - n2, c2=1.0)
    return max(r1.max_abs(), r2.max_abs())


# -- substitution of series into polynomials ------------------------------


def poly_at_series(poly: TruncatedPoly, xi_s, eta_s, xid_s, etad_s,
                   cap: int) -> DAlembertSeries:
    """Evaluate a polynomial at four series arguments, pruning above cap."""
    inputs = (xi_s, eta_s, xid_s, etad_s)
    max_exp = [0, 0, 0, 0]
    for mono in poly.coeffs:
        for i in range(4):
            max_exp[i] = max(max_exp[i], mono[i])
    powers = []
    for i in range(4):
        row = [DAlembertSeries.single(0, 0, 0, 0, c=1.0)]
        for _ in range(max_exp[i]):
            row.append(_prune(row[-1] * inputs[i], cap))
        powers.append(row)
    total = DAlembertSeries.zero()
    for mono, coeff in poly.coeffs.items():
        term = DAlembertSeries.single(0, 0, 0, 0, c=coeff)
        for i in range(4):
            if mono[i]:
                term = _prune(term * powers[i][mono[i]], cap)
        total = total + term
    return _prune(total, cap)


def _prune(series: DAlembertSeries, cap: int) -> DAlembertSeries:
    out = DAlembertSeries()
    out.terms = {k: v for k, v in series.terms.items() if k[0] + k[1] <= cap}
    return out


# -- cubic forcing and the second-order solve ------------------------------


def forcing_x2y2(l3: TruncatedPoly, b1x: DAlembertSeries, b1y: DAlembertSeries,
                 w: FrequencyPair, partial_forcing: bool = False):
    """Degree-2 forcing of the second-order equations.

    The exact Euler-Lagrange forcing is
    [dL3/dx - D(dL3/dxdot)] at (x, y, xdot, ydot) = (B1, B1, D B1, D B1);
    ``partial_forcing=True`` keeps only the partial-derivative part (the
    velocity chain rule without the total-derivative counterterm).
    For a cubic slice whose velocity terms form an exact gauge expression
    the two coincide.
    """
    if any(sum(m) != 3 for m in l3.coeffs):
        raise ContractError("forcing expects a homogeneous cubic slice")
    xd, yd = apply_D(b1x, w), apply_D(b1y, w)

    def sub(poly):
        return poly_at_series(poly, b1x, b1y, xd, yd, cap=2)

    x2 = sub(l3.partial(0))
    y2 = sub(l3.partial(1))
    if not partial_forcing:
        x2 = x2 - apply_D(sub(l3.partial(2)), w)
        y2 = y2 - apply_D(sub(l3.partial(3)), w)
    for series in (x2, y2):
        for (j, m, p, q) in series.terms:
            if (p, q) in CRITICAL_HARMONICS:
                raise ContractError(
                    f"parity violation: critical harmonic ({p},{q}) in forcing")
    return x2, y2


@dataclass(frozen=True)
class SecondOrderSolution:
    b2x: DAlembertSeries
    b2y: DAlembertSeries
    residual_x: float
    residual_y: float


def solve_second_order_oracle(efg: QuadraticCoefficients, w: FrequencyPair,
                              n: float, x2: DAlembertSeries, y2: DAlembertSeries,
                              floor: float = 1e-8,
                              critical_tol: float = 1e-12) -> SecondOrderSolution:
    """Solve the coupled second-order equations by harmonic division.

    Eliminating one unknown turns the coupled pair into
    (D^2 + w1^2)(D^2 + w2^2) B2 = Phi2 (and = -Psi2), which divides
    harmonic-by-harmonic by the small divisor.  The returned residuals are
    of the original coupled system and must sit at round-off.
    """
    for series, name in ((x2, "X2"), (y2, "Y2")):
        for (j, m, p, q), (c, s) in series.terms.items():
            if (p, q) in CRITICAL_HARMONICS and max(abs(c), abs(s)) > critical_tol:
                raise CriticalTermError((p, q), max(abs(c), abs(s)))
    n2 = n * n
    phi2 = apply_poly_in_D(x2, w, c0=2.0 * efg.F - n2, c2=1.0) \
        + apply_poly_in_D(y2, w, c0=-efg.G, c1=2.0 * n)
    psi2 = apply_poly_in_D(x2, w, c0=efg.G, c1=2.0 * n) \
        - apply_poly_in_D(y2, w, c0=2.0 * efg.E - n2, c2=1.0)
    b2x = invert_delta(phi2, w, floor)
    b2y = invert_delta(psi2, w, floor).scale(-1.0)
    rx = apply_poly_in_D(b2x, w, c0=2.0 * efg.E - n2, c2=1.0) \
        - apply_poly_in_D(b2y, w, c0=-efg.G, c1=2.0 * n) - x2
    ry = apply_poly_in_D(b2x, w, c0=efg.G, c1=2.0 * n) \
        + apply_poly_in_D(b2y, w, c0=2.0 * efg.F - n2, c2=1.0) - y2
    return SecondOrderSolution(b2x, b2y, rx.max_abs(), ry.max_abs())


def second_order_closed_form(rs):
    """Assemble (B2 for x, B2 for y) from the ten printed harmonics."""
    r, s = rs.r, rs.s

    def build(v):
        return (DAlembertSeries.single(2, 0, 0, 0, c=v[0])
                + DAlembertSeries.single(0, 2, 0, 0, c=v[1])
                + DAlembertSeries.single(2, 0, 2, 0, c=v[2])
                + DAlembertSeries.single(0, 2, 0, 2, c=v[3])
                + DAlembertSeries.single(1, 1, 1, -1, c=v[4])
                + DAlembertSeries.single(1, 1, 1, 1, c=v[5])
                + DAlembertSeries.single(2, 0, 2, 0, s=v[6])
                + DAlembertSeries.single(0, 2, 0, 2, s=v[7])
                + DAlembertSeries.single(1, 1, 1, -1, s=v[8])
                + DAlembertSeries.single(1, 1, 1, 1, s=v[9]))

    return build(r), build(s).scale(-1.0)


# -- degree-3 energy coefficients ------------------------------------------


@dataclass(frozen=True)
class H3NormalCoefficients:
    """Sup-norm of each degree-3 action grade of the substituted energy.

    The conclusion under test: with B2 from the oracle solve, all four
    vanish (every harmonic of every grade cancels).
    """

    A30: float
    A21: float
    A12: float
    A03: float
    series: DAlembertSeries      # full degree-3 slice
    h2_residual: float           # degree-2 slice vs w1 I1 - w2 I2

    def max_abs(self) -> float:
        return max(self.A30, self.A21, self.A12, self.A03)


def h3_normal_coefficients(l3: TruncatedPoly, b1, b2,
                           efg: QuadraticCoefficients, w: FrequencyPair,
                           n: float) -> H3NormalCoefficients:
    """Substitute x = B1 + B2 (velocities via D) into the energy and slice.

    The energy function of the Lagrangian is |v|^2/2 - (position part);
    its velocity-linear terms cancel identically, so the degree-3 slice is
    the quadratic cross term between B1 and B2 plus the position cubic at
    B1.  Everything is assembled as one series capped at degree 3.
    """
    b1x, b1y = b1
    b2x, b2y = b2
    bx, by = b1x + b2x, b1y + b2y
    vx, vy = apply_D(bx, w), apply_D(by, w)
    cap = 3
    n2 = n * n
    k00, k01, k11 = n2 - 2.0 * efg.E, -efg.G, n2 - 2.0 * efg.F

    def mul(a, b):
        return _prune(a * b, cap)

    h2_sub = (mul(vx, vx) + mul(vy, vy)).scale(0.5) \
        - mul(bx, bx).scale(0.5 * k00) - mul(bx, by).scale(k01) \
        - mul(by, by).scale(0.5 * k11)
    h3_sub = poly_at_series(-l3.position_part(), bx, by, vx, vy, cap)
    total = h2_sub + h3_sub

    h2_form = (DAlembertSeries.single(2, 0, 0, 0, c=w.omega1)
               + DAlembertSeries.single(0, 2, 0, 0, c=-w.omega2))
    h2_res = total.degree_slice(2).norm_of_difference(h2_form)

    deg3 = total.degree_slice(3)
    return H3NormalCoefficients(
        A30=deg3.grade(3, 0).max_abs(),
        A21=deg3.grade(2, 1).max_abs(),
        A12=deg3.grade(1, 2).max_abs(),
        A03=deg3.grade(0, 3).max_abs(),
        series=deg3,
        h2_residual=h2_res,
    )
