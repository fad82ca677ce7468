"""Truncated polynomial arithmetic in the shifted phase variables.

The four variables are (xi, eta, xidot, etadot): displacements and
velocities about the triangular point.  Total degree is capped; products
truncate, never extend.  The centerpiece is :func:`taylor_lagrangian`,
which expands the full Lagrangian about an equilibrium by series
composition (binomial expansion of 1/r powers and a complex-log expansion
of the angle term) -- exact to truncation order, no finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibria import OriginShift
from .errors import ContractError, ParameterError
from .model import ModelParams, State, lagrangian

SQRT3 = math.sqrt(3.0)

NVARS = 4
VAR_NAMES = ("xi", "eta", "xidot", "etadot")

_ZERO_TOL = 0.0  # exact-zero pruning only; no silent coefficient chopping


class TruncatedPoly:
    """Multivariate polynomial in (xi, eta, xidot, etadot), degree-capped.

    Coefficients live in a dict keyed by exponent 4-tuples.  Values are
    immutable by convention: all operations return new instances.
    """

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap: int, coeffs=None):
        if cap < 0:
            raise ParameterError("degree cap must be non-negative")
        self.cap = cap
        self.coeffs = {}
        if coeffs:
            for mono, c in coeffs.items():
                if len(mono) != NVARS or any(e < 0 for e in mono):
                    raise ContractError(f"bad exponent tuple {mono}")
                if sum(mono) > cap:
                    continue
                if c != _ZERO_TOL:
                    self.coeffs[tuple(mono)] = self.coeffs.get(tuple(mono), 0.0) + c
            self.coeffs = {m: c for m, c in self.coeffs.items() if c != 0.0}

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, value, cap: int):
        return cls(cap, {(0, 0, 0, 0): value})

    @classmethod
    def variable(cls, index: int, cap: int):
        mono = [0, 0, 0, 0]
        mono[index] = 1
        return cls(cap, {tuple(mono): 1.0})

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedPoly):
            other = TruncatedPoly.constant(other, self.cap)
        cap = min(self.cap, other.cap)
        out = dict(self.truncated(cap).coeffs)
        for m, c in other.truncated(cap).coeffs.items():
            out[m] = out.get(m, 0.0) + c
        return TruncatedPoly(cap, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPoly(self.cap, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedPoly)
                       else TruncatedPoly.constant(-other, self.cap))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            return TruncatedPoly(self.cap, {m: c * other for m, c in self.coeffs.items()})
        cap = min(self.cap, other.cap)
        out = {}
        for m1, c1 in self.coeffs.items():
            d1 = sum(m1)
            if d1 > cap:
                continue
            for m2, c2 in other.coeffs.items():
                if d1 + sum(m2) > cap:
                    continue
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])
                out[m] = out.get(m, 0.0) + c1 * c2
        return TruncatedPoly(cap, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ContractError("negative powers are not polynomial")
        result = TruncatedPoly.constant(1.0, self.cap)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------

    def truncated(self, cap: int):
        if cap >= self.cap:
            return self
        return TruncatedPoly(cap, {m: c for m, c in self.coeffs.items() if sum(m) <= cap})

    def grade(self, degree: int):
        """Homogeneous slice of the given total degree (cap preserved)."""
        return TruncatedPoly(self.cap, {m: c for m, c in self.coeffs.items()
                                        if sum(m) == degree})

    def partial(self, index: int):
        out = {}
        for m, c in self.coeffs.items():
            if m[index] == 0:
                continue
            dm = list(m)
            dm[index] -= 1
            out[tuple(dm)] = out.get(tuple(dm), 0.0) + c * m[index]
        return TruncatedPoly(self.cap, out)

    def coefficient(self, mono) -> float:
        return self.coeffs.get(tuple(mono), 0.0)

    def real_part(self):
        return TruncatedPoly(self.cap, {m: c.real for m, c in self.coeffs.items()
                                        if getattr(c, "real", c) != 0.0})

    def imag_part(self):
        return TruncatedPoly(self.cap, {m: c.imag for m, c in self.coeffs.items()
                                        if getattr(c, "imag", 0.0) != 0.0})

    def velocity_part(self):
        """Terms with at least one velocity factor."""
        return TruncatedPoly(self.cap, {m: c for m, c in self.coeffs.items()
                                        if m[2] + m[3] > 0})

    def position_part(self):
        """Terms free of velocities."""
        return TruncatedPoly(self.cap, {m: c for m, c in self.coeffs.items()
                                        if m[2] + m[3] == 0})

    def __call__(self, xi, eta, xidot, etadot):
        vals = (xi, eta, xidot, etadot)
        total = 0.0
        for m, c in self.coeffs.items():
            term = c
            for v, e in zip(vals, m):
                if e:
                    term *= v**e
            total += term
        return total

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __eq__(self, other):
        return isinstance(other, TruncatedPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        n = len(self.coeffs)
        return f"TruncatedPoly(cap={self.cap}, terms={n})"

    def norm_of_difference(self, other) -> float:
        keys = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coeffs.get(k, 0.0) - other.coeffs.get(k, 0.0))
                    for k in keys), default=0.0)


def binomial_series(t: TruncatedPoly, alpha: float) -> TruncatedPoly:
    """(1 + t)^alpha for a series t with no constant term."""
    if t.coefficient((0, 0, 0, 0)) != 0.0:
        raise ContractError("binomial pivot requires a series without constant term")
    cap = t.cap
    result = TruncatedPoly.constant(1.0, cap)
    power = TruncatedPoly.constant(1.0, cap)
    coeff = 1.0
    for k in range(1, cap + 1):
        coeff *= (alpha - (k - 1)) / k
        power = power * t
        if not power.coeffs:
            break
        result = result + power * coeff
    return result


def log1p_series(t: TruncatedPoly) -> TruncatedPoly:
    """log(1 + t) for a series t with no constant term (complex allowed)."""
    if t.coefficient((0, 0, 0, 0)) != 0.0:
        raise ContractError("log pivot requires a series without constant term")
    cap = t.cap
    result = TruncatedPoly.constant(0.0, cap)
    power = TruncatedPoly.constant(1.0, cap)
    for k in range(1, cap + 1):
        power = power * t
        if not power.coeffs:
            break
        result = result + power * ((-1.0) ** (k + 1) / k)
    return result


def dump_poly(poly: TruncatedPoly, hexfloat: bool = False) -> str:
    """Text table (exponent tuple, coefficient) for external diffing."""
    lines = []
    for mono in sorted(poly.coeffs):
        c = poly.coeffs[mono]
        value = float.hex(float(c)) if hexfloat else f"{c:.17g}"
        lines.append(f"{mono[0]} {mono[1]} {mono[2]} {mono[3]} {value}")
    return "\n".join(lines) + ("\n" if lines else "")


# -- Taylor oracle ------------------------------------------------------


def taylor_lagrangian(p: ModelParams, shift: OriginShift, degree: int) -> TruncatedPoly:
    """Exact truncated Taylor expansion of the Lagrangian about the shift point.

    Built by composing truncated series: binomial expansions of 1/r1,
    1/r2, 1/r2^3 and 1/r1^2 on the displacement quadratic, and the
    imaginary part of log(1 + (xi + i eta)/(a + i b)) for the drag angle.

    Parameters
    ----------
    p : ModelParams
    shift : OriginShift
        Expansion pivot, a = x* + mu, b = y*.
    degree : int
        Total-degree cap (>= 3 for the normalization pipeline).
    """
    a, b = shift.a, shift.b
    rho1sq = a * a + b * b
    a2off = a - 1.0
    rho2sq = a2off * a2off + b * b
    if rho1sq < 1e-12 or rho2sq < 1e-12:
        raise ContractError("expansion pivot coincides with a primary")

    cap = degree
    xi = TruncatedPoly.variable(0, cap)
    eta = TruncatedPoly.variable(1, cap)
    xid = TruncatedPoly.variable(2, cap)
    etad = TruncatedPoly.variable(3, cap)

    disp_sq = xi * xi + eta * eta
    t1 = (2.0 * (a * xi + b * eta) + disp_sq) * (1.0 / rho1sq)
    t2 = (2.0 * (a2off * xi + b * eta) + disp_sq) * (1.0 / rho2sq)
    # Composition radius: displacement series must stay inside |t| < 1 at the
    # scale of interest; pivot too near a primary makes rho^-2 blow up.
    inv_r1 = binomial_series(t1, -0.5) * (rho1sq ** -0.5)
    inv_r1sq = binomial_series(t1, -1.0) * (1.0 / rho1sq)
    inv_r2 = binomial_series(t2, -0.5) * (rho2sq ** -0.5)
    inv_r2cubed = binomial_series(t2, -1.5) * (rho2sq ** -1.5)

    n = p.n
    x_abs = (a - p.mu) + xi     # full rotating-frame x
    y_abs = b + eta

    kinetic = 0.5 * (xid * xid + etad * etad)
    coriolis = n * (x_abs * etad - xid * y_abs)
    centrifugal = 0.5 * (n * n) * (x_abs * x_abs + y_abs * y_abs)
    gravity = ((1.0 - p.mu) * p.q1) * inv_r1 + p.mu * inv_r2 \
        + (0.5 * p.mu * p.A2) * inv_r2cubed

    total = kinetic + coriolis + centrifugal + gravity

    if p.W1 != 0.0:
        z = (xi + eta * 1j) * (1.0 / (a + b * 1j))
        angle = log1p_series(z).imag_part() + math.atan2(b, a)
        radial = ((a + xi) * xid + (b + eta) * etad) * inv_r1sq
        total = total + p.W1 * (0.5 * radial - n * angle)

    # Constant term must reproduce the pointwise Lagrangian; a mismatch means
    # a composition bug, so it is asserted rather than reported.
    l0 = lagrangian(State(a - p.mu, b, 0.0, 0.0), p)
    drift = abs(total.coefficient((0, 0, 0, 0)) - l0)
    if drift > 1e-9 * max(1.0, abs(l0)):
        raise ContractError(f"constant-term drift {drift:.3e} in Taylor composition")
    return total


@dataclass(frozen=True)
class QuadraticCoefficients:
    """E, F, G of the linearized dynamics, extracted so that
    xddot - 2n ydot + (2E - n^2) x + G y = 0 (and the mirrored equation)
    reproduces the degree-2 Euler-Lagrange equations."""

    E: float
    F: float
    G: float


def extract_EFG(l2: TruncatedPoly, p: ModelParams) -> QuadraticCoefficients:
    """Read (E, F, G) off the position-only part of a degree-2 slice."""
    if any(sum(m) != 2 for m in l2.coeffs):
        raise ContractError("extract_EFG expects a homogeneous degree-2 slice")
    n2 = p.n * p.n
    e = 0.5 * (n2 - 2.0 * l2.coefficient((2, 0, 0, 0)))
    f = 0.5 * (n2 - 2.0 * l2.coefficient((0, 2, 0, 0)))
    g = -l2.coefficient((1, 1, 0, 0))
    return QuadraticCoefficients(E=e, F=f, G=g)


@dataclass(frozen=True)
class H3CoefficientsClosedForm:
    """Closed-form cubic coefficients: scalars T1..T4 plus the
    velocity-dependent drag cubic T5 as a polynomial."""

    T1: float
    T2: float
    T3: float
    T4: float
    T5: TruncatedPoly

    def as_poly(self, cap: int = 3) -> TruncatedPoly:
        """Assemble (1/3!) {T1 x^3 + 3 T2 x^2 y + 3 T3 x y^2 + T4 y^3 + 6 T5},
        i.e. the cubic Lagrangian slice these coefficients encode."""
        xi = TruncatedPoly.variable(0, cap)
        eta = TruncatedPoly.variable(1, cap)
        cubic = (self.T1 * xi**3 + (3.0 * self.T2) * (xi * xi * eta)
                 + (3.0 * self.T3) * (xi * eta * eta) + self.T4 * eta**3)
        return cubic * (1.0 / 6.0) + self.T5.truncated(cap)


def t_coefficients_closed_form(
    p: ModelParams, shift: OriginShift, verbatim_t5: bool = False
) -> H3CoefficientsClosedForm:
    """Printed T1..T4 series plus the drag cubic T5 assembled from (a, b).

    ``verbatim_t5=True`` keeps the inhomogeneous first brace term of the
    printed T5 (degree 2, which truncation then discards); the default
    squares it, the only reading that makes T5 a degree-3 form (erratum
    ``t5-linear-brace``).
    """
    eps, A2, g = p.epsilon, p.A2, p.gamma
    nw = p.n * p.W1
    s3 = SQRT3

    t1 = (3.0 / 16.0) * (
        16.0 * eps / 3.0 + 6.0 * A2 - (979.0 / 18.0) * A2 * eps
        + (143.0 + 9.0 * g) / (6.0 * s3) * nw
        + (459.0 + 376.0 * g) / (27.0 * s3) * nw * eps
        + g * (14.0 + 4.0 * eps / 3.0 + 25.0 * A2 - (1507.0 / 18.0) * A2 * eps
               - (215.0 + 29.0 * g) / (6.0 * s3) * nw
               - 2.0 * (1174.0 + 169.0 * g) / (27.0 * s3) * nw * eps)
    )
    t2 = (3.0 * s3 / 16.0) * (
        14.0 - 16.0 * eps / 3.0 + A2 / 3.0 - (367.0 / 18.0) * A2 * eps
        + 115.0 * (1.0 + g) / (18.0 * s3) * nw
        - (959.0 - 136.0 * g) / (27.0 * s3) * nw * eps
        + g * (32.0 * eps / 3.0 + 40.0 * A2 - (382.0 / 9.0) * A2 * eps
               + (511.0 + 53.0 * g) / (6.0 * s3) * nw
               - (2519.0 - 24.0 * g) / (27.0 * s3) * nw * eps)
    )
    t3 = (-9.0 / 16.0) * (
        8.0 * eps / 3.0 + 203.0 * A2 / 6.0 - (625.0 / 54.0) * A2 * eps
        - (105.0 + 15.0 * g) / (18.0 * s3) * nw
        - (403.0 - 114.0 * g) / (81.0 * s3) * nw * eps
        + g * (2.0 - 4.0 * eps / 9.0 + 55.0 * A2 / 2.0 - (797.0 / 54.0) * A2 * eps
               + (197.0 + 23.0 * g) / (18.0 * s3) * nw
               - (211.0 - 32.0 * g) / (81.0 * s3) * nw * eps)
    )
    t4 = (-9.0 * s3 / 16.0) * (
        2.0 - 8.0 * eps / 3.0 + 23.0 * A2 / 3.0 - 44.0 * A2 * eps
        - (37.0 + g) / (18.0 * s3) * nw
        - (219.0 + 253.0 * g) / (81.0 * s3) * nw * eps
        + g * (4.0 * eps + (88.0 / 27.0) * A2 * eps
               + (241.0 + 45.0 * g) / (18.0 * s3) * nw
               - (1558.0 - 126.0 * g) / (81.0 * s3) * nw * eps)
    )
    t5 = _t5_poly(p, shift, verbatim=verbatim_t5)
    return H3CoefficientsClosedForm(t1, t2, t3, t4, t5)


def _t5_poly(p: ModelParams, shift: OriginShift, verbatim: bool) -> TruncatedPoly:
    """Velocity-dependent drag cubic
    W1/(2 rho^6) [ (a xd + b yd){3(a x + b y)^2 - (b x - a y)^2}
                   - 2 (x xd + y yd)(a x + b y) rho^2 ]
    with rho^2 = a^2 + b^2; the verbatim reading uses 3(a x + b y) unsquared."""
    cap = 3
    if p.W1 == 0.0:
        return TruncatedPoly(cap)
    a, b = shift.a, shift.b
    rho2 = a * a + b * b
    xi = TruncatedPoly.variable(0, cap)
    eta = TruncatedPoly.variable(1, cap)
    xid = TruncatedPoly.variable(2, cap)
    etad = TruncatedPoly.variable(3, cap)
    u = a * xi + b * eta
    w = b * xi - a * eta
    udot = a * xid + b * etad
    brace = (3.0 * u if verbatim else 3.0 * (u * u)) - w * w
    expr = udot * brace - 2.0 * (xi * xid + eta * etad) * u * rho2
    # Only the homogeneous cubic survives a degree-3 slice.
    return (expr * (p.W1 / (2.0 * rho2**3))).grade(3)


def oracle_t_coefficients(l3: TruncatedPoly):
    """(T1, T2, T3, T4, T5poly) read off a cubic Lagrangian slice."""
    if any(sum(m) != 3 for m in l3.coeffs):
        raise ContractError("oracle cubic slice expected (homogeneous degree 3)")
    t1 = 6.0 * l3.coefficient((3, 0, 0, 0))
    t2 = 2.0 * l3.coefficient((2, 1, 0, 0))
    t3 = 2.0 * l3.coefficient((1, 2, 0, 0))
    t4 = 6.0 * l3.coefficient((0, 3, 0, 0))
    return t1, t2, t3, t4, l3.velocity_part()


@dataclass(frozen=True)
class H3Comparison:
    """Per-coefficient reconciliation of the closed cubic against the oracle."""

    oracle: tuple          # (T1..T4, T5 poly)
    closed: H3CoefficientsClosedForm
    abs_diff: dict         # name -> |closed - oracle|
    rel_diff: dict         # name -> relative discrepancy
    t5_diff: float         # sup-norm difference of the velocity cubics
    truncation_bound: float

    def max_position_rel(self) -> float:
        return max(self.rel_diff.values())


def compare_h3(oracle_l3: TruncatedPoly, closed: H3CoefficientsClosedForm,
               p: ModelParams) -> H3Comparison:
    """Map the oracle cubic onto the T-pattern and report discrepancies.

    The truncation bound is the size expected of a second-order remainder
    in the active perturbations; callers decide what counts as agreement
    (typically via a halving experiment).
    """
    t1o, t2o, t3o, t4o, t5o = oracle_t_coefficients(oracle_l3)
    names = ("T1", "T2", "T3", "T4")
    ovals = (t1o, t2o, t3o, t4o)
    cvals = (closed.T1, closed.T2, closed.T3, closed.T4)
    abs_diff = {}
    rel_diff = {}
    for name, ov, cv in zip(names, ovals, cvals):
        d = abs(cv - ov)
        abs_diff[name] = d
        rel_diff[name] = d / max(abs(ov), abs(cv), 1e-30)
    t5_diff = closed.T5.norm_of_difference(t5o)
    active = p.epsilon + p.A2 + p.W1
    bound = 100.0 * active * active  # generous second-order envelope
    return H3Comparison(
        oracle=(t1o, t2o, t3o, t4o, t5o),
        closed=closed,
        abs_diff=abs_diff,
        rel_diff=rel_diff,
        t5_diff=t5_diff,
        truncation_bound=bound,
    )
