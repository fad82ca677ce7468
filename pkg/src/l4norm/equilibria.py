"""Triangular equilibrium points: exact root-finding and closed-form series.

Three routes to the same point:

* :func:`solve_triangular_numeric` -- Newton iteration on the printed force
  field with the at-rest drag convention; the oracle.
* :func:`triangular_series` -- the delta/A2/W1 closed-form series.
* :func:`epsilon_form` -- the gamma/epsilon/A2/W1 expansion used by the
  normalization stages.

The series are evaluated verbatim; where a printed coefficient disagrees
with the numeric oracle beyond truncation order, the discrepancy is the
erratum detector's business (see :mod:`l4norm.errata`), not this module's.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, ParameterError, SingularJacobianError
from .model import ModelParams, State, potential_gradient

SQRT3 = math.sqrt(3.0)

_NEWTON_TOL = 1e-13
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class EquilibriumPoint:
    x: float
    y: float
    branch: str          # "L4" (y > 0) or "L5" (y < 0)
    method: str          # "numeric" | "series" | "epsilon-form"
    residual: float      # max |Ux|, |Uy| at rest

    def __post_init__(self):
        if self.branch not in ("L4", "L5"):
            raise ParameterError(f"branch must be L4 or L5, got {self.branch}")


@dataclass(frozen=True)
class OriginShift:
    """Offsets a = x* + mu (distance along x from the radiating primary) and
    b = y* of the expansion point."""

    a: float
    b: float


def shift_from_point(point: EquilibriumPoint, p: ModelParams) -> OriginShift:
    return OriginShift(a=point.x + p.mu, b=point.y)


def equilibrium_force(x: float, y: float, p: ModelParams):
    """(Ux, Uy) with the at-rest drag convention N1 = -n y, N2 = n (x+mu)."""
    s = State(x, y)
    ux, uy = potential_gradient(s, p)
    r1sq = (x + p.mu) ** 2 + y * y
    fx = ux + p.W1 * p.n * y / r1sq
    fy = uy - p.W1 * p.n * (x + p.mu) / r1sq
    return fx, fy


def _force_jacobian(x: float, y: float, p: ModelParams):
    """Analytic Jacobian of :func:`equilibrium_force`."""
    x1 = x + p.mu
    x2 = x + p.mu - 1.0
    r1sq = x1 * x1 + y * y
    r2sq = x2 * x2 + y * y
    r1 = math.sqrt(r1sq)
    r2 = math.sqrt(r2sq)
    n2 = p.n * p.n
    g1 = (1.0 - p.mu) * p.q1 / r1**3
    g2 = p.mu / r2**3
    g2a = 1.5 * p.mu * p.A2 / r2**5
    h1 = 3.0 * (1.0 - p.mu) * p.q1 / r1**5
    h2 = 3.0 * p.mu / r2**5
    h2a = 7.5 * p.mu * p.A2 / r2**7

    uxx = n2 - g1 - g2 - g2a + h1 * x1 * x1 + h2 * x2 * x2 + h2a * x2 * x2
    uxy = h1 * x1 * y + h2 * x2 * y + h2a * x2 * y
    uyy = n2 - g1 - g2 - g2a + h1 * y * y + h2 * y * y + h2a * y * y

    wn = p.W1 * p.n
    dfx_dx = uxx - 2.0 * wn * y * x1 / r1sq**2
    dfx_dy = uxy + wn / r1sq - 2.0 * wn * y * y / r1sq**2
    dfy_dx = uxy - wn / r1sq + 2.0 * wn * x1 * x1 / r1sq**2
    dfy_dy = uyy + 2.0 * wn * x1 * y / r1sq**2
    return dfx_dx, dfx_dy, dfy_dx, dfy_dy


def residual_at(x: float, y: float, p: ModelParams) -> float:
    fx, fy = equilibrium_force(x, y, p)
    return max(abs(fx), abs(fy))


def classical_seed(p: ModelParams, branch: str):
    y = SQRT3 / 2.0 if branch == "L4" else -SQRT3 / 2.0
    return 0.5 - p.mu, y


def solve_triangular_numeric(p: ModelParams, branch: str = "L4") -> EquilibriumPoint:
    """Newton iteration from the classical seed; residual < 1e-12 or error."""
    x, y = classical_seed(p, branch)
    for _ in range(_NEWTON_MAX_ITER):
        fx, fy = equilibrium_force(x, y, p)
        if max(abs(fx), abs(fy)) < _NEWTON_TOL:
            break
        jxx, jxy, jyx, jyy = _force_jacobian(x, y, p)
        det = jxx * jyy - jxy * jyx
        if abs(det) < 1e-14:
            raise SingularJacobianError(
                f"degenerate force Jacobian at ({x:.6g}, {y:.6g}), det={det:.3e}"
            )
        x -= (fx * jyy - fy * jxy) / det
        y -= (jxx * fy - jyx * fx) / det
    else:
        raise ConvergenceError(
            f"Newton failed after {_NEWTON_MAX_ITER} iterations", last=(x, y)
        )
    if y == 0.0:
        raise ConvergenceError("Newton collapsed onto the axis y = 0", last=(x, y))
    return EquilibriumPoint(x, y, branch, "numeric", residual_at(x, y, p))


def triangular_series(p: ModelParams, branch: str = "L4") -> EquilibriumPoint:
    """Closed-form x*, y* series with the delta^2, A2 and n W1 corrections."""
    if p.mu * (1.0 - p.mu) == 0.0:
        raise ParameterError("series have mu(1-mu) denominators; mu in (0, 1/2] required")
    mu, A2, W1, n, d2 = p.mu, p.A2, p.W1, p.n, p.delta**2
    x0 = 0.5 * d2 - mu
    y0sq = d2 * (1.0 - 0.25 * d2)
    if y0sq <= 0.0:
        raise ParameterError("y0^2 <= 0: radiation too strong for triangular points")
    sign = 1.0 if branch == "L4" else -1.0
    y0 = sign * math.sqrt(y0sq)

    xs = x0 * (
        1.0
        - n * W1 * ((1.0 - mu) * (1.0 + 2.5 * A2) + mu * (1.0 - 0.5 * A2) * 0.5 * d2)
        / (3.0 * mu * (1.0 - mu) * y0 * x0)
        - 0.5 * d2 * A2 / x0
    )
    y_brace = (
        1.0
        - n * W1 * d2 * (2.0 * mu - 1.0 - mu * (1.0 - 1.5 * A2) * 0.5 * d2
                         + 7.0 * (1.0 - mu) * 0.5 * A2)
        / (3.0 * mu * (1.0 - mu) * y0**3)
        - d2 * (1.0 - 0.5 * d2) * A2 / y0**2
    )
    if y_brace <= 0.0:
        raise ParameterError("series y-brace non-positive; perturbations too large")
    ys = y0 * math.sqrt(y_brace)
    return EquilibriumPoint(xs, ys, branch, "series", residual_at(xs, ys, p))


def epsilon_form(p: ModelParams, branch: str = "L4") -> EquilibriumPoint:
    """gamma/epsilon/A2/W1 expansion of the equilibrium, evaluated verbatim."""
    eps, A2, g = p.epsilon, p.A2, p.gamma
    nw = p.n * p.W1
    x = (
        0.5 * g
        - eps / 3.0
        - 0.5 * A2
        + A2 * eps / 3.0
        - (9.0 + g) / (6.0 * SQRT3) * nw
        - 4.0 * g * eps / (27.0 * SQRT3) * nw
    )
    y_mag = (SQRT3 / 2.0) * (
        1.0
        - 2.0 * eps / 9.0
        - A2 / 3.0
        - 2.0 * A2 * eps / 9.0
        + (1.0 + g) / (9.0 * SQRT3) * nw
        - 4.0 * g * eps / (27.0 * SQRT3) * nw
    )
    y = y_mag if branch == "L4" else -y_mag
    return EquilibriumPoint(x, y, branch, "epsilon-form", residual_at(x, y, p))


def offset_ab(p: ModelParams, verbatim: bool = False) -> OriginShift:
    """Origin-shift pair (a, b) from the printed series.

    The printed a-series lacks the leading constant inside its braces; the
    corrected form (default) restores it so that a = x(epsilon-form) + mu
    holds to truncation order.  ``verbatim=True`` evaluates the series
    exactly as printed (erratum ``offset-a-missing-half``).
    """
    eps, A2, g = p.epsilon, p.A2, p.gamma
    nw = p.n * p.W1
    lead = 0.0 if verbatim else 1.0
    a = 0.5 * (
        lead
        - 2.0 * eps / 3.0
        - A2
        + 2.0 * A2 * eps / 3.0
        - (9.0 + g) / (3.0 * SQRT3) * nw
        - 8.0 * g * eps / (27.0 * SQRT3) * nw
    )
    b = (SQRT3 / 2.0) * (
        1.0
        - 2.0 * eps / 9.0
        - A2 / 3.0
        - 2.0 * A2 * eps / 9.0
        + (1.0 + g) / (9.0 * SQRT3) * nw
        - 4.0 * g * eps / (27.0 * SQRT3) * nw
    )
    return OriginShift(a, b)
