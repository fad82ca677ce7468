"""Graded trigonometric series in two angles with half-integer action powers.

A term is keyed by (j, m, p, q): action powers I1^(j/2) I2^(m/2) and the
harmonic cos/sin(p*phi1 + q*phi2).  The double-summation constraints are
enforced on every stored term:

* 0 <= p <= j with p = j (mod 2),
* -m <= q <= m with q = m (mod 2),

and keys are kept canonical (p > 0, or p = 0 and q >= 0) so equality is
plain coefficient-map equality.  The differential operator is
D = omega1 d/dphi1 - omega2 d/dphi2, under which a harmonic (p, q) carries
multiplier theta = p*omega1 - q*omega2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ContractError, CriticalTermError, ParameterError, SmallDivisorError

DIVISOR_FLOOR = 1e-8

CRITICAL_HARMONICS = ((1, 0), (0, 1))


@dataclass(frozen=True)
class FrequencyPair:
    """Basic frequencies, convention omega1 > omega2 > 0."""

    omega1: float
    omega2: float

    def __post_init__(self):
        if not (math.isfinite(self.omega1) and math.isfinite(self.omega2)):
            raise ParameterError("frequencies must be finite")
        if not 0.0 < self.omega2 < self.omega1:
            raise ParameterError(
                f"need 0 < omega2 < omega1, got ({self.omega1}, {self.omega2})"
            )

    def theta(self, p: int, q: int) -> float:
        return p * self.omega1 - q * self.omega2


@dataclass(frozen=True)
class FrequencyCorrection:
    """Structural container for the action-dependent frequency corrections.

    Coefficients are keyed by (n-m, m); this artifact never populates their
    values -- degree >= 3 components, outside the second-order scope.
    """

    f_coeffs: dict = field(default_factory=dict)
    g_coeffs: dict = field(default_factory=dict)


def _canonical(p: int, q: int, c, s):
    if p < 0 or (p == 0 and q < 0):
        return -p, -q, c, -s
    return p, q, c, s


def _check_parity(j: int, m: int, p: int, q: int):
    if j < 0 or m < 0:
        raise ContractError(f"negative action powers in key {(j, m, p, q)}")
    if not (0 <= p <= j and (p - j) % 2 == 0):
        raise ContractError(f"harmonic p={p} violates parity for j={j}")
    if not (-m <= q <= m and (q - m) % 2 == 0):
        raise ContractError(f"harmonic q={q} violates parity for m={m}")


class DAlembertSeries:
    """Immutable-by-convention trigonometric series; all operations return
    new instances.  `terms` maps (j, m, p, q) -> (cos_coeff, sin_coeff)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for (j, m, p, q), (c, s) in terms.items():
                self._accumulate(j, m, p, q, c, s)
            self._prune()

    def _accumulate(self, j, m, p, q, c, s):
        p, q, c, s = _canonical(p, q, c, s)
        _check_parity(j, m, p, q)
        if p == 0 and q == 0:
            s = 0.0  # sin(0) is identically zero; drop its coefficient
        key = (j, m, p, q)
        oc, os = self.terms.get(key, (0.0, 0.0))
        self.terms[key] = (oc + c, os + s)

    def _prune(self):
        self.terms = {k: v for k, v in self.terms.items() if v != (0.0, 0.0)}

    # -- constructors ---------------------------------------------------

    @classmethod
    def single(cls, j, m, p, q, c=0.0, s=0.0):
        return cls({(j, m, p, q): (c, s)})

    @classmethod
    def zero(cls):
        return cls()

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        out = DAlembertSeries()
        for (j, m, p, q), (c, s) in self.terms.items():
            out._accumulate(j, m, p, q, c, s)
        for (j, m, p, q), (c, s) in other.terms.items():
            out._accumulate(j, m, p, q, c, s)
        out._prune()
        return out

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def scale(self, factor: float):
        out = DAlembertSeries()
        out.terms = {k: (c * factor, s * factor) for k, (c, s) in self.terms.items()}
        out._prune()
        return out

    def __mul__(self, other):
        """Product via cos/sin product-to-sum expansion; grades add."""
        if not isinstance(other, DAlembertSeries):
            return self.scale(other)
        out = DAlembertSeries()
        for (j1, m1, p1, q1), (c1, s1) in self.terms.items():
            for (j2, m2, p2, q2), (c2, s2) in other.terms.items():
                j, m = j1 + j2, m1 + m2
                # sum harmonic (p1+p2, q1+q2)
                cs = 0.5 * (c1 * c2 - s1 * s2)
                ss = 0.5 * (c1 * s2 + s1 * c2)
                if cs != 0.0 or ss != 0.0:
                    out._accumulate(j, m, p1 + p2, q1 + q2, cs, ss)
                # difference harmonic (p1-p2, q1-q2)
                cd = 0.5 * (c1 * c2 + s1 * s2)
                sd = 0.5 * (s1 * c2 - c1 * s2)
                if cd != 0.0 or sd != 0.0:
                    out._accumulate(j, m, p1 - p2, q1 - q2, cd, sd)
        out._prune()
        return out

    __rmul__ = __mul__

    # -- queries ----------------------------------------------------------

    def degree_slice(self, degree: int):
        out = DAlembertSeries()
        out.terms = {k: v for k, v in self.terms.items() if k[0] + k[1] == degree}
        return out

    def grade(self, j: int, m: int):
        out = DAlembertSeries()
        out.terms = {k: v for k, v in self.terms.items() if (k[0], k[1]) == (j, m)}
        return out

    def max_degree(self) -> int:
        return max((j + m for (j, m, _, _) in self.terms), default=0)

    def max_abs(self) -> float:
        return max((max(abs(c), abs(s)) for (c, s) in self.terms.values()), default=0.0)

    def norm_of_difference(self, other) -> float:
        keys = set(self.terms) | set(other.terms)
        worst = 0.0
        for k in keys:
            c1, s1 = self.terms.get(k, (0.0, 0.0))
            c2, s2 = other.terms.get(k, (0.0, 0.0))
            worst = max(worst, abs(c1 - c2), abs(s1 - s2))
        return worst

    def harmonics(self):
        return {(p, q) for (_, _, p, q) in self.terms}

    def chop(self, tol: float):
        """Drop coefficients below tol in magnitude (reporting aid)."""
        out = DAlembertSeries()
        out.terms = {
            k: (c if abs(c) > tol else 0.0, s if abs(s) > tol else 0.0)
            for k, (c, s) in self.terms.items()
        }
        out._prune()
        return out

    def __eq__(self, other):
        return isinstance(other, DAlembertSeries) and self.terms == other.terms

    def __repr__(self):
        return f"DAlembertSeries(terms={len(self.terms)})"

    def pretty(self) -> str:
        """Deterministic listing: sorted by (degree, j, p, q), 17 digits."""
        lines = []
        for key in sorted(self.terms, key=lambda k: (k[0] + k[1], k[0], k[2], k[3])):
            j, m, p, q = key
            c, s = self.terms[key]
            lines.append(
                f"I1^{j}/2 I2^{m}/2 ({p},{q}) cos {c:.17g} sin {s:.17g}"
            )
        return "\n".join(lines) + ("\n" if lines else "")


def apply_D(series: DAlembertSeries, w: FrequencyPair) -> DAlembertSeries:
    """D[c cos + s sin] = -c theta sin + s theta cos, theta = p w1 - q w2."""
    out = DAlembertSeries()
    for (j, m, p, q), (c, s) in series.terms.items():
        theta = w.theta(p, q)
        out._accumulate(j, m, p, q, s * theta, -c * theta)
    out._prune()
    return out


def apply_poly_in_D(series: DAlembertSeries, w: FrequencyPair,
                    c0: float = 0.0, c1: float = 0.0, c2: float = 0.0):
    """Apply the operator c2 D^2 + c1 D + c0 harmonic by harmonic."""
    out = DAlembertSeries()
    for (j, m, p, q), (c, s) in series.terms.items():
        theta = w.theta(p, q)
        diag = c0 - c2 * theta * theta
        out._accumulate(j, m, p, q, diag * c + c1 * theta * s,
                        diag * s - c1 * theta * c)
    out._prune()
    return out


def small_divisor(p: int, q: int, w: FrequencyPair) -> float:
    """[w1^2 - (p w1 - q w2)^2] [w2^2 - (p w1 - q w2)^2]."""
    theta = w.theta(p, q)
    return (w.omega1**2 - theta * theta) * (w.omega2**2 - theta * theta)


def invert_delta(series: DAlembertSeries, w: FrequencyPair,
                 floor: float = DIVISOR_FLOOR) -> DAlembertSeries:
    """Solve (D^2 + w1^2)(D^2 + w2^2) X = series harmonic by harmonic.

    Critical harmonics (1,0) and (0,1) have vanishing divisor and raise;
    divisors below the floor raise SmallDivisorError rather than silently
    amplifying noise.
    """
    out = DAlembertSeries()
    for (j, m, p, q), (c, s) in series.terms.items():
        if (p, q) in CRITICAL_HARMONICS:
            raise CriticalTermError((p, q), max(abs(c), abs(s)))
        delta = small_divisor(p, q, w)
        if abs(delta) < floor:
            raise SmallDivisorError(f"Delta_({p},{q})", delta)
        out._accumulate(j, m, p, q, c / delta, s / delta)
    out._prune()
    return out


def delta_operator(series: DAlembertSeries, w: FrequencyPair) -> DAlembertSeries:
    """(D^2 + w1^2)(D^2 + w2^2) applied termwise (round-trip partner of
    :func:`invert_delta`)."""
    out = DAlembertSeries()
    for (j, m, p, q), (c, s) in series.terms.items():
        delta = small_divisor(p, q, w)
        out._accumulate(j, m, p, q, c * delta, s * delta)
    out._prune()
    return out


@dataclass(frozen=True)
class MoserReport:
    """Outcome of the non-resonance gate |k1 w1 + k2 w2| > tol for
    0 < |k1| + |k2| <= 4."""

    min_combination: float
    worst_pair: tuple
    tol: float
    passed: bool
    combinations: tuple  # ((k1, k2, value) sorted by value)


def moser_check(w: FrequencyPair, tol: float = DIVISOR_FLOOR) -> MoserReport:
    rows = []
    for k1 in range(-4, 5):
        for k2 in range(-4, 5):
            order = abs(k1) + abs(k2)
            if order == 0 or order > 4:
                continue
            rows.append((abs(k1 * w.omega1 + k2 * w.omega2), (k1, k2)))
    rows.sort()
    value, pair = rows[0]
    table = tuple((k1, k2, v) for v, (k1, k2) in rows)
    return MoserReport(
        min_combination=value,
        worst_pair=pair,
        tol=tol,
        passed=value > tol,
        combinations=table,
    )
