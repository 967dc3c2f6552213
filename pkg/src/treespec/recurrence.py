"""Closed-form and iterative treatment of the map x_{j+1} = alpha + gamma / x_j.

The map phi(t) = alpha + gamma/t (gamma != 0) generates every vertex-value
sequence produced by sweeping a path of a tree during congruence
diagonalization.  This module provides:

* orbits of phi with early stop when a term hits zero,
* the inverse map psi(t) = gamma/(t - alpha) and the "forbidden" initial
  values psi^k(0) whose forward orbit dies after k steps,
* the discriminant classification delta = alpha^2 + 4*gamma and the closed
  forms of the three solution families it selects,
* evaluation of those closed forms at arbitrary real j, including pole
  detection, zero/pole enumeration on an interval, and the period of the
  oscillating family,
* reversal of the recursion (recovering x_1 from a later value) and the
  attracting/repelling character of points under phi.

Arithmetic is generic: pass ``float`` for IEEE-double computation or
``int``/``fractions.Fraction`` for exact rational orbits (sign and zero
tests are then exact).  The trigonometric closed form of the oscillating
family is float-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from . import _kernels
from .errors import (
    DomainError,
    NoContinuousExtensionError,
    UnsupportedOperationError,
)

Real = Union[int, float, Fraction]

#: |x| at or below this counts as zero in float arithmetic.
ZERO_TOL = 1e-12

#: |delta| at or below this selects the double-root family in float mode.
DELTA_TOL = 1e-12

#: eval() reports a pole when j is within this distance of an asymptote.
POLE_TOL = 1e-9


def _is_exact(*values: Real) -> bool:
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool) for v in values)


def _is_zero(value: Real) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 0
    return -ZERO_TOL <= value <= ZERO_TOL


@dataclass(frozen=True)
class RecurrenceParams:
    """The pair (alpha, gamma) defining phi(t) = alpha + gamma/t."""

    alpha: Real
    gamma: Real

    def __post_init__(self) -> None:
        if _is_zero(self.gamma):
            raise DomainError("gamma must be nonzero")

    @property
    def exact(self) -> bool:
        """True when both parameters are int/Fraction (exact backend)."""
        return _is_exact(self.alpha, self.gamma)


class SolutionKind(Enum):
    TYPE1 = "type1"  # delta == 0, double root
    TYPE2 = "type2"  # delta > 0, two real roots
    TYPE3 = "type3"  # delta < 0, complex pair


@dataclass(frozen=True)
class DeltaClass:
    """Discriminant delta = alpha^2 + 4*gamma and the family it selects."""

    delta: Real
    kind: SolutionKind


class Pole:
    """Marker value returned by eval() at a vertical asymptote."""

    _instance: Optional["Pole"] = None

    def __new__(cls) -> "Pole":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Pole"


POLE = Pole()


@dataclass(frozen=True)
class OrbitResult:
    """A finite prefix of an orbit of phi.

    ``hit_zero_step`` is the 1-based index of the terminating zero value
    (the orbit then has exactly that many entries), or None when all
    requested values were produced.
    """

    values: Tuple[Real, ...]
    hit_zero_step: Optional[int] = None

    @property
    def completed(self) -> bool:
        return self.hit_zero_step is None

    def __len__(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------------------
# the map, its inverse, and orbits


def phi_apply(params: RecurrenceParams, t: Real) -> Real:
    """phi(t) = alpha + gamma/t.  Raises DomainError at t = 0.

    Exact inputs (int/Fraction throughout) give an exact Fraction result.
    """
    if _is_zero(t):
        raise DomainError("phi is undefined at t = 0")
    if _is_exact(params.alpha, params.gamma, t):
        return Fraction(params.alpha) + Fraction(params.gamma) / Fraction(t)
    return params.alpha + params.gamma / t


def psi_apply(params: RecurrenceParams, t: Real) -> Real:
    """psi(t) = gamma/(t - alpha), the inverse of phi.  Undefined at t = alpha."""
    if _is_zero(t - params.alpha):
        raise DomainError("psi is undefined at t = alpha")
    if _is_exact(params.alpha, params.gamma, t):
        return Fraction(params.gamma) / (Fraction(t) - Fraction(params.alpha))
    return params.gamma / (t - params.alpha)


def classify(params: RecurrenceParams, delta_tol: float = DELTA_TOL) -> DeltaClass:
    """Discriminant class of the recurrence.

    With exact parameters the sign test is exact; in float mode values with
    |delta| <= delta_tol land in the double-root family.
    """
    delta = params.alpha * params.alpha + 4 * params.gamma
    if params.exact:
        if delta == 0:
            kind = SolutionKind.TYPE1
        elif delta > 0:
            kind = SolutionKind.TYPE2
        else:
            kind = SolutionKind.TYPE3
    else:
        if abs(delta) <= delta_tol:
            kind = SolutionKind.TYPE1
        elif delta > 0:
            kind = SolutionKind.TYPE2
        else:
            kind = SolutionKind.TYPE3
    return DeltaClass(delta=delta, kind=kind)


def fixed_points(params: RecurrenceParams) -> List[float]:
    """Real solutions of phi(t) = t, i.e. of t^2 - alpha*t - gamma = 0, ascending.

    One entry for a double root, empty when the roots are complex.
    """
    cls = classify(params)
    alpha = float(params.alpha)
    if cls.kind is SolutionKind.TYPE1:
        return [alpha / 2.0]
    if cls.kind is SolutionKind.TYPE3:
        return []
    sq = math.sqrt(float(cls.delta))
    return [(alpha - sq) / 2.0, (alpha + sq) / 2.0]


def forbidden_initials(params: RecurrenceParams, count: int) -> List[Real]:
    """[psi(0), psi^2(0), ..., psi^count(0)].

    Starting the forward iteration at psi^k(0) reaches 0 after exactly k
    applications of phi.  Raises DomainError if the backward orbit hits
    t = alpha (psi undefined there).
    """
    if count < 1:
        raise DomainError("count must be positive")
    zero: Real = Fraction(0) if params.exact else 0.0
    out: List[Real] = []
    t = zero
    for k in range(count):
        try:
            t = psi_apply(params, t)
        except DomainError as exc:
            raise DomainError(
                f"backward orbit of 0 hits t = alpha after {k} steps"
            ) from exc
        out.append(t)
    return out


def iterate(params: RecurrenceParams, x1: Real, count: int) -> OrbitResult:
    """Orbit x_1, phi(x_1), ..., up to ``count`` values.

    Stops early with ``hit_zero_step`` set when a term is zero (exactly, in
    the rational backend; within ZERO_TOL in float mode).  x_1 = 0 raises.
    """
    if count < 1:
        raise DomainError("count must be positive")
    if _is_zero(x1):
        raise DomainError("initial value x1 must be nonzero")
    if _is_exact(params.alpha, params.gamma, x1):
        values: List[Real] = [Fraction(x1)]
        alpha = Fraction(params.alpha)
        gamma = Fraction(params.gamma)
        for j in range(1, count):
            prev = values[-1]
            if prev == 0:
                return OrbitResult(tuple(values), hit_zero_step=j)
            values.append(alpha + gamma / prev)
        if values[-1] == 0:
            return OrbitResult(tuple(values), hit_zero_step=count)
        return OrbitResult(tuple(values))
    buf = np.empty(count, dtype=np.float64)
    buf[0] = float(x1)
    filled, hit = _kernels.orbit_fill(buf, float(params.alpha), float(params.gamma), ZERO_TOL)
    vals = tuple(float(v) for v in buf[:filled])
    return OrbitResult(vals, hit_zero_step=hit if hit else None)


def reverse_initial(params: RecurrenceParams, x_r: Real, r: int) -> Real:
    """The unique x_1 whose forward orbit reaches x_r after r-1 steps.

    Equals psi^{r-1}(x_r).  Raises DomainError if a backward iterate lands
    on t = alpha.
    """
    if r < 1:
        raise DomainError("r must be a positive integer")
    t = x_r
    for k in range(r - 1):
        try:
            t = psi_apply(params, t)
        except DomainError as exc:
            raise DomainError(
                f"backward orbit from x_r hits t = alpha after {k} steps"
            ) from exc
    return t


class LocalBehavior(Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    NEUTRAL = "neutral"


def local_behavior(params: RecurrenceParams, t: Real, tol: float = ZERO_TOL) -> LocalBehavior:
    """Character of a point under phi: |phi'(t)| = |gamma|/t^2 against 1."""
    if _is_zero(t):
        raise DomainError("phi' is undefined at t = 0")
    ratio = abs(float(params.gamma)) / float(t) ** 2
    if abs(ratio - 1.0) <= tol:
        return LocalBehavior.NEUTRAL
    if ratio < 1.0:
        return LocalBehavior.ATTRACTING
    return LocalBehavior.REPELLING


# ---------------------------------------------------------------------------
# closed forms


class ClosedFormSolution:
    """Base class of the closed-form solution variants.

    ``eval(j)`` evaluates the continuous extension at real j (integer j >= 1
    reproduces the orbit); it returns POLE within POLE_TOL of an asymptote.
    """

    def eval(self, j: float) -> Union[float, Pole]:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantSolution(ClosedFormSolution):
    """x_j = theta for all j (x_1 was a fixed point)."""

    theta: float

    def eval(self, j: float) -> Union[float, Pole]:
        return self.theta


@dataclass(frozen=True)
class Type1Solution(ClosedFormSolution):
    """Double-root family: x_j = theta * (1 + 1/(beta + j)), theta = alpha/2."""

    theta: float
    beta: float

    def eval(self, j: float) -> Union[float, Pole]:
        den = self.beta + j
        if abs(den) <= POLE_TOL:
            return POLE
        return self.theta * (1.0 + 1.0 / den)


@dataclass(frozen=True)
class Type2Solution(ClosedFormSolution):
    """Two-real-roots family: x_j = theta + (theta' - theta)/(beta*q^j + 1).

    theta, theta_prime are the fixed points (theta the larger), and
    q = theta/theta_prime.  The continuous extension exists only for q > 0;
    for q < 0 only integer j are meaningful.
    """

    theta: float
    theta_prime: float
    beta: float

    @property
    def base(self) -> float:
        return self.theta / self.theta_prime

    def _den(self, j: float) -> float:
        q = self.base
        try:
            if q > 0.0:
                return self.beta * math.exp(j * math.log(q)) + 1.0
            jr = round(j)
            if abs(j - jr) > POLE_TOL:
                raise NoContinuousExtensionError(
                    "theta/theta' < 0: solution defined only at integer j"
                )
            return self.beta * q ** int(jr) + 1.0
        except OverflowError:
            return math.inf if self.beta > 0 else -math.inf

    def eval(self, j: float) -> Union[float, Pole]:
        q = self.base
        if q > 0.0 and self.beta < 0.0:
            pole_j = math.log(-1.0 / self.beta) / math.log(q)
            if abs(j - pole_j) <= POLE_TOL:
                return POLE
        den = self._den(j)
        if den == 0.0 or math.isnan(den):
            return POLE
        if math.isinf(den):
            return self.theta
        return self.theta + (self.theta_prime - self.theta) / den


@dataclass(frozen=True)
class Type3Solution(ClosedFormSolution):
    """Complex-pair family: x_j = rho*(cos(phi) - sin(phi)*tan(j*phi + omega)).

    rho = sqrt(-gamma) > 0, phi_angle in (0, pi), omega normalized into
    (-pi/2, pi/2] (tan is pi-periodic, so the representative is free).
    """

    rho: float
    phi_angle: float
    omega: float

    def eval(self, j: float) -> Union[float, Pole]:
        arg = j * self.phi_angle + self.omega
        # distance in j to the nearest solution of arg = pi/2 (mod pi)
        u = (arg - math.pi / 2.0) / math.pi
        dist_j = abs(u - round(u)) * math.pi / self.phi_angle
        if dist_j <= POLE_TOL:
            return POLE
        return self.rho * (math.cos(self.phi_angle) - math.sin(self.phi_angle) * math.tan(arg))


@dataclass(frozen=True)
class AlternatingSolution(ClosedFormSolution):
    """alpha = 0, gamma < 0: x_j alternates x_1, gamma/x_1, x_1, ...

    No continuous extension; only integer j are meaningful.
    """

    x1: float
    gamma: float

    def eval(self, j: float) -> Union[float, Pole]:
        jr = round(j)
        if abs(j - jr) > POLE_TOL:
            raise NoContinuousExtensionError(
                "alternating solution is defined only at integer j"
            )
        return self.x1 if int(jr) % 2 == 1 else self.gamma / self.x1


def _normalize_half_pi(omega: float) -> float:
    """Reduce mod pi into (-pi/2, pi/2]."""
    omega = math.fmod(omega, math.pi)
    if omega > math.pi / 2.0:
        omega -= math.pi
    elif omega <= -math.pi / 2.0:
        omega += math.pi
    return omega


def _orbit_matches(params: RecurrenceParams, x1: float, sol: ClosedFormSolution) -> float:
    """Max deviation between sol.eval and the first three iterates."""
    orbit = iterate(params, x1, 3)
    worst = 0.0
    for j, ref in enumerate(orbit.values, start=1):
        got = sol.eval(float(j))
        if isinstance(got, Pole):
            worst = math.inf
            break
        worst = max(worst, abs(got - float(ref)) / max(1.0, abs(float(ref))))
    return worst


def solve(params: RecurrenceParams, x1: Real) -> ClosedFormSolution:
    """Closed form of the orbit starting at x1, per the discriminant class.

    Computed in IEEE double (exact inputs are converted).  Initial values
    whose orbit hits zero still get a closed form; the breakdown surfaces
    later, via iterate() or a pole of eval().
    """
    if _is_zero(x1):
        raise DomainError("initial value x1 must be nonzero")
    cls = classify(params)
    alpha = float(params.alpha)
    gamma = float(params.gamma)
    xf = float(x1)
    if cls.kind is SolutionKind.TYPE1:
        theta = alpha / 2.0
        if xf == theta:
            return ConstantSolution(theta)
        beta = -1.0 + theta / (xf - theta)
        return Type1Solution(theta=theta, beta=beta)
    if cls.kind is SolutionKind.TYPE2:
        sq = math.sqrt(float(cls.delta))
        theta = alpha / 2.0 + sq / 2.0
        theta_prime = alpha / 2.0 - sq / 2.0
        if xf == theta or xf == theta_prime:
            return ConstantSolution(xf)

        def build(th: float, tp: float) -> Type2Solution:
            beta = (tp / th) * ((tp - th) / (xf - th) - 1.0)
            return Type2Solution(theta=th, theta_prime=tp, beta=beta)

        sol = build(theta, theta_prime)
        # Validate against the orbit; swap root roles if the fit is bad.
        dev = _orbit_matches(params, xf, sol)
        if dev > 1e-6:
            swapped = build(theta_prime, theta)
            if _orbit_matches(params, xf, swapped) < dev:
                sol = swapped
        return sol
    if alpha == 0.0:
        return AlternatingSolution(x1=xf, gamma=gamma)
    rho = math.sqrt(-gamma)
    phi = math.atan2(math.sqrt(-float(cls.delta)), alpha)  # (0, pi)
    omega = -phi + math.atan(
        math.cos(phi) / math.sin(phi) - (xf / rho) / math.sin(phi)
    )
    return Type3Solution(rho=rho, phi_angle=phi, omega=_normalize_half_pi(omega))


def evaluate(sol: ClosedFormSolution, j: float) -> Union[float, Pole]:
    """Module-level alias for ``sol.eval(j)``."""
    return sol.eval(j)


def period(sol: ClosedFormSolution) -> float:
    """Period pi/phi of the oscillating family; other variants have none."""
    if not isinstance(sol, Type3Solution):
        raise UnsupportedOperationError("period is defined only for the oscillating family")
    return math.pi / sol.phi_angle


def zeros_and_poles(
    sol: ClosedFormSolution, j_lo: float, j_hi: float
) -> Tuple[List[float], List[float]]:
    """All real zeros and poles of the continuous extension in [j_lo, j_hi].

    Both lists ascend; between consecutive listed points the sign of eval is
    constant.  Raises NoContinuousExtensionError for the alternating variant
    and for the two-real-roots family with negative base.
    """
    if j_lo >= j_hi:
        raise DomainError("need j_lo < j_hi")

    def within(points: List[float]) -> List[float]:
        return sorted(p for p in points if j_lo <= p <= j_hi)

    if isinstance(sol, ConstantSolution):
        return [], []
    if isinstance(sol, Type1Solution):
        return within([-sol.beta - 1.0]), within([-sol.beta])
    if isinstance(sol, Type2Solution):
        q = sol.base
        if q <= 0.0:
            raise NoContinuousExtensionError(
                "theta/theta' < 0: no real continuous extension"
            )
        zeros: List[float] = []
        poles: List[float] = []
        logq = math.log(q)
        if sol.beta < 0.0:
            poles.append(math.log(-1.0 / sol.beta) / logq)
        if sol.beta != 0.0:
            target = -sol.theta_prime / (sol.beta * sol.theta)
            if target > 0.0:
                zeros.append(math.log(target) / logq)
        return within(zeros), within(poles)
    if isinstance(sol, Type3Solution):
        phi, omega = sol.phi_angle, sol.omega

        def grid(shift: float) -> List[float]:
            # all j with j*phi + omega + shift = pi/2 (mod pi) in range
            start = (math.pi / 2.0 - omega - shift) / phi
            step = math.pi / phi
            m_lo = math.ceil((j_lo - start) / step - 1e-12)
            m_hi = math.floor((j_hi - start) / step + 1e-12)
            return [start + m * step for m in range(m_lo, m_hi + 1)]

        return within(grid(phi)), within(grid(0.0))
    raise NoContinuousExtensionError(
        "alternating solution has no continuous extension"
    )
