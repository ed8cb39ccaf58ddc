"""Necessary-condition bounds, existence constants and verdicts for

    D^{alpha,gamma}_a u + q(t) f(u) = 0,   u(a) = u(b) = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import green
from .expr import Expr, evaluate, is_identity, parse
from .quadrature import QuadratureError, integrate, integrate_pieces
from .specfun import gamma as _gamma

__all__ = [
    "ProblemSpec",
    "BoundKind",
    "Verdict",
    "BoundReport",
    "ThetaPair",
    "ExistenceStatus",
    "ExistenceVerdict",
    "NonexistenceVerdict",
    "lyapunov_bound",
    "lyapunov_bound_as_printed",
    "abs_integral",
    "lyapunov_check_linear",
    "lyapunov_check_nonlinear",
    "hartman_wintner_check",
    "hw_weight",
    "theta_pair",
    "existence_check",
    "nonexistence_check",
    "eigen_lower_bound_lyapunov",
    "eigen_lower_bound_hw",
]

NEUTRAL_ZONE = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    a: float
    b: float
    alpha: float
    gamma: float
    q: Expr
    f: Expr

    def __post_init__(self):
        # GreenKernel validates the domain and orders
        object.__setattr__(self, "_kernel", green.GreenKernel(self.a, self.b, self.alpha, self.gamma))
        if self.q.variables() - {"t"}:
            raise ValueError("q must be an expression in t")
        if self.f.variables() - {"u"}:
            raise ValueError("f must be an expression in u")

    @classmethod
    def from_strings(cls, a, b, alpha, gamma, q: str, f: str = "u") -> "ProblemSpec":
        return cls(float(a), float(b), float(alpha), float(gamma), parse(q, "t"), parse(f, "u"))

    @property
    def kernel(self) -> green.GreenKernel:
        return self._kernel

    @property
    def linear(self) -> bool:
        return is_identity(self.f)

    def q_values(self, t):
        return evaluate(self.q, t)

    def f_values(self, u):
        return evaluate(self.f, u)


class BoundKind(str, enum.Enum):
    LYAPUNOV_LINEAR = "lyapunov_linear"
    LYAPUNOV_NONLINEAR = "lyapunov_nonlinear"
    HARTMAN_WINTNER = "hartman_wintner"
    EIGEN_LYAPUNOV = "eigen_lyapunov"
    EIGEN_HW = "eigen_hw"


class Verdict(str, enum.Enum):
    HOLDS = "necessary-condition-holds"
    EXCLUDED = "nontrivial-solution-excluded"
    INDETERMINATE = "indeterminate-at-tolerance"


def _verdict(lhs: float, rhs: float) -> Verdict:
    zone = NEUTRAL_ZONE * max(1.0, abs(rhs))
    if lhs > rhs + zone:
        return Verdict.HOLDS
    if lhs < rhs - zone:
        return Verdict.EXCLUDED
    return Verdict.INDETERMINATE


@dataclass(frozen=True)
class BoundReport:
    kind: BoundKind
    lhs: float
    rhs: float
    verdict: Verdict
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict.value,
            "details": dict(self.details),
        }


# -- Lyapunov-type ------------------------------------------------------------


def lyapunov_bound(spec: ProblemSpec) -> float:
    """Right-hand side of the linear Lyapunov-type inequality: 1 / max_s G(s, s)."""
    return 1.0 / green.diag_max(spec.kernel)[1]


def lyapunov_bound_as_printed(spec: ProblemSpec) -> float:
    """The published closed form, including its ((gamma-1) b - (alpha-1) a) factor."""
    return 1.0 / green.diag_max_as_printed(spec.kernel)


def _sign_breaks(fn, a: float, b: float, n: int = 4000) -> list[float]:
    x = np.linspace(a, b, n + 1)
    v = fn(x)
    breaks = [a]
    for i in range(n):
        if v[i] == 0 and 0 < i:
            breaks.append(float(x[i]))
        elif (v[i] < 0) != (v[i + 1] < 0) and v[i] != 0 and v[i + 1] != 0:
            lo, hi, flo = x[i], x[i + 1], v[i]
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if mid in (lo, hi):
                    break
                fm = float(fn(np.array([mid]))[0])
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            breaks.append(0.5 * (lo + hi))
    breaks.append(b)
    return breaks


def abs_integral(spec: ProblemSpec, tol: float = 1e-12) -> tuple[float, float]:
    """(integral of |q| over [a, b], error estimate); sign changes of q become panel breaks."""
    breaks = _sign_breaks(spec.q_values, spec.a, spec.b)
    res = integrate_pieces(lambda s: np.abs(spec.q_values(s)), breaks, tol)
    return res.value, res.error


def lyapunov_check_linear(spec: ProblemSpec, quad_tol: float = 1e-12) -> BoundReport:
    if not spec.linear:
        raise ValueError("lyapunov_check_linear needs f(u) = u")
    lhs, err = abs_integral(spec, quad_tol)
    rhs = lyapunov_bound(spec)
    return BoundReport(BoundKind.LYAPUNOV_LINEAR, lhs, rhs, _verdict(lhs, rhs), {"quad_error": err})


def lyapunov_check_nonlinear(spec: ProblemSpec, omega: float, quad_tol: float = 1e-12) -> BoundReport:
    """Nonlinear version with omega = max u; the bound is scaled by omega / f(omega)."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    f_omega = spec.f_values(omega)
    if f_omega == 0:
        raise ZeroDivisionError("f(omega) = 0")
    lhs, err = abs_integral(spec, quad_tol)
    rhs = lyapunov_bound(spec) * omega / f_omega
    details = {"omega": omega, "f_omega": f_omega, "quad_error": err}
    return BoundReport(BoundKind.LYAPUNOV_NONLINEAR, lhs, rhs, _verdict(lhs, rhs), details)


# -- Hartman-Wintner-type -----------------------------------------------------


def hw_weight(spec: ProblemSpec, s):
    """(s-a)^(gamma-1) (b-s)^(alpha-1)."""
    s = np.asarray(s, dtype=float)
    return np.clip(s - spec.a, 0, None) ** (spec.gamma - 1) * np.clip(spec.b - s, 0, None) ** (spec.alpha - 1)


def hartman_wintner_check(spec: ProblemSpec, norm_u: float = 1.0, quad_tol: float = 1e-12) -> BoundReport:
    if not norm_u > 0:
        raise ValueError("norm_u must be positive")
    f_norm = spec.f_values(norm_u)
    if not f_norm > 0:
        raise ValueError("f(norm_u) must be positive")

    def integrand(s):
        return hw_weight(spec, s) * np.maximum(spec.q_values(s), 0.0)

    breaks = _sign_breaks(spec.q_values, spec.a, spec.b)
    res = integrate_pieces(integrand, breaks, quad_tol)
    rhs = _gamma(spec.alpha) * (spec.b - spec.a) ** (spec.gamma - 1) * norm_u / f_norm
    details = {"norm_u": norm_u, "f_norm_u": f_norm, "quad_error": res.error}
    return BoundReport(BoundKind.HARTMAN_WINTNER, res.value, rhs, _verdict(res.value, rhs), details)


# -- existence constants ------------------------------------------------------


@dataclass(frozen=True)
class ThetaPair:
    theta: float
    theta_star: float
    theta_error: float = 0.0
    theta_star_error: float = 0.0

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "theta_star": self.theta_star,
            "theta_error": self.theta_error,
            "theta_star_error": self.theta_star_error,
        }


def _require_nonnegative_q(spec: ProblemSpec, n: int = 4000):
    x = np.linspace(spec.a, spec.b, n + 1)
    v = spec.q_values(x)
    if np.any(v < 0):
        i = int(np.argmax(v < 0))
        raise ValueError(f"q must be nonnegative on [a, b]; q({x[i]:.6g}) = {v[i]:.6g}")


def theta_pair(spec: ProblemSpec, quad_tol: float = 1e-12) -> ThetaPair:
    """theta = 1 / int_a^b G(s,s) q(s) ds and theta* = 1 / int_mid G(s,s) phi(s) q(s) ds.

    The middle integral runs over [(3a+b)/4, (3b+a)/4] and is split at the
    crossing point r, where phi changes branch. Because phi can be negative
    near the left end, that integral need not be positive; then no finite
    theta* exists and ``theta_star`` is ``inf`` (hypothesis (A) cannot hold).
    """
    _require_nonnegative_q(spec)
    k = spec.kernel
    i1 = integrate(lambda s: green.diagonal(k, s) * spec.q_values(s), k.a, k.b, quad_tol)
    m = green.minorant(k)
    i2 = integrate_pieces(
        lambda s: m.product(s) * spec.q_values(s), [k.quarter, m.r, k.three_quarter], quad_tol
    )
    if i1.value <= 0:
        raise ValueError(f"int G(s,s) q(s) ds must be positive, got {i1.value:.6g}")
    theta = 1.0 / i1.value
    if i2.value <= 0:
        return ThetaPair(theta, math.inf, theta * i1.error / i1.value, math.nan)
    theta_star = 1.0 / i2.value
    return ThetaPair(theta, theta_star, theta * i1.error / i1.value, theta_star * i2.error / i2.value)


class ExistenceStatus(str, enum.Enum):
    SATISFIED = "hypotheses-satisfied"
    A_FAILS = "hypothesis-A-fails"
    B_FAILS = "hypothesis-B-fails"


@dataclass(frozen=True)
class ExistenceVerdict:
    status: ExistenceStatus
    u0: float | None
    margin_a: float  # min f on [0, r1] minus theta* r1
    margin_b: float  # theta r2 minus max f on [0, r2]
    resolution: float

    @property
    def satisfied(self) -> bool:
        return self.status is ExistenceStatus.SATISFIED

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "u0": self.u0,
            "margin_a": self.margin_a,
            "margin_b": self.margin_b,
            "resolution": self.resolution,
        }


def existence_check(spec: ProblemSpec, r1: float, r2: float, tp: ThetaPair, n: int = 10_000) -> ExistenceVerdict:
    """Check f >= theta* r1 on [0, r1] and f <= theta r2 on [0, r2] on dense grids.

    When both hold, some positive solution has r1 <= ||u|| <= r2.
    """
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    ua = np.linspace(0.0, r1, n + 1)
    ub = np.linspace(0.0, r2, n + 1)
    fa = spec.f_values(ua) - tp.theta_star * r1
    fb = tp.theta * r2 - spec.f_values(ub)
    margin_a, margin_b = float(fa.min()), float(fb.min())
    if margin_a < 0:
        status, u0 = ExistenceStatus.A_FAILS, float(ua[np.argmin(fa)])
    elif margin_b < 0:
        status, u0 = ExistenceStatus.B_FAILS, float(ub[np.argmin(fb)])
    else:
        status, u0 = ExistenceStatus.SATISFIED, None
    return ExistenceVerdict(status, u0, margin_a, margin_b, r2 / n)


@dataclass(frozen=True)
class NonexistenceVerdict:
    no_nontrivial_solution: bool
    u0: float | None
    margin: float  # min over the grid of theta |u| - f(u)

    def to_dict(self) -> dict:
        return {
            "verdict": "no-nontrivial-solution" if self.no_nontrivial_solution else "condition-fails",
            "u0": self.u0,
            "margin": self.margin,
        }


def nonexistence_check(spec: ProblemSpec, u_range: tuple[float, float], tp: ThetaPair, n: int = 10_000) -> NonexistenceVerdict:
    """Check f(u) < theta |u| on a grid of ``u_range`` with u = 0 left out."""
    lo, hi = map(float, u_range)
    if not lo < hi:
        raise ValueError("empty u_range")
    u = np.linspace(lo, hi, n + 1)
    u = u[u != 0.0]
    gap = tp.theta * np.abs(u) - spec.f_values(u)
    i = int(np.argmin(gap))
    ok = bool(gap[i] > 0)
    return NonexistenceVerdict(ok, None if ok else float(u[i]), float(gap[i]))


# -- eigenvalue bounds --------------------------------------------------------


def eigen_lower_bound_lyapunov(alpha: float, gamma: float) -> float:
    """(gamma+alpha-2)^(gamma+alpha-2) Gamma(alpha) / ((alpha-1)^(alpha-1) (gamma-1)^(gamma-1)) on [0, 1]."""
    if not 1 < alpha <= gamma <= 2:
        raise ValueError("need 1 < alpha <= gamma <= 2")
    e = gamma + alpha - 2
    return e**e * _gamma(alpha) / ((alpha - 1) ** (alpha - 1) * (gamma - 1) ** (gamma - 1))


def eigen_lower_bound_hw(alpha: float, gamma: float, length: float = 1.0) -> float:
    """Gamma(gamma+alpha) / Gamma(gamma) * length^(-alpha)."""
    if not 1 < alpha <= gamma <= 2:
        raise ValueError("need 1 < alpha <= gamma <= 2")
    if not length > 0:
        raise ValueError("length must be positive")
    return _gamma(gamma + alpha) / _gamma(gamma) * length ** (-alpha)


def eigen_reports(alpha: float, gamma: float, lam: float) -> list[BoundReport]:
    """Both eigenvalue corollaries for a candidate eigenvalue ``lam`` on [0, 1]."""
    ly = eigen_lower_bound_lyapunov(alpha, gamma)
    hw = eigen_lower_bound_hw(alpha, gamma)
    return [
        BoundReport(BoundKind.EIGEN_LYAPUNOV, abs(lam), ly, _verdict(abs(lam), ly)),
        BoundReport(BoundKind.EIGEN_HW, lam, hw, _verdict(lam, hw)),
    ]


__all__ += ["eigen_reports", "QuadratureError"]
