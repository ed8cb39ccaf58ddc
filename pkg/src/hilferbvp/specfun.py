"""Gamma function, two-parameter Mittag-Leffler series, and its real roots."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "gamma",
    "rgamma",
    "beta",
    "MLValue",
    "RootList",
    "MLConvergenceError",
    "MLRangeError",
    "ScanWarning",
    "ml_eval",
    "ml_roots",
]

EPS = np.finfo(float).eps

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Euler gamma function for real ``x``.

    Positive integers up to 171 are returned as correctly rounded factorials;
    everything else goes through the Lanczos sum, with reflection below 1/2.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x == math.floor(x) and x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x > 171.7:
        return math.inf
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power so t**(x+1/2) cannot overflow before exp(-t) scales it
    half = t ** ((x + 0.5) / 2.0)
    return math.sqrt(2.0 * math.pi) * half * math.exp(-t) * half * acc


def rgamma(x: float) -> float:
    """1/Gamma(x), equal to 0 at the poles."""
    if _is_nonpositive_integer(float(x)):
        return 0.0
    return 1.0 / gamma(x)


def beta(x: float, y: float) -> float:
    return gamma(x) * gamma(y) / gamma(x + y)


# -- Mittag-Leffler -----------------------------------------------------------


class MLConvergenceError(ArithmeticError):
    """Series did not reach the requested tolerance within the term budget."""


class MLRangeError(ArithmeticError):
    """Cancellation in the series would swamp the requested accuracy."""


class ScanWarning(UserWarning):
    """Root scan saw a near-zero without a sign change (possible tangency)."""


@dataclass(frozen=True)
class MLValue:
    value: float
    terms_used: int
    truncation_bound: float
    # rounding estimate: EPS * sum of |terms|, times a small safety factor
    rounding_bound: float = 0.0

    def __float__(self) -> float:
        return self.value


def _ml_term(alpha: float, beta_: float, z: float, k: int) -> float:
    arg = alpha * k + beta_
    if arg < 170.0:
        return z**k * rgamma(arg)
    if z == 0.0:
        return 0.0
    mag = math.exp(k * math.log(abs(z)) - math.lgamma(arg))
    return -mag if (z < 0 and k % 2) else mag


def ml_eval(
    alpha: float,
    beta: float,
    z: float,
    tol: float = 1e-15,
    max_terms: int = 400,
    max_rounding: float = 1e-8,
) -> MLValue:
    r"""Two-parameter Mittag-Leffler function :math:`E_{\alpha,\beta}(z)` for real ``z``.

    Summed term by term with an explicit tail bound. The ratio of consecutive
    term magnitudes, ``|z| Gamma(alpha k + beta) / Gamma(alpha k + alpha + beta)``,
    is non-increasing in ``k`` (log-convexity of Gamma), so once it drops
    below one the dropped tail is bounded by a geometric series.

    The admissible range of ``z`` is set by cancellation rather than by a fixed
    radius: if ``EPS * sum |terms|`` exceeds ``max_rounding`` the call raises
    :class:`MLRangeError`.
    """
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = float(z)
    if z == 0.0:
        return MLValue(rgamma(beta), 1, 0.0, 0.0)

    terms = []
    cur = _ml_term(alpha, beta, z, 0)
    nxt = _ml_term(alpha, beta, z, 1)
    for k in range(max_terms):
        terms.append(cur)
        after = _ml_term(alpha, beta, z, k + 2)
        # nxt is term k+1, after is term k+2
        if nxt == 0.0:
            bound = 0.0
        else:
            ratio = abs(after / nxt)
            bound = abs(nxt) / (1.0 - ratio) if ratio < 1.0 else math.inf
        if bound <= tol:
            abs_sum = math.fsum(abs(t) for t in terms)
            rounding = float(4.0 * EPS * abs_sum)
            if rounding > max_rounding:
                raise MLRangeError(
                    f"E_{{{alpha},{beta}}}({z}): estimated rounding error {rounding:.3g}"
                    f" exceeds {max_rounding:.3g}"
                )
            return MLValue(math.fsum(terms), len(terms), bound, rounding)
        cur, nxt = nxt, after
    raise MLConvergenceError(
        f"E_{{{alpha},{beta}}}({z}) not converged to {tol} in {max_terms} terms"
    )


@dataclass(frozen=True)
class RootList:
    roots: tuple[float, ...]
    bracket_widths: tuple[float, ...]
    scan_range: tuple[float, float]
    warnings: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]


def _bisect(f, lo: float, hi: float, flo: float, tol: float, max_iter: int = 200):
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(lo)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid, 0.0
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), hi - lo


def ml_roots(
    alpha: float,
    gamma: float,
    lambda_max: float,
    n_scan: int = 2000,
    tol: float = 1e-12,
    near_zero: float = 1e-6,
) -> RootList:
    r"""Roots of :math:`\lambda \mapsto E_{\alpha,\gamma}(-\lambda)` in ``(0, lambda_max]``.

    Uniform scan followed by bisection on each sign change. The scan stops early
    where the series becomes inadmissible (see :func:`ml_eval`); the range
    actually covered is returned in ``scan_range``.
    """
    if not 1 < alpha <= gamma <= 2:
        raise ValueError("need 1 < alpha <= gamma <= 2")
    if lambda_max <= 0:
        raise ValueError("lambda_max must be positive")

    def f(lam: float) -> float:
        return ml_eval(alpha, gamma, -lam).value

    grid = np.linspace(0.0, lambda_max, n_scan + 1)[1:]
    lams, vals = [], []
    for lam in grid:
        try:
            vals.append(f(lam))
        except MLRangeError:
            break
        lams.append(float(lam))
    notes = []
    if len(lams) < len(grid):
        notes.append(f"scan truncated at lambda={lams[-1] if lams else 0.0:.6g}: series cancellation")

    roots, widths = [], []
    for i in range(len(lams) - 1):
        v0, v1 = vals[i], vals[i + 1]
        if v0 == 0.0:
            roots.append(lams[i])
            widths.append(0.0)
            continue
        if (v0 < 0) != (v1 < 0) and v1 != 0.0:
            root, width = _bisect(f, lams[i], lams[i + 1], v0, tol)
            roots.append(root)
            widths.append(width)
        elif 0 < i and v1 != 0.0:
            vp = vals[i - 1]
            local_min = abs(v0) < abs(vp) and abs(v0) < abs(v1)
            same_sign = (vp < 0) == (v0 < 0) == (v1 < 0)
            if local_min and same_sign and abs(v0) < near_zero:
                msg = f"near-zero without sign change at lambda~{lams[i]:.6g} (|E|={abs(v0):.3g})"
                notes.append(msg)
                warnings.warn(msg, ScanWarning, stacklevel=2)

    hi = lams[-1] if lams else 0.0
    return RootList(tuple(roots), tuple(widths), (float(grid[0]), hi), tuple(notes))
