"""Green's function of the Dirichlet problem for the generalized Hilfer derivative.

For ``1 < alpha <= gamma <= 2`` on ``[a, b]``::

    Gamma(alpha) G(t, s) = ((t-a)/(b-a))**(gamma-1) (b-s)**(alpha-1) - (t-s)**(alpha-1)   s <= t
                         = ((t-a)/(b-a))**(gamma-1) (b-s)**(alpha-1)                      t <= s

``g_plus``/``g_minus`` are the two branches without the 1/Gamma(alpha) factor.

Note: for ``gamma > alpha`` the kernel takes negative values for small ``s``
below the diagonal (e.g. alpha=7/4, gamma=2, t=1/2, s=1/10); see
:func:`negative_part`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import rgamma

__all__ = [
    "GreenKernel",
    "Minorant",
    "NoSignChangeError",
    "g_plus",
    "g_minus",
    "green_eval",
    "diagonal",
    "diag_argmax",
    "diag_max",
    "diag_max_closed_form",
    "diag_max_as_printed",
    "golden_section_max",
    "crossing_r",
    "minorant",
    "phi_eval",
    "negative_part",
]


class NoSignChangeError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GreenKernel:
    a: float
    b: float
    alpha: float
    gamma: float
    gamma_alpha_norm: float = field(init=False, repr=False)

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if not 1 < self.alpha <= self.gamma <= 2:
            raise ValueError(f"need 1 < alpha <= gamma <= 2, got alpha={self.alpha}, gamma={self.gamma}")
        object.__setattr__(self, "gamma_alpha_norm", rgamma(self.alpha))

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def quarter(self) -> float:
        return (3 * self.a + self.b) / 4

    @property
    def three_quarter(self) -> float:
        return (3 * self.b + self.a) / 4

    def __call__(self, t, s):
        return green_eval(self, t, s)


def _lead(k: GreenKernel, t):
    x = np.clip((np.asarray(t, dtype=float) - k.a) / k.length, 0.0, 1.0)
    return x ** (k.gamma - 1)


def g_minus(k: GreenKernel, t, s):
    """``((t-a)/(b-a))^(gamma-1) (b-s)^(alpha-1)``, the t <= s branch."""
    bs = np.clip(k.b - np.asarray(s, dtype=float), 0.0, None)
    return _lead(k, t) * bs ** (k.alpha - 1)


def g_plus(k: GreenKernel, t, s):
    """``g_minus(t, s) - (t-s)^(alpha-1)``, the s <= t branch."""
    ts = np.clip(np.asarray(t, dtype=float) - np.asarray(s, dtype=float), 0.0, None)
    return g_minus(k, t, s) - ts ** (k.alpha - 1)


def green_eval(k: GreenKernel, t, s):
    """G(t, s); scalars give a float, arrays broadcast."""
    val = g_plus(k, t, s) * k.gamma_alpha_norm  # the (t-s)_+ clip makes this G_- when t <= s
    if np.ndim(val) == 0:
        return float(val)
    return val


def diagonal(k: GreenKernel, s):
    """G(s, s) = (s-a)^(gamma-1) (b-s)^(alpha-1) / ((b-a)^(gamma-1) Gamma(alpha))."""
    val = g_minus(k, s, s) * k.gamma_alpha_norm
    return float(val) if np.ndim(val) == 0 else val


def diag_argmax(k: GreenKernel) -> float:
    return ((k.gamma - 1) * k.b + (k.alpha - 1) * k.a) / (k.gamma + k.alpha - 2)


def diag_max(k: GreenKernel) -> tuple[float, float]:
    """Maximizer and maximum of s -> G(s, s), by direct evaluation at the stationary point."""
    s_star = diag_argmax(k)
    return s_star, diagonal(k, s_star)


def diag_max_closed_form(k: GreenKernel) -> float:
    """(alpha-1)^(alpha-1) (gamma-1)^(gamma-1) (b-a)^(alpha-1) / ((gamma+alpha-2)^(gamma+alpha-2) Gamma(alpha))."""
    al, ga = k.alpha, k.gamma
    num = (al - 1) ** (al - 1) * (ga - 1) ** (ga - 1) * k.length ** (al - 1)
    return num / (ga + al - 2) ** (ga + al - 2) * k.gamma_alpha_norm


def diag_max_as_printed(k: GreenKernel) -> float:
    """The published closed form, with ((gamma-1) b - (alpha-1) a)^(gamma-1) in the numerator.

    Agrees with :func:`diag_max_closed_form` only when ``a == 0`` or
    ``gamma == alpha``; kept for the reproduction report.
    """
    al, ga, a, b = k.alpha, k.gamma, k.a, k.b
    num = (al - 1) ** (al - 1) * ((ga - 1) * b - (al - 1) * a) ** (ga - 1)
    return num / ((ga + al - 2) ** (ga + al - 2) * k.length ** (ga - al)) * k.gamma_alpha_norm


_INVPHI = (math.sqrt(5) - 1) / 2


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 500):
    """Maximize a unimodal scalar ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(lo) + abs(hi)):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
    x = x1 if f1 >= f2 else x2
    return x, max(f1, f2)


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise NoSignChangeError(f"no sign change on [{lo}, {hi}]: f={flo:.3g}, {fhi:.3g}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crossing_r(k: GreenKernel, tol: float = 1e-12) -> float:
    """Solution r of G_+((3b+a)/4, s) = G_-((3a+b)/4, s) inside the middle half."""
    lo, hi = k.quarter, k.three_quarter

    def diff(s):
        return float(g_plus(k, hi, s) - g_minus(k, lo, s))

    return _bisect(diff, lo, hi, tol * k.length)


@dataclass(frozen=True)
class Minorant:
    """phi(s) with min over the middle half of G(t, s) bounded below by phi(s) G(s, s)."""

    kernel: GreenKernel
    r: float

    def __call__(self, s):
        return phi_eval(self, s)

    def product(self, s):
        """phi(s) G(s, s), i.e. the candidate lower envelope itself."""
        k = self.kernel
        s = np.asarray(s, dtype=float)
        left = g_plus(k, k.three_quarter, s)
        right = g_minus(k, k.quarter, s)
        out = np.where(s <= self.r, left, right) * k.gamma_alpha_norm
        return float(out) if out.ndim == 0 else out


def minorant(k: GreenKernel) -> Minorant:
    return Minorant(k, crossing_r(k))


def phi_eval(m: Minorant, s):
    """phi(s) = G_+((3b+a)/4, s)/G_+(s, s) for s <= r, G_-((3a+b)/4, s)/G_-(s, s) for s >= r.

    Not guaranteed positive: for gamma > alpha the first branch is negative
    near ``s = a``.
    """
    k = m.kernel
    s_arr = np.asarray(s, dtype=float)
    if np.any((s_arr <= k.a) | (s_arr >= k.b)):
        raise ValueError("phi is defined on the open interval (a, b) only")
    diag = g_minus(k, s_arr, s_arr)
    left = g_plus(k, k.three_quarter, s_arr) / diag
    right = g_minus(k, k.quarter, s_arr) / diag
    out = np.where(s_arr <= m.r, left, right)
    return float(out) if out.ndim == 0 else out


def negative_part(k: GreenKernel, n: int = 400) -> tuple[float, tuple[float, float]]:
    """Most negative value of G on an n x n grid of [a, b]^2 and where it occurs."""
    x = np.linspace(k.a, k.b, n + 1)
    T, S = np.meshgrid(x, x, indexing="ij")
    G = green_eval(k, T, S)
    i, j = np.unravel_index(np.argmin(G), G.shape)
    return float(min(G[i, j], 0.0)), (float(x[i]), float(x[j]))
