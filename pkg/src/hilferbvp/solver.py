"""Picard iteration on u = T u and Mittag-Leffler eigenpairs.

The integral operator ``T u(t) = int_a^b G(t, s) q(s) f(u(s)) ds`` is
discretized by product integration: ``q f(u)`` is interpolated linearly
between grid nodes and integrated exactly against the two power kernels
``(b-s)^(alpha-1)`` and ``(t-s)^(alpha-1)``. The grid is graded toward
``t = a``, where solutions behave like ``(t-a)^(gamma-1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import green
from .analysis import ProblemSpec
from .expr import DomainError
from .fracops import PowerTerm, apply_hilfer_series, eval_series
from .specfun import MLRangeError, ml_eval, ml_roots, rgamma

__all__ = [
    "SolutionGrid",
    "EigenPair",
    "graded_grid",
    "weight_matrix",
    "picard_solve",
    "residual_certify",
    "eigenfunction_terms",
    "general_solution_terms",
    "eigen_solve",
    "spectral_radius",
]


@dataclass
class SolutionGrid:
    grid: np.ndarray
    values: np.ndarray
    iterations: int
    residual_sup: float
    converged: bool
    diverged: bool = False
    quad_error: float = math.nan
    history: list = field(default_factory=list, repr=False)

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __call__(self, t):
        return np.interp(t, self.grid, self.values)

    def summary(self) -> dict:
        return {
            "iterations": self.iterations,
            "residual_sup": self.residual_sup,
            "norm": self.norm,
            "converged": self.converged,
            "diverged": self.diverged,
            "quad_error": self.quad_error,
            "n_grid": int(self.grid.size),
        }


def graded_grid(a: float, b: float, n: int, grading: float) -> np.ndarray:
    """``n + 1`` points ``a + (b-a) x^grading`` with x uniform on [0, 1]."""
    x = np.linspace(0.0, 1.0, n + 1) ** grading
    grid = a + (b - a) * x
    grid[0], grid[-1] = a, b
    return grid


def default_grading(gamma: float) -> float:
    return min(4.0, max(1.0, 2.0 / (gamma - 1.0)))


def _kernel_moments(c: np.ndarray, nodes: np.ndarray, p: float) -> np.ndarray:
    """W[i, j] = int_{a}^{c_i} (c_i - s)^p hat_j(s) ds for hat functions on ``nodes``.

    Cells beyond ``c_i`` contribute nothing; ``c`` must be a subset of nodes
    (or ``b``) so no cell is cut.
    """
    lo, hi = nodes[:-1], nodes[1:]
    h = hi - lo
    C = c[:, None]
    active = hi[None, :] <= C
    u0 = np.where(active, C - lo[None, :], 0.0)
    u1 = np.where(active, C - hi[None, :], 0.0)
    m0 = (u0 ** (p + 1) - u1 ** (p + 1)) / (p + 1)
    m1 = (u0 ** (p + 2) - u1 ** (p + 2)) / (p + 2)
    left = (m1 - u1 * m0) / h  # weight for node j = lo
    right = (u0 * m0 - m1) / h  # weight for node j+1 = hi
    W = np.zeros((c.size, nodes.size))
    W[:, :-1] += np.where(active, left, 0.0)
    W[:, 1:] += np.where(active, right, 0.0)
    return W


def weight_matrix(k: green.GreenKernel, grid: np.ndarray) -> np.ndarray:
    """Nystrom matrix: (T u)(t_i) ~ sum_j W[i, j] q(t_j) f(u_j)."""
    p = k.alpha - 1.0
    full = _kernel_moments(np.array([k.b]), grid, p)[0]
    partial = _kernel_moments(grid, grid, p)
    lead = ((grid - k.a) / k.length) ** (k.gamma - 1.0)
    W = (lead[:, None] * full[None, :] - partial) * k.gamma_alpha_norm
    # G(a, .) = G(b, .) = 0
    W[0, :] = 0.0
    W[-1, :] = 0.0
    return W


def _initial(u0, grid: np.ndarray) -> np.ndarray:
    if u0 is None:
        return np.zeros_like(grid)
    if callable(u0):
        return np.asarray(u0(grid), dtype=float)
    arr = np.asarray(u0, dtype=float)
    if arr.ndim == 0:
        return np.full_like(grid, float(arr))
    if arr.shape != grid.shape:
        raise ValueError("initial guess has wrong shape")
    return arr.copy()


def picard_solve(
    spec: ProblemSpec,
    n_grid: int = 400,
    u0=None,
    tol: float = 1e-12,
    max_iter: int = 500,
    ceiling: float = 1e8,
    grading: float | None = None,
    r1: float | None = None,
    estimate_error: bool = True,
    keep_history: bool = False,
) -> SolutionGrid:
    """Successive approximation u_{k+1} = T u_k on a graded grid.

    ``u0`` defaults to the constant ``r1`` when given, else zero. Stops when
    the sup-norm update is below ``tol * max(1, ||u||)``. A sup-norm above
    ``ceiling`` or a domain error in ``f`` marks the run as diverged.
    """
    k = spec.kernel
    grid = graded_grid(k.a, k.b, n_grid, grading or default_grading(k.gamma))
    W = weight_matrix(k, grid)
    qv = spec.q_values(grid)
    if u0 is None and r1 is not None:
        u0 = r1
    u = _initial(u0, grid)
    history = [u.copy()] if keep_history else []
    converged = diverged = False
    delta = math.inf
    it = 0
    for it in range(1, max_iter + 1):
        try:
            new = W @ (qv * spec.f_values(u))
        except DomainError:
            diverged = True
            break
        delta = float(np.max(np.abs(new - u)))
        u = new
        if keep_history:
            history.append(u.copy())
        if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > ceiling:
            diverged = True
            break
        if delta <= tol * max(1.0, float(np.max(np.abs(u)))):
            converged = True
            break
    sol = SolutionGrid(grid, u, it, delta, converged, diverged, history=history)
    if converged and estimate_error:
        sol.quad_error = residual_certify(spec, sol)
    return sol


def residual_certify(spec: ProblemSpec, sol: SolutionGrid) -> float:
    """sup |T u - u| on the grid refined by midpoints, u interpolated linearly."""
    g = sol.grid
    fine = np.empty(2 * g.size - 1)
    fine[0::2] = g
    fine[1::2] = 0.5 * (g[:-1] + g[1:])
    u = np.interp(fine, g, sol.values)
    W = weight_matrix(spec.kernel, fine)
    Tu = W @ (spec.q_values(fine) * spec.f_values(u))
    return float(np.max(np.abs(Tu - u)))


def spectral_radius(spec: ProblemSpec, n_grid: int = 200, iters: int = 200) -> float:
    """Power-iteration estimate of the spectral radius of u -> int G q u (linear part)."""
    k = spec.kernel
    grid = graded_grid(k.a, k.b, n_grid, default_grading(k.gamma))
    A = weight_matrix(k, grid) * spec.q_values(grid)[None, :]
    v = np.ones(grid.size)
    rho = 0.0
    for _ in range(iters):
        w = A @ A @ v
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        rho = math.sqrt(nrm / np.linalg.norm(v))
        v = w / nrm
    return rho


# -- eigenpairs ---------------------------------------------------------------


def eigenfunction_terms(alpha: float, gamma: float, lam: float, n: int, scale: float = 1.0) -> list[PowerTerm]:
    """Truncated ``scale * t^(gamma-1) E_{alpha,gamma}(-lam t^alpha)`` as power terms."""
    return [PowerTerm(scale * (-lam) ** k * rgamma(alpha * k + gamma), alpha * k + gamma) for k in range(n)]


def general_solution_terms(alpha: float, gamma: float, lam: float, c1: float, c2: float, n: int) -> list[PowerTerm]:
    """Both branches ``c1 t^(gamma-2) E_{alpha,gamma-1}(-lam t^alpha) + c2 t^(gamma-1) E_{alpha,gamma}(...)``.

    The first branch is annihilated by the equation's boundary condition at
    ``t = 0`` (c1 = 0 for eigenfunctions) but is kept so the structure can be
    checked termwise.
    """
    dormant = [PowerTerm(c1 * (-lam) ** k * rgamma(alpha * k + gamma - 1), alpha * k + gamma - 1) for k in range(n)]
    return dormant + eigenfunction_terms(alpha, gamma, lam, n, c2)


@dataclass(frozen=True)
class EigenPair:
    lam: float
    alpha: float
    gamma: float
    terms: tuple[PowerTerm, ...]
    series_length: int
    derivative_residual: float
    boundary_value: float  # E_{alpha,gamma}(-lam)

    def __call__(self, t):
        return eval_series(self.terms, t)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "series_length": self.series_length,
            "derivative_residual": self.derivative_residual,
            "boundary_value": self.boundary_value,
        }


def _series_length(alpha: float, gamma: float, lam: float, tol: float, minimum: int = 60) -> int:
    used = ml_eval(alpha, gamma, -lam, tol=tol / 10).terms_used
    return max(minimum, used + 1)


def make_eigenpair(alpha: float, gamma: float, lam: float, tol: float = 1e-12, delta: float = 1e-3, n_check: int = 2000) -> EigenPair:
    n = _series_length(alpha, gamma, lam, tol)
    raw = eigenfunction_terms(alpha, gamma, lam, n)
    t = np.linspace(0.0, 1.0, n_check + 1)
    vals = eval_series(raw, t)
    peak = float(np.max(np.abs(vals)))
    terms = eigenfunction_terms(alpha, gamma, lam, n, 1.0 / peak)
    image = apply_hilfer_series(terms, alpha, gamma)
    tc = np.linspace(delta, 1.0, n_check + 1)
    resid = eval_series(image, tc) + lam * eval_series(terms, tc)
    return EigenPair(
        lam,
        alpha,
        gamma,
        tuple(terms),
        n,
        float(np.max(np.abs(resid))),
        ml_eval(alpha, gamma, -lam).value,
    )


def eigen_solve(
    alpha: float,
    gamma: float,
    k_max: int,
    tol: float = 1e-12,
    lambda_max: float | None = None,
    n_scan: int = 2000,
    delta: float = 1e-3,
) -> tuple[list[EigenPair], list[str]]:
    """First ``k_max`` eigenpairs of D^{alpha,gamma} u + lam u = 0, u(0) = u(1) = 0.

    Eigenvalues are the roots of lam -> E_{alpha,gamma}(-lam). Without an
    explicit ``lambda_max`` the scan range doubles from 50 until enough roots
    are found or the series becomes inadmissible. Returns the pairs and any
    notices (e.g. fewer roots than requested).
    """
    notes: list[str] = []
    lm = lambda_max or 50.0
    while True:
        rl = ml_roots(alpha, gamma, lm, n_scan=n_scan, tol=tol)
        truncated = rl.scan_range[1] < lm * (1 - 1e-9)
        if len(rl) >= k_max or lambda_max is not None or truncated:
            break
        lm *= 2
    notes.extend(rl.warnings)
    roots = list(rl.roots[:k_max])
    if len(roots) < k_max:
        notes.append(f"found {len(roots)} of {k_max} roots in (0, {rl.scan_range[1]:.6g}]")
    pairs = [make_eigenpair(alpha, gamma, lam, tol, delta) for lam in roots]
    return pairs, notes


__all__ += ["make_eigenpair", "default_grading", "MLRangeError"]
