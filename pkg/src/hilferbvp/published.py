"""Published constants next to recomputed ones.

Every row carries a tolerance; rows whose published and computed values differ
by more than that are marked DISCREPANCY and left that way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analysis, green, solver, specfun
from .analysis import ProblemSpec, ThetaPair

EXAMPLE_1 = dict(a=0.0, b=1.0, alpha=1.75, gamma=2.0, q="t^2", f="cosh(u)", r1=1 / 12, r2=1 / 8)
EXAMPLE_2 = dict(a=0.0, b=1.0, alpha=1.5, gamma=1.5, q="sqrt(t)", f="exp(-1/(u+1))", r1=1 / 20, r2=1 / 10)

PUBLISHED_THETA = {"example 1": ThetaPair(8.9, 11.61), "example 2": ThetaPair(4.23, 7.29)}


@dataclass(frozen=True)
class Row:
    quantity: str
    published: float | str | None
    computed: float | str
    tolerance: float | None = None
    status: str = "ok"

    @property
    def published_text(self) -> str:
        if self.published is None:
            return "-"
        return self.published if isinstance(self.published, str) else f"{self.published:.6g}"

    @property
    def computed_text(self) -> str:
        return self.computed if isinstance(self.computed, str) else f"{self.computed:.12g}"

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "published": self.published,
            "computed": self.computed,
            "tolerance": self.tolerance,
            "status": self.status,
        }


def _num(quantity: str, published: float, computed: float, tol: float) -> Row:
    status = "ok" if abs(published - computed) <= tol else "DISCREPANCY"
    return Row(quantity, published, computed, tol, status)


def _flag(quantity: str, published: str, computed: str, agree: bool) -> Row:
    return Row(quantity, published, computed, None, "ok" if agree else "DISCREPANCY")


def _spec(ex: dict) -> ProblemSpec:
    return ProblemSpec.from_strings(ex["a"], ex["b"], ex["alpha"], ex["gamma"], ex["q"], ex["f"])


def reproduction_rows() -> list[Row]:
    rows: list[Row] = []

    # bound reductions
    classical = ProblemSpec.from_strings(0, 1, 2, 2, "1")
    rows.append(_num("classical Lyapunov bound 4/(b-a), [0,1]", 4.0, analysis.lyapunov_bound(classical), 1e-12))
    classical2 = ProblemSpec.from_strings(-1, 2.5, 2, 2, "1")
    rows.append(_num("classical Lyapunov bound 4/(b-a), [-1,2.5]", 4 / 3.5, analysis.lyapunov_bound(classical2), 1e-12))
    rl = ProblemSpec.from_strings(0, 2, 1.5, 1.5, "1")
    rows.append(
        _num(
            "RL reduction Gamma(a)4^(a-1)/(b-a)^(a-1), a=1.5, [0,2]",
            specfun.gamma(1.5) * 4**0.5 / 2**0.5,
            analysis.lyapunov_bound(rl),
            1e-12,
        )
    )
    off = green.GreenKernel(1.0, 3.0, 1.5, 1.8)
    rows.append(
        _num(
            "max G(s,s) closed form as printed, a=1,b=3,alpha=1.5,gamma=1.8",
            green.diag_max_as_printed(off),
            green.diag_max(off)[1],
            1e-10,
        )
    )
    rows.append(
        _num(
            "max G(s,s) at a=0 (printed form), alpha=7/4, gamma=2",
            green.diag_max_as_printed(green.GreenKernel(0, 1, 1.75, 2)),
            green.diag_max(green.GreenKernel(0, 1, 1.75, 2))[1],
            1e-12,
        )
    )

    # example 1
    s1 = _spec(EXAMPLE_1)
    k1 = s1.kernel
    r1 = green.crossing_r(k1)
    rows.append(_flag("r (example 1), first two decimals", "0.58", f"{r1:.6f}", math.floor(r1 * 100) / 100 == 0.58))
    m1 = green.minorant(k1)
    rows.append(_flag("phi(0.1) > 0 (example 1)", "> 0", f"{m1(0.1):.6g}", m1(0.1) > 0))
    neg, where = green.negative_part(k1)
    rows.append(_flag("min G(t,s) >= 0 (example 1 kernel)", ">= 0", f"{neg:.6g} at {where}", neg >= -1e-14))
    tp1 = analysis.theta_pair(s1)
    pub1 = PUBLISHED_THETA["example 1"]
    rows.append(_num("theta (example 1)", pub1.theta, tp1.theta, 0.05))
    rows.append(_num("theta oracle Gamma(23/4)/Gamma(4)", specfun.gamma(23 / 4) / specfun.gamma(4), tp1.theta, 1e-8))
    rows.append(_num("theta* (example 1)", pub1.theta_star, tp1.theta_star, 0.005))
    ex_pub = analysis.existence_check(s1, EXAMPLE_1["r1"], EXAMPLE_1["r2"], pub1)
    ex_cmp = analysis.existence_check(s1, EXAMPLE_1["r1"], EXAMPLE_1["r2"], tp1)
    rows.append(_flag("hypotheses (A),(B) example 1, published constants", "satisfied", ex_pub.status.value, ex_pub.satisfied))
    rows.append(_flag("hypotheses (A),(B) example 1, computed constants", "satisfied", ex_cmp.status.value, ex_cmp.satisfied))
    sol1 = solver.picard_solve(s1, n_grid=400, r1=EXAMPLE_1["r1"])
    inside = EXAMPLE_1["r1"] <= sol1.norm <= EXAMPLE_1["r2"]
    rows.append(_flag("Picard solution norm in [1/12, 1/8] (example 1)", "[0.0833, 0.125]", f"{sol1.norm:.6g}", inside))

    # example 2
    s2 = _spec(EXAMPLE_2)
    rows.append(_num("||q||_L1 (example 2)", 2 / 3, analysis.abs_integral(s2)[0], 1e-12))
    tp2 = analysis.theta_pair(s2)
    pub2 = PUBLISHED_THETA["example 2"]
    rows.append(_num("theta (example 2)", pub2.theta, tp2.theta, 0.005))
    rows.append(_num("theta oracle Gamma(7/2)/Gamma(2)", specfun.gamma(3.5), tp2.theta, 1e-8))
    rows.append(_num("theta* (example 2)", pub2.theta_star, tp2.theta_star, 0.005))
    ex_pub = analysis.existence_check(s2, EXAMPLE_2["r1"], EXAMPLE_2["r2"], pub2)
    ex_cmp = analysis.existence_check(s2, EXAMPLE_2["r1"], EXAMPLE_2["r2"], tp2)
    rows.append(_flag("hypotheses (A),(B) example 2, published constants", "satisfied", ex_pub.status.value, ex_pub.satisfied))
    rows.append(_flag("hypotheses (A),(B) example 2, computed constants", "satisfied", ex_cmp.status.value, ex_cmp.satisfied))
    cor = analysis.lyapunov_bound(s2) * EXAMPLE_2["r1"] / s2.f_values(EXAMPLE_2["r2"])
    rows.append(_num("corollary bound Gamma(3/2)exp(10/11)/10 (example 2)", 0.22, cor, 0.005))
    sol2 = solver.picard_solve(s2, n_grid=400, r1=EXAMPLE_2["r1"])
    inside = EXAMPLE_2["r1"] <= sol2.norm <= EXAMPLE_2["r2"]
    rows.append(_flag("Picard solution norm in [1/20, 1/10] (example 2)", "[0.05, 0.1]", f"{sol2.norm:.6g}", inside))

    # eigenvalues
    roots = specfun.ml_roots(2, 2, 100.0)
    for k, lam in enumerate(roots.roots[:3], 1):
        rows.append(_num(f"classical eigenvalue (pi*{k})^2", (math.pi * k) ** 2, lam, 1e-8))
    rows.append(_num("eigen Lyapunov bound, alpha=gamma=2", 4.0, analysis.eigen_lower_bound_lyapunov(2, 2), 1e-12))
    rows.append(_num("eigen Hartman-Wintner bound, alpha=gamma=2", 6.0, analysis.eigen_lower_bound_hw(2, 2), 1e-12))
    rows.append(
        _num(
            "eigenfunction-free interval |lambda| <= 2 (alpha=gamma=2 remark)",
            2.0,
            analysis.eigen_lower_bound_lyapunov(2, 2),
            1e-12,
        )
    )
    r75 = specfun.ml_roots(1.75, 2, 100.0)
    rows.append(Row("first root E_{7/4,2}(-lambda)", None, r75.roots[0] if r75.roots else "none", status="info"))
    r15 = specfun.ml_roots(1.5, 2, 80.0)
    rows.append(
        Row(
            "real roots of E_{3/2,2}(-lambda) in scanned range",
            None,
            f"{len(r15)} in (0, {r15.scan_range[1]:.4g}]",
            status="info",
        )
    )
    return rows
