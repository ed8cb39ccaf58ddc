"""Picard solution norm and certified residual as the grid is refined."""

from hilferbvp import solver
from hilferbvp.analysis import ProblemSpec
from hilferbvp.published import EXAMPLE_1, EXAMPLE_2

if __name__ == "__main__":
    for name, ex in (("example 1", EXAMPLE_1), ("example 2", EXAMPLE_2)):
        spec = ProblemSpec.from_strings(ex["a"], ex["b"], ex["alpha"], ex["gamma"], ex["q"], ex["f"])
        print(name)
        for n in (100, 200, 400, 800, 1600):
            sol = solver.picard_solve(spec, n_grid=n, r1=ex["r1"])
            print(f"  n={n:5d}  iterations={sol.iterations:3d}  |u|={sol.norm:.10f}  residual={sol.quad_error:.3e}")
