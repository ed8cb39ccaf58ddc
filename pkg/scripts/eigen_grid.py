"""First Dirichlet eigenvalue against both lower bounds on an (alpha, gamma) grid."""

import argparse

import numpy as np

from hilferbvp import analysis, specfun


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lo", type=float, default=1.5)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--lambda-max", type=float, default=150.0)
    args = p.parse_args()
    grid = np.linspace(args.lo, 2.0, args.n)
    print(f"{'alpha':>6} {'gamma':>6} {'lambda_1':>14} {'lyapunov':>10} {'hw':>10}  ok")
    for al in grid:
        for ga in grid[grid >= al]:
            roots = specfun.ml_roots(al, ga, args.lambda_max, n_scan=600)
            ly = analysis.eigen_lower_bound_lyapunov(al, ga)
            hw = analysis.eigen_lower_bound_hw(al, ga)
            if len(roots):
                lam = roots[0]
                print(f"{al:6.3f} {ga:6.3f} {lam:14.8f} {ly:10.5f} {hw:10.5f}  {lam > max(ly, hw)}")
            else:
                print(f"{al:6.3f} {ga:6.3f} {'none':>14} {ly:10.5f} {hw:10.5f}  "
                      f"(scanned to {roots.scan_range[1]:.4g})")


if __name__ == "__main__":
    main()
