"""Delta-like anomalous states at small separation.

Diagonalizes the full momentum-space Case 1 J=0 system on a 1e-4 Bohr box
and compares each anomalous level with -1/rho_i on the DVR grid.

Run:  python3 demos/anomalous_dvr.py
"""

import numpy as np

from posdirac.dvr import DvrGrid, analytic_coefficients, anomalous_catalog
from posdirac.momentum import assemble, preset_basis, solve


def main():
    basis, quad = preset_basis("anomalous", 0)
    spec = solve(assemble(1, 0, basis, quadrature=quad))
    idx = spec.select("anomalous")
    idx = idx[np.argsort(spec.eigenvalues[idx])]
    grid = DvrGrid(basis.rho0, basis.M + 1)
    A = analytic_coefficients(grid)
    print(" i   rho_i [Bohr]      E [Hartree]     E*rho_i   overlap")
    for n, i in list(enumerate(idx))[::4]:
        v = spec.eigenvectors[:, i].reshape(3, basis.M)[1]
        ov = abs(v @ A[:, n]) / np.linalg.norm(v)
        r = grid.points[n]
        print(f"{n + 1:2d}  {r:.4e}  {spec.eigenvalues[i]:16.4f}  {spec.eigenvalues[i] * r:9.6f}"
              f"  {ov:.10f}")
    print("\nGaunt-shifted totals at i = 20:")
    for s in anomalous_catalog(grid):
        if s.index == 20:
            print(f"  {s.family:10s} C={s.parity.C:+d} P={s.parity.P:+d}  "
                  f"E_total*rho_i = {s.energy_total * s.rho_i:+.1f}")


if __name__ == "__main__":
    main()
